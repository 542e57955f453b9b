#ifndef PADELIC_KERNEL_HPP
#define PADELIC_KERNEL_HPP

#include "action.hpp"
#include "ball.hpp"
#include "oracle.hpp"
#include "prng.hpp"

namespace padelic {

// Reusable per-Lagrangian state: the fundamental system is solved once.
struct KernelContext {
    QuadraticLagrangian L;
    FundamentalMatrix fm;

    static KernelContext make(const QuadraticLagrangian& L, int order) {
        KernelContext ctx{L, solve_fundamental(L, order)};
        return ctx;
    }
};

struct PropagatorRequest {
    Valuation v = Valuation::infinity();
    BoundaryData boundary;
    Rational h = Rational(1);
    int guard_precision = 8;

    void validate() const {
        if (h <= 0) throw DomainError("PropagatorRequest: h must be positive");
    }
};

struct KernelResult {
    Amplitude amp;
    Rational det_bbar;
    Rational action;
    ClassicalAction form;  // the six exact pieces of the classical action
};

namespace detail {

inline std::optional<EvalGuard> guard_for(const Valuation& v, int precision) {
    if (v.is_infinity()) return std::nullopt;
    return EvalGuard{v, precision};
}

inline Rational det_bbar_of(const ClassicalAction& form) {
    return det(form.Bbar);
}

}  // namespace detail

// Normalization amplitude: squared magnitude |det(Bbar/h)|_v and phase
// lambda_v^(1-n)(1) * lambda_v(-det Bbar / (2h)^n).
inline Amplitude normalization_n(const Valuation& v, const Matrix<Rational>& bbar,
                                 const Rational& h, size_t n) {
    Rational detb = det(bbar);
    if (detb == 0) throw SingularError("normalization_n: det Bbar = 0");
    Rational mag_sq = norm_v(detb / rat_pow(h, long(n)), v);
    UnitPhase phase = lambda_v(v, Rational(1)).times(1 - long(n));
    phase += lambda_v(v, -detb / rat_pow(2 * h, long(n)));
    return Amplitude(mag_sq, phase);
}

// The v-adic propagator for a quadratic Lagrangian:
//   lambda_v^(1-n)(1) lambda_v(-det Bbar/(2h)^n) |det(Bbar/h)|_v^(1/2)
//   * chi_v(-S/h).
inline KernelResult kernel_v(const KernelContext& ctx, const PropagatorRequest& req) {
    req.validate();
    auto guard = detail::guard_for(req.v, req.guard_precision);
    auto full = full_action(ctx.L, ctx.fm, req.boundary, guard);
    Rational detb = detail::det_bbar_of(full.action);
    if (detb == 0) throw SingularError("kernel_v: det Bbar = 0");
    size_t n = ctx.L.n;
    Amplitude norm = normalization_n(req.v, full.action.Bbar, req.h, n);
    Amplitude chi_part(Rational(1), chi(req.v, -full.value / req.h));
    KernelResult out;
    out.amp = norm * chi_part;
    out.det_bbar = detb;
    out.action = full.value;
    out.form = std::move(full.action);
    return out;
}

// Floating-point real-place oracle:
//   sqrt( (1/(i h)^n) det(-Bbar) ) * exp(2 pi i S / h), principal branch.
inline std::complex<double> real_kernel(const KernelContext& ctx, const BoundaryData& boundary,
                                        const Rational& h) {
    auto full = full_action(ctx.L, ctx.fm, boundary, std::nullopt);
    size_t n = ctx.L.n;
    Matrix<Rational> neg = full.action.Bbar;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) neg(i, j) = -neg(i, j);
    double detneg = det(neg).get_d();
    std::complex<double> ih(0.0, h.get_d());
    std::complex<double> radicand = detneg / std::pow(ih, double(n));
    double s = full.value.get_d() / h.get_d();
    return std::sqrt(radicand) * std::exp(std::complex<double>(0.0, 2.0 * M_PI * s));
}

// --- composition of kernels ---------------------------------------------------

// Everything the three-time composition identity produces, reported exactly.
struct CompositionReport {
    bool id13_exact = false;       // det 2H equals Delta(t2,t1)/(h^n Delta(t2,tm) Delta(tm,t1))
    Rational id13_residual;        // difference of the two sides
    bool id13_structural = false;  // same identity with the Wronskian factor kept explicit
    Rational id1_residual;         // squared-magnitude identity residual (exact)
    UnitPhase id2_residual;        // phase identity residual at probe boundary values
    bool id3_holds = false;        // phase composition of the normalizations
    int hilbert_factor = 1;        // Weil index vs lambda(det H): +1 or -1
    bool lmul_holds = false;       // lambda of the Delta-addition rule
    bool full_composition = false; // complete amplitude-level kernel composition
};

inline CompositionReport composition_check(const KernelContext& ctx, const Valuation& v,
                                           const Rational& t1, const Rational& tm,
                                           const Rational& t2, const Rational& h,
                                           Prng& prng, int guard_precision = 8) {
    size_t n = ctx.L.n;
    if (n > 2) throw DomainError("composition_check: n must be 1 or 2");
    auto guard = detail::guard_for(v, guard_precision);

    auto full_for = [&](const Rational& a, const Rational& b) {
        BoundaryData bd{a, b, std::vector<Rational>(n, Rational(0)),
                        std::vector<Rational>(n, Rational(0))};
        return full_action(ctx.L, ctx.fm, bd, guard);
    };
    auto f21 = full_for(t1, tm);  // pair (tm, t1)
    auto f32 = full_for(tm, t2);  // pair (t2, tm)
    auto f31 = full_for(t1, t2);  // pair (t2, t1)

    auto core21 = delta_core_at(ctx.fm, t1, tm, guard);
    auto core32 = delta_core_at(ctx.fm, tm, t2, guard);
    auto core31 = delta_core_at(ctx.fm, t1, t2, guard);
    if (core21.delta == 0 || core32.delta == 0 || core31.delta == 0)
        throw SingularError("composition_check: singular Delta");

    CompositionReport rep;

    // H = -(Abar(tm,t1) + Cbar(t2,tm)) / (2h)
    Matrix<Rational> script_h = f21.action.Abar + f32.action.Cbar;
    Matrix<Rational> H = script_h;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) H(i, j) = -script_h(i, j) / (2 * h);
    Matrix<Rational> twoH = H;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) twoH(i, j) = 2 * H(i, j);
    Rational det2h = det(twoH);
    if (det2h == 0) throw SingularError("composition_check: singular H");

    Rational rhs13 = core31.delta / (rat_pow(h, long(n)) * core32.delta * core21.delta);
    rep.id13_residual = det2h - rhs13;
    rep.id13_exact = (rep.id13_residual == 0);

    // Structural form: det(scriptH) * Delta32 * Delta21 = (-1)^n Delta31 * W(tm),
    // where W = det[F;Fdot] det A (identically the normalization for exact
    // solutions). For n = 2 the multilinearity cross terms must also cancel:
    // det scriptH = det A(tm) det(2U).
    {
        SeriesQ wron = wronskian_constant(ctx.fm, ctx.L);
        Rational w_at = detail::eval_series(wron, tm, guard);
        Rational lhs = det(script_h) * core32.delta * core21.delta;
        Rational rhs = core31.delta * w_at;
        if (n % 2 != 0) rhs = -rhs;
        if (n == 1) {
            rep.id13_structural = (lhs == rhs);
        } else {
            Matrix<Rational> U(n, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    U(i, j) = core21.dotted(i, j, true) / (2 * core21.delta) -
                              core32.dotted(n + i, j, false) / (2 * core32.delta);
            Matrix<Rational> twoU = U;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) twoU(i, j) = 2 * U(i, j);
            Rational detA_tm = det(detail::eval_matrix(ctx.L.A, tm, guard));
            rep.id13_structural = (det(script_h) == detA_tm * det(twoU));
        }
    }

    // id1 (squared): |det B32/h^n| |det B21/h^n| / |det 2H| = |det B31/h^n|
    {
        Rational hn = rat_pow(h, long(n));
        Rational lhs = norm_v(det(f32.action.Bbar) / hn, v) * norm_v(det(f21.action.Bbar) / hn, v) /
                       norm_v(det2h, v);
        Rational rhs = norm_v(det(f31.action.Bbar) / hn, v);
        rep.id1_residual = lhs - rhs;
    }

    // id2: chi phases at random probe boundary values, completing the square
    // through the exact n-dimensional Gaussian.
    Matrix<Rational> Hinv = inverse(H);
    UnitPhase worst_id2;
    bool full_ok = true;
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Rational> y2(n), y1(n);
        for (size_t k = 0; k < n; ++k) {
            y2[k] = Rational(prng.range(-4, 4));
            y1[k] = Rational(prng.range(-4, 4));
        }
        auto quad = [&](const Matrix<Rational>& m, const std::vector<Rational>& a,
                        const std::vector<Rational>& b) {
            Rational s(0);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) s += a[i] * m(i, j) * b[j];
            return s;
        };
        std::vector<Rational> z(n, Rational(0));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j)
                z[i] += -(f32.action.Bbar(j, i) * y2[j] + f21.action.Bbar(i, j) * y1[j]) / h;
            z[i] += -(f32.action.Ebar[i] + f21.action.Dbar[i]) / h;
        }
        Rational zhz(0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) zhz += z[i] * Hinv(i, j) * z[j];

        UnitPhase lhs = chi(v, -(Rational(1, 2) * quad(f31.action.Abar, y2, y2) +
                                 quad(f31.action.Bbar, y2, y1) +
                                 Rational(1, 2) * quad(f31.action.Cbar, y1, y1)) /
                                   h);
        UnitPhase rhs = chi(v, -(Rational(1, 2) * quad(f32.action.Abar, y2, y2) +
                                 Rational(1, 2) * quad(f21.action.Cbar, y1, y1)) /
                                   h);
        rhs += chi(v, -Rational(1, 4) * zhz);
        // linear/constant pieces, present only for sourced Lagrangians
        UnitPhase lin_lhs = chi(v, -(dotv(f31.action.Dbar, y2) + dotv(f31.action.Ebar, y1) +
                                     f31.action.eps_bar) /
                                       h);
        UnitPhase lin_rhs = chi(v, -(dotv(f32.action.Dbar, y2) + dotv(f21.action.Ebar, y1) +
                                     f32.action.eps_bar + f21.action.eps_bar) /
                                       h);
        UnitPhase resid = (lhs + lin_lhs) - (rhs + lin_rhs);
        if (trial == 0 || resid != UnitPhase()) worst_id2 = resid;

        // complete amplitude-level composition at this probe
        QuadraticIntegrand mid{H, z};
        Amplitude gauss_mid = gaussian_nd(v, mid);
        Amplitude lhs_amp = normalization_n(v, f32.action.Bbar, h, n) *
                            normalization_n(v, f21.action.Bbar, h, n) * gauss_mid *
                            Amplitude(Rational(1), rhs + lin_rhs);
        Amplitude rhs_amp = normalization_n(v, f31.action.Bbar, h, n) *
                            Amplitude(Rational(1), lhs + lin_lhs);
        if (!(lhs_amp == rhs_amp)) full_ok = false;
    }
    rep.id2_residual = worst_id2;
    rep.full_composition = full_ok;

    // id3: normalization phases compose through the Weil index of H.
    {
        auto [m, d] = congruence_diagonalize(H);
        (void)m;
        UnitPhase weil;
        for (const auto& di : d) weil += lambda_v(v, di);
        UnitPhase lam_route = lambda_v(v, Rational(1)).times(long(n) - 1) + lambda_v(v, det(H));
        UnitPhase fac = weil - lam_route;
        if (fac == UnitPhase())
            rep.hilbert_factor = 1;
        else if (fac == UnitPhase(make_rational(1, 2)))
            rep.hilbert_factor = -1;
        else
            throw Error("composition_check: Weil/lambda discrepancy is not a sign");

        auto scr_a = [&](const ClassicalAction& f) {
            return lambda_v(v, Rational(1)).times(1 - long(n)) +
                   lambda_v(v, -det(f.Bbar) / rat_pow(2 * h, long(n)));
        };
        UnitPhase lhs = scr_a(f32.action) + scr_a(f21.action) + weil;
        rep.id3_holds = (lhs == scr_a(f31.action));
    }

    // lmul: lambda of reciprocal-determinant addition
    {
        Rational x = Rational(1) / det(f32.action.Bbar);
        Rational y = Rational(1) / det(f21.action.Bbar);
        rep.lmul_holds =
            (lambda_v(v, x + y) == lambda_v(v, Rational(1) / det(f31.action.Bbar)));
    }
    return rep;
}

// --- ball integrals of kernels (n = 1) ----------------------------------------

// Exact int over |x1|_p <= p^N of K(x2, t2; x1, t1) dx1 for a 1-d kernel,
// through the closed-form ball Gaussian.
inline Amplitude kernel_ball_integral(const KernelResult& k, const Integer& p, const Rational& h,
                                      const Rational& x2, long N) {
    const ClassicalAction& f = k.form;
    Rational a = -f.Cbar(0, 0) / (2 * h);
    Rational b = -(f.Bbar(0, 0) * x2 + f.Ebar[0]) / h;
    Rational c = -(Rational(1, 2) * f.Abar(0, 0) * x2 * x2 + f.Dbar[0] * x2 + f.eps_bar) / h;
    Amplitude ball = ball_gauss_affine(p, a, b, c, N);
    if (ball.is_zero()) return ball;
    Amplitude norm(k.amp.mag_sq(), k.amp.phase() - chi(Valuation::prime(p), -k.action / h));
    return norm * ball;
}

// Smeared unitarity at a finite place (n = 1): residue-sum check of
//   int int conj(K)(y2,.;y1) K(y,.;y1) Omega(y2) dy2 dy1 = Omega(y).
struct UnitarityReport {
    double max_deviation = 0.0;
    bool magnitude_exact = false;  // |N|^2 = |det(Bbar/h)|_p, asserted exactly
};

inline UnitarityReport unitarity_check(const KernelContext& ctx, const Integer& p,
                                       const BoundaryData& times, const Rational& h,
                                       long y1_radius = 1, long resolution = 3,
                                       double budget = 1e7) {
    if (ctx.L.n != 1) throw DomainError("unitarity_check: n must be 1");
    Valuation v = Valuation::prime(p);
    PropagatorRequest req{v, times, h};
    KernelResult k = kernel_v(ctx, req);

    UnitarityReport rep;
    rep.magnitude_exact = (k.amp.mag_sq() == norm_v(k.det_bbar / h, v));

    const ClassicalAction& f = k.form;
    auto s_of = [&](const Rational& a, const Rational& b) {  // action at (x2=a, x1=b)
        return f.evaluate({a}, {b});
    };
    double mag = std::sqrt(k.amp.mag_sq().get_d());
    UnitPhase nphase = k.amp.phase() - chi(v, -k.action / h);
    std::complex<double> nval = mag * nphase.to_complex();
    auto kernel_at = [&](const Rational& a, const Rational& b) {
        return nval * chi(v, -s_of(a, b) / h).to_complex();
    };

    long pm = resolution;
    double pd = p.get_d();
    double terms = std::pow(pd, double(pm)) * std::pow(pd, double(y1_radius + pm));
    if (terms > budget) throw BudgetError("unitarity_check: budget exceeded");

    Integer reps_y2 = int_pow(p, static_cast<unsigned long>(pm));
    Integer reps_y1 = int_pow(p, static_cast<unsigned long>(y1_radius + pm));
    Rational w2 = rat_pow(Rational(p), -pm);
    Rational w1 = rat_pow(Rational(p), -pm);
    Rational scale1 = rat_pow(Rational(p), -y1_radius);

    std::vector<Rational> samples = {Rational(0), Rational(1), Rational(p),
                                     Rational(1) / Rational(p)};
    for (const auto& y : samples) {
        std::complex<double> acc{0.0, 0.0};
        for (Integer j1(0); j1 < reps_y1; ++j1) {
            Rational y1 = Rational(j1) * scale1;  // |y1| <= p^{y1_radius}
            std::complex<double> inner{0.0, 0.0};
            for (Integer j2(0); j2 < reps_y2; ++j2) {
                Rational y2(j2);  // Z_p cosets
                inner += std::conj(kernel_at(y2, y1));
            }
            acc += inner * w2.get_d() * kernel_at(y, y1);
        }
        acc *= w1.get_d();
        double expect = omega(norm_v(y, v)) ? 1.0 : 0.0;
        rep.max_deviation = std::max(rep.max_deviation, std::abs(acc - expect));
    }
    return rep;
}

// Short-time limit: int_{Z_p} K(x2, t1 + T_k; x1, t1) dx1 must approach
// Omega(|x2|_p) along |T_k|_p -> 0.
struct DeltaLimitReport {
    std::vector<std::pair<long, bool>> per_step;  // (k, matches Omega)
    bool ok = true;
};

inline DeltaLimitReport delta_limit_check(const KernelContext& ctx, const Integer& p,
                                          const Rational& t1, const Rational& h,
                                          const std::vector<long>& ks) {
    if (ctx.L.n != 1) throw DomainError("delta_limit_check: n must be 1");
    Valuation v = Valuation::prime(p);
    DeltaLimitReport rep;
    std::vector<Rational> xs = {Rational(1), Rational(1) / Rational(p)};  // norms 1 and p
    for (long k : ks) {
        Rational T = rat_pow(Rational(p), k);  // |T|_p = p^{-k}
        BoundaryData bd{t1, t1 + T, {Rational(0)}, {Rational(0)}};
        PropagatorRequest req{v, bd, h};
        KernelResult kr = kernel_v(ctx, req);
        bool all = true;
        for (const auto& x2 : xs) {
            Amplitude got = kernel_ball_integral(kr, p, h, x2, 0);
            Amplitude want = omega(norm_v(x2, v)) ? Amplitude::one() : Amplitude::zero();
            if (!(got == want)) all = false;
        }
        rep.per_step.emplace_back(k, all);
        if (!all) rep.ok = false;
    }
    return rep;
}

}  // namespace padelic

#endif
