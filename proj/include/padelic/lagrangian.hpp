#ifndef PADELIC_LAGRANGIAN_HPP
#define PADELIC_LAGRANGIAN_HPP

#include <json.hpp>

#include "matrix.hpp"
#include "series.hpp"

namespace padelic {

using SeriesMatrix = Matrix<SeriesQ>;
using SeriesVector = std::vector<SeriesQ>;

// L = 1/2 qdot^T A qdot + qdot^T B q + 1/2 q^T C q + D^T qdot + E^T q + eps,
// all coefficients power series in t over Q. A symmetric and invertible at
// t = 0, C symmetric.
struct QuadraticLagrangian {
    size_t n = 1;
    SeriesMatrix A, B, C;
    SeriesVector D, E;
    SeriesQ eps;

    void validate() const {
        auto square = [&](const SeriesMatrix& m) { return m.rows() == n && m.cols() == n; };
        if (!square(A) || !square(B) || !square(C) || D.size() != n || E.size() != n)
            throw DomainError("QuadraticLagrangian: shape mismatch");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                if (A(i, j) != A(j, i)) throw DomainError("QuadraticLagrangian: A not symmetric");
                if (C(i, j) != C(j, i)) throw DomainError("QuadraticLagrangian: C not symmetric");
            }
        Matrix<Rational> a0(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) a0(i, j) = A(i, j).coeff(0);
        if (det(a0) == 0) throw SingularError("QuadraticLagrangian: A(0) is singular");
    }

    static QuadraticLagrangian zero(size_t n) {
        QuadraticLagrangian L;
        L.n = n;
        L.A = SeriesMatrix(n, n, SeriesQ(0));
        L.B = SeriesMatrix(n, n, SeriesQ(0));
        L.C = SeriesMatrix(n, n, SeriesQ(0));
        L.D = SeriesVector(n, SeriesQ(0));
        L.E = SeriesVector(n, SeriesQ(0));
        L.eps = SeriesQ(0);
        return L;
    }

    // L = 1/2 sum qdot_k^2
    static QuadraticLagrangian free_particle(size_t n = 1) {
        auto L = zero(n);
        for (size_t i = 0; i < n; ++i) L.A(i, i) = SeriesQ(1);
        return L;
    }

    // L = 1/2 qdot^2 - 1/2 omega_sq q^2
    static QuadraticLagrangian oscillator(const Rational& omega_sq) {
        auto L = zero(1);
        L.A(0, 0) = SeriesQ(1);
        L.C(0, 0) = SeriesQ(-omega_sq);
        return L;
    }

    // L = 1/2 qdot^2 + c q
    static QuadraticLagrangian driven(const Rational& c) {
        auto L = zero(1);
        L.A(0, 0) = SeriesQ(1);
        L.E[0] = SeriesQ(c);
        return L;
    }
};

// Coefficient series of A qddot + (Adot + B - B^T) qdot + (Bdot - C) q = E - Ddot.
struct ODESystem {
    SeriesMatrix M2, M1, M0;
    SeriesVector rhs;
};

inline ODESystem euler_lagrange(const QuadraticLagrangian& L) {
    L.validate();
    size_t n = L.n;
    ODESystem sys;
    sys.M2 = L.A;
    sys.M1 = SeriesMatrix(n, n);
    sys.M0 = SeriesMatrix(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            sys.M1(i, j) = L.A(i, j).derivative() + L.B(i, j) - L.B(j, i);
            sys.M0(i, j) = L.B(i, j).derivative() - L.C(i, j);
        }
    sys.rhs = SeriesVector(n);
    for (size_t i = 0; i < n; ++i) sys.rhs[i] = L.E[i] - L.D[i].derivative();
    return sys;
}

// --- JSON ingestion (CLI file format) ---------------------------------------

inline SeriesQ series_from_json(const nlohmann::json& j) {
    std::vector<Rational> c;
    for (const auto& s : j) c.push_back(rat_from_string(s.get<std::string>()));
    return SeriesQ(std::move(c), SeriesQ::EXACT);
}

inline nlohmann::json series_to_json(const SeriesQ& f) {
    nlohmann::json j = nlohmann::json::array();
    for (int k = 0; k <= std::max(f.degree(), 0); ++k) j.push_back(rat_to_string(f.coeff(k)));
    return j;
}

// {"n": 1, "A": [[["1"]]], "B": ..., "C": ..., "D": [["0"]], "E": ..., "eps": ["0"]}
// Missing blocks default to zero.
inline QuadraticLagrangian lagrangian_from_json(const nlohmann::json& j) {
    size_t n = j.at("n").get<size_t>();
    auto L = QuadraticLagrangian::zero(n);
    auto load_matrix = [&](const char* key, SeriesMatrix& dst) {
        if (!j.contains(key)) return;
        const auto& rows = j.at(key);
        if (rows.size() != n) throw DomainError(std::string("lagrangian: bad row count for ") + key);
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k) dst(i, k) = series_from_json(rows[i][k]);
    };
    auto load_vector = [&](const char* key, SeriesVector& dst) {
        if (!j.contains(key)) return;
        const auto& rows = j.at(key);
        if (rows.size() != n) throw DomainError(std::string("lagrangian: bad length for ") + key);
        for (size_t i = 0; i < n; ++i) dst[i] = series_from_json(rows[i]);
    };
    load_matrix("A", L.A);
    load_matrix("B", L.B);
    load_matrix("C", L.C);
    load_vector("D", L.D);
    load_vector("E", L.E);
    if (j.contains("eps")) L.eps = series_from_json(j.at("eps"));
    L.validate();
    return L;
}

}  // namespace padelic

#endif
