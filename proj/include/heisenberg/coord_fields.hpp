#pragma once

// Coordinate realization of U(h_n) on R^{2n+1} with coordinates
// (x_1..x_n, y_1..y_n, t):
//   X_j = d/dx_j + 2 y_j d/dt,   Y_j = d/dy_j - 2 x_j d/dt,   T = d/dt.
// Test functions are polynomials, so translations and invariance checks
// are exact.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "heisenberg/algebra.hpp"
#include "heisenberg/gaussian_rational.hpp"
#include "heisenberg/group.hpp"

namespace heisenberg {

/// Exponents of (x_1..x_n, y_1..y_n, t); length 2n+1.
using Exponents = std::vector<unsigned>;

class PolyFunction {
public:
    using Terms = std::map<Exponents, GaussianRational, std::greater<>>;

    explicit PolyFunction(std::size_t n);

    static PolyFunction constant(std::size_t n, const GaussianRational& c);
    static PolyFunction monomial(std::size_t n, const Exponents& e, const GaussianRational& c = GaussianRational(1));
    static PolyFunction x(std::size_t n, unsigned j);
    static PolyFunction y(std::size_t n, unsigned j);
    static PolyFunction t(std::size_t n);

    std::size_t dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned total_degree() const;

    void add_term(const Exponents& e, const GaussianRational& c);

    /// Partial derivative in variable index var (0..2n).
    PolyFunction derivative(std::size_t var) const;

    PolyFunction& operator+=(const PolyFunction& o);
    PolyFunction& operator-=(const PolyFunction& o);
    PolyFunction& operator*=(const GaussianRational& c);
    friend PolyFunction operator+(PolyFunction a, const PolyFunction& b) { return a += b; }
    friend PolyFunction operator-(PolyFunction a, const PolyFunction& b) { return a -= b; }
    friend PolyFunction operator*(PolyFunction a, const GaussianRational& c) { return a *= c; }
    friend PolyFunction operator*(const GaussianRational& c, PolyFunction a) { return a *= c; }
    friend PolyFunction operator*(const PolyFunction& a, const PolyFunction& b);

    friend bool operator==(const PolyFunction&, const PolyFunction&) = default;

private:
    std::size_t n_;
    Terms terms_;
};

/// Every monomial of total degree <= max_degree in 2n+1 variables.
std::vector<PolyFunction> monomial_basis(std::size_t n, unsigned max_degree);

/// sum_alpha c_alpha(x,y,t) d^alpha, with polynomial coefficients.
class CoordOperator {
public:
    using Terms = std::map<Exponents, PolyFunction, std::greater<>>;

    explicit CoordOperator(std::size_t n);

    /// Multiplication by a polynomial (order zero).
    static CoordOperator multiplication(const PolyFunction& f);
    /// coeff * d^alpha.
    static CoordOperator derivative(std::size_t n, const Exponents& alpha, const PolyFunction& coeff);

    std::size_t dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& alpha, const PolyFunction& coeff);

    CoordOperator& operator+=(const CoordOperator& o);
    CoordOperator& operator-=(const CoordOperator& o);
    friend CoordOperator operator+(CoordOperator a, const CoordOperator& b) { return a += b; }
    friend CoordOperator operator-(CoordOperator a, const CoordOperator& b) { return a -= b; }
    friend CoordOperator operator*(const GaussianRational& c, CoordOperator a);
    /// Composition a o b (Leibniz rule).
    friend CoordOperator operator*(const CoordOperator& a, const CoordOperator& b);

    friend bool operator==(const CoordOperator&, const CoordOperator&) = default;

private:
    std::size_t n_;
    Terms terms_;
};

PolyFunction apply(const CoordOperator& op, const PolyFunction& f);

/// Applies P monomial by monomial through the vector fields X_j, Y_j, T.
PolyFunction apply(const AlgebraElement& p, const PolyFunction& f);

/// Coordinate form of P as a single differential operator (composed symbolically).
CoordOperator realize(const AlgebraElement& p);

/// (L_g f)(p) = f(g^{-1} p).
PolyFunction left_translate(const PolyFunction& f, const GroupPoint& g);

/// apply(P, L_g f) == L_g apply(P, f), exactly.
bool invariance_check(const AlgebraElement& p, const GroupPoint& g, const PolyFunction& f);
bool invariance_check(const CoordOperator& op, const GroupPoint& g, const PolyFunction& f);

struct BracketAudit {
    Generator left;
    Generator right;
    /// [left, right] computed by composing coordinate operators.
    CoordOperator coordinate_commutator;
    /// The bracket as dictated by the algebra relations.
    AlgebraElement algebra_commutator;
    /// Symbolic operator identity coordinate_commutator == realize(algebra_commutator).
    bool operator_match = false;
    /// Same identity tested on every monomial of degree <= probe_degree.
    bool polynomial_match = false;
};

BracketAudit bracket_audit(std::size_t n, const Generator& left, const Generator& right, unsigned probe_degree = 3);
/// [Y_j, X_k], expected 4 delta_jk T.
BracketAudit bracket_audit(std::size_t n, unsigned j, unsigned k, unsigned probe_degree = 3);

/// The second-order operator sum_j d_xx + d_yy + 4y d_x d_t - 4x d_y d_t + 4(x^2+y^2) d_tt
/// written out term by term.
CoordOperator laplacian_expanded_display(std::size_t n);
/// d_x - i d_y + (2y - 2ix) d_t and d_x + i d_y + (2y + 2ix) d_t on R^3, as printed.
CoordOperator factor_A_display();
CoordOperator factor_A_dagger_display();

/// "2*x1^2*t - 3i*y1".
std::string to_string(const PolyFunction& f);
/// "(x1)*dx1 + (1)*dt" style listing.
std::string to_string(const CoordOperator& op);
/// {"n": n, "terms": [{"exponents": [...], "re": "..", "im": ".."}]}
nlohmann::json to_json(const PolyFunction& f);
nlohmann::json to_json(const CoordOperator& op);

}  // namespace heisenberg
