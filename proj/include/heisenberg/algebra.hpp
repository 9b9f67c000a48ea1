#pragma once

// Universal enveloping algebra U(h_n) of the Heisenberg Lie algebra with
// basis X_1..X_n, Y_1..Y_n, T and the single nontrivial bracket
//   [Y_j, X_k] = 4 delta_jk T.
// Elements are stored in PBW normal form X^a Y^b T^c with
// Gaussian-rational coefficients, so every identity check is exact.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heisenberg/gaussian_rational.hpp"

namespace heisenberg {

struct Generator {
    enum class Kind { X = 0, Y = 1, T = 2 };
    Kind kind = Kind::T;
    unsigned index = 0;  // 1-based for X, Y; 0 for T

    static Generator x(unsigned j) { return {Kind::X, j}; }
    static Generator y(unsigned j) { return {Kind::Y, j}; }
    static Generator t() { return {Kind::T, 0}; }

    friend auto operator<=>(const Generator&, const Generator&) = default;
};

std::string to_string(const Generator& g);

/// X_1^{a_1}...X_n^{a_n} Y_1^{b_1}...Y_n^{b_n} T^c.
struct Monomial {
    std::vector<unsigned> a;
    std::vector<unsigned> b;
    unsigned c = 0;

    static Monomial one(std::size_t n) { return {std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0), 0}; }

    std::size_t dim() const { return a.size(); }
    /// Weighted degree |a| + |b| + 2c.
    unsigned degree() const;
    /// Number of generator letters |a| + |b| + c.
    unsigned length() const;
    bool is_one() const { return length() == 0; }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Terms iterate X-heavy first, constants last (the canonical print order).
using TermMap = std::map<Monomial, GaussianRational, std::greater<>>;

class AlgebraElement {
public:
    explicit AlgebraElement(std::size_t n);

    static AlgebraElement scalar(std::size_t n, const GaussianRational& c);
    static AlgebraElement generator(std::size_t n, const Generator& g);
    static AlgebraElement monomial(const Monomial& m, const GaussianRational& c = GaussianRational(1));

    std::size_t dim() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Coefficient of m (zero if absent).
    GaussianRational coefficient(const Monomial& m) const;

    /// Adds c*m, dropping the entry if it cancels.
    void add_term(const Monomial& m, const GaussianRational& c);

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(const GaussianRational& c);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator-(AlgebraElement a) { return a *= GaussianRational(-1); }
    friend AlgebraElement operator*(AlgebraElement a, const GaussianRational& c) { return a *= c; }
    friend AlgebraElement operator*(const GaussianRational& c, AlgebraElement a) { return a *= c; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

private:
    std::size_t n_;
    TermMap terms_;
};

AlgebraElement multiply(const AlgebraElement& p, const AlgebraElement& q);
AlgebraElement commutator(const AlgebraElement& p, const AlgebraElement& q);
AlgebraElement power(const AlgebraElement& p, unsigned k);

enum class RewriteOrder { LeftToRight, RightToLeft };

/// Rewrites coeff * g_1 g_2 ... g_m into PBW normal form by repeatedly
/// swapping the first (or last) out-of-order adjacent pair, emitting the
/// 4T contraction whenever the pair is Y_j X_j.
AlgebraElement pbw_normalize(std::size_t n, const std::vector<Generator>& word,
                             const GaussianRational& coeff = GaussianRational(1),
                             RewriteOrder order = RewriteOrder::LeftToRight);

/// Common weighted degree of every term, or nullopt when mixed.
/// Throws DomainError on the zero element.
std::optional<unsigned> homogeneous_degree(const AlgebraElement& p);

AlgebraElement x_field(std::size_t n, unsigned j);
AlgebraElement y_field(std::size_t n, unsigned j);
AlgebraElement t_field(std::size_t n);
/// Z_j = (X_j - i Y_j) / 2.
AlgebraElement z_field(std::size_t n, unsigned j);
/// Zbar_j = (X_j + i Y_j) / 2.
AlgebraElement zbar_field(std::size_t n, unsigned j);

/// 1/4 sum_j (X_j^2 + Y_j^2) + i alpha T.
AlgebraElement sublaplacian(std::size_t n, const GaussianRational& alpha);
/// -1/2 sum_j (Z_j Zbar_j + Zbar_j Z_j) + i alpha T, built from z_field/zbar_field.
/// Differs from sublaplacian() by -1/2 sum_j (X_j^2 + Y_j^2); kept for the identity audit.
AlgebraElement sublaplacian_complex_form(std::size_t n, const GaussianRational& alpha);
/// sum_j X_j^2 + Y_j^2.
AlgebraElement heisenberg_laplacian(std::size_t n);
/// X_1 - i Y_1 on H_1.
AlgebraElement factor_A();
/// X_1 + i Y_1 on H_1.
AlgebraElement factor_A_dagger();
/// (sum_j X_j^2 + Y_j^2)^{power}.
AlgebraElement preconditioner(std::size_t n, unsigned power);

/// Anti-automorphism with X_j -> -X_j, Y_j -> -Y_j, T -> -T.
AlgebraElement formal_transpose(const AlgebraElement& p);

/// Automorphism X_j, Y_j -> mu X_j, mu Y_j and T -> mu^2 T.
AlgebraElement dilate(const AlgebraElement& p, const Rational& mu);

/// Canonical text, e.g. "(3/4 + 1/2i)*X1^2*Y2*T - 4*T".
std::string to_string(const AlgebraElement& p);
std::string to_string(const Monomial& m);

/// {"n": n, "terms": [{"x": [...], "y": [...], "t": c, "re": "p/q", "im": "p/q"}, ...]}
nlohmann::json to_json(const AlgebraElement& p);
AlgebraElement algebra_element_from_json(const nlohmann::json& j);

}  // namespace heisenberg
