#pragma once

// Infinite-dimensional representations pi_lambda of U(h_n) on polynomial
// coefficient differential operators on R^n, their matrices in the
// harmonic-oscillator eigenbasis, the one-dimensional representations and
// the characters chi_w.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "heisenberg/algebra.hpp"
#include "heisenberg/errors.hpp"
#include "heisenberg/gaussian_rational.hpp"
#include "heisenberg/group.hpp"

namespace heisenberg {

using cplx = std::complex<double>;

namespace detail {
inline bool is_zero_coeff(const GaussianRational& c) { return c.is_zero(); }
inline bool is_zero_coeff(const cplx& c) { return c == cplx(0.0, 0.0); }
}  // namespace detail

/// x-exponent and d-exponent of one normal-ordered term x^p d^q.
struct WeylIndex {
    std::vector<unsigned> p;
    std::vector<unsigned> q;
    friend auto operator<=>(const WeylIndex&, const WeylIndex&) = default;
};

/// Polynomial-coefficient differential operator sum c_{p,q} x^p d^q on R^n,
/// normal ordered with every x to the left of every d ([d_j, x_j] = 1).
template <class Coeff>
class BasicWeylOperator {
public:
    using Terms = std::map<WeylIndex, Coeff>;

    explicit BasicWeylOperator(std::size_t n) : n_(n)
    {
        if (n == 0) throw DomainError("dimension n must be >= 1");
    }

    static BasicWeylOperator scalar(std::size_t n, const Coeff& c)
    {
        BasicWeylOperator w(n);
        w.add_term({std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)}, c);
        return w;
    }
    /// Multiplication by x_j (1-based).
    static BasicWeylOperator position(std::size_t n, unsigned j, const Coeff& c = Coeff(1))
    {
        BasicWeylOperator w(n);
        WeylIndex idx{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
        idx.p.at(j - 1) = 1;
        w.add_term(idx, c);
        return w;
    }
    /// d/dx_j (1-based).
    static BasicWeylOperator derivative(std::size_t n, unsigned j, const Coeff& c = Coeff(1))
    {
        BasicWeylOperator w(n);
        WeylIndex idx{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
        idx.q.at(j - 1) = 1;
        w.add_term(idx, c);
        return w;
    }

    std::size_t dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Largest |p| + |q| over all terms: how far one term moves an oscillator level.
    unsigned order() const
    {
        unsigned d = 0;
        for (const auto& [idx, c] : terms_) {
            unsigned s = 0;
            for (std::size_t j = 0; j < n_; ++j) s += idx.p[j] + idx.q[j];
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(const WeylIndex& idx, const Coeff& c)
    {
        if (idx.p.size() != n_ || idx.q.size() != n_) throw DomainError("Weyl index has wrong length");
        if (detail::is_zero_coeff(c)) return;
        auto [it, inserted] = terms_.try_emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (detail::is_zero_coeff(it->second)) terms_.erase(it);
        }
    }

    BasicWeylOperator& operator+=(const BasicWeylOperator& o)
    {
        check(o);
        for (const auto& [idx, c] : o.terms_) add_term(idx, c);
        return *this;
    }
    BasicWeylOperator& operator-=(const BasicWeylOperator& o)
    {
        check(o);
        for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
        return *this;
    }
    BasicWeylOperator& operator*=(const Coeff& s)
    {
        BasicWeylOperator out(n_);
        for (const auto& [idx, c] : terms_) out.add_term(idx, c * s);
        return *this = std::move(out);
    }

    friend BasicWeylOperator operator+(BasicWeylOperator a, const BasicWeylOperator& b) { return a += b; }
    friend BasicWeylOperator operator-(BasicWeylOperator a, const BasicWeylOperator& b) { return a -= b; }
    friend BasicWeylOperator operator*(BasicWeylOperator a, const Coeff& s) { return a *= s; }
    friend BasicWeylOperator operator*(const Coeff& s, BasicWeylOperator a) { return a *= s; }

    /// Composition a o b, renormal-ordered with d^q x^p = sum_k k! C(q,k) C(p,k) x^{p-k} d^{q-k}.
    friend BasicWeylOperator operator*(const BasicWeylOperator& a, const BasicWeylOperator& b)
    {
        a.check(b);
        const std::size_t n = a.n_;
        BasicWeylOperator out(n);
        for (const auto& [ia, ca] : a.terms_) {
            for (const auto& [ib, cb] : b.terms_) {
                std::vector<unsigned> kmax(n), k(n, 0);
                for (std::size_t j = 0; j < n; ++j) kmax[j] = std::min(ia.q[j], ib.p[j]);
                while (true) {
                    WeylIndex idx{std::vector<unsigned>(n), std::vector<unsigned>(n)};
                    mpz_class exact_weight = 1;
                    for (std::size_t j = 0; j < n; ++j) {
                        idx.p[j] = ia.p[j] + ib.p[j] - k[j];
                        idx.q[j] = ia.q[j] - k[j] + ib.q[j];
                        exact_weight *= falling(ia.q[j], k[j]) * falling(ib.p[j], k[j]) / factorial(k[j]);
                    }
                    out.add_term(idx, ca * cb * from_integer(exact_weight));

                    std::size_t j = 0;
                    while (j < n && k[j] == kmax[j]) k[j++] = 0;
                    if (j == n) break;
                    ++k[j];
                }
            }
        }
        return out;
    }

    friend bool operator==(const BasicWeylOperator&, const BasicWeylOperator&) = default;

private:
    void check(const BasicWeylOperator& o) const
    {
        if (o.n_ != n_) throw DomainError("Weyl operator dimension mismatch");
    }
    static mpz_class falling(unsigned n, unsigned k)
    {
        mpz_class r = 1;
        for (unsigned i = 0; i < k; ++i) r *= n - i;
        return r;
    }
    static mpz_class factorial(unsigned k)
    {
        mpz_class r;
        mpz_fac_ui(r.get_mpz_t(), k);
        return r;
    }
    static Coeff from_integer(const mpz_class& v)
    {
        if constexpr (std::is_same_v<Coeff, GaussianRational>) return GaussianRational(Rational(v));
        else return Coeff(v.get_d());
    }

    std::size_t n_;
    Terms terms_;
};

using WeylOperator = BasicWeylOperator<cplx>;
using ExactWeylOperator = BasicWeylOperator<GaussianRational>;

template <class Coeff>
BasicWeylOperator<Coeff> commutator(const BasicWeylOperator<Coeff>& a, const BasicWeylOperator<Coeff>& b)
{
    return a * b - b * a;
}

WeylOperator to_float(const ExactWeylOperator& w);

/// Nonzero real parameter of pi_lambda.
class RepParameter {
public:
    explicit RepParameter(double lambda);
    double value() const { return lambda_; }
    int sign() const { return lambda_ > 0 ? 1 : -1; }
    double sqrt_abs() const;

private:
    double lambda_;
};

/// Exact parameter lambda = sign * root^2 with rational root > 0.
struct ExactRepParameter {
    Rational root;
    int sign = 1;

    Rational value() const { return Rational(sign) * root * root; }
    /// Succeeds when |lambda| is the square of a rational number.
    static std::optional<ExactRepParameter> from_rational(const Rational& lambda);
};

enum class Convention {
    /// pi(X_j) = |l|^{1/2} d_j, pi(Y_j) = i |l|^{1/2} sgn(l) x_j, pi(T) = i l, exactly as printed.
    PaperLiteral,
    /// Same X_j and T; pi(Y_j) = -4i sgn(l) |l|^{1/2} x_j so that [pi(Y_j), pi(X_j)] = 4 pi(T).
    Homomorphic,
};

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

WeylOperator represent(const AlgebraElement& p, const RepParameter& lambda, Convention convention = Convention::Homomorphic);
ExactWeylOperator represent(const AlgebraElement& p, const ExactRepParameter& lambda,
                            Convention convention = Convention::Homomorphic);

struct HomomorphismAudit {
    Convention convention;
    /// [pi(Y_1), pi(X_1)] as a Weyl operator (a scalar).
    ExactWeylOperator bracket_image;
    /// 4 pi(T).
    ExactWeylOperator expected;
    /// bracket_image / expected as a scalar (1 under a homomorphism).
    GaussianRational mismatch_factor;
    bool passes = false;
    /// Every pair of generators satisfies pi([G,H]) = [pi(G), pi(H)].
    bool all_generator_pairs = false;
};

HomomorphismAudit homomorphism_audit(std::size_t n, const ExactRepParameter& lambda, Convention convention);

/// Matrix of an operator in the first K eigenfunctions (per axis) of -d^2 + omega^2 x^2.
struct HermiteMatrix {
    std::size_t n = 1;
    std::size_t K = 0;  // per-axis truncation; the matrix is K^n x K^n
    double omega = 4.0;
    Eigen::MatrixXcd entries;

    cplx trace() const { return entries.trace(); }
    double hilbert_schmidt_norm() const { return entries.norm(); }
    double trace_norm() const;
    double operator_norm() const;
    double sigma_min() const;
};

/// Builds the tridiagonal ladder realizations of x and d in a padded basis,
/// composes them term by term and crops to K, so every returned entry is exact.
HermiteMatrix hermite_matrix(const WeylOperator& w, std::size_t K, double omega = 4.0);

/// x and d alone (one axis), size K x K.
Eigen::MatrixXd ladder_position(std::size_t K, double omega);
Eigen::MatrixXd ladder_derivative(std::size_t K, double omega);

struct ScalingReport {
    unsigned degree = 0;
    double lambda = 0;
    /// Reference parameter: +1 for lambda > 0, -1 for lambda < 0.
    int reference = 1;
    /// Checked in exact arithmetic (|lambda| a rational square) or in floating point.
    bool exact = false;
    double max_abs_defect = 0;
    bool passes = false;
};

/// Checks pi_lambda(P) = |lambda|^{alpha/2} pi_{sgn lambda}(P) coefficient-wise.
/// Throws DomainError for non-homogeneous P.
ScalingReport scaling_check(const AlgebraElement& p, double lambda, Convention convention = Convention::Homomorphic);

/// One-dimensional representation X_j -> i a_j, Y_j -> i b_j, T -> 0.
cplx finite_dim_rep(const AlgebraElement& p, const std::vector<double>& a, const std::vector<double>& b);

/// chi_w(z,t) = exp(-i Re <w,z>), <w,z> = sum_j w_j conj(z_j).
cplx character(const std::vector<cplx>& w, const GroupPointF& g);

std::string to_string(const WeylOperator& w);
std::string to_string(const ExactWeylOperator& w);
nlohmann::json to_json(const WeylOperator& w);
nlohmann::json to_json(const HermiteMatrix& m);
/// Rows of "re,im,re,im,..." pairs.
std::string to_csv(const Eigen::MatrixXcd& m);

}  // namespace heisenberg
