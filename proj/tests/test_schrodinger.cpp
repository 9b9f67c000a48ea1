#include <doctest.h>

#include <cmath>

#include "heisenberg/schrodinger.hpp"
#include "test_support.hpp"

using namespace heisenberg;
namespace ht = heisenberg::testing;

namespace {

const GaussianRational I = GaussianRational::i();

ExactRepParameter exact_lambda(long num, long den = 1)
{
    auto p = ExactRepParameter::from_rational(Rational(num, den));
    REQUIRE(p.has_value());
    return *p;
}

Eigen::MatrixXcd random_matrix(Eigen::Index k)
{
    Eigen::MatrixXcd m(k, k);
    std::normal_distribution<double> g;
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c) m(r, c) = cplx(g(ht::rng()), g(ht::rng()));
    return m;
}

}  // namespace

TEST_CASE("generator images")
{
    const auto t = represent(t_field(1), RepParameter(2.5));
    REQUIRE(t.terms().size() == 1);
    CHECK(t.terms().begin()->second == cplx(0.0, 2.5));

    const auto x = represent(x_field(1, 1), exact_lambda(4));
    CHECK(x == ExactWeylOperator::derivative(1, 1, GaussianRational(2)));
    CHECK(to_string(x) == "2*d1");

    const auto y_lit = represent(y_field(1, 1), exact_lambda(-9), Convention::PaperLiteral);
    CHECK(y_lit == ExactWeylOperator::position(1, 1, GaussianRational(-3) * I));
    const auto y_hom = represent(y_field(1, 1), exact_lambda(-9), Convention::Homomorphic);
    CHECK(y_hom == ExactWeylOperator::position(1, 1, GaussianRational(12) * I));

    CHECK_THROWS_AS(RepParameter(0.0), DomainError);
    CHECK_FALSE(ExactRepParameter::from_rational(Rational(2)).has_value());
    CHECK(ExactRepParameter::from_rational(Rational(9, 4))->root == Rational(3, 2));
}

TEST_CASE("weyl composition normal ordering")
{
    const auto d = ExactWeylOperator::derivative(1, 1);
    const auto x = ExactWeylOperator::position(1, 1);
    CHECK(commutator(d, x) == ExactWeylOperator::scalar(1, 1));
    // d^2 x^2 = x^2 d^2 + 4 x d + 2
    const auto lhs = d * d * x * x;
    CHECK(to_string(lhs) == "2 + 4*x1*d1 + 1*x1^2*d1^2");
}

TEST_CASE("homomorphism audit")
{
    for (const auto& lam : {exact_lambda(1), exact_lambda(-1), exact_lambda(4), exact_lambda(-1, 4)}) {
        const auto hom = homomorphism_audit(1, lam, Convention::Homomorphic);
        CHECK(hom.passes);
        CHECK(hom.all_generator_pairs);
        CHECK(hom.mismatch_factor == GaussianRational(1));

        // Literal images give [pi(Y), pi(X)] = -i lambda against 4 pi(T) = 4 i lambda.
        const auto lit = homomorphism_audit(1, lam, Convention::PaperLiteral);
        CHECK_FALSE(lit.passes);
        CHECK_FALSE(lit.all_generator_pairs);
        CHECK(lit.mismatch_factor == GaussianRational(Rational(-1, 4)));
        CHECK(lit.bracket_image == ExactWeylOperator::scalar(1, -I * GaussianRational(lam.value())));
    }
    CHECK(homomorphism_audit(2, exact_lambda(1), Convention::Homomorphic).all_generator_pairs);
}

TEST_CASE("represent is multiplicative")
{
    for (std::size_t n : {1U, 2U}) {
        for (int trial = 0; trial < 40; ++trial) {
            const auto p = ht::random_element(n);
            const auto q = ht::random_element(n);
            const auto lam = exact_lambda(trial % 2 ? 4 : -1, trial % 3 ? 1 : 9);
            CHECK(represent(p * q, lam) == represent(p, lam) * represent(q, lam));
            CHECK(commutator(represent(p, lam), represent(q, lam)) == represent(commutator(p, q), lam));
        }
    }
    // The literal images do not respect the bracket, so PBW reordering breaks multiplicativity.
    const auto lam = exact_lambda(1);
    const auto y = y_field(1, 1);
    const auto x = x_field(1, 1);
    const auto lit = Convention::PaperLiteral;
    CHECK(represent(x * y, lam, lit) == represent(x, lam, lit) * represent(y, lam, lit));
    CHECK_FALSE(represent(y * x, lam, lit) == represent(y, lam, lit) * represent(x, lam, lit));
}

TEST_CASE("oscillator spectrum of the sublaplacian")
{
    const auto w = represent(sublaplacian(1, 0), RepParameter(1.0));
    const auto m = hermite_matrix(w, 64, 4.0);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(64, 64);
    for (int k = 0; k < 64; ++k) expected(k, k) = -(2.0 * k + 1.0);
    CHECK((m.entries - expected).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(m.sigma_min() == doctest::Approx(1.0).epsilon(1e-12));

    const auto id = hermite_matrix(WeylOperator::scalar(1, 1.0), 7, 2.0);
    CHECK(id.entries.isApprox(Eigen::MatrixXcd::Identity(7, 7)));
    CHECK_THROWS_AS(hermite_matrix(w, 0), DomainError);
    CHECK_THROWS_AS(hermite_matrix(w, 4, 0.0), DomainError);
}

TEST_CASE("position ladder at omega 1")
{
    const auto m = hermite_matrix(WeylOperator::position(1, 1), 6, 1.0);
    for (int k = 0; k < 6; ++k)
        for (int j = 0; j < 6; ++j) {
            const double expected = std::abs(k - j) == 1 ? std::sqrt((std::min(k, j) + 1) / 2.0) : 0.0;
            CHECK(std::abs(m.entries(k, j) - expected) < 1e-15);
        }
}

TEST_CASE("hermite matrices multiply up to the truncation tail")
{
    const std::size_t K = 20;
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = represent(ht::random_element(1, 3, 3), RepParameter(1.0));
        const auto b = represent(ht::random_element(1, 3, 3), RepParameter(-1.0));
        const auto d = static_cast<Eigen::Index>(b.order());
        const auto prod = hermite_matrix(a * b, K, 4.0).entries;
        const auto composed = (hermite_matrix(a, K, 4.0).entries * hermite_matrix(b, K, 4.0).entries).eval();
        const Eigen::Index keep = static_cast<Eigen::Index>(K) - d;
        const double scale = std::max(1.0, prod.cwiseAbs().maxCoeff());
        CHECK((prod - composed).topLeftCorner(keep, keep).cwiseAbs().maxCoeff() <= 1e-9 * scale);
    }
}

TEST_CASE("two-dimensional tensor indexing")
{
    const auto w = represent(sublaplacian(2, 0), RepParameter(1.0));
    const auto m = hermite_matrix(w, 5, 4.0);
    REQUIRE(m.entries.rows() == 25);
    for (int k1 = 0; k1 < 5; ++k1)
        for (int k2 = 0; k2 < 5; ++k2) {
            const int idx = 5 * k1 + k2;
            CHECK(m.entries(idx, idx).real() == doctest::Approx(-(2.0 * k1 + 1) - (2.0 * k2 + 1)));
        }
    CHECK((m.entries - Eigen::MatrixXcd(m.entries.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scaling law")
{
    const std::vector<AlgebraElement> ops{t_field(1), heisenberg_laplacian(1), factor_A(), factor_A_dagger(),
                                          preconditioner(1, 2)};
    for (const auto& p : ops)
        for (double lambda : {0.25, 4.0, 9.0, -4.0}) {
            const auto r = scaling_check(p, lambda);
            CHECK(r.exact);
            CHECK(r.passes);
            CHECK(r.max_abs_defect == 0.0);
        }
    const auto approx = scaling_check(heisenberg_laplacian(1), 2.0);
    CHECK_FALSE(approx.exact);
    CHECK(approx.passes);

    const auto t9 = represent(t_field(1), exact_lambda(9));
    CHECK(t9 == ExactWeylOperator::scalar(1, GaussianRational(9) * I));
    CHECK_THROWS_AS(scaling_check(x_field(1, 1) + t_field(1), 4.0), DomainError);
}

TEST_CASE("one-dimensional representations and characters")
{
    CHECK(finite_dim_rep(t_field(1), {1.0}, {2.0}) == cplx(0.0));
    CHECK(finite_dim_rep(x_field(1, 1) * x_field(1, 1), {2.0}, {0.0}) == cplx(-4.0));
    CHECK(finite_dim_rep(commutator(y_field(1, 1), x_field(1, 1)), {1.5}, {-0.5}) == cplx(0.0));
    CHECK_THROWS_AS(finite_dim_rep(t_field(2), {1.0}, {1.0}), DomainError);

    const std::vector<cplx> w{cplx(0.7, -1.3)};
    CHECK(std::abs(character(w, to_float(identity(1))) - 1.0) < 1e-15);
    CHECK(std::abs(character({cplx(0.0)}, to_float(ht::random_point(1))) - 1.0) < 1e-15);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = to_float(ht::random_point(1));
        const auto h = to_float(ht::random_point(1));
        CHECK(std::abs(character(w, multiply(g, h)) - character(w, g) * character(w, h)) < 1e-12);
        CHECK(std::abs(std::abs(character(w, g)) - 1.0) < 1e-14);
    }
}

TEST_CASE("trace inequality")
{
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::Index k = ht::uniform_int(1, 16);
        const auto c = random_matrix(k);
        const auto d = random_matrix(k);
        const double lhs = std::abs((c * d).trace());
        const double rhs = std::sqrt((c * c.adjoint()).trace().real()) * std::sqrt((d * d.adjoint()).trace().real());
        CHECK(lhs <= rhs * (1 + 1e-12));

        const cplx s(0.3, -2.0);
        const Eigen::MatrixXcd e = s * c.adjoint();
        const double lhs_eq = std::abs((c * e).trace());
        const double rhs_eq = std::sqrt((c * c.adjoint()).trace().real()) * std::sqrt((e * e.adjoint()).trace().real());
        CHECK(std::abs(lhs_eq - rhs_eq) <= 1e-12 * rhs_eq);
    }
}

TEST_CASE("norms and exports")
{
    HermiteMatrix m{1, 2, 1.0, Eigen::MatrixXcd::Zero(2, 2)};
    m.entries(0, 0) = 3.0;
    m.entries(1, 1) = cplx(0.0, -4.0);
    CHECK(m.trace() == cplx(3.0, -4.0));
    CHECK(m.hilbert_schmidt_norm() == doctest::Approx(5.0));
    CHECK(m.trace_norm() == doctest::Approx(7.0));
    CHECK(m.operator_norm() == doctest::Approx(4.0));
    CHECK(m.sigma_min() == doctest::Approx(3.0));
    CHECK(to_csv(m.entries) == "3,0,0,0\n0,0,0,-4\n");
    CHECK(to_json(m)["im"][1][1] == -4.0);
    CHECK(to_json(represent(x_field(1, 1), RepParameter(4.0)))["terms"][0]["re"] == 2.0);
    CHECK(convention_from_string("paper") == Convention::PaperLiteral);
    CHECK_THROWS_AS(convention_from_string("other"), DomainError);
}
