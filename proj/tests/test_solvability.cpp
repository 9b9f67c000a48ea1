#include <doctest.h>

#include <cmath>

#include "heisenberg/solvability.hpp"

using namespace heisenberg;

namespace {

SolvabilityConfig small_config()
{
    SolvabilityConfig cfg;
    cfg.K_list = {8, 16, 24, 32};
    return cfg;
}

/// Coefficients of e^{-2x^2} in the omega = 2 oscillator basis: only even levels,
/// c_{2m} proportional to (-1/3)^m sqrt((2m)!) / (2^m m!).
Eigen::VectorXcd gaussian_kernel_candidate(std::size_t K)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(K));
    for (std::size_t k = 0; k < K; k += 2) {
        const double m = static_cast<double>(k / 2);
        const double log_mag = 0.5 * std::lgamma(2 * m + 1) - m * std::log(2.0) - std::lgamma(m + 1) - m * std::log(3.0);
        v(static_cast<Eigen::Index>(k)) = (static_cast<int>(m) % 2 ? -1.0 : 1.0) * std::exp(log_mag);
    }
    return v / v.norm();
}

}  // namespace

TEST_CASE("ladders of operators with known spectra")
{
    for (int sign : {1, -1}) {
        for (const auto& e : sigma_min_ladder(t_field(1), sign)) CHECK(e.sigma_min == doctest::Approx(1.0).epsilon(1e-14));

        SolvabilityConfig cfg;
        cfg.omega = 4.0;
        for (const auto& e : sigma_min_ladder(sublaplacian(1, 0), sign, cfg))
            CHECK(e.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(sigma_min_ladder(x_field(1, 1) + t_field(1), 1), DomainError);
    CHECK_THROWS_AS(sigma_min_ladder(t_field(1), 2), DomainError);
}

TEST_CASE("lowering-type factor has a Gaussian kernel")
{
    const auto w = represent(factor_A(), RepParameter(-1.0));
    double previous = 1.0;
    for (std::size_t K : {8U, 16U, 24U, 32U}) {
        const Eigen::MatrixXcd m = hermite_matrix(w, K + 1, 2.0).entries.leftCols(static_cast<Eigen::Index>(K));
        const double residual = (m * gaussian_kernel_candidate(K)).norm();
        CHECK(residual < 0.7 * previous);
        previous = residual;
        SolvabilityConfig cfg;
        cfg.K_list = {K};
        CHECK(sigma_min_ladder(factor_A(), -1, cfg).front().sigma_min <= residual * (1 + 1e-9));
    }
    CHECK(previous < 1e-5);
}

TEST_CASE("verdicts")
{
    const auto lap = verdict(heisenberg_laplacian(1));
    CHECK(lap.verdict == Verdict::HypothesisSatisfied);
    CHECK(lap.degree == 2);
    CHECK(verdict(sublaplacian(1, 0)).verdict == Verdict::HypothesisSatisfied);

    const auto a = verdict(factor_A());
    CHECK(a.verdict == Verdict::HypothesisFailsKernel);
    CHECK(a.failing_sign == -1);
    REQUIRE(a.fit_minus.geometric_rate.has_value());
    CHECK(*a.fit_minus.geometric_rate > 0.1);
    CHECK(*a.fit_minus.geometric_rate < 0.9);

    const auto ad = verdict(factor_A_dagger());
    CHECK(ad.verdict == Verdict::HypothesisFailsKernel);
    CHECK(ad.failing_sign == 1);

    const auto x = verdict(x_field(1, 1));
    CHECK(x.verdict == Verdict::HypothesisFailsDecay);
    REQUIRE(x.fit_plus.power_exponent.has_value());
    CHECK(*x.fit_plus.power_exponent == doctest::Approx(0.5).epsilon(0.05));

    CHECK_THROWS_AS(verdict(x_field(1, 1) + t_field(1)), DomainError);

    const auto j = to_json(a);
    CHECK(j["verdict"] == "HYPOTHESIS_FAILS_KERNEL");
    CHECK(j["ladders"]["minus"].size() == 4);
}

TEST_CASE("verdict invariances")
{
    const auto cfg = small_config();
    for (const auto& p : {heisenberg_laplacian(1), factor_A(), x_field(1, 1)}) {
        const auto base = verdict(p, cfg);
        const auto scaled = verdict(GaussianRational(Rational(3), Rational(-7, 2)) * p, cfg);
        CHECK(scaled.verdict == base.verdict);
        const auto dilated = verdict(dilate(p, Rational(5, 2)), cfg);
        CHECK(dilated.verdict == base.verdict);
        const double mu = std::pow(2.5, base.degree);
        for (std::size_t k = 0; k < base.ladder_plus.size(); ++k)
            CHECK(dilated.ladder_plus[k].sigma_min == doctest::Approx(mu * base.ladder_plus[k].sigma_min).epsilon(1e-9));
    }
}

TEST_CASE("ladder monotonicity")
{
    SolvabilityConfig cfg;
    cfg.K_list = {4, 8, 12, 16, 20, 24, 28, 32};
    for (const auto& p : {factor_A(), x_field(1, 1), heisenberg_laplacian(1), sublaplacian(1, GaussianRational(3))}) {
        for (int sign : {1, -1}) {
            const auto l = sigma_min_ladder(p, sign, cfg);
            for (std::size_t k = 1; k < l.size(); ++k) CHECK(l[k].sigma_min <= l[k - 1].sigma_min * (1 + 1e-12));
        }
    }
    // Square truncations of a definite Hermitian image obey Cauchy interlacing.
    cfg.interior_block = false;
    for (int sign : {1, -1}) {
        const auto l = sigma_min_ladder(heisenberg_laplacian(1), sign, cfg);
        for (std::size_t k = 1; k < l.size(); ++k) CHECK(l[k].sigma_min <= l[k - 1].sigma_min * (1 + 1e-12));
    }
}

TEST_CASE("preconditioner option")
{
    auto cfg = small_config();
    cfg.precondition_power = 1;
    CHECK(verdict(heisenberg_laplacian(1), cfg).verdict == Verdict::HypothesisSatisfied);
}

TEST_CASE("critical alpha scan")
{
    const auto roots = critical_alpha_scan(1, 0.0, 6.0, 0.01);
    REQUIRE(roots.size() == 3);
    CHECK(std::abs(roots[0] - 1.0) < 1e-6);
    CHECK(std::abs(roots[1] - 3.0) < 1e-6);
    CHECK(std::abs(roots[2] - 5.0) < 1e-6);

    CHECK(min_abs_eigenvalue(1, 0.0, 1) == doctest::Approx(1.0));
    CHECK(min_abs_eigenvalue(1, 0.0, -1) == doctest::Approx(1.0));
    for (double beta : {0.5, 2.0})
        for (int sign : {1, -1}) CHECK(min_abs_eigenvalue(1, {0.0, beta}, sign) >= beta * (1 - 1e-12));

    // Negative alpha picks up the lambda = +1 branch.
    const auto neg = critical_alpha_scan(1, -4.0, -0.5, 0.05);
    REQUIRE(neg.size() == 2);
    CHECK(std::abs(neg[0] + 3.0) < 1e-6);
    CHECK(std::abs(neg[1] + 1.0) < 1e-6);

    CriticalScanConfig small;
    small.K = 8;
    const auto two = critical_alpha_scan(2, 0.0, 5.0, 0.05, small);
    REQUIRE(two.size() == 2);
    CHECK(std::abs(two[0] - 2.0) < 1e-6);
    CHECK(std::abs(two[1] - 4.0) < 1e-6);
    CHECK_THROWS_AS(critical_alpha_scan(1, 1.0, 0.0, 0.1), DomainError);
}
