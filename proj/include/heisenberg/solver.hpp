#pragma once

// Fundamental-solution functional on H_1 for a homogeneous left-invariant P of degree alpha:
//   u(phi) = (2 pi)^{-2} \int (pi_lambda(T))^N tr(pi_lambda(nu~) pi_lambda(phi) pi_lambda(P)^{-1}) |lambda| dlambda,
// which should satisfy u(P^tau phi) = (T^N nu)(phi). Everything is in polarized coordinates,
// pi_lambda(T) = -i lambda / 4, and pi_lambda(f) is taken in the oscillator basis of frequency
// |lambda| with truncation K_lambda = max(K, ceil(K_scale / |lambda|)).

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "heisenberg/algebra.hpp"
#include "heisenberg/gauss_poly.hpp"
#include "heisenberg/sampled.hpp"
#include "heisenberg/solvability.hpp"

namespace heisenberg {

struct SolverConfig {
    unsigned N = 2;
    double lambda_min = 0.01;
    double lambda_max = 8.0;
    /// Gauss-Legendre nodes per sign of lambda.
    std::size_t lambda_points = 48;
    std::size_t K = 48;
    double K_scale = 6.0;
    std::size_t K_cap = 1024;
    /// Refuse truncations of pi_lambda(P) with a larger 2-norm condition number.
    double cond_max = 1e10;
    /// Refuse P whose solvability verdict is not HYPOTHESIS_SATISFIED.
    bool require_hypothesis = true;
    /// Quadrature rule in lambda; only "gauss-legendre" is provided.
    std::string rule = "gauss-legendre";
    /// Targets reported next to the measured errors.
    double plancherel_target = 1e-2;
    double residual_target = 5e-2;
};

/// Gauss-Legendre nodes and weights on [a, b].
std::vector<std::pair<double, double>> gauss_legendre(std::size_t points, double a, double b);

std::size_t truncation_for(const SolverConfig& cfg, double lambda);

/// Smallest admissible N for a homogeneous P of degree alpha on H_1: N > (alpha - 2) / 2.
unsigned minimal_power(unsigned alpha);

/// T^N nu in closed form.
GaussPoly t_power(const GaussPoly& nu, unsigned N);

/// f = T^N nu, sampled and in closed form, with the pairing phi -> \int f phi.
struct TPowerPair {
    GaussPoly closed;
    SampledGroupFunction sampled;

    cplx operator()(const GaussPoly& phi) const { return integrate_product(closed, phi); }
    cplx operator()(const SampledGroupFunction& phi) const { return pairing(sampled, phi); }
};

TPowerPair t_power_pair(const GaussPoly& nu, unsigned N, const GridSpec& grid = {});

struct LambdaSample {
    double lambda = 0;
    double weight = 0;
    std::size_t K = 0;
    /// Summand density: u = sum weight * integrand.
    cplx integrand;
};

class FundamentalSolution {
public:
    /// Throws DomainError for n != 1, inhomogeneous P, N at or below the threshold,
    /// or a failed hypothesis; NumericalError when a truncation of pi_lambda(P) is
    /// too ill-conditioned.
    FundamentalSolution(AlgebraElement p, GaussPoly nu, SolverConfig cfg = {});

    cplx operator()(const GaussPoly& phi, std::vector<LambdaSample>* samples = nullptr) const;
    /// (T^N nu)(phi).
    cplx target(const GaussPoly& phi) const;

    const AlgebraElement& op() const { return p_; }
    unsigned degree() const { return alpha_; }
    const SolverConfig& config() const { return cfg_; }
    double max_condition() const { return max_cond_; }

private:
    struct Node {
        double lambda;
        double weight;
        std::size_t K;
        cplx factor;
        Eigen::MatrixXcd q;  // pi(P)^{-1} pi(nu~)
    };

    AlgebraElement p_;
    GaussPoly nu_;
    GaussPoly t_nu_;
    SolverConfig cfg_;
    unsigned alpha_ = 0;
    double max_cond_ = 0;
    std::vector<Node> nodes_;
};

/// The integrand of u at one lambda with no admissibility checks (diagnostics only).
cplx lambda_integrand(const AlgebraElement& p, const GaussPoly& nu, const GaussPoly& phi, unsigned N, double lambda,
                      std::size_t K);

struct ResidualReport {
    std::vector<cplx> lhs;  // u(P^tau phi_i)
    std::vector<cplx> rhs;  // (T^N nu)(phi_i)
    std::vector<double> residual;
    double scale = 0;
    double max_residual = 0;
};

/// Residuals |u(P^tau phi_i) - (T^N nu)(phi_i)| / max_i |(T^N nu)(phi_i)|.
ResidualReport residual_check(const FundamentalSolution& u, const std::vector<GaussPoly>& phis);

struct PlancherelReport {
    cplx quadrature;
    cplx exact;  // \int nu phi = (nu~ * phi)(identity)
    double relative_error = 0;
};

/// (2 pi)^{-2} \int tr(pi(nu~) pi(phi)) |lambda| dlambda against the closed form.
PlancherelReport plancherel_check(const GaussPoly& nu, const GaussPoly& phi, const SolverConfig& cfg = {});

/// Operator-norm defect of pi(psi * chi) - pi(psi) pi(chi) for lattice samples.
struct ConvolutionReport {
    std::size_t points = 0;
    double relative_error = 0;
};

ConvolutionReport convolution_check(const GaussPoly& psi, const GaussPoly& chi, const GridSpec& grid, double lambda);

nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const PlancherelReport& r);
nlohmann::json to_json(const SolverConfig& c);
SolverConfig solver_config_from_json(const nlohmann::json& j);
GaussPoly gauss_poly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GaussPoly& f);
/// lambda,weight,K,re,im per row.
std::string to_csv(const std::vector<LambdaSample>& samples);

}  // namespace heisenberg
