#pragma once

// Numerical probe of the left-invertibility hypothesis for a homogeneous
// invariant operator P: smallest singular values of pi_{+1}(P) and pi_{-1}(P)
// on growing Hermite truncations, a verdict, and the critical-parameter scan
// for the sublaplacian family.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heisenberg/algebra.hpp"
#include "heisenberg/schrodinger.hpp"

namespace heisenberg {

struct SolvabilityConfig {
    std::vector<std::size_t> K_list{16, 32, 64, 128};
    /// Oscillator frequency of the basis. 2 keeps kernel vectors such as e^{-2x^2}
    /// off the basis, so their truncations show geometric decay instead of an exact zero.
    double omega = 2.0;
    Convention convention = Convention::Homomorphic;
    /// Use the (K+d) x K block (exact image of the first K basis vectors, d = operator
    /// order) instead of the square K x K truncation.
    bool interior_block = true;
    /// epsilon = eps_rel * ||matrix||: a ladder above it everywhere is bounded below.
    double eps_rel = 1e-6;
    /// Below eps_kernel_rel * ||matrix|| a ladder is treated as reaching a kernel.
    double eps_kernel_rel = 1e-10;
    /// Allowed relative change of sigma_min across the top half of K_list.
    double drift = 0.10;
    /// Pre-multiply by (sum_j X_j^2 + Y_j^2)^power; 0 leaves P unchanged.
    unsigned precondition_power = 0;
    /// Cap on the matrix column count K^n.
    std::size_t max_columns = 4096;
};

struct LadderEntry {
    std::size_t K = 0;
    double sigma_min = 0;
    double norm = 0;  // operator norm of the same truncation
};

std::vector<LadderEntry> sigma_min_ladder(const AlgebraElement& p, int lambda_sign, const SolvabilityConfig& cfg = {});

enum class Verdict { HypothesisSatisfied, HypothesisFailsKernel, HypothesisFailsDecay, Inconclusive };

std::string to_string(Verdict v);

struct DecayFit {
    /// sigma_min ~ C q^K, fitted on the entries above the rounding floor.
    std::optional<double> geometric_rate;
    /// sigma_min ~ C K^{-p}, fitted on the top half of K_list.
    std::optional<double> power_exponent;
    std::size_t points = 0;
};

DecayFit fit_decay(const std::vector<LadderEntry>& ladder, double floor);

struct SolvabilityReport {
    std::string operator_text;
    unsigned degree = 0;
    SolvabilityConfig config;
    std::vector<LadderEntry> ladder_plus;
    std::vector<LadderEntry> ladder_minus;
    DecayFit fit_plus;
    DecayFit fit_minus;
    Verdict verdict = Verdict::Inconclusive;
    /// Sign of lambda responsible for a failing verdict (0 if none).
    int failing_sign = 0;
    std::vector<double> critical_data;
    double eps = 0;
    double eps_kernel = 0;
};

/// Throws DomainError for non-homogeneous P.
SolvabilityReport verdict(const AlgebraElement& p, const SolvabilityConfig& cfg = {});

struct CriticalScanConfig {
    std::size_t K = 64;  // per axis
    double omega = 4.0;
    Convention convention = Convention::Homomorphic;
    double tol = 1e-12;
};

/// Real alpha in [lo, hi] where pi_{+1}(L_alpha) or pi_{-1}(L_alpha) has a zero eigenvalue,
/// found by sign changes of the ordered real eigenvalues on the grid and bisection.
std::vector<double> critical_alpha_scan(std::size_t n, double lo, double hi, double step,
                                        const CriticalScanConfig& cfg = {});

/// min_k |eigenvalue_k| of the truncated pi_lambda(L_alpha) for complex alpha.
double min_abs_eigenvalue(std::size_t n, std::complex<double> alpha, int lambda_sign, const CriticalScanConfig& cfg = {});

nlohmann::json to_json(const SolvabilityReport& r);

}  // namespace heisenberg
