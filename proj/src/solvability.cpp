#include "heisenberg/solvability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "heisenberg/errors.hpp"

namespace heisenberg {

namespace {

std::size_t ipow(std::size_t base, std::size_t e)
{
    std::size_t r = 1;
    for (std::size_t k = 0; k < e; ++k) r *= base;
    return r;
}

/// Columns of a (K+d)^n matrix whose per-axis indices all stay below K.
Eigen::MatrixXcd select_columns(const Eigen::MatrixXcd& m, std::size_t n, std::size_t padded, std::size_t K)
{
    std::vector<Eigen::Index> cols;
    for (std::size_t flat = 0; flat < ipow(padded, n); ++flat) {
        std::size_t rest = flat;
        bool keep = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (rest % padded >= K) keep = false;
            rest /= padded;
        }
        if (keep) cols.push_back(static_cast<Eigen::Index>(flat));
    }
    Eigen::MatrixXcd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(cols[c]);
    return out;
}

struct LadderClass {
    bool bounded = false;
    bool kernel = false;
    bool decays = false;
};

LadderClass classify(const std::vector<LadderEntry>& ladder, const DecayFit& fit, double eps, double eps_kernel,
                     double drift)
{
    LadderClass c;
    if (ladder.empty()) return c;
    const std::size_t top = ladder.size() / 2;
    const double first_top = ladder[top].sigma_min;
    const double last = ladder.back().sigma_min;
    double min_sigma = std::numeric_limits<double>::infinity();
    for (const auto& e : ladder) min_sigma = std::min(min_sigma, e.sigma_min);

    const double decrease = first_top > 0 ? std::max(0.0, (first_top - last) / first_top) : 1.0;
    c.bounded = min_sigma >= eps && decrease < drift;
    c.kernel = min_sigma < eps_kernel && fit.geometric_rate && *fit.geometric_rate < 1.0;
    c.decays = !c.bounded && !c.kernel && decrease >= drift;
    return c;
}

Eigen::MatrixXcd sublaplacian_matrix(std::size_t n, std::complex<double> alpha, int sign, const CriticalScanConfig& cfg)
{
    if (cfg.K == 0) throw DomainError("truncation K must be >= 1");
    const RepParameter lam(static_cast<double>(sign));
    const auto base = hermite_matrix(represent(sublaplacian(n, GaussianRational(0)), lam, cfg.convention), cfg.K, cfg.omega);
    const auto t = hermite_matrix(represent(t_field(n), lam, cfg.convention), cfg.K, cfg.omega);
    // L_alpha = L_0 + i alpha T
    return base.entries + std::complex<double>(0.0, 1.0) * alpha * t.entries;
}

std::vector<double> sorted_real_eigenvalues(const Eigen::MatrixXcd& m)
{
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
    std::vector<double> out;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(es.eigenvalues()(k).real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<LadderEntry> sigma_min_ladder(const AlgebraElement& p, int lambda_sign, const SolvabilityConfig& cfg)
{
    if (lambda_sign != 1 && lambda_sign != -1) throw DomainError("lambda sign must be +1 or -1");
    if (p.is_zero()) throw DomainError("operator is zero");
    if (!homogeneous_degree(p)) throw DomainError("operator is not homogeneous");
    const std::size_t n = p.dim();
    const AlgebraElement q = cfg.precondition_power ? preconditioner(n, cfg.precondition_power) * p : p;
    const auto w = represent(q, RepParameter(lambda_sign), cfg.convention);
    const std::size_t d = cfg.interior_block ? w.order() : 0;

    std::vector<LadderEntry> ladder;
    for (std::size_t K : cfg.K_list) {
        if (K == 0) throw DomainError("truncation K must be >= 1");
        if (ipow(K, n) > cfg.max_columns) throw DomainError("truncation K^n exceeds the column cap");
        const std::size_t padded = K + d;
        Eigen::MatrixXcd m = hermite_matrix(w, padded, cfg.omega).entries;
        if (cfg.interior_block) m = select_columns(m, n, padded, K);
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
        const auto& s = svd.singularValues();
        ladder.push_back({K, s(s.size() - 1), s(0)});
    }
    return ladder;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::HypothesisSatisfied: return "HYPOTHESIS_SATISFIED";
    case Verdict::HypothesisFailsKernel: return "HYPOTHESIS_FAILS_KERNEL";
    case Verdict::HypothesisFailsDecay: return "HYPOTHESIS_FAILS_DECAY";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

DecayFit fit_decay(const std::vector<LadderEntry>& ladder, double floor)
{
    DecayFit fit;
    auto least_squares_slope = [](const std::vector<std::pair<double, double>>& pts) {
        double mx = 0, my = 0;
        for (const auto& [x, y] : pts) {
            mx += x;
            my += y;
        }
        mx /= static_cast<double>(pts.size());
        my /= static_cast<double>(pts.size());
        double sxy = 0, sxx = 0;
        for (const auto& [x, y] : pts) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
        }
        return sxy / sxx;
    };

    std::vector<std::pair<double, double>> geo;
    for (const auto& e : ladder)
        if (e.sigma_min > floor) geo.emplace_back(static_cast<double>(e.K), std::log(e.sigma_min));
    fit.points = geo.size();
    if (geo.size() >= 2) fit.geometric_rate = std::exp(least_squares_slope(geo));

    std::vector<std::pair<double, double>> pw;
    for (std::size_t k = ladder.size() / 2; k < ladder.size(); ++k)
        if (ladder[k].sigma_min > floor)
            pw.emplace_back(std::log(static_cast<double>(ladder[k].K)), std::log(ladder[k].sigma_min));
    if (pw.size() >= 2) fit.power_exponent = -least_squares_slope(pw);
    return fit;
}

SolvabilityReport verdict(const AlgebraElement& p, const SolvabilityConfig& cfg)
{
    if (p.is_zero()) throw DomainError("operator is zero");
    const auto degree = homogeneous_degree(p);
    if (!degree) throw DomainError("operator is not homogeneous");
    if (cfg.K_list.empty()) throw DomainError("K_list is empty");

    SolvabilityReport r;
    r.operator_text = to_string(p);
    r.degree = *degree;
    r.config = cfg;
    r.ladder_plus = sigma_min_ladder(p, 1, cfg);
    r.ladder_minus = sigma_min_ladder(p, -1, cfg);

    double norm = 0;
    for (const auto* l : {&r.ladder_plus, &r.ladder_minus})
        for (const auto& e : *l) norm = std::max(norm, e.norm);
    r.eps = cfg.eps_rel * norm;
    r.eps_kernel = cfg.eps_kernel_rel * norm;
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * norm;
    r.fit_plus = fit_decay(r.ladder_plus, floor);
    r.fit_minus = fit_decay(r.ladder_minus, floor);

    const auto plus = classify(r.ladder_plus, r.fit_plus, r.eps, r.eps_kernel, cfg.drift);
    const auto minus = classify(r.ladder_minus, r.fit_minus, r.eps, r.eps_kernel, cfg.drift);
    if (plus.bounded && minus.bounded) {
        r.verdict = Verdict::HypothesisSatisfied;
    } else if (plus.kernel || minus.kernel) {
        r.verdict = Verdict::HypothesisFailsKernel;
        r.failing_sign = plus.kernel ? 1 : -1;
    } else if (plus.decays || minus.decays) {
        r.verdict = Verdict::HypothesisFailsDecay;
        r.failing_sign = plus.decays ? 1 : -1;
    }
    return r;
}

std::vector<double> critical_alpha_scan(std::size_t n, double lo, double hi, double step, const CriticalScanConfig& cfg)
{
    if (!(step > 0.0) || !(hi >= lo)) throw DomainError("alpha grid needs lo <= hi and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid;
    for (std::size_t k = 0; k < count; ++k) grid.push_back(lo + static_cast<double>(k) * step);
    if (grid.back() < hi - 1e-12) grid.push_back(hi);

    std::vector<double> roots;
    for (int sign : {1, -1}) {
        auto eigs = [&](double a) { return sorted_real_eigenvalues(sublaplacian_matrix(n, a, sign, cfg)); };
        std::vector<double> prev = eigs(grid[0]);
        for (std::size_t j = 0; j < prev.size(); ++j)
            if (prev[j] == 0.0) roots.push_back(grid[0]);
        for (std::size_t g = 1; g < grid.size(); ++g) {
            const std::vector<double> cur = eigs(grid[g]);
            for (std::size_t j = 0; j < cur.size(); ++j) {
                if (cur[j] == 0.0) {
                    roots.push_back(grid[g]);
                    continue;
                }
                if (prev[j] == 0.0 || (prev[j] < 0) == (cur[j] < 0)) continue;
                double a = grid[g - 1], b = grid[g];
                double fa = prev[j];
                while (b - a > cfg.tol) {
                    const double mid = 0.5 * (a + b);
                    const double fm = eigs(mid)[j];
                    if (fm == 0.0) {
                        a = b = mid;
                        break;
                    }
                    if ((fm < 0) == (fa < 0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                roots.push_back(0.5 * (a + b));
            }
            prev = cur;
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots)
        if (unique.empty() || r - unique.back() > 1e-9) unique.push_back(r);
    return unique;
}

double min_abs_eigenvalue(std::size_t n, std::complex<double> alpha, int lambda_sign, const CriticalScanConfig& cfg)
{
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(sublaplacian_matrix(n, alpha, lambda_sign, cfg), false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
    return es.eigenvalues().cwiseAbs().minCoeff();
}

nlohmann::json to_json(const SolvabilityReport& r)
{
    auto ladder_json = [](const std::vector<LadderEntry>& l) {
        auto a = nlohmann::json::array();
        for (const auto& e : l) a.push_back({{"K", e.K}, {"sigma_min", e.sigma_min}, {"norm", e.norm}});
        return a;
    };
    auto fit_json = [](const DecayFit& f) {
        nlohmann::json j;
        j["geometric_rate"] = f.geometric_rate ? nlohmann::json(*f.geometric_rate) : nlohmann::json(nullptr);
        j["power_exponent"] = f.power_exponent ? nlohmann::json(*f.power_exponent) : nlohmann::json(nullptr);
        j["points"] = f.points;
        return j;
    };
    nlohmann::json j;
    j["operator"] = r.operator_text;
    j["degree"] = r.degree;
    j["convention"] = to_string(r.config.convention);
    j["ladders"] = {{"plus", ladder_json(r.ladder_plus)}, {"minus", ladder_json(r.ladder_minus)}};
    j["fits"] = {{"plus", fit_json(r.fit_plus)}, {"minus", fit_json(r.fit_minus)}};
    j["verdict"] = to_string(r.verdict);
    j["failing_sign"] = r.failing_sign;
    j["critical_data"] = r.critical_data;
    j["thresholds"] = {{"eps", r.eps},
                       {"eps_kernel", r.eps_kernel},
                       {"eps_rel", r.config.eps_rel},
                       {"eps_kernel_rel", r.config.eps_kernel_rel},
                       {"drift", r.config.drift}};
    j["config"] = {{"K_list", r.config.K_list},
                   {"omega", r.config.omega},
                   {"interior_block", r.config.interior_block},
                   {"precondition_power", r.config.precondition_power}};
    return j;
}

}  // namespace heisenberg
