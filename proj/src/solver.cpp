#include "heisenberg/solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "heisenberg/errors.hpp"
#include "heisenberg/schrodinger.hpp"

namespace heisenberg {

namespace {

constexpr double plancherel_constant = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

Eigen::MatrixXcd derived_matrix(const AlgebraElement& p, double lambda, std::size_t K)
{
    return hermite_matrix(represent(p, RepParameter(-lambda / 4.0)), K, 4.0).entries;
}

cplx t_eigenvalue_power(double lambda, unsigned N) { return std::pow(cplx(0.0, -lambda / 4.0), static_cast<int>(N)); }

std::vector<std::pair<double, double>> signed_nodes(const SolverConfig& cfg)
{
    if (!(cfg.lambda_min > 0) || !(cfg.lambda_max > cfg.lambda_min)) throw DomainError("need 0 < lambda_min < lambda_max");
    if (cfg.rule != "gauss-legendre") throw DomainError("unknown lambda quadrature rule '" + cfg.rule + "'");
    std::vector<std::pair<double, double>> out;
    for (int sign : {1, -1})
        for (const auto& [x, w] : gauss_legendre(cfg.lambda_points, cfg.lambda_min, cfg.lambda_max)) out.emplace_back(sign * x, w);
    return out;
}

}  // namespace

std::vector<std::pair<double, double>> gauss_legendre(std::size_t points, double a, double b)
{
    if (points == 0) throw DomainError("Gauss-Legendre rule needs at least one node");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(points), static_cast<Eigen::Index>(points));
    for (std::size_t k = 1; k < points; ++k) {
        const double kk = static_cast<double>(k);
        const double beta = kk / std::sqrt(4.0 * kk * kk - 1.0);
        J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = beta;
        J(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    std::vector<std::pair<double, double>> out;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double x = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        out.emplace_back(0.5 * (b - a) * x + 0.5 * (b + a), (b - a) * v * v);
    }
    return out;
}

std::size_t truncation_for(const SolverConfig& cfg, double lambda)
{
    const auto adaptive = static_cast<std::size_t>(std::ceil(cfg.K_scale / std::abs(lambda)));
    const std::size_t K = std::max(cfg.K, adaptive);
    if (K > cfg.K_cap)
        throw NumericalError("truncation " + std::to_string(K) + " at lambda = " + std::to_string(lambda) + " exceeds K_cap");
    return K;
}

unsigned minimal_power(unsigned alpha) { return alpha < 2 ? 0 : (alpha - 2) / 2 + 1; }

GaussPoly t_power(const GaussPoly& nu, unsigned N) { return nu.apply(power(t_field(1), N)); }

TPowerPair t_power_pair(const GaussPoly& nu, unsigned N, const GridSpec& grid)
{
    auto closed = t_power(nu, N);
    auto sampled = sample(closed, grid);
    return {std::move(closed), std::move(sampled)};
}

FundamentalSolution::FundamentalSolution(AlgebraElement p, GaussPoly nu, SolverConfig cfg)
    : p_(std::move(p)), nu_(std::move(nu)), t_nu_(nu_), cfg_(cfg)
{
    if (p_.dim() != 1) throw DomainError("the fundamental-solution solver works on H_1");
    const auto deg = homogeneous_degree(p_);
    if (!deg) throw DomainError("P must be homogeneous");
    alpha_ = *deg;
    if (cfg_.N < minimal_power(alpha_))
        throw DomainError("N = " + std::to_string(cfg_.N) + " is at or below the integrability threshold (alpha - n - 1)/2; need N >= " +
                          std::to_string(minimal_power(alpha_)));
    if (cfg_.require_hypothesis) {
        const auto report = verdict(p_);
        if (report.verdict != Verdict::HypothesisSatisfied)
            throw DomainError("P fails the left-invertibility hypothesis: " + to_string(report.verdict));
    }
    t_nu_ = t_power(nu_, cfg_.N);

    const GaussPoly nu_tilde = nu_.inverse();
    for (const auto& [lambda, w] : signed_nodes(cfg_)) {
        const std::size_t K = truncation_for(cfg_, lambda);
        const Eigen::MatrixXcd pm = derived_matrix(p_, lambda, K);
        const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXcd>(pm).singularValues();
        const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
        if (!(cond <= cfg_.cond_max))
            throw NumericalError("pi_lambda(P) truncation at lambda = " + std::to_string(lambda) + " has condition number " +
                                 std::to_string(cond) + " above cond_max");
        max_cond_ = std::max(max_cond_, cond);
        Node node{lambda, w, K, plancherel_constant * std::abs(lambda) * t_eigenvalue_power(lambda, cfg_.N), {}};
        node.q = pm.fullPivLu().solve(hermite_projection(nu_tilde, lambda, K));
        nodes_.push_back(std::move(node));
    }
}

cplx FundamentalSolution::operator()(const GaussPoly& phi, std::vector<LambdaSample>* samples) const
{
    cplx sum = 0.0;
    if (samples) samples->clear();
    for (const auto& node : nodes_) {
        const Eigen::MatrixXcd m = hermite_projection(phi, node.lambda, node.K);
        const cplx integrand = node.factor * node.q.cwiseProduct(m.transpose()).sum();
        sum += node.weight * integrand;
        if (samples) samples->push_back({node.lambda, node.weight, node.K, integrand});
    }
    return sum;
}

cplx FundamentalSolution::target(const GaussPoly& phi) const { return integrate_product(t_nu_, phi); }

cplx lambda_integrand(const AlgebraElement& p, const GaussPoly& nu, const GaussPoly& phi, unsigned N, double lambda, std::size_t K)
{
    const Eigen::MatrixXcd pm = derived_matrix(p, lambda, K);
    const Eigen::MatrixXcd q = pm.fullPivLu().solve(hermite_projection(nu.inverse(), lambda, K));
    const Eigen::MatrixXcd m = hermite_projection(phi, lambda, K);
    return plancherel_constant * std::abs(lambda) * t_eigenvalue_power(lambda, N) * q.cwiseProduct(m.transpose()).sum();
}

ResidualReport residual_check(const FundamentalSolution& u, const std::vector<GaussPoly>& phis)
{
    ResidualReport r;
    const auto pt = formal_transpose(u.op());
    for (const auto& phi : phis) {
        r.lhs.push_back(u(phi.apply(pt)));
        r.rhs.push_back(u.target(phi));
        r.scale = std::max(r.scale, std::abs(r.rhs.back()));
    }
    if (r.scale == 0) throw NumericalError("every test function pairs to zero with T^N nu");
    for (std::size_t i = 0; i < phis.size(); ++i) {
        r.residual.push_back(std::abs(r.lhs[i] - r.rhs[i]) / r.scale);
        r.max_residual = std::max(r.max_residual, r.residual.back());
    }
    return r;
}

PlancherelReport plancherel_check(const GaussPoly& nu, const GaussPoly& phi, const SolverConfig& cfg)
{
    PlancherelReport r;
    const GaussPoly nu_tilde = nu.inverse();
    for (const auto& [lambda, w] : signed_nodes(cfg)) {
        const std::size_t K = truncation_for(cfg, lambda);
        const Eigen::MatrixXcd a = hermite_projection(nu_tilde, lambda, K);
        const Eigen::MatrixXcd b = hermite_projection(phi, lambda, K);
        r.quadrature += w * plancherel_constant * std::abs(lambda) * a.cwiseProduct(b.transpose()).sum();
    }
    r.exact = integrate_product(nu, phi);
    r.relative_error = std::abs(r.quadrature - r.exact) / std::abs(r.exact);
    return r;
}

ConvolutionReport convolution_check(const GaussPoly& psi, const GaussPoly& chi, const GridSpec& grid, double lambda)
{
    const auto ps = sample(psi, grid);
    const auto cs = sample(chi, grid);
    const Eigen::MatrixXcd lhs = integrated_rep(convolution(ps, cs), lambda).matrix();
    const Eigen::MatrixXcd rhs = integrated_rep(ps, lambda).matrix() * integrated_rep(cs, lambda).matrix();
    const auto opnorm = [](const Eigen::MatrixXcd& m) { return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues()(0); };
    return {grid.points, opnorm(lhs - rhs) / opnorm(rhs)};
}

namespace {

nlohmann::json complex_json(cplx c) { return {{"re", c.real()}, {"im", c.imag()}}; }

}  // namespace

nlohmann::json to_json(const ResidualReport& r)
{
    nlohmann::json j;
    j["lhs"] = nlohmann::json::array();
    j["rhs"] = nlohmann::json::array();
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
        j["lhs"].push_back(complex_json(r.lhs[i]));
        j["rhs"].push_back(complex_json(r.rhs[i]));
    }
    j["residual"] = r.residual;
    j["scale"] = r.scale;
    j["max_residual"] = r.max_residual;
    return j;
}

nlohmann::json to_json(const PlancherelReport& r)
{
    return {{"quadrature", complex_json(r.quadrature)}, {"exact", complex_json(r.exact)}, {"relative_error", r.relative_error}};
}

nlohmann::json to_json(const SolverConfig& c)
{
    return {{"N", c.N},
            {"lambda_min", c.lambda_min},
            {"lambda_max", c.lambda_max},
            {"lambda_points", c.lambda_points},
            {"K", c.K},
            {"K_scale", c.K_scale},
            {"K_cap", c.K_cap},
            {"cond_max", c.cond_max},
            {"require_hypothesis", c.require_hypothesis},
            {"rule", c.rule},
            {"plancherel_target", c.plancherel_target},
            {"residual_target", c.residual_target}};
}

SolverConfig solver_config_from_json(const nlohmann::json& j)
{
    SolverConfig c;
    c.N = j.value("N", c.N);
    c.lambda_min = j.value("lambda_min", c.lambda_min);
    c.lambda_max = j.value("lambda_max", c.lambda_max);
    c.lambda_points = j.value("lambda_points", c.lambda_points);
    c.K = j.value("K", c.K);
    c.K_scale = j.value("K_scale", c.K_scale);
    c.K_cap = j.value("K_cap", c.K_cap);
    c.cond_max = j.value("cond_max", c.cond_max);
    c.require_hypothesis = j.value("require_hypothesis", c.require_hypothesis);
    c.rule = j.value("rule", c.rule);
    c.plancherel_target = j.value("plancherel_target", c.plancherel_target);
    c.residual_target = j.value("residual_target", c.residual_target);
    return c;
}

GaussPoly gauss_poly_from_json(const nlohmann::json& j)
{
    const auto center = j.value("center", std::array<double, 3>{0, 0, 0});
    const auto width = j.value("width", std::array<double, 3>{1, 1, 1});
    GaussPoly f(center, width);
    if (!j.contains("terms")) {
        f.add_term({0, 0, 0}, 1.0);
        return f;
    }
    for (const auto& t : j.at("terms")) f.add_term(t.at("exp").get<std::array<unsigned, 3>>(), cplx(t.value("re", 0.0), t.value("im", 0.0)));
    return f;
}

nlohmann::json to_json(const GaussPoly& f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
    return {{"center", f.center()}, {"width", f.width()}, {"terms", terms}};
}

std::string to_csv(const std::vector<LambdaSample>& samples)
{
    std::ostringstream os;
    os.precision(17);
    os << "lambda,weight,K,re,im\n";
    for (const auto& s : samples) os << s.lambda << ',' << s.weight << ',' << s.K << ',' << s.integrand.real() << ',' << s.integrand.imag() << '\n';
    return os.str();
}

}  // namespace heisenberg
