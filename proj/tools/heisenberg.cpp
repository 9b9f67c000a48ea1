// heisenberg: command-line front end for the operator engine.
//
// Exit codes: 0 ok, 1 usage or syntax error, 2 mathematical domain error, 3 numerical failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <json.hpp>

#include "heisenberg/algebra.hpp"
#include "heisenberg/audit.hpp"
#include "heisenberg/coord_fields.hpp"
#include "heisenberg/errors.hpp"
#include "heisenberg/expr.hpp"
#include "heisenberg/fock.hpp"
#include "heisenberg/schrodinger.hpp"
#include "heisenberg/solvability.hpp"
#include "heisenberg/solver.hpp"

using namespace heisenberg;
using nlohmann::json;

namespace {

struct Result {
    json data;
    std::string text;
    std::optional<std::string> csv;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Lowered {
    std::string input;
    std::size_t n = 1;
    AlgebraElement element{1};
};

Lowered lower_text(const std::string& text, std::size_t n_opt)
{
    const auto e = parse(text);
    const std::size_t n = n_opt ? n_opt : infer_dimension(*e);
    return {text, n, lower(*e, n)};
}

Result cmd_normalize(const Lowered& p)
{
    const std::string normal = to_string(p.element);
    return {{{"command", "normalize"}, {"input", p.input}, {"n", p.n}, {"normal_form", normal}, {"terms", to_json(p.element)}},
            normal,
            std::nullopt};
}

Result cmd_degree(const Lowered& p)
{
    const auto d = homogeneous_degree(p.element);
    json j = {{"command", "degree"},
              {"input", p.input},
              {"n", p.n},
              {"normal_form", to_string(p.element)},
              {"homogeneous", d.has_value()},
              {"degree", d ? json(*d) : json(nullptr)}};
    return {j, d ? std::to_string(*d) : "not homogeneous", std::nullopt};
}

Rational random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    return Rational(num(rng), den(rng));
}

Result cmd_invariance(const Lowered& p, std::size_t samples, unsigned deg, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const auto basis = monomial_basis(p.n, deg);
    std::size_t checks = 0, failures = 0;
    json failed = json::array();
    for (std::size_t s = 0; s < samples; ++s) {
        GroupPoint g;
        for (std::size_t j = 0; j < p.n; ++j) g.z.emplace_back(random_rational(rng), random_rational(rng));
        g.t = random_rational(rng);
        for (const auto& f : basis) {
            ++checks;
            if (!invariance_check(p.element, g, f)) {
                ++failures;
                if (failed.size() < 10) failed.push_back({{"point", to_json(g)}, {"function", to_string(f)}});
            }
        }
    }
    const bool passes = failures == 0;
    json j = {{"command", "invariance-check"},
              {"input", p.input},
              {"n", p.n},
              {"samples", samples},
              {"deg", deg},
              {"seed", seed},
              {"checks", checks},
              {"failures", failures},
              {"passes", passes},
              {"first_failures", failed}};
    std::ostringstream t;
    t << (passes ? "PASS" : "FAIL") << " " << checks - failures << "/" << checks << " exact checks";
    return {j, t.str(), std::nullopt};
}

Result cmd_represent(const Lowered& p, double lambda, const std::string& convention)
{
    const auto conv = convention_from_string(convention);
    const auto w = represent(p.element, RepParameter(lambda), conv);
    const std::string text = to_string(w);
    return {{{"command", "represent"},
             {"input", p.input},
             {"n", p.n},
             {"lambda", lambda},
             {"convention", to_string(conv)},
             {"weyl", to_json(w)},
             {"text", text}},
            text,
            std::nullopt};
}

Result cmd_spectrum(const Lowered& p, double lambda, std::size_t K, double omega, const std::string& convention)
{
    const auto m = hermite_matrix(represent(p.element, RepParameter(lambda), convention_from_string(convention)), K, omega);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(m.entries, false);
    if (eig.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
    std::vector<cplx> ev(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXcd>(m.entries).singularValues();

    json eigen = json::array();
    for (const auto& e : ev) eigen.push_back({e.real(), e.imag()});
    std::vector<double> sigma(sv.data(), sv.data() + sv.size());
    std::ostringstream csv;
    csv.precision(17);
    csv << "k,eig_re,eig_im,sigma\n";
    for (std::size_t k = 0; k < ev.size(); ++k) csv << k << "," << ev[k].real() << "," << ev[k].imag() << "," << sigma[k] << "\n";
    std::ostringstream text;
    text.precision(12);
    for (std::size_t k = 0; k < ev.size(); ++k) text << ev[k].real() << (ev[k].imag() < 0 ? " - " : " + ") << std::abs(ev[k].imag()) << "i\n";
    return {{{"command", "spectrum"},
             {"input", p.input},
             {"n", p.n},
             {"lambda", lambda},
             {"K", K},
             {"omega", omega},
             {"eigenvalues", eigen},
             {"singular_values", sigma}},
            text.str(),
            csv.str()};
}

std::vector<double> parse_scan(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw UsageError("bad number in --alpha-scan: " + part);
        } catch (const std::logic_error&) {
            throw UsageError("--alpha-scan expects a:b:step, got " + text);
        }
    }
    if (v.size() != 3 || !(v[2] > 0) || v[1] < v[0]) throw UsageError("--alpha-scan expects a:b:step with a <= b and step > 0");
    return v;
}

Result cmd_solvability(const Lowered& p, const std::string& scan)
{
    auto report = verdict(p.element);
    report.operator_text = p.input;
    if (!scan.empty()) {
        const auto v = parse_scan(scan);
        report.critical_data = critical_alpha_scan(p.n, v[0], v[1], v[2]);
    }
    json j = to_json(report);
    j["command"] = "solvability";
    j["n"] = p.n;
    std::string text = to_string(report.verdict);
    if (!scan.empty()) {
        text += "\ncritical alpha:";
        for (double a : report.critical_data) text += " " + std::to_string(a);
    }
    return {j, text, std::nullopt};
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Result cmd_solve_demo(const std::string& config_path, const std::string& csv_path)
{
    const json cfg_json = read_json_file(config_path);
    const std::string op_text = cfg_json.value("operator", "Lap");
    const auto p = lower_text(op_text, 1);
    const SolverConfig cfg = solver_config_from_json(cfg_json.value("solver", json::object()));
    const GaussPoly nu = gauss_poly_from_json(cfg_json.value("nu", json::object()));
    std::vector<GaussPoly> phis;
    for (const auto& t : cfg_json.value("tests", json::array())) phis.push_back(gauss_poly_from_json(t));
    if (phis.empty()) throw UsageError("config needs a non-empty \"tests\" list");

    const FundamentalSolution u(p.element, nu, cfg);
    const auto residual = residual_check(u, phis);
    std::vector<LambdaSample> samples;
    u(phis.front().apply(formal_transpose(p.element)), &samples);
    const std::string csv = to_csv(samples);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw UsageError("cannot write " + csv_path);
        out << csv;
    }
    const auto plancherel = plancherel_check(nu, phis.front(), cfg);

    json j = {{"command", "solve-demo"},
              {"operator", op_text},
              {"normal_form", to_string(p.element)},
              {"degree", u.degree()},
              {"config", to_json(cfg)},
              {"max_condition", u.max_condition()},
              {"residual", to_json(residual)},
              {"plancherel", to_json(plancherel)},
              {"meets_residual_target", residual.max_residual <= cfg.residual_target},
              {"csv", csv_path.empty() ? json(nullptr) : json(csv_path)}};
    std::ostringstream text;
    text << "max residual " << residual.max_residual << " (target " << cfg.residual_target << "), plancherel error "
         << plancherel.relative_error << ", max cond " << u.max_condition();
    return {j, text.str(), csv};
}

Result cmd_fock_audit(double lambda, unsigned max_n, std::size_t K)
{
    const auto basis = basis_audit(lambda, 1, max_n);
    json unitarity = json::array();
    for (double r : {0.5, 0.8, 1.0}) {
        const GroupPointF g{{std::polar(r, 0.7)}, 0.3};
        const auto u = unitarity_check(g, lambda, K, K / 2);
        unitarity.push_back({{"abs_z", r}, {"K", u.K}, {"block", u.block}, {"defect", u.defect}, {"tail_mass", u.tail_mass}});
    }
    json homomorphism = json::array();
    const GroupPointF g{{cplx(0.3, -0.2)}, 0.1};
    const GroupPointF h{{cplx(-0.1, 0.4)}, -0.5};
    for (std::size_t k : {K / 2, (3 * K) / 4, K}) {
        const auto r = fock_homomorphism_check(g, h, lambda, k, k / 2);
        homomorphism.push_back({{"K", r.K}, {"block", r.block}, {"defect", r.defect}});
    }
    std::ostringstream text;
    text << "printed basis orthonormal: " << (basis.printed_orthonormal ? "yes" : "no")
         << ", corrected basis orthonormal: " << (basis.corrected_orthonormal ? "yes" : "no");
    return {{{"command", "fock-audit"},
             {"lambda", lambda},
             {"basis", to_json(basis)},
             {"unitarity", unitarity},
             {"homomorphism", homomorphism}},
            text.str(),
            std::nullopt};
}

Result cmd_audit_identities()
{
    json entries = json::array();
    std::ostringstream text;
    std::size_t discrepancies = 0;
    for (const auto& a : audit_identities()) {
        entries.push_back(to_json(a));
        if (!a.consistent) ++discrepancies;
        text << a.id << ": " << (a.consistent ? "consistent" : "discrepancy") << "  engine: " << a.engine
             << "  displayed: " << a.displayed << "\n";
    }
    return {{{"command", "audit-identities"}, {"entries", entries}, {"discrepancies", discrepancies}}, text.str(), std::nullopt};
}

json error_json(const std::string& kind, const std::string& message)
{
    return {{"error", kind}, {"message", message}};
}

int fail(int code, const std::string& kind, const std::string& message)
{
    std::cerr << error_json(kind, message).dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact and numerical tools for left-invariant operators on the Heisenberg group"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output = "json";
    std::size_t n = 0;
    app.add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--n", n, "Group dimension (default: largest generator index)");

    std::string expr;
    std::size_t samples = 8;
    unsigned deg = 3;
    std::uint64_t seed = 1;
    double lambda = 1.0;
    std::string convention = "homomorphic";
    std::size_t K = 32;
    double omega = 4.0;
    std::string scan;
    std::string config;
    std::string csv_path;
    unsigned max_n = 6;

    auto* normalize = app.add_subcommand("normalize", "PBW normal form");
    normalize->add_option("expr", expr)->required();
    auto* degree = app.add_subcommand("degree", "Homogeneous degree");
    degree->add_option("expr", expr)->required();
    auto* invariance = app.add_subcommand("invariance-check", "Exact left-invariance on polynomial probes");
    invariance->add_option("expr", expr)->required();
    invariance->add_option("--samples", samples, "Random exact group points");
    invariance->add_option("--deg", deg, "Probe polynomial degree");
    invariance->add_option("--seed", seed);
    auto* repr = app.add_subcommand("represent", "Image under pi_lambda as a Weyl operator");
    repr->add_option("expr", expr)->required();
    repr->add_option("--lambda", lambda)->required();
    repr->add_option("--convention", convention)->check(CLI::IsMember({"paper", "homomorphic"}));
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and singular values of the Hermite truncation");
    spectrum->add_option("expr", expr)->required();
    spectrum->add_option("--lambda", lambda)->required();
    spectrum->add_option("--K", K, "Basis functions per axis");
    spectrum->add_option("--omega", omega, "Oscillator frequency of the basis");
    spectrum->add_option("--convention", convention)->check(CLI::IsMember({"paper", "homomorphic"}));
    auto* solvability = app.add_subcommand("solvability", "Bounded-left-inverse verdict");
    solvability->add_option("expr", expr)->required();
    solvability->add_option("--alpha-scan", scan, "a:b:step scan of the sublaplacian parameter");
    auto* solve_demo = app.add_subcommand("solve-demo", "Fundamental solution residual report");
    solve_demo->add_option("--config", config)->required();
    solve_demo->add_option("--csv", csv_path, "Write the per-lambda integrand here");
    auto* fock = app.add_subcommand("fock-audit", "Fock basis, unitarity and homomorphism audit");
    fock->add_option("--lambda", lambda);
    fock->add_option("--max-n", max_n);
    fock->add_option("--K", K = 40);
    auto* audit = app.add_subcommand("audit-identities", "Exact audit of the displayed identities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    try {
        Result r;
        if (*normalize) r = cmd_normalize(lower_text(expr, n));
        else if (*degree) r = cmd_degree(lower_text(expr, n));
        else if (*invariance) r = cmd_invariance(lower_text(expr, n), samples, deg, seed);
        else if (*repr) r = cmd_represent(lower_text(expr, n), lambda, convention);
        else if (*spectrum) r = cmd_spectrum(lower_text(expr, n), lambda, K, omega, convention);
        else if (*solvability) r = cmd_solvability(lower_text(expr, n), scan);
        else if (*solve_demo) r = cmd_solve_demo(config, csv_path);
        else if (*fock) r = cmd_fock_audit(lambda, max_n, K);
        else if (*audit) r = cmd_audit_identities();

        if (output == "json") std::cout << r.data.dump(2) << "\n";
        else if (output == "text") std::cout << r.text << (r.text.empty() || r.text.back() == '\n' ? "" : "\n");
        else if (r.csv) std::cout << *r.csv;
        else return fail(1, "usage", "csv output is not available for this command");
    } catch (const ParseError& e) {
        std::cerr << json{{"error", "syntax"}, {"message", e.what()}, {"position", e.position()}}.dump() << "\n";
        return 1;
    } catch (const UsageError& e) {
        return fail(1, "usage", e.what());
    } catch (const DomainError& e) {
        return fail(2, "domain", e.what());
    } catch (const NumericalError& e) {
        return fail(3, "numerical", e.what());
    }
    return 0;
}
