// One line per acceptance criterion; exit status 1 when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>

#include "heisenberg/audit.hpp"
#include "heisenberg/coord_fields.hpp"
#include "heisenberg/expr.hpp"
#include "heisenberg/fock.hpp"
#include "heisenberg/schrodinger.hpp"
#include "heisenberg/solvability.hpp"
#include "heisenberg/solver.hpp"
#include "test_support.hpp"

using namespace heisenberg;
namespace ht = heisenberg::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string sci(double v) { return fmt("%.3g", v); }

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome check_exactness()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t failures = 0;
    for (std::size_t n : {1U, 2U}) {
        for (int k = 0; k < 100; ++k) {
            const auto g = ht::random_point(n), h = ht::random_point(n), q = ht::random_point(n);
            failures += multiply(multiply(g, h), q) != multiply(g, multiply(h, q));
            failures += multiply(g, inverse(g)) != identity(n);
            failures += multiply(identity(n), g) != g;
        }
    }
    for (int k = 0; k < 500; ++k) {
        const std::size_t n = 1 + k % 3;
        const auto w = ht::random_word(n, 8);
        failures += pbw_normalize(n, w, 1, RewriteOrder::LeftToRight) != pbw_normalize(n, w, 1, RewriteOrder::RightToLeft);
    }
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = 1 + k % 2;
        const auto p = ht::random_element(n), q = ht::random_element(n), r = ht::random_element(n);
        failures += !(commutator(p, commutator(q, r)) + commutator(q, commutator(r, p)) + commutator(r, commutator(p, q))).is_zero();
        const auto f = ht::random_poly(n, 5);
        failures += apply(p * q, f) != apply(p, apply(q, f));
    }
    const auto basis = monomial_basis(1, 4);
    for (int k = 0; k < 5; ++k) {
        const auto p = ht::random_element(1, 2, 3);
        const auto g = ht::random_point(1);
        for (const auto& f : basis) failures += !invariance_check(p, g, f);
    }
    const double secs = seconds_since(t0);
    return {failures == 0 && secs < 30.0, std::to_string(failures) + " exact failures, " + fmt("%.1f", secs) + " s (limit 30 s)"};
}

Outcome check_bracket_convention()
{
    const auto yx = bracket_audit(1, Generator::y(1), Generator::x(1));
    const bool bracket = yx.algebra_commutator == GaussianRational(4) * t_field(1) && yx.operator_match && yx.polynomial_match;

    // Literal images at lambda = 1: pi(X) = d, pi(Y) = i x, pi(T) = i.
    const GaussianRational i = GaussianRational::i();
    const auto px = ExactWeylOperator::derivative(1, 1);
    const auto py = ExactWeylOperator::position(1, 1, i);
    const auto oracle_bracket = commutator(py, px);
    const GaussianRational oracle_factor = oracle_bracket.terms().begin()->second / (GaussianRational(4) * i);

    const ExactRepParameter one{Rational(1), 1};
    const auto literal = homomorphism_audit(1, one, Convention::PaperLiteral);
    const auto repaired = homomorphism_audit(1, one, Convention::Homomorphic);
    const bool pass = bracket && !literal.passes && literal.mismatch_factor == oracle_factor && repaired.passes &&
                      repaired.all_generator_pairs && repaired.mismatch_factor == GaussianRational(1);
    return {pass, "[Y1,X1] = " + to_string(yx.algebra_commutator) + ", literal mismatch " + to_string(literal.mismatch_factor) +
                      " (oracle " + to_string(oracle_factor) + "), homomorphic " + (repaired.passes ? "passes" : "fails")};
}

Outcome check_identity_audit()
{
    const auto lap = audit_laplacian_expansion();

    // Brute force: expand (X - iY)(X + iY) word by word.
    const GaussianRational i = GaussianRational::i();
    const auto X = Generator::x(1), Y = Generator::y(1);
    const auto brute = pbw_normalize(1, {X, X}) + pbw_normalize(1, {X, Y}, i) + pbw_normalize(1, {Y, X}, -i) +
                       pbw_normalize(1, {Y, Y}) - heisenberg_laplacian(1);
    const auto fac = audit_factorization();
    const auto engine_defect = factor_A() * factor_A_dagger() - heisenberg_laplacian(1);
    const bool pure_t = engine_defect.terms().size() == 1 && engine_defect.terms().begin()->first == t_field(1).terms().begin()->first;
    const bool factor_ok = pure_t && engine_defect == brute && fac.details["oracle_agrees"] == true;

    const auto z = audit_z_bracket();
    const bool z_ok = z.details["oracle_agrees"] == true;

    bool reported = true;
    const auto entries = audit_identities();
    for (const char* id : {"laplacian_coordinate_expansion", "factorization_A_Adag", "z_zbar_bracket"}) {
        bool found = false;
        for (const auto& e : entries) found = found || (e.id == id && to_json(e).contains("verdict"));
        reported = reported && found;
    }
    return {lap.consistent && factor_ok && z_ok && reported,
            std::string("expansion ") + (lap.consistent ? "term-for-term" : "differs") + ", AA^dag - Lap = " + to_string(engine_defect) +
                " (brute force " + to_string(brute) + "), [Z1,Zb1] = " + z.engine + " (oracle " +
                z.details["k_coordinate_oracle"].get<std::string>() + "*T)"};
}

Outcome check_spectrum()
{
    const auto m = hermite_matrix(represent(sublaplacian(1, 0), RepParameter(1.0)), 64, 4.0);
    double offdiag = 0, diag = 0;
    for (Eigen::Index r = 0; r < 64; ++r)
        for (Eigen::Index c = 0; c < 64; ++c) {
            if (r == c) diag = std::max(diag, std::abs(m.entries(r, c) + (2.0 * static_cast<double>(r) + 1.0)));
            else offdiag = std::max(offdiag, std::abs(m.entries(r, c)));
        }
    return {offdiag <= 1e-12 && diag <= 1e-10, "max offdiag " + sci(offdiag) + " (tol 1e-12), max |m_kk + 2k + 1| " + sci(diag) + " (tol 1e-10)"};
}

Outcome check_scaling()
{
    std::size_t failures = 0, checks = 0;
    for (const auto& p : {t_field(1), heisenberg_laplacian(1), factor_A(), factor_A_dagger(), preconditioner(1, 2)})
        for (double lambda : {0.25, 4.0, 9.0}) {
            const auto r = scaling_check(p, lambda);
            ++checks;
            failures += !(r.exact && r.passes && r.max_abs_defect == 0.0);
        }
    return {failures == 0, std::to_string(checks - failures) + "/" + std::to_string(checks) + " exact scaling checks"};
}

Outcome check_solvability()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto l0 = verdict(sublaplacian(1, 0));
    const auto a = verdict(factor_A());
    const auto roots = critical_alpha_scan(1, 0.0, 6.0, 0.01);
    const double secs = seconds_since(t0);
    const double rate = a.fit_minus.geometric_rate.value_or(NAN);
    double root_err = roots.size() == 3 ? 0.0 : INFINITY;
    if (roots.size() == 3)
        for (int k = 0; k < 3; ++k) root_err = std::max(root_err, std::abs(roots[static_cast<std::size_t>(k)] - (2 * k + 1)));
    const bool pass = l0.verdict == Verdict::HypothesisSatisfied && a.verdict == Verdict::HypothesisFailsKernel && rate >= 0.1 &&
                      rate <= 0.9 && root_err <= 1e-6 && secs < 120.0;
    return {pass, "L0 " + to_string(l0.verdict) + ", A " + to_string(a.verdict) + " rate " + fmt("%.3f", rate) + ", roots " +
                      std::to_string(roots.size()) + " max err " + sci(root_err) + ", " + fmt("%.1f", secs) + " s (limit 120 s)"};
}

Outcome check_trace_inequality()
{
    std::normal_distribution<double> g;
    auto random_matrix = [&](Eigen::Index k) {
        Eigen::MatrixXcd m(k, k);
        for (Eigen::Index r = 0; r < k; ++r)
            for (Eigen::Index c = 0; c < k; ++c) m(r, c) = cplx(g(ht::rng()), g(ht::rng()));
        return m;
    };
    double worst_ratio = 0, worst_equality = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Eigen::Index k = ht::uniform_int(1, 16);
        const auto c = random_matrix(k);
        const auto d = random_matrix(k);
        worst_ratio = std::max(worst_ratio, std::abs((c * d).trace()) / (c.norm() * d.norm()));
        const Eigen::MatrixXcd e = cplx(g(ht::rng()), g(ht::rng())) * c.adjoint();
        const double rhs = c.norm() * e.norm();
        worst_equality = std::max(worst_equality, std::abs(std::abs((c * e).trace()) - rhs) / rhs);
    }
    return {worst_ratio <= 1.0 + 1e-12 && worst_equality <= 1e-12,
            "max |tr CD| / (|C|_HS |D|_HS) " + fmt("%.6f", worst_ratio) + ", equality defect " + sci(worst_equality) + " (tol 1e-12)"};
}

Outcome check_convolution()
{
    const auto psi = GaussPoly::gaussian({0.3, -0.2, 0.1}, {12.0, 1.5, 12.0});
    const auto chi = GaussPoly::gaussian({-0.1, 0.4, -0.3}, {15.0, 1.2, 10.8});
    std::vector<double> errs;
    for (std::size_t points : {49U, 61U, 73U}) errs.push_back(convolution_check(psi, chi, GridSpec{points, 6.0}, 1.5).relative_error);
    const bool pass = errs[0] <= 1e-2 && errs[1] < errs[0] && errs[2] < errs[1];
    return {pass, "defect " + sci(errs[0]) + " -> " + sci(errs[1]) + " -> " + sci(errs[2]) + " at 49/61/73 points (tol 1e-2, decreasing)"};
}

Outcome check_solver()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto nu = GaussPoly::gaussian({0, 0, 0}, {0.5, 0.5, 2.0});
    double plancherel = 0;
    for (const auto& phi : {GaussPoly::gaussian({0.3, -0.2, 0.4}, {0.5, 0.5, 2.0}), GaussPoly::gaussian({0, 0, 0}, {1.0, 1.0, 1.0}),
                            GaussPoly::gaussian({-0.4, 0.1, -0.6}, {0.8, 0.6, 1.5})})
        plancherel = std::max(plancherel, plancherel_check(nu, phi).relative_error);

    std::vector<GaussPoly> phis;
    for (const auto& e : std::vector<GaussPoly::Exp3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}) {
        GaussPoly f({0.3, -0.2, 0.4}, {0.6, 0.4, 0.5});
        f.add_term(e, 1.0);
        phis.push_back(f);
    }
    const double t_res = residual_check(FundamentalSolution(t_field(1), nu), phis).max_residual;

    std::vector<double> levels;
    for (std::size_t level = 0; level < 3; ++level) {
        SolverConfig cfg;
        cfg.lambda_points = 12 << level;
        cfg.K = 16 << level;
        cfg.lambda_min = 0.2 / static_cast<double>(1 << level);
        levels.push_back(residual_check(FundamentalSolution(sublaplacian(1, 0), nu, cfg), phis).max_residual);
    }
    const double secs = seconds_since(t0);
    const bool pass = plancherel <= 1e-2 && t_res <= 1e-3 && levels[1] < levels[0] && levels[2] < levels[1] && levels[2] <= 5e-2 &&
                      secs < 600.0;
    return {pass, "Plancherel " + sci(plancherel) + " (tol 1e-2), T residual " + sci(t_res) + " (tol 1e-3), L0 residual " +
                      sci(levels[0]) + " -> " + sci(levels[1]) + " -> " + sci(levels[2]) + " (final tol 5e-2), " + fmt("%.1f", secs) +
                      " s (limit 600 s)"};
}

Outcome check_fock()
{
    const auto audit = basis_audit(1.0, 1, 10);
    bool factor_ok = !audit.printed_orthonormal;
    for (std::size_t k = 0; k < audit.norm_ratio.size(); ++k)
        factor_ok = factor_ok && std::abs(audit.norm_ratio[k] - std::pow(2.0, static_cast<double>(k))) <= 1e-12 * std::pow(2.0, static_cast<double>(k));
    double ortho = audit.corrected_offdiag;
    for (double v : audit.corrected_norms) ortho = std::max(ortho, std::abs(v - 1.0));

    double unitarity = 0, at_radius = 0;
    for (double r : {0.25, 0.5, 0.75, 0.9, 1.0})
        for (int a = 0; a < 8; ++a) {
            const double d = unitarity_check(GroupPointF{{std::polar(r, a * std::numbers::pi / 4)}, 0.7}, 1.0, 40, 20).defect;
            if (d > unitarity) {
                unitarity = d;
                at_radius = r;
            }
        }

    const GroupPointF g{{cplx(0.6, 0.3)}, 0.4}, h{{cplx(-0.2, 0.5)}, -1.1};
    std::vector<double> hom;
    for (std::size_t K : {10U, 15U, 20U}) hom.push_back(fock_homomorphism_check(g, h, 1.0, K, 5).defect);
    const bool hom_ok = hom[1] < hom[0] && hom[2] < hom[1];

    const bool pass = factor_ok && ortho <= 1e-12 && unitarity <= 1e-6 && hom_ok;
    return {pass, std::string("printed norm^2 ratio 2^n ") + (factor_ok ? "confirmed" : "not confirmed") + ", corrected defect " +
                      sci(ortho) + " (tol 1e-12), unitarity defect " + sci(unitarity) + " at |z| = " + fmt("%.2f", at_radius) +
                      " (tol 1e-6, K = 40, |z| <= 1), homomorphism " + sci(hom[0]) + " -> " + sci(hom[1]) + " -> " + sci(hom[2])};
}

ExprPtr random_expr(int depth)
{
    const int pick = depth <= 0 ? ht::uniform_int(0, 2) : ht::uniform_int(0, 9);
    switch (pick) {
    case 0:
        return Expr::literal(Rational(ht::uniform_int(0, 9), ht::uniform_int(1, 4)), ht::uniform_int(0, 3) == 0);
    case 1: {
        static const char* indexed[] = {"X", "Y", "Z", "Zb"};
        return Expr::atom(indexed[ht::uniform_int(0, 3)], static_cast<unsigned>(ht::uniform_int(1, 3)));
    }
    case 2: {
        static const char* plain[] = {"T", "A", "Adag", "Lap"};
        return Expr::atom(plain[ht::uniform_int(0, 3)]);
    }
    case 3: return Expr::sub(random_expr(0));
    case 4: return Expr::neg(random_expr(depth - 1));
    case 5: return Expr::pow(random_expr(depth - 1), static_cast<unsigned>(ht::uniform_int(0, 3)));
    case 6: return Expr::binary(Expr::Kind::Add, random_expr(depth - 1), random_expr(depth - 1));
    case 7: return Expr::binary(Expr::Kind::Subtract, random_expr(depth - 1), random_expr(depth - 1));
    default: return Expr::binary(Expr::Kind::Mul, random_expr(depth - 1), random_expr(depth - 1));
    }
}

Outcome check_parser()
{
    std::size_t ok = 0;
    for (int k = 0; k < 100; ++k) {
        const auto e = random_expr(4);
        ok += structurally_equal(*e, *parse(print(*e)));
    }
    const std::string cmd = std::string(PYTHON_EXECUTABLE) + " " + REPO_ROOT "/tools/validate_outputs.py " + HEISENBERG_CLI + " " +
                            REPO_ROOT + " > /dev/null";
    const int status = std::system(cmd.c_str());
    return {ok == 100 && status == 0,
            std::to_string(ok) + "/100 round trips, schema validation " + (status == 0 ? "passed" : "failed")};
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exactness suite", check_exactness},          {"bracket and convention audit", check_bracket_convention},
        {"identity audit", check_identity_audit},      {"oscillator spectrum", check_spectrum},
        {"scaling law", check_scaling},                {"solvability verdicts", check_solvability},
        {"trace inequality", check_trace_inequality},  {"representation of convolution", check_convolution},
        {"fundamental solution", check_solver},        {"Fock audit", check_fock},
        {"parser and schemas", check_parser},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria pass\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed ? 1 : 0;
}
