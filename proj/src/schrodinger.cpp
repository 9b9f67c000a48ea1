#include "heisenberg/schrodinger.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace heisenberg {

namespace {

template <class Coeff>
struct GeneratorImages {
    Coeff root;    // |lambda|^{1/2}
    Coeff y_coeff; // pi(Y_j) = y_coeff * x_j
    Coeff t_value; // pi(T)
};

template <class Coeff>
BasicWeylOperator<Coeff> represent_impl(const AlgebraElement& p, const GeneratorImages<Coeff>& img,
                                        Coeff (*convert)(const GaussianRational&))
{
    const std::size_t n = p.dim();
    BasicWeylOperator<Coeff> out(n);
    for (const auto& [m, c] : p.terms()) {
        // X^a Y^b T^c -> root^{|a|} y_coeff^{|b|} t_value^c d^a x^b.
        Coeff scale = convert(c);
        WeylIndex d{std::vector<unsigned>(n, 0), m.a};
        WeylIndex x{m.b, std::vector<unsigned>(n, 0)};
        for (std::size_t j = 0; j < n; ++j) {
            for (unsigned e = 0; e < m.a[j]; ++e) scale = scale * img.root;
            for (unsigned e = 0; e < m.b[j]; ++e) scale = scale * img.y_coeff;
        }
        for (unsigned e = 0; e < m.c; ++e) scale = scale * img.t_value;

        BasicWeylOperator<Coeff> left(n), right(n);
        left.add_term(d, Coeff(1));
        right.add_term(x, Coeff(1));
        out += (left * right) * scale;
    }
    return out;
}

cplx to_cplx(const GaussianRational& c) { return c.to_complex(); }
GaussianRational to_exact(const GaussianRational& c) { return c; }

std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string format_cplx(const cplx& c)
{
    if (c.imag() == 0.0) return format_double(c.real());
    if (c.real() == 0.0) return format_double(c.imag()) + "i";
    return "(" + format_double(c.real()) + (c.imag() < 0 ? " - " : " + ") + format_double(std::abs(c.imag())) + "i)";
}

std::string weyl_monomial(const WeylIndex& idx)
{
    std::string out;
    auto append = [&out](const std::string& sym, unsigned e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += sym;
        if (e > 1) out += "^" + std::to_string(e);
    };
    for (std::size_t j = 0; j < idx.p.size(); ++j) append("x" + std::to_string(j + 1), idx.p[j]);
    for (std::size_t j = 0; j < idx.q.size(); ++j) append("d" + std::to_string(j + 1), idx.q[j]);
    return out;
}

template <class Coeff, class Fmt>
std::string weyl_text(const BasicWeylOperator<Coeff>& w, Fmt fmt)
{
    if (w.is_zero()) return "0";
    std::string out;
    for (const auto& [idx, c] : w.terms()) {
        if (!out.empty()) out += " + ";
        const std::string mono = weyl_monomial(idx);
        out += fmt(c);
        if (!mono.empty()) out += "*" + mono;
    }
    return out;
}

std::string format_exact(const GaussianRational& c)
{
    const std::string s = to_string(c);
    return (c.is_real() || sgn(c.real()) == 0) ? s : "(" + s + ")";
}

Eigen::MatrixXd matrix_power_product(const Eigen::MatrixXd& x, const Eigen::MatrixXd& d, unsigned p, unsigned q)
{
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(x.rows(), x.cols());
    for (unsigned k = 0; k < q; ++k) out = d * out;
    for (unsigned k = 0; k < p; ++k) out = x * out;
    return out;
}

}  // namespace

WeylOperator to_float(const ExactWeylOperator& w)
{
    WeylOperator out(w.dim());
    for (const auto& [idx, c] : w.terms()) out.add_term(idx, c.to_complex());
    return out;
}

RepParameter::RepParameter(double lambda) : lambda_(lambda)
{
    if (lambda == 0.0 || !std::isfinite(lambda))
        throw DomainError("representation parameter lambda must be finite and nonzero (lambda = 0 gives characters)");
}

double RepParameter::sqrt_abs() const { return std::sqrt(std::abs(lambda_)); }

std::optional<ExactRepParameter> ExactRepParameter::from_rational(const Rational& lambda)
{
    if (sgn(lambda) == 0) return std::nullopt;
    const mpz_class num = abs(lambda.get_num());
    const mpz_class den = lambda.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    Rational root(sqrt(num), sqrt(den));
    root.canonicalize();
    return ExactRepParameter{root, sgn(lambda) > 0 ? 1 : -1};
}

std::string to_string(Convention c) { return c == Convention::PaperLiteral ? "paper" : "homomorphic"; }

Convention convention_from_string(const std::string& s)
{
    if (s == "paper" || s == "PAPER_LITERAL") return Convention::PaperLiteral;
    if (s == "homomorphic" || s == "HOMOMORPHIC") return Convention::Homomorphic;
    throw DomainError("unknown convention '" + s + "' (expected paper|homomorphic)");
}

WeylOperator represent(const AlgebraElement& p, const RepParameter& lambda, Convention convention)
{
    const cplx i(0.0, 1.0);
    const double root = lambda.sqrt_abs();
    const double sign = lambda.sign();
    GeneratorImages<cplx> img{cplx(root), convention == Convention::PaperLiteral ? i * root * sign : -4.0 * i * sign * root,
                              i * lambda.value()};
    return represent_impl<cplx>(p, img, &to_cplx);
}

ExactWeylOperator represent(const AlgebraElement& p, const ExactRepParameter& lambda, Convention convention)
{
    if (sgn(lambda.root) <= 0) throw DomainError("representation parameter root must be positive");
    const GaussianRational i = GaussianRational::i();
    const GaussianRational root(lambda.root);
    const GaussianRational sign(lambda.sign);
    GeneratorImages<GaussianRational> img{
        root, convention == Convention::PaperLiteral ? i * root * sign : GaussianRational(-4) * i * sign * root,
        i * GaussianRational(lambda.value())};
    return represent_impl<GaussianRational>(p, img, &to_exact);
}

HomomorphismAudit homomorphism_audit(std::size_t n, const ExactRepParameter& lambda, Convention convention)
{
    HomomorphismAudit audit{convention, ExactWeylOperator(n), ExactWeylOperator(n), GaussianRational(0)};
    const auto x1 = represent(x_field(n, 1), lambda, convention);
    const auto y1 = represent(y_field(n, 1), lambda, convention);
    audit.bracket_image = commutator(y1, x1);
    audit.expected = represent(GaussianRational(4) * t_field(n), lambda, convention);

    const WeylIndex zero{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
    const auto scalar_of = [&zero](const ExactWeylOperator& w) {
        auto it = w.terms().find(zero);
        return it == w.terms().end() ? GaussianRational(0) : it->second;
    };
    audit.mismatch_factor = scalar_of(audit.bracket_image) / scalar_of(audit.expected);
    audit.passes = audit.bracket_image == audit.expected;

    std::vector<AlgebraElement> gens;
    for (unsigned j = 1; j <= n; ++j) {
        gens.push_back(x_field(n, j));
        gens.push_back(y_field(n, j));
    }
    gens.push_back(t_field(n));
    audit.all_generator_pairs = true;
    for (const auto& g : gens)
        for (const auto& h : gens)
            if (!(commutator(represent(g, lambda, convention), represent(h, lambda, convention)) ==
                  represent(commutator(g, h), lambda, convention)))
                audit.all_generator_pairs = false;
    return audit;
}

Eigen::MatrixXd ladder_position(std::size_t K, double omega)
{
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
    for (std::size_t k = 0; k + 1 < K; ++k) {
        const double v = std::sqrt(static_cast<double>(k + 1) / (2.0 * omega));
        x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1)) = v;
        x(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = v;
    }
    return x;
}

Eigen::MatrixXd ladder_derivative(std::size_t K, double omega)
{
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
    for (std::size_t k = 0; k + 1 < K; ++k) {
        const double v = std::sqrt(omega / 2.0) * std::sqrt(static_cast<double>(k + 1));
        d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1)) = v;
        d(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = -v;
    }
    return d;
}

HermiteMatrix hermite_matrix(const WeylOperator& w, std::size_t K, double omega)
{
    if (K == 0) throw DomainError("truncation K must be >= 1");
    if (!(omega > 0.0)) throw DomainError("oscillator frequency omega must be positive");
    const std::size_t n = w.dim();
    const std::size_t padded = K + w.order();
    const Eigen::MatrixXd x = ladder_position(padded, omega);
    const Eigen::MatrixXd d = ladder_derivative(padded, omega);
    const auto k = static_cast<Eigen::Index>(K);

    Eigen::Index total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= k;

    HermiteMatrix out{n, K, omega, Eigen::MatrixXcd::Zero(total, total)};
    for (const auto& [idx, c] : w.terms()) {
        Eigen::MatrixXd factor = matrix_power_product(x, d, idx.p[0], idx.q[0]).topLeftCorner(k, k);
        for (std::size_t j = 1; j < n; ++j) {
            const Eigen::MatrixXd next = matrix_power_product(x, d, idx.p[j], idx.q[j]).topLeftCorner(k, k);
            factor = Eigen::kroneckerProduct(factor, next).eval();
        }
        out.entries += c * factor.cast<cplx>();
    }
    return out;
}

double HermiteMatrix::trace_norm() const
{
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(entries);
    return svd.singularValues().sum();
}

double HermiteMatrix::operator_norm() const
{
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(entries);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double HermiteMatrix::sigma_min() const
{
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(entries);
    const auto& s = svd.singularValues();
    return s.size() ? s(s.size() - 1) : 0.0;
}

ScalingReport scaling_check(const AlgebraElement& p, double lambda, Convention convention)
{
    if (p.is_zero()) throw DomainError("scaling check needs a nonzero operator");
    const auto degree = homogeneous_degree(p);
    if (!degree) throw DomainError("scaling check needs a homogeneous operator");
    const RepParameter param(lambda);

    ScalingReport report;
    report.degree = *degree;
    report.lambda = lambda;
    report.reference = param.sign();

    if (auto exact = ExactRepParameter::from_rational(Rational(lambda))) {
        report.exact = true;
        GaussianRational factor(1);
        for (unsigned k = 0; k < *degree; ++k) factor *= GaussianRational(exact->root);
        const auto lhs = represent(p, *exact, convention);
        const auto rhs = represent(p, ExactRepParameter{Rational(1), exact->sign}, convention) * factor;
        const auto diff = to_float(lhs - rhs);
        for (const auto& [idx, c] : diff.terms()) report.max_abs_defect = std::max(report.max_abs_defect, std::abs(c));
        report.passes = lhs == rhs;
        return report;
    }

    const double factor = std::pow(std::abs(lambda), *degree / 2.0);
    const auto lhs = represent(p, param, convention);
    const auto rhs = represent(p, RepParameter(param.sign()), convention) * cplx(factor);
    double scale = 0;
    for (const auto& [idx, c] : lhs.terms()) scale = std::max(scale, std::abs(c));
    const auto diff = lhs - rhs;
    for (const auto& [idx, c] : diff.terms()) report.max_abs_defect = std::max(report.max_abs_defect, std::abs(c));
    report.passes = report.max_abs_defect <= 1e-12 * std::max(scale, 1.0);
    return report;
}

cplx finite_dim_rep(const AlgebraElement& p, const std::vector<double>& a, const std::vector<double>& b)
{
    const std::size_t n = p.dim();
    if (a.size() != n || b.size() != n) throw DomainError("parameter vectors must have length n");
    const cplx i(0.0, 1.0);
    cplx sum = 0;
    for (const auto& [m, c] : p.terms()) {
        if (m.c != 0) continue;  // pi(T) = 0
        cplx term = c.to_complex();
        for (std::size_t j = 0; j < n; ++j) {
            term *= std::pow(i * a[j], static_cast<int>(m.a[j]));
            term *= std::pow(i * b[j], static_cast<int>(m.b[j]));
        }
        sum += term;
    }
    return sum;
}

cplx character(const std::vector<cplx>& w, const GroupPointF& g)
{
    if (w.size() != g.dim()) throw DomainError("character parameter dimension mismatch");
    cplx pairing = 0;
    for (std::size_t j = 0; j < w.size(); ++j) pairing += w[j] * std::conj(g.z[j]);
    return std::exp(cplx(0.0, -pairing.real()));
}

std::string to_string(const WeylOperator& w) { return weyl_text(w, format_cplx); }
std::string to_string(const ExactWeylOperator& w) { return weyl_text(w, format_exact); }

nlohmann::json to_json(const WeylOperator& w)
{
    nlohmann::json j;
    j["n"] = w.dim();
    j["terms"] = nlohmann::json::array();
    for (const auto& [idx, c] : w.terms())
        j["terms"].push_back({{"x", idx.p}, {"d", idx.q}, {"re", c.real()}, {"im", c.imag()}});
    return j;
}

nlohmann::json to_json(const HermiteMatrix& m)
{
    nlohmann::json j;
    j["n"] = m.n;
    j["K"] = m.K;
    j["omega"] = m.omega;
    auto re = nlohmann::json::array();
    auto im = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
        auto rr = nlohmann::json::array();
        auto ri = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
            rr.push_back(m.entries(r, c).real());
            ri.push_back(m.entries(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

std::string to_csv(const Eigen::MatrixXcd& m)
{
    std::ostringstream os;
    os << std::setprecision(17);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) os << ',';
            os << m(r, c).real() << ',' << m(r, c).imag();
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace heisenberg
