#include "heisenberg/fock.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "heisenberg/errors.hpp"

namespace heisenberg {

namespace {

using cld = std::complex<long double>;

void check_lambda(double lambda)
{
    if (lambda == 0.0 || !std::isfinite(lambda)) throw DomainError("Fock space parameter lambda must be finite and nonzero");
}

double log_factorial(unsigned k) { return std::lgamma(static_cast<double>(k) + 1.0); }

/// <U phi_m, phi_k> for r = 1, lambda > 0, without the e^{-i lambda t} phase.
/// U phi_m(w) = c_m e^{-lambda|z|^2} e^{2 lambda conj(z) w} (w - z)^m and phi_k = c_k w^k,
/// so the entry is (w^k coefficient) / c_k with c_k = (2/pi)^{1/2} ((2 lambda)^k / k!)^{1/2}.
Eigen::MatrixXcd displacement_block(std::complex<double> z, double lambda, std::size_t K)
{
    const long double two_l = 2.0L * lambda;
    const cld zz(z.real(), z.imag());
    const cld up = two_l * std::conj(zz);  // from e^{2 lambda conj(z) w}
    const cld down = -zz;                  // from (w - z)^m
    const long double envelope = std::exp(-static_cast<long double>(lambda) * std::norm(zz));

    const auto k_size = static_cast<Eigen::Index>(K);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k_size, k_size);
    for (unsigned k = 0; k < K; ++k) {
        for (unsigned m = 0; m < K; ++m) {
            // c_m / c_k = ((2 lambda)^{m-k} k! / m!)^{1/2}
            const long double log_ratio =
                0.5L * ((static_cast<long double>(m) - k) * std::log(two_l) + log_factorial(k) - log_factorial(m));
            cld sum = 0;
            for (unsigned j = 0; j <= std::min(k, m); ++j) {
                // (2 lambda conj z)^{k-j} / (k-j)! * C(m, j) (-z)^{m-j}
                const long double log_w =
                    log_factorial(m) - log_factorial(j) - log_factorial(m - j) - log_factorial(k - j) + log_ratio;
                sum += std::exp(log_w) * std::pow(up, static_cast<int>(k - j)) * std::pow(down, static_cast<int>(m - j));
            }
            const cld v = envelope * sum;
            out(k, m) = std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag()));
        }
    }
    return out;
}

std::vector<MultiIndex> indices_up_to(std::size_t r, unsigned max_n)
{
    std::vector<MultiIndex> out;
    MultiIndex m(r, 0);
    while (true) {
        unsigned total = 0;
        for (unsigned e : m) total += e;
        if (total <= max_n) out.push_back(m);
        std::size_t j = 0;
        while (j < r && m[j] == max_n) m[j++] = 0;
        if (j == r) break;
        ++m[j];
    }
    return out;
}

FockVector basis_vector(const MultiIndex& n, double lambda, bool printed)
{
    check_lambda(lambda);
    const double two_l = 2.0 * std::abs(lambda);
    double log_c = 0.5 * static_cast<double>(n.size()) * std::log(2.0 / std::numbers::pi);
    for (unsigned e : n) log_c += -0.5 * log_factorial(e) + (printed ? 1.0 : 0.5) * e * std::log(two_l);
    return FockVector::monomial(n, std::exp(log_c));
}

}  // namespace

FockVector::FockVector(std::size_t r) : r_(r)
{
    if (r == 0) throw DomainError("Fock space dimension r must be >= 1");
}

FockVector FockVector::monomial(const MultiIndex& m, std::complex<double> c)
{
    FockVector f(m.size());
    f.add_term(m, c);
    return f;
}

void FockVector::add_term(const MultiIndex& m, std::complex<double> c)
{
    if (m.size() != r_) throw DomainError("multi-index has wrong length");
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

FockVector& FockVector::operator+=(const FockVector& o)
{
    if (o.r_ != r_) throw DomainError("Fock vector dimension mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

FockVector& FockVector::operator*=(std::complex<double> s)
{
    FockVector out(r_);
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return *this = std::move(out);
}

std::complex<double> inner_product(const FockVector& f, const FockVector& g, double lambda)
{
    check_lambda(lambda);
    if (f.dim() != g.dim()) throw DomainError("Fock vector dimension mismatch");
    const double two_l = 2.0 * std::abs(lambda);
    const double base = std::pow(std::numbers::pi / 2.0, static_cast<double>(f.dim()));
    std::complex<double> sum = 0;
    for (const auto& [m, c] : f.terms()) {
        auto it = g.terms().find(m);
        if (it == g.terms().end()) continue;
        // |lambda|^r prod_j pi m_j! / (2|lambda|)^{m_j + 1} = (pi/2)^r prod_j m_j! / (2|lambda|)^{m_j}
        double log_w = 0;
        for (unsigned e : m) log_w += log_factorial(e) - e * std::log(two_l);
        sum += c * std::conj(it->second) * base * std::exp(log_w);
    }
    return sum;
}

FockVector printed_basis_vector(const MultiIndex& n, double lambda) { return basis_vector(n, lambda, true); }
FockVector corrected_basis_vector(const MultiIndex& n, double lambda) { return basis_vector(n, lambda, false); }

BasisAudit basis_audit(double lambda, std::size_t r, unsigned max_n, double tol)
{
    check_lambda(lambda);
    if (r == 0) throw DomainError("Fock space dimension r must be >= 1");
    BasisAudit audit;
    audit.lambda = lambda;
    audit.r = r;
    audit.indices = indices_up_to(r, max_n);

    std::vector<FockVector> printed, corrected;
    for (const auto& n : audit.indices) {
        printed.push_back(printed_basis_vector(n, lambda));
        corrected.push_back(corrected_basis_vector(n, lambda));
    }
    audit.printed_orthonormal = audit.corrected_orthonormal = true;
    for (std::size_t a = 0; a < printed.size(); ++a) {
        const double p2 = inner_product(printed[a], printed[a], lambda).real();
        const double c2 = inner_product(corrected[a], corrected[a], lambda).real();
        audit.printed_norms.push_back(std::sqrt(p2));
        audit.corrected_norms.push_back(std::sqrt(c2));
        audit.norm_ratio.push_back(p2 / c2);
        if (std::abs(std::sqrt(p2) - 1.0) > tol) audit.printed_orthonormal = false;
        if (std::abs(std::sqrt(c2) - 1.0) > tol) audit.corrected_orthonormal = false;
        for (std::size_t b = 0; b < printed.size(); ++b) {
            if (a == b) continue;
            audit.printed_offdiag = std::max(audit.printed_offdiag, std::abs(inner_product(printed[a], printed[b], lambda)));
            audit.corrected_offdiag =
                std::max(audit.corrected_offdiag, std::abs(inner_product(corrected[a], corrected[b], lambda)));
        }
    }
    if (audit.printed_offdiag > tol) audit.printed_orthonormal = false;
    if (audit.corrected_offdiag > tol) audit.corrected_orthonormal = false;
    return audit;
}

Eigen::MatrixXcd u_action_matrix(const GroupPointF& g, double lambda, std::size_t K)
{
    check_lambda(lambda);
    if (K == 0) throw DomainError("truncation K must be >= 1");
    if (g.dim() == 0) throw DomainError("group point has no coordinates");
    // lambda < 0 acts as U^{|lambda|} at (conj z, -t).
    const double mu = std::abs(lambda);
    const bool flip = lambda < 0;
    const double t = flip ? -g.t : g.t;

    auto axis = [&](std::size_t j) { return displacement_block(flip ? std::conj(g.z[j]) : g.z[j], mu, K); };
    Eigen::MatrixXcd out = axis(0);
    for (std::size_t j = 1; j < g.dim(); ++j) out = Eigen::kroneckerProduct(out, axis(j)).eval();
    return std::exp(std::complex<double>(0.0, -mu * t)) * out;
}

UnitarityReport unitarity_check(const GroupPointF& g, double lambda, std::size_t K, std::size_t block)
{
    const Eigen::MatrixXcd u = u_action_matrix(g, lambda, K);
    if (block == 0 || static_cast<Eigen::Index>(block) > u.cols()) throw DomainError("block size out of range");
    const auto b = static_cast<Eigen::Index>(block);
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    UnitarityReport rep{K, block, 0, 0};
    rep.defect = (gram.topLeftCorner(b, b) - Eigen::MatrixXcd::Identity(b, b)).cwiseAbs().maxCoeff();
    for (Eigen::Index m = 0; m < b; ++m) rep.tail_mass = std::max(rep.tail_mass, 1.0 - u.col(m).squaredNorm());
    return rep;
}

HomomorphismReport fock_homomorphism_check(const GroupPointF& g, const GroupPointF& h, double lambda,
                                           std::size_t K, std::size_t block)
{
    const Eigen::MatrixXcd ug = u_action_matrix(g, lambda, K);
    const Eigen::MatrixXcd uh = u_action_matrix(h, lambda, K);
    const Eigen::MatrixXcd ugh = u_action_matrix(multiply(g, h), lambda, K);
    if (block == 0 || static_cast<Eigen::Index>(block) > ug.cols()) throw DomainError("block size out of range");
    const auto b = static_cast<Eigen::Index>(block);
    return {K, block, (ug * uh - ugh).topLeftCorner(b, b).cwiseAbs().maxCoeff()};
}

nlohmann::json to_json(const BasisAudit& a)
{
    nlohmann::json j;
    j["lambda"] = a.lambda;
    j["r"] = a.r;
    j["indices"] = a.indices;
    j["printed_norms"] = a.printed_norms;
    j["corrected_norms"] = a.corrected_norms;
    j["printed_to_corrected_norm2_ratio"] = a.norm_ratio;
    j["printed_max_offdiag"] = a.printed_offdiag;
    j["corrected_max_offdiag"] = a.corrected_offdiag;
    j["printed_orthonormal"] = a.printed_orthonormal;
    j["corrected_orthonormal"] = a.corrected_orthonormal;
    j["verdict"] = a.corrected_orthonormal && !a.printed_orthonormal
                       ? "printed normalization is not orthonormal (norm^2 = (2|lambda|)^|n|); corrected basis is orthonormal"
                   : a.printed_orthonormal ? "printed normalization is orthonormal"
                                           : "neither candidate is orthonormal";
    return j;
}

}  // namespace heisenberg
