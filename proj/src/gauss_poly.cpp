#include "heisenberg/gauss_poly.hpp"

#include <cmath>

#include "heisenberg/errors.hpp"

namespace heisenberg {

namespace {

/// \int s^k e^{-w s^2} ds.
double gaussian_moment(unsigned k, double w)
{
    if (k % 2) return 0.0;
    return std::tgamma((k + 1) / 2.0) / std::pow(w, (k + 1) / 2.0);
}

double binomial(unsigned n, unsigned k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }

/// \int (s - c1)^p (s - c2)^q e^{-a1 (s-c1)^2 - a2 (s-c2)^2} ds.
double axis_product_integral(unsigned p, double a1, double c1, unsigned q, double a2, double c2)
{
    const double A = a1 + a2;
    const double m = (a1 * c1 + a2 * c2) / A;
    const double d1 = m - c1;
    const double d2 = m - c2;
    double sum = 0.0;
    for (unsigned i = 0; i <= p; ++i)
        for (unsigned j = 0; j <= q; ++j) {
            if ((i + j) % 2) continue;
            sum += binomial(p, i) * std::pow(d1, p - i) * binomial(q, j) * std::pow(d2, q - j) * gaussian_moment(i + j, A);
        }
    return sum * std::exp(-a1 * a2 * (c1 - c2) * (c1 - c2) / A);
}

}  // namespace

std::vector<cplx> gaussian_fourier_moments(double w, double eta, unsigned kmax)
{
    std::vector<cplx> out(kmax + 1);
    out[0] = std::sqrt(M_PI / w) * std::exp(-eta * eta / (4.0 * w));
    if (kmax >= 1) out[1] = cplx(0.0, eta) * out[0] / (2.0 * w);
    for (unsigned k = 1; k < kmax; ++k) out[k + 1] = (cplx(0.0, eta) * out[k] + static_cast<double>(k) * out[k - 1]) / (2.0 * w);
    return out;
}

GaussPoly::GaussPoly(std::array<double, 3> center, std::array<double, 3> width) : center_(center), width_(width)
{
    for (double w : width_)
        if (!(w > 0.0)) throw DomainError("Gaussian widths must be positive");
}

GaussPoly GaussPoly::gaussian(std::array<double, 3> center, std::array<double, 3> width, cplx coeff)
{
    GaussPoly g(center, width);
    g.add_term({0, 0, 0}, coeff);
    return g;
}

unsigned GaussPoly::degree(std::size_t var) const
{
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

void GaussPoly::add_term(const Exp3& e, cplx c)
{
    if (c == cplx(0.0)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx(0.0)) terms_.erase(it);
    }
}

cplx GaussPoly::operator()(double x, double y, double t) const
{
    const std::array<double, 3> s{x - center_[0], y - center_[1], t - center_[2]};
    const double env = std::exp(-width_[0] * s[0] * s[0] - width_[1] * s[1] * s[1] - width_[2] * s[2] * s[2]);
    cplx sum = 0.0;
    for (const auto& [e, c] : terms_) sum += c * std::pow(s[0], e[0]) * std::pow(s[1], e[1]) * std::pow(s[2], e[2]);
    return sum * env;
}

GaussPoly GaussPoly::derivative(std::size_t var) const
{
    GaussPoly out(center_, width_);
    for (const auto& [e, c] : terms_) {
        auto up = e;
        ++up[var];
        out.add_term(up, -2.0 * width_[var] * c);
        if (e[var] > 0) {
            auto down = e;
            --down[var];
            out.add_term(down, static_cast<double>(e[var]) * c);
        }
    }
    return out;
}

GaussPoly GaussPoly::times_coordinate(std::size_t var) const
{
    GaussPoly out(center_, width_);
    for (const auto& [e, c] : terms_) {
        auto up = e;
        ++up[var];
        out.add_term(up, c);
        out.add_term(e, center_[var] * c);
    }
    return out;
}

GaussPoly GaussPoly::inverse() const
{
    GaussPoly out({-center_[0], -center_[1], -center_[2]}, width_);
    for (const auto& [e, c] : terms_) out.add_term(e, (e[0] + e[1] + e[2]) % 2 ? -c : c);
    return out;
}

GaussPoly GaussPoly::apply(const AlgebraElement& p) const
{
    if (p.dim() != 1) throw DomainError("the Gaussian-polynomial family lives on H_1");
    const auto field_x = [](const GaussPoly& f) { return f.derivative(0) - 0.5 * f.derivative(2).times_coordinate(1); };
    const auto field_y = [](const GaussPoly& f) { return f.derivative(1) + 0.5 * f.derivative(2).times_coordinate(0); };
    const auto field_t = [](const GaussPoly& f) { return -0.25 * f.derivative(2); };

    GaussPoly out(center_, width_);
    for (const auto& [m, c] : p.terms()) {
        GaussPoly g = *this;
        for (unsigned k = 0; k < m.c; ++k) g = field_t(g);
        for (unsigned k = 0; k < m.b[0]; ++k) g = field_y(g);
        for (unsigned k = 0; k < m.a[0]; ++k) g = field_x(g);
        out += g * c.to_complex();
    }
    return out;
}

GaussPoly& GaussPoly::operator+=(const GaussPoly& o)
{
    if (o.center_ != center_ || o.width_ != width_) throw DomainError("GaussPoly sum needs a common Gaussian factor");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

GaussPoly& GaussPoly::operator*=(cplx s)
{
    if (s == cplx(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

cplx GaussPoly::partial_fourier(double x, double eta, double tau) const
{
    const double X = x - center_[0];
    const auto iy = gaussian_fourier_moments(width_[1], eta, degree(1));
    const auto it = gaussian_fourier_moments(width_[2], tau, degree(2));
    const cplx phase = std::exp(cplx(0.0, eta * center_[1] + tau * center_[2]));
    cplx sum = 0.0;
    for (const auto& [e, c] : terms_) sum += c * std::pow(X, e[0]) * iy[e[1]] * it[e[2]];
    return sum * phase * std::exp(-width_[0] * X * X);
}

cplx GaussPoly::integral() const
{
    cplx sum = 0.0;
    for (const auto& [e, c] : terms_)
        sum += c * gaussian_moment(e[0], width_[0]) * gaussian_moment(e[1], width_[1]) * gaussian_moment(e[2], width_[2]);
    return sum;
}

cplx integrate_product(const GaussPoly& f, const GaussPoly& g)
{
    cplx sum = 0.0;
    for (const auto& [e, c] : f.terms())
        for (const auto& [h, d] : g.terms()) {
            double v = 1.0;
            for (std::size_t k = 0; k < 3 && v != 0.0; ++k)
                v *= axis_product_integral(e[k], f.width()[k], f.center()[k], h[k], g.width()[k], g.center()[k]);
            sum += c * d * v;
        }
    return sum;
}

}  // namespace heisenberg
