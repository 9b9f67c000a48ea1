#pragma once

// Heisenberg group H_n = C^n x R with the product
//   (z,t)(z',t') = (z + z', t + t' + 2 Im sum_j z_j conj(z'_j)).

#include <complex>
#include <cstddef>
#include <vector>

#include <json.hpp>

#include "heisenberg/errors.hpp"
#include "heisenberg/gaussian_rational.hpp"

namespace heisenberg {

namespace detail {
inline GaussianRational conj_of(const GaussianRational& c) { return c.conj(); }
inline std::complex<double> conj_of(const std::complex<double>& c) { return std::conj(c); }
inline Rational imag_of(const GaussianRational& c) { return c.imag(); }
inline double imag_of(const std::complex<double>& c) { return c.imag(); }
}  // namespace detail

template <class Complex, class Real>
struct BasicGroupPoint {
    std::vector<Complex> z;
    Real t{};

    std::size_t dim() const { return z.size(); }

    friend bool operator==(const BasicGroupPoint&, const BasicGroupPoint&) = default;
};

/// Exact point with Gaussian-rational coordinates.
using GroupPoint = BasicGroupPoint<GaussianRational, Rational>;
/// Floating point used by the numeric modules.
using GroupPointF = BasicGroupPoint<std::complex<double>, double>;

template <class Real>
struct BasicDilation {
    Real lambda;
    int sign = 1;  // +1 or -1
};

using Dilation = BasicDilation<Rational>;

template <class Complex, class Real>
BasicGroupPoint<Complex, Real> identity_point(std::size_t n)
{
    if (n == 0) throw DomainError("group dimension n must be >= 1");
    return {std::vector<Complex>(n, Complex(0)), Real(0)};
}

inline GroupPoint identity(std::size_t n) { return identity_point<GaussianRational, Rational>(n); }

template <class Complex, class Real>
BasicGroupPoint<Complex, Real> multiply(const BasicGroupPoint<Complex, Real>& g,
                                        const BasicGroupPoint<Complex, Real>& h)
{
    if (g.dim() != h.dim()) throw DomainError("group dimension mismatch");
    BasicGroupPoint<Complex, Real> out;
    out.z.reserve(g.dim());
    Complex twist(0);
    for (std::size_t j = 0; j < g.dim(); ++j) {
        out.z.push_back(g.z[j] + h.z[j]);
        twist += g.z[j] * detail::conj_of(h.z[j]);
    }
    out.t = g.t + h.t + Real(2) * detail::imag_of(twist);
    return out;
}

template <class Complex, class Real>
BasicGroupPoint<Complex, Real> inverse(const BasicGroupPoint<Complex, Real>& g)
{
    BasicGroupPoint<Complex, Real> out;
    out.z.reserve(g.dim());
    for (const auto& c : g.z) out.z.push_back(-c);
    out.t = -g.t;
    return out;
}

template <class Complex, class Real>
BasicGroupPoint<Complex, Real> dilate(const BasicDilation<Real>& d, const BasicGroupPoint<Complex, Real>& g)
{
    if (!(d.lambda > Real(0))) throw DomainError("dilation parameter must be positive");
    if (d.sign != 1 && d.sign != -1) throw DomainError("dilation sign must be +1 or -1");
    const Real s(d.sign);
    BasicGroupPoint<Complex, Real> out;
    out.z.reserve(g.dim());
    for (const auto& c : g.z) out.z.push_back(c * Complex(s * d.lambda));
    out.t = s * d.lambda * d.lambda * g.t;
    return out;
}

/// (sign*lambda*z, sign*lambda^2*t) is a group automorphism only for sign = +1;
/// for sign = -1 it reverses products, d(gh) = d(h) d(g).
template <class Real>
bool is_automorphism(const BasicDilation<Real>& d)
{
    return d.sign == 1;
}

GroupPointF to_float(const GroupPoint& g);

/// [re(z_1), im(z_1), ..., re(z_n), im(z_n), t]. Non-integral rationals
/// are written as "p/q" strings so the exact value survives.
nlohmann::json to_json(const GroupPoint& g);
nlohmann::json to_json(const GroupPointF& g);
GroupPoint group_point_from_json(const nlohmann::json& j);

}  // namespace heisenberg
