#pragma once

// Gaussian-times-polynomial functions on H_1 in polarized coordinates (x, y, t),
//   f = sum_{p,q,r} c_{pqr} X^p Y^q S^r exp(-a X^2 - b Y^2 - c S^2),
//   X = x - x0, Y = y - y0, S = t - t0,
// closed under derivatives, multiplication by coordinates and group inversion,
// with closed-form partial Fourier co-transform in (y, t) and closed-form integrals.
//
// Polarized coordinates carry the law
//   (x,y,t)(x',y',t') = (x+x', y+y', t+t' + (x y' - x' y)/2),
// which is the image of the complex-coordinate law under t -> -t/4. The generators
// act as X = d/dx - (y/2) d/dt, Y = d/dy + (x/2) d/dt, T = -(1/4) d/dt.

#include <array>
#include <complex>
#include <map>

#include "heisenberg/algebra.hpp"

namespace heisenberg {

using cplx = std::complex<double>;

class GaussPoly {
public:
    using Exp3 = std::array<unsigned, 3>;

    GaussPoly(std::array<double, 3> center, std::array<double, 3> width);

    static GaussPoly gaussian(std::array<double, 3> center, std::array<double, 3> width, cplx coeff = 1.0);

    const std::array<double, 3>& center() const { return center_; }
    const std::array<double, 3>& width() const { return width_; }
    const std::map<Exp3, cplx>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned degree(std::size_t var) const;

    void add_term(const Exp3& e, cplx c);

    cplx operator()(double x, double y, double t) const;

    /// d/dx, d/dy or d/dt for var = 0, 1, 2.
    GaussPoly derivative(std::size_t var) const;
    /// Multiplication by the absolute coordinate x, y or t.
    GaussPoly times_coordinate(std::size_t var) const;
    /// f(g^{-1}) = f(-x, -y, -t).
    GaussPoly inverse() const;
    /// Left-invariant action of an element of U(h_1) (n must be 1).
    GaussPoly apply(const AlgebraElement& p) const;

    GaussPoly& operator+=(const GaussPoly& o);
    GaussPoly& operator*=(cplx s);
    friend GaussPoly operator+(GaussPoly a, const GaussPoly& b) { return a += b; }
    friend GaussPoly operator-(GaussPoly a, const GaussPoly& b) { return a += b * cplx(-1.0); }
    friend GaussPoly operator*(GaussPoly a, cplx s) { return a *= s; }
    friend GaussPoly operator*(cplx s, GaussPoly a) { return a *= s; }

    /// \int\int f(x,y,t) e^{i(y eta + t tau)} dy dt.
    cplx partial_fourier(double x, double eta, double tau) const;
    /// \int f over R^3.
    cplx integral() const;

private:
    std::array<double, 3> center_;
    std::array<double, 3> width_;
    std::map<Exp3, cplx> terms_;
};

/// \int f g over R^3 in closed form (centers and widths may differ).
cplx integrate_product(const GaussPoly& f, const GaussPoly& g);

/// I_k(eta) = \int s^k e^{-w s^2 + i eta s} ds for k = 0..kmax, by
/// I_{k+1} = (i eta I_k + k I_{k-1}) / (2w).
std::vector<cplx> gaussian_fourier_moments(double w, double eta, unsigned kmax);

}  // namespace heisenberg
