#pragma once

// Functions on H_1 sampled on a symmetric cubic lattice in polarized coordinates,
// their group convolution, and integrated Schrodinger representations
//   (pi_lambda(f) xi)(u) = \int K_f(u, v) xi(v) dv,
//   K_f(u, v) = \int\int f(v - u, y, t) e^{i(lambda (u+v)/2 y + lambda t)} dy dt,
// for both sampled functions and the closed-form Gaussian-polynomial family.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "heisenberg/gauss_poly.hpp"

namespace heisenberg {

/// Product law in polarized coordinates.
struct PolarizedPoint {
    double x = 0, y = 0, t = 0;
};

PolarizedPoint polarized_multiply(const PolarizedPoint& g, const PolarizedPoint& h);
PolarizedPoint polarized_inverse(const PolarizedPoint& g);
/// (z, t) in complex coordinates, z = x + i y, maps to (x, y, -t/4).
PolarizedPoint to_polarized(std::complex<double> z, double t);

/// `points` equispaced nodes per axis on [-half_width, half_width]. An odd count puts
/// the identity on the lattice and makes it closed under g -> g^{-1} and differences.
struct GridSpec {
    std::size_t points = 49;
    double half_width = 6.0;

    double step() const { return 2.0 * half_width / static_cast<double>(points - 1); }
    /// Exactly antisymmetric: coord(points - 1 - i) == -coord(i).
    double coord(std::size_t i) const
    {
        const double m = static_cast<double>(points - 1);
        return half_width * (2.0 * static_cast<double>(i) - m) / m;
    }
    void validate() const;
};

class SampledGroupFunction {
public:
    explicit SampledGroupFunction(GridSpec grid);

    const GridSpec& grid() const { return grid_; }
    cplx& at(std::size_t i, std::size_t j, std::size_t k) { return values_[(i * grid_.points + j) * grid_.points + k]; }
    cplx at(std::size_t i, std::size_t j, std::size_t k) const { return values_[(i * grid_.points + j) * grid_.points + k]; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    /// Closed form the samples were taken from, when known.
    const std::optional<GaussPoly>& tag() const { return tag_; }
    void set_tag(std::optional<GaussPoly> tag) { tag_ = std::move(tag); }

    /// max |f| on the faces of the box divided by max |f| (0 for the zero function).
    double boundary_decay() const;

private:
    GridSpec grid_;
    std::vector<cplx> values_;
    std::optional<GaussPoly> tag_;
};

SampledGroupFunction sample(const GaussPoly& f, const GridSpec& grid);

/// f~(g) = f(g^{-1}) on the lattice.
SampledGroupFunction nu_tilde(const SampledGroupFunction& f);
inline GaussPoly nu_tilde(const GaussPoly& f) { return f.inverse(); }

/// Trapezoid value of \int f g.
cplx pairing(const SampledGroupFunction& f, const SampledGroupFunction& g);

/// (psi * chi)(g) = \int psi(h) chi(h^{-1} g) dh by a t-FFT (zero-padded) and a
/// twisted lattice convolution in (x, y).
SampledGroupFunction convolution(const SampledGroupFunction& psi, const SampledGroupFunction& chi);

/// Discretized integral operator: pi(f) ~ weight * kernel acting on samples at u.
struct IntegratedRep {
    double lambda = 0;
    std::vector<double> u;
    double weight = 0;
    Eigen::MatrixXcd kernel;

    Eigen::MatrixXcd matrix() const { return weight * kernel; }
};

/// Kernel on the lattice u = x-nodes by trapezoid sums in (y, t). Throws
/// NumericalError when lambda * half_width * step reaches pi (aliasing).
IntegratedRep integrated_rep(const SampledGroupFunction& f, double lambda);

/// Closed-form kernel on the uniform grid u_i = u0 + i h.
IntegratedRep integrated_rep(const GaussPoly& f, double lambda, double u0, double h, std::size_t count);

/// Columns are the first K oscillator eigenfunctions of frequency omega at the nodes u,
/// positive leading coefficient, computed with rescaling so large K does not underflow.
Eigen::MatrixXd hermite_functions(const std::vector<double>& u, std::size_t K, double omega);

/// K x K matrix of pi_lambda(f) in the oscillator basis of frequency |lambda|, from the
/// closed-form kernel on a grid chosen from K and the Gaussian widths.
Eigen::MatrixXcd hermite_projection(const GaussPoly& f, double lambda, std::size_t K);

}  // namespace heisenberg
