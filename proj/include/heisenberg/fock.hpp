#pragma once

// Bargmann-Fock space H^lambda of entire functions on C^r with
//   ||F||^2 = |lambda|^r \int e^{-2|lambda||z|^2} |F(z)|^2 dz,
// its monomial bases and the group action
//   U_(z,t) F(w) = e^{-i lambda t + lambda(2<w,z> - |z|^2)} F(w - z)   (lambda > 0),
// with <w,z> = sum_j w_j conj(z_j). For lambda < 0 the action is
// U^{|lambda|} at the point (conj z, -t).

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "heisenberg/group.hpp"

namespace heisenberg {

using MultiIndex = std::vector<unsigned>;

/// F(z) = sum_m c_m z^m with finite support.
class FockVector {
public:
    explicit FockVector(std::size_t r);

    static FockVector monomial(const MultiIndex& m, std::complex<double> c = 1.0);

    std::size_t dim() const { return r_; }
    const std::map<MultiIndex, std::complex<double>>& terms() const { return terms_; }

    void add_term(const MultiIndex& m, std::complex<double> c);
    FockVector& operator+=(const FockVector& o);
    FockVector& operator*=(std::complex<double> s);
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator*(std::complex<double> s, FockVector a) { return a *= s; }

private:
    std::size_t r_;
    std::map<MultiIndex, std::complex<double>> terms_;
};

/// |lambda|^r \int e^{-2|lambda||z|^2} F conj(G) dz, summed in closed form with
/// \int_C e^{-a|z|^2} |z|^{2m} dz = pi m! / a^{m+1}.
std::complex<double> inner_product(const FockVector& f, const FockVector& g, double lambda);

/// phi_n as printed: (n!)^{-1/2} (2/pi)^{r/2} (2|lambda| z)^n.
FockVector printed_basis_vector(const MultiIndex& n, double lambda);
/// (n!)^{-1/2} (2/pi)^{r/2} (2|lambda|)^{|n|/2} z^n.
FockVector corrected_basis_vector(const MultiIndex& n, double lambda);

struct BasisAudit {
    double lambda = 1;
    std::size_t r = 1;
    std::vector<MultiIndex> indices;
    std::vector<double> printed_norms;
    std::vector<double> corrected_norms;
    /// max |<phi_n, phi_m>| over n != m, for each candidate.
    double printed_offdiag = 0;
    double corrected_offdiag = 0;
    bool printed_orthonormal = false;
    bool corrected_orthonormal = false;
    /// ||printed phi_n||^2 / ||corrected phi_n||^2 = (2|lambda|)^{|n|}.
    std::vector<double> norm_ratio;
};

BasisAudit basis_audit(double lambda, std::size_t r, unsigned max_n, double tol = 1e-12);

/// Matrix <U_g phi_m, phi_k>, k,m < K per axis (K^r x K^r, first axis most
/// significant), in the corrected orthonormal basis.
/// Each entry is a finite sum, so the matrix is exact up to rounding; the only
/// approximation is dropping rows k >= K.
Eigen::MatrixXcd u_action_matrix(const GroupPointF& g, double lambda, std::size_t K);

struct UnitarityReport {
    std::size_t K = 0;
    std::size_t block = 0;
    /// max |(U^* U - I)_{jk}| over the top-left block.
    double defect = 0;
    /// max over block columns of the discarded mass 1 - sum_{k<K} |U_km|^2.
    double tail_mass = 0;
};

UnitarityReport unitarity_check(const GroupPointF& g, double lambda, std::size_t K, std::size_t block);

struct HomomorphismReport {
    std::size_t K = 0;
    std::size_t block = 0;
    /// max |(U_g U_h - U_{gh})_{jk}| over the top-left block.
    double defect = 0;
};

HomomorphismReport fock_homomorphism_check(const GroupPointF& g, const GroupPointF& h, double lambda,
                                           std::size_t K, std::size_t block);

nlohmann::json to_json(const BasisAudit& a);

}  // namespace heisenberg
