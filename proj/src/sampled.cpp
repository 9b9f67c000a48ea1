#include "heisenberg/sampled.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "heisenberg/errors.hpp"

namespace heisenberg {

PolarizedPoint polarized_multiply(const PolarizedPoint& g, const PolarizedPoint& h)
{
    return {g.x + h.x, g.y + h.y, g.t + h.t + 0.5 * (g.x * h.y - h.x * g.y)};
}

PolarizedPoint polarized_inverse(const PolarizedPoint& g) { return {-g.x, -g.y, -g.t}; }

PolarizedPoint to_polarized(std::complex<double> z, double t) { return {z.real(), z.imag(), -t / 4.0}; }

void GridSpec::validate() const
{
    if (points < 3 || points % 2 == 0) throw DomainError("grid needs an odd number (>= 3) of points per axis");
    if (!(half_width > 0)) throw DomainError("grid half-width must be positive");
}

SampledGroupFunction::SampledGroupFunction(GridSpec grid) : grid_(grid)
{
    grid_.validate();
    values_.assign(grid_.points * grid_.points * grid_.points, cplx(0.0));
}

double SampledGroupFunction::boundary_decay() const
{
    const std::size_t n = grid_.points;
    double inner = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const double v = std::abs(at(i, j, k));
                inner = std::max(inner, v);
                if (i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1) edge = std::max(edge, v);
            }
    return inner > 0 ? edge / inner : 0.0;
}

SampledGroupFunction sample(const GaussPoly& f, const GridSpec& grid)
{
    SampledGroupFunction s(grid);
    s.set_tag(f);
    const std::size_t n = grid.points;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) s.at(i, j, k) = f(grid.coord(i), grid.coord(j), grid.coord(k));
    return s;
}

SampledGroupFunction nu_tilde(const SampledGroupFunction& f)
{
    SampledGroupFunction out(f.grid());
    const std::size_t n = f.grid().points;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out.at(i, j, k) = f.at(n - 1 - i, n - 1 - j, n - 1 - k);
    if (f.tag()) out.set_tag(f.tag()->inverse());
    return out;
}

cplx pairing(const SampledGroupFunction& f, const SampledGroupFunction& g)
{
    if (f.grid().points != g.grid().points || f.grid().half_width != g.grid().half_width)
        throw DomainError("pairing needs a common grid");
    cplx sum = 0.0;
    for (std::size_t k = 0; k < f.values().size(); ++k) sum += f.values()[k] * g.values()[k];
    return sum * std::pow(f.grid().step(), 3);
}

namespace {

/// Per (x, y) node, the t-Fourier transform \int f e^{-i tau_m t} dt at tau_m = 2 pi m / (P h),
/// m signed, from the zero-padded line of length P = 2n.
std::vector<std::vector<cplx>> t_transform(const SampledGroupFunction& f, std::vector<double>& tau)
{
    const std::size_t n = f.grid().points;
    const std::size_t P = 2 * n;
    const double h = f.grid().step();
    const double t0 = f.grid().coord(0);
    tau.resize(P);
    for (std::size_t m = 0; m < P; ++m) {
        const double signed_m = m < P / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(P);
        tau[m] = 2.0 * std::numbers::pi * signed_m / (static_cast<double>(P) * h);
    }
    Eigen::FFT<double> fft;
    std::vector<std::vector<cplx>> out(n * n);
    std::vector<cplx> line(P), freq;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::fill(line.begin(), line.end(), cplx(0.0));
            for (std::size_t k = 0; k < n; ++k) line[k] = f.at(i, j, k);
            fft.fwd(freq, line);
            for (std::size_t m = 0; m < P; ++m) freq[m] *= h * std::exp(cplx(0.0, -tau[m] * t0));
            out[i * n + j] = freq;
        }
    return out;
}

}  // namespace

SampledGroupFunction convolution(const SampledGroupFunction& psi, const SampledGroupFunction& chi)
{
    const GridSpec& grid = psi.grid();
    if (grid.points != chi.grid().points || grid.half_width != chi.grid().half_width)
        throw DomainError("convolution needs a common grid");
    const std::size_t n = grid.points;
    const std::size_t P = 2 * n;
    const auto c = static_cast<std::ptrdiff_t>((n - 1) / 2);
    const double h = grid.step();
    const double t0 = grid.coord(0);

    std::vector<double> tau;
    const auto psi_hat = t_transform(psi, tau);
    const auto chi_hat = t_transform(chi, tau);

    double scale = 0.0;
    for (const auto& line : psi_hat)
        for (const auto& v : line) scale = std::max(scale, std::abs(v));
    const double prune = 1e-18 * scale;

    std::vector<std::vector<cplx>> result(n * n, std::vector<cplx>(P, cplx(0.0)));
    Eigen::MatrixXcd phase(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t m = 0; m < P; ++m) {
        // phase(p, j) = exp(-i tau x_p y_j / 2); the x-twist uses its conjugate.
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t j = 0; j < n; ++j)
                phase(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) =
                    std::exp(cplx(0.0, -0.5 * tau[m] * grid.coord(p) * grid.coord(j)));
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                const cplx a = psi_hat[p * n + q][m];
                if (std::abs(a) <= prune) continue;
                for (std::size_t i = 0; i < n; ++i) {
                    const std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(p) + c;
                    if (ii < 0 || ii >= static_cast<std::ptrdiff_t>(n)) continue;
                    const cplx ax = a * std::conj(phase(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)));
                    for (std::size_t j = 0; j < n; ++j) {
                        const std::ptrdiff_t jj = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(q) + c;
                        if (jj < 0 || jj >= static_cast<std::ptrdiff_t>(n)) continue;
                        result[i * n + j][m] += ax * chi_hat[static_cast<std::size_t>(ii) * n + static_cast<std::size_t>(jj)][m] *
                                                phase(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j));
                    }
                }
            }
    }

    SampledGroupFunction out(grid);
    Eigen::FFT<double> fft;
    std::vector<cplx> line;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto& freq = result[i * n + j];
            for (std::size_t m = 0; m < P; ++m) freq[m] *= h * h * std::exp(cplx(0.0, tau[m] * t0)) / h;
            fft.inv(line, freq);
            for (std::size_t k = 0; k < n; ++k) out.at(i, j, k) = line[k];
        }
    return out;
}

IntegratedRep integrated_rep(const SampledGroupFunction& f, double lambda)
{
    const GridSpec& grid = f.grid();
    const std::size_t n = grid.points;
    const double h = grid.step();
    if (std::abs(lambda) * grid.half_width * h >= std::numbers::pi)
        throw NumericalError("grid too coarse for lambda: |lambda| * half_width * step must stay below pi");
    const auto c = static_cast<std::ptrdiff_t>((n - 1) / 2);

    // G(m, l) = h \sum_k f(x_m, y_l, t_k) e^{i lambda t_k}
    Eigen::MatrixXcd G(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<cplx> tphase(n);
    for (std::size_t k = 0; k < n; ++k) tphase[k] = h * std::exp(cplx(0.0, lambda * grid.coord(k)));
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t l = 0; l < n; ++l) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += f.at(m, l, k) * tphase[k];
            G(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(l)) = s;
        }

    IntegratedRep rep;
    rep.lambda = lambda;
    rep.weight = h;
    rep.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.u[i] = grid.coord(i);
    rep.kernel = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i) + c;
            if (m < 0 || m >= static_cast<std::ptrdiff_t>(n)) continue;
            const double eta = lambda * 0.5 * (rep.u[i] + rep.u[j]);
            const cplx step = std::exp(cplx(0.0, eta * h));
            cplx ph = h * std::exp(cplx(0.0, eta * grid.coord(0)));
            cplx s = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                s += G(m, static_cast<Eigen::Index>(l)) * ph;
                ph *= step;
            }
            rep.kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
        }
    return rep;
}

namespace {

/// Kernel entries of the closed-form family along one diagonal family of a uniform grid.
class KernelEvaluator {
public:
    KernelEvaluator(const GaussPoly& f, double lambda, double u0, double h, std::size_t count)
        : f_(f), lambda_(lambda), u0_(u0), h_(h)
    {
        const unsigned qmax = f.degree(1);
        const auto it = gaussian_fourier_moments(f.width()[2], lambda, f.degree(2));
        const cplx tphase = std::exp(cplx(0.0, lambda * f.center()[2]));
        for (const auto& [e, c] : f.terms()) coef_[{e[0], e[1]}] += c * it[e[2]] * tphase;
        // B(sigma, q) at eta = lambda (u_i + u_j) / 2 with sigma = i + j.
        B_.resize(2 * count - 1);
        for (std::size_t s = 0; s < B_.size(); ++s) {
            const double eta = lambda * (u0 + 0.5 * static_cast<double>(s) * h);
            B_[s] = gaussian_fourier_moments(f.width()[1], eta, qmax);
            const cplx yphase = std::exp(cplx(0.0, eta * f.center()[1]));
            for (auto& v : B_[s]) v *= yphase;
        }
    }

    /// Entry (i, i + d).
    cplx operator()(std::size_t i, std::ptrdiff_t d) const
    {
        const double X = static_cast<double>(d) * h_ - f_.center()[0];
        const double env = std::exp(-f_.width()[0] * X * X);
        if (env == 0.0) return 0.0;
        const auto& b = B_[static_cast<std::size_t>(2 * static_cast<std::ptrdiff_t>(i) + d)];
        cplx s = 0.0;
        for (const auto& [pq, c] : coef_) s += c * std::pow(X, pq.first) * b[pq.second];
        return s * env;
    }

    /// Offsets d with a non-negligible Gaussian factor.
    std::pair<std::ptrdiff_t, std::ptrdiff_t> band(std::size_t count) const
    {
        const double a = f_.width()[0];
        const double R = (7.0 + std::sqrt(static_cast<double>(f_.degree(0)))) / std::sqrt(a);
        const auto n = static_cast<std::ptrdiff_t>(count);
        auto lo = static_cast<std::ptrdiff_t>(std::floor((f_.center()[0] - R) / h_));
        auto hi = static_cast<std::ptrdiff_t>(std::ceil((f_.center()[0] + R) / h_));
        return {std::max(lo, -(n - 1)), std::min(hi, n - 1)};
    }

private:
    const GaussPoly& f_;
    double lambda_, u0_, h_;
    std::map<std::pair<unsigned, unsigned>, cplx> coef_;
    std::vector<std::vector<cplx>> B_;
};

}  // namespace

IntegratedRep integrated_rep(const GaussPoly& f, double lambda, double u0, double h, std::size_t count)
{
    const KernelEvaluator ev(f, lambda, u0, h, count);
    IntegratedRep rep;
    rep.lambda = lambda;
    rep.weight = h;
    rep.u.resize(count);
    for (std::size_t i = 0; i < count; ++i) rep.u[i] = u0 + static_cast<double>(i) * h;
    rep.kernel = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            rep.kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                ev(i, static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i));
    return rep;
}

Eigen::MatrixXd hermite_functions(const std::vector<double>& u, std::size_t K, double omega)
{
    if (!(omega > 0)) throw DomainError("oscillator frequency must be positive");
    const auto rows = static_cast<Eigen::Index>(u.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(K));
    const double log_norm = 0.25 * std::log(omega / std::numbers::pi);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double s = std::sqrt(omega) * u[static_cast<std::size_t>(r)];
        double log_scale = log_norm - 0.5 * s * s;
        double prev = 0.0, cur = 1.0;
        for (std::size_t k = 0; k < K; ++k) {
            H(r, static_cast<Eigen::Index>(k)) = cur * std::exp(log_scale);
            const double next = std::sqrt(2.0 / (k + 1.0)) * s * cur - std::sqrt(k / (k + 1.0)) * prev;
            prev = cur;
            cur = next;
            if (std::abs(cur) > 1e150) {
                prev *= 1e-150;
                cur *= 1e-150;
                log_scale += 150.0 * std::log(10.0);
            }
        }
    }
    return H;
}

Eigen::MatrixXcd hermite_projection(const GaussPoly& f, double lambda, std::size_t K)
{
    if (lambda == 0.0) throw DomainError("lambda must be nonzero");
    const double omega = std::abs(lambda);
    const double a = f.width()[0];
    const double b = f.width()[1];
    const double root = std::sqrt(2.0 * static_cast<double>(K) + 1.0);
    const double hermite_band = std::sqrt(omega) * (root + 6.0);
    const double kernel_band = std::sqrt(a) * (12.0 + 2.0 * std::sqrt(static_cast<double>(f.degree(0)))) +
                               0.5 * omega * (std::abs(f.center()[1]) + (6.0 + 2.0 * std::sqrt(static_cast<double>(f.degree(1)))) / std::sqrt(b));
    const double h = 2.0 * std::numbers::pi / (1.15 * (hermite_band + kernel_band));
    const double L = (root + 8.0) / std::sqrt(omega);
    const auto half = static_cast<std::size_t>(std::ceil(L / h));
    const std::size_t count = 2 * half + 1;
    const double u0 = -static_cast<double>(half) * h;

    std::vector<double> u(count);
    for (std::size_t i = 0; i < count; ++i) u[i] = u0 + static_cast<double>(i) * h;
    const Eigen::MatrixXd H = hermite_functions(u, K, omega);

    const KernelEvaluator ev(f, lambda, u0, h, count);
    const auto [dlo, dhi] = ev.band(count);
    const auto n = static_cast<Eigen::Index>(count);
    Eigen::MatrixXd KH_re = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(K));
    Eigen::MatrixXd KH_im = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(K));
    Eigen::VectorXd dre(n), dim(n);
    for (std::ptrdiff_t d = dlo; d <= dhi; ++d) {
        const Eigen::Index i0 = d < 0 ? -d : 0;
        const Eigen::Index len = n - std::abs(d);
        for (Eigen::Index k = 0; k < len; ++k) {
            const cplx v = ev(static_cast<std::size_t>(i0 + k), d);
            dre(k) = v.real();
            dim(k) = v.imag();
        }
        KH_re.middleRows(i0, len) += dre.head(len).asDiagonal() * H.middleRows(i0 + d, len);
        KH_im.middleRows(i0, len) += dim.head(len).asDiagonal() * H.middleRows(i0 + d, len);
    }
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
    M.real() = h * h * (H.transpose() * KH_re);
    M.imag() = h * h * (H.transpose() * KH_im);
    return M;
}

}  // namespace heisenberg
