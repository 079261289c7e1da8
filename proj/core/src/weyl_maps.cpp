#include "mf/weyl_maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mf/errors.hpp"
#include "mf/fft.hpp"

namespace mf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int wrap(int a, int n) { return ((a % n) + n) % n; }

// K(x_a + dx/2, x_b + dx/2) by spectral interpolation along both axes.
Eigen::MatrixXcd half_shift(const Eigen::MatrixXcd& k) {
    const int n = static_cast<int>(k.rows());
    Eigen::MatrixXcd out = k;
    std::vector<cplx> phase(n);
    for (int q = 0; q < n; ++q) {
        const int s = fft::signed_bin(q, n);
        phase[q] = s == -n / 2 ? cplx{} : std::polar(1.0 / n, std::numbers::pi * s / n);
    }
    cplx* data = out.data();  // column-major: (a, b) at a + b·n
    fft::transform(data, n, n, 1, n, fft::Direction::Forward);  // along a
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) data[a + static_cast<std::size_t>(b) * n] *= phase[a];
    fft::transform(data, n, n, 1, n, fft::Direction::Backward);
    fft::transform(data, n, n, n, 1, fft::Direction::Forward);  // along b
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) data[a + static_cast<std::size_t>(b) * n] *= phase[b];
    fft::transform(data, n, n, n, 1, fft::Direction::Backward);

    // The (Nyquist, Nyquist) mode (−1)^{a+b} is invariant under a diagonal half-step,
    // so it is kept rather than zeroed with the other Nyquist modes.
    cplx corner{};
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) corner += ((a + b) % 2 == 0 ? 1.0 : -1.0) * k(a, b);
    corner /= static_cast<double>(n) * n;
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) out(a, b) += ((a + b) % 2 == 0 ? 1.0 : -1.0) * corner;
    return out;
}

}  // namespace

Wavefunction::Wavefunction(const PhaseGrid& grid, Eigen::VectorXcd values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n()) throw ArgumentError("wavefunction: length does not match grid");
}

Wavefunction Wavefunction::sample(const PhaseGrid& grid, const std::function<cplx(double)>& f) {
    Eigen::VectorXcd v(grid.n());
    for (int i = 0; i < grid.n(); ++i) {
        v[i] = f(grid.x(i));
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
            throw ArgumentError("wavefunction: non-finite value at x = " + std::to_string(grid.x(i)));
        }
    }
    return {grid, std::move(v)};
}

double Wavefunction::norm() const { return std::sqrt(values_.squaredNorm() * grid_.dx()); }

bool Wavefunction::is_normalized(double tol) const { return std::abs(norm() * norm() - 1.0) <= tol; }

Wavefunction Wavefunction::normalized() const {
    const double nrm = norm();
    if (nrm == 0.0) throw ArgumentError("wavefunction: cannot normalize the zero vector");
    return {grid_, values_ / nrm};
}

double Wavefunction::boundary_mass() const {
    const double peak = values_.cwiseAbs().maxCoeff();
    if (peak == 0.0) return 0.0;
    return std::max(std::abs(values_[0]), std::abs(values_[values_.size() - 1])) / peak;
}

SymbolField kernel_to_symbol(const KernelMatrix& kernel, int padding) {
    if (padding != 1 && padding != 2) throw ArgumentError("kernel_to_symbol: padding must be 1 or 2");
    const PhaseGrid& g = kernel.grid;
    const int n = g.n();
    const int m2 = 2 * n;
    const Eigen::MatrixXcd& k = kernel.entries;
    const Eigen::MatrixXcd kh = half_shift(k);

    std::vector<cplx> buf(static_cast<std::size_t>(n) * m2, cplx{});
    for (int i = 0; i < n; ++i) {
        cplx* line = buf.data() + static_cast<std::size_t>(i) * m2;
        for (int d = -n; d < n; ++d) {
            const bool odd = (d & 1) != 0;
            const int m = odd ? (d - 1) / 2 : d / 2;
            int a = i + m;
            int b = odd ? i - m - 1 : i - m;
            if (padding == 2) {
                if (a < 0 || a >= n || b < 0 || b >= n) continue;
            } else {
                a = wrap(a, n);
                b = wrap(b, n);
            }
            line[wrap(d, m2)] = odd ? kh(a, b) : k(a, b);
        }
    }
    fft::transform(buf.data(), m2, n, 1, m2, fft::Direction::Forward);

    std::vector<cplx> values(static_cast<std::size_t>(n) * n);
    const double dx = g.dx();
    for (int i = 0; i < n; ++i) {
        const cplx* line = buf.data() + static_cast<std::size_t>(i) * m2;
        for (int j = 0; j < n; ++j) values[static_cast<std::size_t>(i) * n + j] = dx * line[wrap(2 * (j - n / 2), m2)];
    }
    return {g, std::move(values), std::make_shared<const KernelMatrix>(kernel)};
}

KernelMatrix symbol_to_kernel(const SymbolField& a) {
    if (a.kernel()) return *a.kernel();
    const PhaseGrid& g = a.grid();
    const int n = g.n();
    const int m2 = 2 * n;

    // Spectral interpolation in x onto the half-step lattice c = 0..2n−1.
    std::vector<cplx> coarse = a.values();
    fft::transform(coarse.data(), n, n, n, 1, fft::Direction::Forward);
    std::vector<cplx> fine(static_cast<std::size_t>(m2) * n, cplx{});
    for (int q = 0; q < n; ++q) {
        const int s = fft::signed_bin(q, n);
        for (int j = 0; j < n; ++j) {
            const cplx v = coarse[static_cast<std::size_t>(q) * n + j] / static_cast<double>(n);
            if (s == -n / 2) {
                fine[static_cast<std::size_t>(n / 2) * n + j] += 0.5 * v;
                fine[static_cast<std::size_t>(m2 - n / 2) * n + j] += 0.5 * v;
            } else {
                fine[static_cast<std::size_t>(wrap(s, m2)) * n + j] = v;
            }
        }
    }
    fft::transform(fine.data(), m2, n, n, 1, fft::Direction::Backward);

    // F_c(d) = (1/(n·dx)) Σ_j A(c, j) e^{i p_j d dx/ℏ}
    fft::transform(fine.data(), n, m2, 1, n, fft::Direction::Backward);
    const double scale = 1.0 / (n * g.dx());
    auto f = [&](int c, int d) {
        const double sign = (wrap(d, 2) == 0) ? 1.0 : -1.0;
        return sign * scale * fine[static_cast<std::size_t>(c) * n + wrap(d, n)];
    };

    Eigen::MatrixXcd k(n, n);
    for (int b = 0; b < n; ++b) {
        for (int a_ = 0; a_ < n; ++a_) {
            const int d = a_ - b;
            const int c = a_ + b;
            if (2 * std::abs(d) < n) {
                k(a_, b) = f(c, d);
            } else if (2 * std::abs(d) > n) {
                k(a_, b) = f(wrap(c + n, m2), d > 0 ? d - n : d + n);
            } else {
                k(a_, b) = 0.5 * (f(c, d) + f(wrap(c + n, m2), d));
            }
        }
    }
    return {g, std::move(k)};
}

SymbolField wigner_from_wavefunction(const Wavefunction& psi, int padding) {
    if (!psi.is_normalized(1e-8)) {
        std::ostringstream msg;
        msg << "wigner_from_wavefunction: input not normalized (norm² = " << psi.norm() * psi.norm() << ")";
        throw ArgumentError(msg.str());
    }
    const double bm = psi.boundary_mass();
    if (bm > 1e-8) throw BoundaryMassError("wigner_from_wavefunction: wavefunction does not decay at the x-frame", bm);
    const PhaseGrid& g = psi.grid();
    KernelMatrix k(g, psi.values() * psi.values().adjoint() / (kTwoPi * g.hbar()));
    return kernel_to_symbol(k, padding).real_part();
}

double overlap(const SymbolField& pa, const SymbolField& pb) {
    require_same_grid(pa, pb, "overlap");
    if (!pa.real_valued(1e-10) || !pb.real_valued(1e-10)) throw ArgumentError("overlap: fields must be real-valued");
    const PhaseGrid& g = pa.grid();
    const double h2 = kTwoPi * g.hbar();
    if (pa.kernel() && pb.kernel()) {
        const cplx tr = pa.kernel()->entries.cwiseProduct(pb.kernel()->entries.transpose()).sum();
        return (h2 * g.dx()) * (h2 * g.dx()) * tr.real();
    }
    return h2 * integrate2d(pointwise(pa, pb)).real();
}

double star_eigen_residual(const SymbolField& h, const SymbolField& p, double e, const StarMethod& method) {
    const SymbolField hp = star(h, p, method);
    const double denom = sup_norm(p);
    if (denom == 0.0) throw ArgumentError("star_eigen_residual: zero field");
    return sup_diff(hp, e * p.without_kernel(), true) / denom;
}

double liouvillian_radius(const SymbolField& h) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : h.values()) {
        lo = std::min(lo, v.real());
        hi = std::max(hi, v.real());
    }
    return (hi - lo) / h.grid().hbar();
}

namespace {

void check_stability(const SymbolField& h, double dt) {
    const double guard = dt * liouvillian_radius(h);
    if (!(guard < 0.5)) {
        std::ostringstream msg;
        msg << "evolve: dt * spectral radius = " << guard << " violates the stability guard (< 0.5)";
        throw ArgumentError(msg.str());
    }
}

Eigen::MatrixXcd rk4_kernel(const Eigen::MatrixXcd& kp, const Eigen::MatrixXcd& kh, double dt, int steps,
                            double dx, double hbar) {
    const cplx c = dx / cplx(0.0, hbar);
    auto gen = [&](const Eigen::MatrixXcd& k) -> Eigen::MatrixXcd {
        return c * (kh * k - k * kh);
    };
    Eigen::MatrixXcd k = kp;
    for (int s = 0; s < steps; ++s) {
        const Eigen::MatrixXcd k1 = gen(k);
        const Eigen::MatrixXcd k2 = gen(k + 0.5 * dt * k1);
        const Eigen::MatrixXcd k3 = gen(k + 0.5 * dt * k2);
        const Eigen::MatrixXcd k4 = gen(k + dt * k3);
        k += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return k;
}

}  // namespace

SymbolField evolve_step(const SymbolField& p, const SymbolField& h, double dt, const StarMethod& method) {
    return evolve(p, h, dt, 1, method);
}

SymbolField evolve(const SymbolField& p, const SymbolField& h, double dt, int steps, const StarMethod& method) {
    require_same_grid(p, h, "evolve");
    if (steps < 0) throw ArgumentError("evolve: negative step count");
    check_stability(h, dt);
    const PhaseGrid& g = p.grid();
    if (method.kind == StarMethod::Kind::Kernel) {
        const KernelMatrix kh = symbol_to_kernel(h);
        const KernelMatrix kp = symbol_to_kernel(p);
        return kernel_to_symbol(KernelMatrix(g, rk4_kernel(kp.entries, kh.entries, dt, steps, g.dx(), g.hbar())));
    }
    const cplx c = 1.0 / cplx(0.0, g.hbar());
    auto gen = [&](const SymbolField& q) { return c * moyal_bracket(h, q, method); };
    SymbolField cur = p.without_kernel();
    for (int s = 0; s < steps; ++s) {
        const SymbolField k1 = gen(cur);
        const SymbolField k2 = gen(cur + (0.5 * dt) * k1);
        const SymbolField k3 = gen(cur + (0.5 * dt) * k2);
        const SymbolField k4 = gen(cur + cplx(dt) * k3);
        cur = cur + cplx(dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return cur;
}

}  // namespace mf
