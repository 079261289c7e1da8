#include "mf/spectra_oracle.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "mf/errors.hpp"
#include "mf/fft.hpp"

namespace mf {

KernelMatrix discretize_hamiltonian(const std::function<double(double)>& v, const PhaseGrid& grid) {
    const int n = grid.n();
    const double hbar = grid.hbar();
    std::vector<cplx> t(n);
    for (int q = 0; q < n; ++q) {
        const double kappa = 2.0 * std::numbers::pi * fft::signed_bin(q, n) / grid.length();
        t[q] = (hbar * kappa) * (hbar * kappa) / static_cast<double>(n);
    }
    fft::transform(t.data(), n, fft::Direction::Backward);  // t[d] = (1/n) Σ_k (ℏκ_k)² e^{iκ_k d dx}

    Eigen::MatrixXd h(n, n);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) h(a, b) = t[((a - b) % n + n) % n].real();
    for (int a = 0; a < n; ++a) {
        const double va = v(grid.x(a));
        if (!std::isfinite(va)) {
            throw ArgumentError("discretize_hamiltonian: V is not finite at x = " + std::to_string(grid.x(a)));
        }
        h(a, a) += va;
    }
    const Eigen::MatrixXd sym = 0.5 * (h + h.transpose());
    return {grid, sym.cast<cplx>() / grid.dx()};
}

SpectrumResult eigensolve_lowest(const KernelMatrix& k, int count) {
    const PhaseGrid& g = k.grid;
    if (count < 1 || count > g.n() / 4) {
        throw ArgumentError("eigensolve_lowest: k must be in [1, n_x/4], got " + std::to_string(count));
    }
    if (k.hermiticity_error() > 1e-10) throw ArgumentError("eigensolve_lowest: kernel is not Hermitian");
    const Eigen::MatrixXcd op = k.entries * g.dx();

    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
    if (op.imag().cwiseAbs().maxCoeff() <= 1e-14 * op.real().cwiseAbs().maxCoeff()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.real());
        if (es.info() != Eigen::Success) throw NumericalError("eigensolve_lowest: eigensolver failed");
        evals = es.eigenvalues();
        evecs = es.eigenvectors().cast<cplx>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolve_lowest: eigensolver failed");
        evals = es.eigenvalues();
        evecs = es.eigenvectors();
    }

    SpectrumResult r{g, {}, {}, {}};
    const double inv_sqrt_dx = 1.0 / std::sqrt(g.dx());
    for (int n = 0; n < count; ++n) {
        Eigen::VectorXcd v = evecs.col(n);
        // Deterministic phase: largest component real and positive.
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        v *= std::abs(v[imax]) / v[imax];
        const Eigen::VectorXcd resid = op * v - evals[n] * v;
        r.energies.push_back(evals[n]);
        r.residuals.push_back(resid.norm());
        r.wavefunctions.emplace_back(g, v * inv_sqrt_dx);
    }
    return r;
}

SymbolField oracle_wigner(const SpectrumResult& result, int n, const PhaseGrid& grid) {
    if (n < 0 || n >= static_cast<int>(result.wavefunctions.size())) {
        throw ArgumentError("oracle_wigner: index " + std::to_string(n) + " out of range");
    }
    if (grid != result.grid) throw ArgumentError("oracle_wigner: grid mismatch");
    SymbolField p = wigner_from_wavefunction(result.wavefunctions[n]);
    if (integrate2d(p).real() < 0.0) p = -1.0 * p;
    return p;
}

}  // namespace mf
