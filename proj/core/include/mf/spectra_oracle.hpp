#pragma once

#include <functional>
#include <vector>

#include "mf/phase_grid.hpp"
#include "mf/weyl_maps.hpp"

namespace mf {

/// Lowest eigenpairs of a lattice Hamiltonian.
struct SpectrumResult {
    PhaseGrid grid;
    std::vector<double> energies;           ///< ascending
    std::vector<Wavefunction> wavefunctions;
    std::vector<double> residuals;          ///< ‖Hψ − Eψ‖ (lattice L² norm)
};

/// Kernel of p² + V(x): FFT spectral kinetic term (ℏκ)² plus diagonal V, symmetrized.
/// The kernel acts as (Kψ)_a = Σ_b K_ab ψ_b dx.
KernelMatrix discretize_hamiltonian(const std::function<double(double)>& v, const PhaseGrid& grid);

/// k lowest eigenpairs of the integral operator ψ ↦ Σ_b K_ab ψ_b dx; 1 ≤ k ≤ n_x/4.
SpectrumResult eigensolve_lowest(const KernelMatrix& k, int count);

/// Wigner function of eigenvector n, sign fixed so integrate2d = +1.
SymbolField oracle_wigner(const SpectrumResult& result, int n, const PhaseGrid& grid);

}  // namespace mf
