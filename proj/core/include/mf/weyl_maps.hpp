#pragma once

#include <functional>

#include "mf/phase_grid.hpp"
#include "mf/star.hpp"

namespace mf {

/// ψ(x_i) on the x-axis of a grid.
class Wavefunction {
public:
    Wavefunction(const PhaseGrid& grid, Eigen::VectorXcd values);
    static Wavefunction sample(const PhaseGrid& grid, const std::function<cplx(double)>& f);

    const PhaseGrid& grid() const noexcept { return grid_; }
    const Eigen::VectorXcd& values() const noexcept { return values_; }

    /// sqrt(Σ|ψ|²·dx).
    double norm() const;
    bool is_normalized(double tol = 1e-10) const;
    Wavefunction normalized() const;
    /// max(|ψ_0|, |ψ_{n−1}|) / max|ψ|.
    double boundary_mass() const;

private:
    PhaseGrid grid_;
    Eigen::VectorXcd values_;
};

/// P(x,p) = (1/2πℏ)∫ds e^{−ips/ℏ} ψ(x+s/2) ψ̄(x−s/2), i.e. the symbol of |ψ⟩⟨ψ|/(2πℏ).
/// padding = 2 sums separations without wrap-around; padding = 1 wraps them on the torus.
/// The result is real and carries its kernel.
SymbolField wigner_from_wavefunction(const Wavefunction& psi, int padding = 2);

/// K(x,x′) = (1/2πℏ)∫ A((x+x′)/2, p) e^{ip(x−x′)/ℏ} dp on the lattice.
/// Returns the cached kernel when the field carries one.
KernelMatrix symbol_to_kernel(const SymbolField& a);

/// A(x,p) = ∫ds e^{−ips/ℏ} K(x+s/2, x−s/2). The result carries K.
SymbolField kernel_to_symbol(const KernelMatrix& k, int padding = 2);

/// 2πℏ∫∫P_a P_b = |⟨ψ_a|ψ_b⟩|² for pure states. Uses the exact lattice trace
/// when both fields carry kernels, the midpoint rule otherwise.
double overlap(const SymbolField& pa, const SymbolField& pb);

/// sup_interior |H⋆P − E·P| / sup |P|.
double star_eigen_residual(const SymbolField& h, const SymbolField& p, double e, const StarMethod& method);

/// Upper estimate of the spectral radius of P ↦ (1/iℏ)[H,P]⋆: (max H − min H)/ℏ over the grid.
double liouvillian_radius(const SymbolField& h);

/// One classical RK4 step of ∂t P = (1/iℏ)[H,P]⋆. Requires dt·liouvillian_radius(H) < 0.5.
SymbolField evolve_step(const SymbolField& p, const SymbolField& h, double dt, const StarMethod& method);

/// `steps` RK4 steps. With the Kernel backend the whole run stays in the operator picture.
SymbolField evolve(const SymbolField& p, const SymbolField& h, double dt, int steps, const StarMethod& method);

}  // namespace mf
