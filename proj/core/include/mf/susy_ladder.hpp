#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mf/phase_grid.hpp"
#include "mf/weyl_maps.hpp"

namespace mf {

using Params = std::vector<double>;

struct Superpotential {
    std::function<double(double x, const Params& a)> w;
    std::function<double(double x, const Params& a)> w_prime;
    std::vector<std::string> param_names;
};

/// Superpotential plus the shape-invariance data, with 2m = 1 and a fixed ℏ.
///
/// Shape invariance: V₊(x; a) = V₋(x; f(a)) + R(a). When a gauge function g is
/// known, R(a) = g(f(a)) − g(a); models with f = identity set R directly.
struct ShapeInvariantModel {
    std::string name;
    Superpotential sp;
    double hbar = 1.0;
    Params a0;
    std::function<Params(const Params&)> f;
    std::function<double(const Params&)> g;          ///< optional
    std::function<double(const Params&)> remainder;  ///< R(a); empty when shape invariance is unknown
    std::function<bool(const Params&)> in_domain;
    int n_bound = 0;

    /// a_k = f^k(a0).
    Params orbit(int k) const;
    bool shape_invariant() const { return static_cast<bool>(remainder); }
};

/// W = (ω/2)x, so H₋ = p² + (ω²/4)x² − ℏω/2; f = identity, R = ℏω.
ShapeInvariantModel make_sho_model(double omega = 2.0, double hbar = 1.0, int n_bound = 64);
/// W = a − b e^{−sx}; f(a) = a − ℏs, g(a) = −a², n_bound = ⌈a/(ℏs)⌉ − 1.
ShapeInvariantModel make_morse_model(double a = 5.0, double b = 1.0, double s = 1.0, double hbar = 1.0);
/// A superpotential without shape-invariance data (ground state and oracle only).
ShapeInvariantModel make_custom_model(std::string name, Superpotential sp, Params a0, double hbar = 1.0);

struct ParamSpec {
    std::string name;
    double default_value;
};
/// Registry schema: model name → parameters with defaults.
const std::map<std::string, std::vector<ParamSpec>>& model_registry();
/// Builds a registered model; unknown names or parameters raise ArgumentError.
ShapeInvariantModel make_registered_model(const std::string& name, const std::map<std::string, double>& params,
                                          double hbar);

struct PartnerPotentials {
    std::function<double(double)> v_minus;
    std::function<double(double)> v_plus;
};
/// V∓ = W² ∓ ℏW′.
PartnerPotentials partner_potentials(const ShapeInvariantModel& model, const Params& a);

enum class Sector { Minus, Plus };
/// p² + V∓(x) sampled on the grid.
SymbolField partner_hamiltonian(const ShapeInvariantModel& model, const Params& a, const PhaseGrid& grid,
                                Sector sector = Sector::Minus);

struct LadderSymbols {
    SymbolField a;      ///< i·p + W(x)
    SymbolField a_dag;  ///< complex conjugate
};
LadderSymbols ladder_symbols(const ShapeInvariantModel& model, const Params& a, const PhaseGrid& grid);

/// E_n at the model's a0: Σ_{k<n} R(a_k).
double si_energy(const ShapeInvariantModel& model, int n);
/// E_n for the orbit starting at a.
double si_energy_at(const ShapeInvariantModel& model, const Params& a, int n);

/// max over nodes and the orbit a_0..a_{n_bound} of |V₊(x;a) − V₋(x;f(a)) − R(a)| / max|V₊|.
double shape_invariance_residual(const ShapeInvariantModel& model, const std::vector<double>& xs);

/// ψ₀ ∝ exp(−(1/ℏ)∫W), cumulative Simpson with midpoints; normalized.
/// Throws BoundaryMassError when ψ₀ does not decay to 1e−8 of its peak at the frame.
Wavefunction ground_state_wavefunction(const ShapeInvariantModel& model, const Params& a, const PhaseGrid& grid);

/// sup_interior |A⋆P| / sup|P| with the kernel backend.
double annihilation_residual(const ShapeInvariantModel& model, const Params& a, const SymbolField& p);

/// Wigner function of ψ₀; verifies the annihilation residual ≤ tol.
SymbolField ground_wigner(const ShapeInvariantModel& model, const Params& a, const PhaseGrid& grid,
                          double tol = 1e-5);

/// A†(a) ⋆ P_prev ⋆ A(a) / E_n(a), renormalized to integrate2d = +1.
SymbolField ladder_step(const SymbolField& p_prev, const ShapeInvariantModel& model, const Params& a, int n);

struct WignerSequence {
    std::vector<SymbolField> fields;  ///< P_0 .. P_nmax at a0
    std::vector<double> energies;
    std::vector<double> residuals;    ///< star_eigen_residual against H₋(a0)
    Eigen::MatrixXd overlaps;
};

struct SequenceTolerances {
    double residual = 1e-4;
    double overlap = 1e-5;
};

/// P_n(a0) from P_0(a_n) by n ladder steps down the orbit, for n = 0..n_max.
/// Fails as a whole if any residual or overlap check fails.
WignerSequence build_wigner_sequence(const ShapeInvariantModel& model, const PhaseGrid& grid, int n_max,
                                     const SequenceTolerances& tol = {});

enum class Direction { Up, Down };
/// Down: A ⋆ P ⋆ A† / E (minus sector level n+1 → plus sector level n).
/// Up: A† ⋆ P ⋆ A / E (plus sector level n → minus sector level n+1).
SymbolField partner_wigner_map(const SymbolField& p, const ShapeInvariantModel& model, const Params& a,
                               Direction direction, double e);

}  // namespace mf
