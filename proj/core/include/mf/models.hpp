#pragma once

#include <functional>
#include <vector>

#include "mf/phase_grid.hpp"

namespace mf {

/// L_n(t) by the three-term recurrence; n ≤ 64.
double laguerre(int n, double t);

/// H = p² + x² (2m = 1, ω = 2).
struct ShoModel {
    double hbar = 1.0;
};

/// 2ℏ(n + 1/2).
double sho_energy(const ShoModel& model, int n);

/// ((−1)^n/(πℏ)) e^{−r²/ℏ} L_n(2r²/ℏ), r² = x² + p²; uses the grid's ℏ.
SymbolField sho_wigner(const ShoModel& model, int n, const PhaseGrid& grid);

/// H = p² + x² sampled on the grid.
SymbolField sho_hamiltonian(const PhaseGrid& grid);

/// K_α(y) = ∫₀^∞ e^{−y cosh t} cosh(αt) dt for complex order α, y > 0.
/// Trapezoid rule truncated where y·cosh T > 745, halved until successive
/// estimates differ by less than 1e−10·K_0(y).
cplx bessel_k(cplx alpha, double y);

/// K_{iν}(y) = ∫₀^∞ e^{−y cosh t} cos(νt) dt (real); |ν| ≤ 200.
double bessel_k_imag(double nu, double y);

/// I(μ_j) = ∫₀^∞ w(t) cos(μ_j t) dt for many μ sharing one weight; `decay_y` is the
/// y of the e^{−y cosh t} factor inside w and fixes the truncation point.
/// Converged when every estimate moves by less than rel_tol·∫|w|.
std::vector<double> cosine_transform_row(const std::function<double(double)>& w, double decay_y,
                                         const std::vector<double>& mu, double rel_tol = 1e-10);

/// Morse superpotential W = a − b e^{−sx}.
struct MorseModel {
    double a = 5.0;
    double b = 1.0;
    double s = 1.0;
};

void validate(const MorseModel& m);

/// Last bound level: ⌈a/s⌉ − 1.
int morse_n_bound(const MorseModel& m);

/// a² − (a − ns)²; n must not exceed morse_n_bound.
double morse_energy(const MorseModel& m, int n);

/// Closed-form ground-state constant (2/(πs))(2b/a)^{2a/s}, reported for comparison.
double morse_reference_c1(const MorseModel& m);

struct MorseGroundState {
    SymbolField field;             ///< normalized so integrate2d = 1
    double normalization;          ///< constant multiplying the e^{−2ax}K shape at ℏ = 1
    double reference_c1;
    double ratio_to_reference;     ///< normalization / reference_c1
};

/// Samples e^{−2ax/ℏ} K_{2ip/(sℏ)}((2b/(sℏ)) e^{−sx}) and normalizes it numerically.
MorseGroundState morse_p0(const MorseModel& m, const PhaseGrid& grid);

/// Samples the closed form α(x) K_ν(y) − β(x)[K_{ν−1}(y) + K_{ν+1}(y)], ν = 2ip/s,
/// y = (2b/s)e^{−sx}, renormalized to integrate2d = 1. Stated for ℏ = 1.
struct MorseFirstExcited {
    SymbolField field;
    double raw_integral;  ///< ∫∫ of the closed form before renormalization
};
MorseFirstExcited morse_p1(const MorseModel& m, const PhaseGrid& grid);

}  // namespace mf
