#pragma once

#include <vector>

#include "mf/phase_grid.hpp"

namespace mf::spectral {

/// Finite-difference weights for derivatives 0..max_order at z from the given nodes
/// (Fornberg's recursion). Result[k][j] multiplies f(nodes[j]) for the k-th derivative.
std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& nodes, int max_order);

/// Bernoulli polynomial B_n(t), n ≤ 8.
double bernoulli_poly(int n, double t);

/// Derivative of `order` of each of `lines` contiguous lines of length n, spacing h.
///
/// Lines that do not decay at both ends are treated as non-periodic: the jumps of
/// f, f', ..., f^(5) across the period are estimated with one-sided stencils and
/// removed with Bernoulli polynomials before FFT differentiation, which makes
/// polynomials up to degree 6 differentiate exactly. Decaying lines use plain
/// spectral differentiation.
void differentiate_lines(std::vector<cplx>& data, int n, int lines, double h, int order);

/// ∂x^mx ∂p^mp of a field.
SymbolField derivative(const SymbolField& f, int mx, int mp);

}  // namespace mf::spectral
