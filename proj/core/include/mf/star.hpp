#pragma once

#include <string>

#include "mf/phase_grid.hpp"
#include "mf/poly_symbol.hpp"

namespace mf {

/// Selects a ⋆-product backend.
struct StarMethod {
    enum class Kind { ExactPoly, Kernel, Series };
    static constexpr int kMaxSeriesOrder = 16;

    Kind kind = Kind::Series;
    int order = 8;  ///< Series truncation order

    static StarMethod exact_poly() { return {Kind::ExactPoly, 0}; }
    static StarMethod kernel() { return {Kind::Kernel, 0}; }
    static StarMethod series(int order = 8);

    std::string name() const;
};

/// Parses "exactpoly", "kernel", "series" or "series:K".
StarMethod parse_star_method(const std::string& text);

/// Symbol → kernel → matrix product → symbol. At least one factor must decay
/// at the frame: boundary mass ≤ 1e−10 passes silently, up to 1e−6 raises a
/// warning, above that an error. Results leaking more than 1e−6 to the frame
/// are rejected. The result carries its kernel.
SymbolField kernel_star(const SymbolField& a, const SymbolField& b);

/// Truncated Moyal series with pseudospectral derivatives.
SymbolField series_star(const SymbolField& a, const SymbolField& b, int order);

struct SeriesDiagnostics {
    SymbolField product;
    double last_term_sup;  ///< sup norm of the order-K contribution
};
/// series_star plus the size of its last retained term, a convergence indicator.
SeriesDiagnostics series_star_diagnosed(const SymbolField& a, const SymbolField& b, int order);

/// Dispatches on the backend; ExactPoly is only defined for PolySymbol operands.
SymbolField star(const SymbolField& a, const SymbolField& b, const StarMethod& method);

/// A⋆B − B⋆A.
SymbolField moyal_bracket(const SymbolField& a, const SymbolField& b, const StarMethod& method);

/// ∂x A ∂p B − ∂p A ∂x B, pseudospectrally.
SymbolField poisson_bracket(const SymbolField& a, const SymbolField& b);

/// ∫∫ A⋆B, computed from the kernel backend.
cplx star_trace_pair(const SymbolField& a, const SymbolField& b);

/// A⋆B at one node by brute-force quadrature of the four-fold integral form
/// (1/(πℏ)²)∫ A(x+x₁,p+p₁) B(x+x₂,p+p₂) e^{2i(x₁p₂−x₂p₁)/ℏ}. Inputs are
/// spectrally refined ×2 in both axes first. Validation only: n_x ≤ 32, and
/// meaningful for nodes in the interior window of decaying fields.
cplx integral_star_at(const SymbolField& a, const SymbolField& b, int i, int j);

}  // namespace mf
