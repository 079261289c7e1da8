#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "mf/phase_grid.hpp"
#include "mf/poly_symbol.hpp"

/// Reference values computed independently of the library code paths.
namespace mf::oracle {

/// L_n(t) from the explicit finite sum Σ_k C(n,k)(−t)^k/k!.
inline double laguerre_sum(int n, double t) {
    double total = 0.0, binom = 1.0, fact = 1.0, power = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            binom *= static_cast<double>(n - k + 1) / k;
            fact *= k;
            power *= -t;
        }
        total += binom * power / fact;
    }
    return total;
}

/// Oscillator (H = p² + x²) Wigner function of level n, sampled directly.
inline SymbolField sho_reference(int n, const PhaseGrid& grid) {
    const double h = grid.hbar();
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    std::vector<cplx> v(static_cast<std::size_t>(grid.n()) * grid.n());
    for (int i = 0; i < grid.n(); ++i)
        for (int j = 0; j < grid.n(); ++j) {
            const double r2 = grid.x(i) * grid.x(i) + grid.p(j) * grid.p(j);
            v[static_cast<std::size_t>(i) * grid.n() + j] =
                sign / (std::numbers::pi * h) * std::exp(-r2 / h) * laguerre_sum(n, 2.0 * r2 / h);
        }
    return {grid, std::move(v)};
}

/// Random polynomial symbol of total degree ≤ degree with complex coefficients in the unit box.
inline PolySymbol random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PolySymbol a;
    for (int dx = 0; dx <= degree; ++dx)
        for (int dp = 0; dx + dp <= degree; ++dp) a.add_term({dx, dp, 0}, cplx(u(rng), u(rng)));
    return a;
}

/// Plain lattice sum Σ f·dx·dp.
inline cplx lattice_sum(const SymbolField& f) {
    cplx s = 0.0;
    for (const cplx& v : f.values()) s += v;
    return s * f.grid().dx() * f.grid().dp();
}

}  // namespace mf::oracle
