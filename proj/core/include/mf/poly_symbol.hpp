#pragma once

#include <compare>
#include <map>
#include <string>

#include "mf/phase_grid.hpp"

namespace mf {

/// Exponents of x^x · p^p · ℏ^h.
struct Monomial {
    int x = 0;
    int p = 0;
    int h = 0;
    auto operator<=>(const Monomial&) const = default;
};

/// Polynomial Weyl symbol with complex coefficients; ℏ is a formal variable.
class PolySymbol {
public:
    using Terms = std::map<Monomial, cplx>;
    static constexpr int kMaxDegree = 64;
    static constexpr double kPruneBelow = 1e-300;

    PolySymbol() = default;
    static PolySymbol constant(cplx c);
    static PolySymbol monomial(cplx c, int x_deg, int p_deg, int h_deg = 0);
    static PolySymbol x() { return monomial(1.0, 1, 0); }
    static PolySymbol p() { return monomial(1.0, 0, 1); }
    static PolySymbol hbar() { return monomial(1.0, 0, 0, 1); }

    const Terms& terms() const noexcept { return terms_; }
    cplx coeff(int x_deg, int p_deg, int h_deg = 0) const;
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Highest total degree in (x, p); 0 for constants and the zero polynomial.
    int degree() const;

    /// Adds c to the coefficient of the monomial, pruning exact cancellations.
    void add_term(const Monomial& m, cplx c);

    PolySymbol conj() const;
    /// Divides by ℏ^k; every term must carry at least that power.
    PolySymbol divide_by_hbar(int k = 1) const;
    /// Substitutes a numeric ℏ, leaving only h = 0 terms.
    PolySymbol at_hbar(double hbar) const;
    cplx evaluate(double x, double p, double hbar) const;
    /// Samples the symbol at the grid's ℏ.
    SymbolField sample(const PhaseGrid& grid) const;
    std::string to_string() const;

    PolySymbol& operator+=(const PolySymbol& o);
    PolySymbol& operator-=(const PolySymbol& o);
    friend PolySymbol operator+(PolySymbol a, const PolySymbol& b) { return a += b; }
    friend PolySymbol operator-(PolySymbol a, const PolySymbol& b) { return a -= b; }
    friend PolySymbol operator*(cplx s, const PolySymbol& a);
    /// Ordinary (commutative) product.
    friend PolySymbol operator*(const PolySymbol& a, const PolySymbol& b);

private:
    Terms terms_;
};

/// Exact Moyal product; the Bopp-shift series terminates for polynomials.
PolySymbol poly_star(const PolySymbol& a, const PolySymbol& b);
/// Same with a numeric ℏ substituted afterwards.
PolySymbol poly_star(const PolySymbol& a, const PolySymbol& b, double hbar);

/// A⋆B − B⋆A.
PolySymbol poly_moyal_bracket(const PolySymbol& a, const PolySymbol& b);
/// ∂x A ∂p B − ∂p A ∂x B.
PolySymbol poly_poisson_bracket(const PolySymbol& a, const PolySymbol& b);

PolySymbol poly_derivative(const PolySymbol& a, int mx, int mp);

/// max |a_m − b_m| / max(max |a_m|, max |b_m|), 0 when both vanish.
double relative_coefficient_diff(const PolySymbol& a, const PolySymbol& b);

}  // namespace mf
