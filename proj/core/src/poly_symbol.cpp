#include "mf/poly_symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mf/errors.hpp"

namespace mf {

namespace {

// n (n−1) ... (n−k+1)
double falling(int n, int k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= n - i;
    return r;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_degree(const Monomial& m) {
    if (m.x < 0 || m.p < 0 || m.h < 0) throw ArgumentError("poly: negative exponent");
    if (m.x + m.p > PolySymbol::kMaxDegree) {
        throw ArgumentError("poly: degree overflow (" + std::to_string(m.x + m.p) + " > 64)");
    }
}

}  // namespace

PolySymbol PolySymbol::constant(cplx c) { return monomial(c, 0, 0, 0); }

PolySymbol PolySymbol::monomial(cplx c, int x_deg, int p_deg, int h_deg) {
    PolySymbol r;
    r.add_term({x_deg, p_deg, h_deg}, c);
    return r;
}

cplx PolySymbol::coeff(int x_deg, int p_deg, int h_deg) const {
    const auto it = terms_.find({x_deg, p_deg, h_deg});
    return it == terms_.end() ? cplx{} : it->second;
}

int PolySymbol::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.x + m.p);
    return d;
}

void PolySymbol::add_term(const Monomial& m, cplx c) {
    check_degree(m);
    auto [it, inserted] = terms_.try_emplace(m, cplx{});
    it->second += c;
    if (std::abs(it->second) <= kPruneBelow) terms_.erase(it);
}

PolySymbol PolySymbol::conj() const {
    PolySymbol r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, std::conj(c));
    return r;
}

PolySymbol PolySymbol::divide_by_hbar(int k) const {
    PolySymbol r;
    for (const auto& [m, c] : terms_) {
        if (m.h < k) throw ArgumentError("poly: term " + std::to_string(m.x) + "," + std::to_string(m.p) +
                                         " lacks the hbar power being divided out");
        r.terms_.emplace(Monomial{m.x, m.p, m.h - k}, c);
    }
    return r;
}

PolySymbol PolySymbol::at_hbar(double hbar) const {
    PolySymbol r;
    for (const auto& [m, c] : terms_) r.add_term({m.x, m.p, 0}, c * std::pow(hbar, m.h));
    return r;
}

cplx PolySymbol::evaluate(double x, double p, double hbar) const {
    cplx s{};
    for (const auto& [m, c] : terms_) s += c * std::pow(x, m.x) * std::pow(p, m.p) * std::pow(hbar, m.h);
    return s;
}

SymbolField PolySymbol::sample(const PhaseGrid& grid) const {
    const PolySymbol q = at_hbar(grid.hbar());
    return sample_symbol(grid, [&q](double x, double p) { return q.evaluate(x, p, 0.0); });
}

std::string PolySymbol::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        if (m.x) os << "*x^" << m.x;
        if (m.p) os << "*p^" << m.p;
        if (m.h) os << "*hbar^" << m.h;
    }
    return os.str();
}

PolySymbol& PolySymbol::operator+=(const PolySymbol& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

PolySymbol& PolySymbol::operator-=(const PolySymbol& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

PolySymbol operator*(cplx s, const PolySymbol& a) {
    PolySymbol r;
    for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
    return r;
}

PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
    PolySymbol r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term({ma.x + mb.x, ma.p + mb.p, ma.h + mb.h}, ca * cb);
    return r;
}

PolySymbol poly_star(const PolySymbol& a, const PolySymbol& b) {
    // Σ_k (iℏ/2)^k/k! Σ_j (−1)^j C(k,j) (∂x^{k−j} ∂p^j A)(∂p^{k−j} ∂x^j B)
    PolySymbol r;
    const cplx half_i(0.0, 0.5);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            const int kmax = std::min(ma.x + ma.p, mb.x + mb.p);
            cplx pref = 1.0;  // (i/2)^k / k!
            for (int k = 0; k <= kmax; ++k) {
                if (k > 0) pref *= half_i / static_cast<double>(k);
                for (int j = 0; j <= k; ++j) {
                    const int ax = k - j, ap = j, bp = k - j, bx = j;
                    const double f = falling(ma.x, ax) * falling(ma.p, ap) * falling(mb.p, bp) * falling(mb.x, bx);
                    if (f == 0.0) continue;
                    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                    r.add_term({ma.x - ax + mb.x - bx, ma.p - ap + mb.p - bp, ma.h + mb.h + k},
                               ca * cb * pref * (sign * binomial(k, j) * f));
                }
            }
        }
    }
    return r;
}

PolySymbol poly_star(const PolySymbol& a, const PolySymbol& b, double hbar) {
    if (!(hbar > 0.0)) throw ArgumentError("poly_star: hbar must be positive");
    return poly_star(a, b).at_hbar(hbar);
}

PolySymbol poly_moyal_bracket(const PolySymbol& a, const PolySymbol& b) {
    return poly_star(a, b) - poly_star(b, a);
}

PolySymbol poly_derivative(const PolySymbol& a, int mx, int mp) {
    PolySymbol r;
    for (const auto& [m, c] : a.terms()) {
        const double f = falling(m.x, mx) * falling(m.p, mp);
        if (f != 0.0) r.add_term({m.x - mx, m.p - mp, m.h}, c * f);
    }
    return r;
}

PolySymbol poly_poisson_bracket(const PolySymbol& a, const PolySymbol& b) {
    return poly_derivative(a, 1, 0) * poly_derivative(b, 0, 1) - poly_derivative(a, 0, 1) * poly_derivative(b, 1, 0);
}

double relative_coefficient_diff(const PolySymbol& a, const PolySymbol& b) {
    double scale = 0.0;
    for (const auto& [m, c] : a.terms()) scale = std::max(scale, std::abs(c));
    for (const auto& [m, c] : b.terms()) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    const PolySymbol d = a - b;
    double diff = 0.0;
    for (const auto& [m, c] : d.terms()) diff = std::max(diff, std::abs(c));
    return diff / scale;
}

}  // namespace mf
