#include "mf/star.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mf/errors.hpp"
#include "mf/fft.hpp"
#include "mf/spectral.hpp"
#include "mf/weyl_maps.hpp"

namespace mf {

namespace {

constexpr double kDecayed = 1e-10;
constexpr double kResultMassLimit = 1e-6;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// At least one factor must decay; frame mass in (1e−10, 1e−6] is a warning, above it an error.
void require_one_decaying(const SymbolField& a, const SymbolField& b, const char* op) {
    const double m = std::min(boundary_mass(a), boundary_mass(b));
    if (m > kResultMassLimit) {
        throw BoundaryMassError(std::string(op) + ": neither factor decays at the grid frame", m);
    }
    if (m > kDecayed) {
        std::ostringstream msg;
        msg << op << ": best-decaying factor has boundary mass " << m;
        warn(msg.str());
    }
}

// The frame mass is measured against the result's own peak, except for results that
// are negligible next to sup|A|·sup|B| (e.g. A⋆P₀ = 0), which are measured against that.
SymbolField checked_result(const KernelMatrix& k, const SymbolField& a, const SymbolField& b, const char* op) {
    SymbolField r = kernel_to_symbol(k);
    const double peak = r.max_abs();
    const double edge = boundary_mass(r) * peak;
    const double ref = std::max(peak, 1e-4 * a.max_abs() * b.max_abs());
    const double m = ref > 0.0 ? edge / ref : 0.0;
    if (m > kResultMassLimit) throw BoundaryMassError(std::string(op) + ": result leaks to the grid frame", m);
    return r;
}

}  // namespace

StarMethod StarMethod::series(int order) {
    if (order < 0 || order > kMaxSeriesOrder) {
        throw ArgumentError("series order must be in [0, 16], got " + std::to_string(order));
    }
    return {Kind::Series, order};
}

std::string StarMethod::name() const {
    switch (kind) {
        case Kind::ExactPoly: return "exactpoly";
        case Kind::Kernel: return "kernel";
        case Kind::Series: return "series:" + std::to_string(order);
    }
    return "unknown";
}

StarMethod parse_star_method(const std::string& text) {
    if (text == "exactpoly") return StarMethod::exact_poly();
    if (text == "kernel") return StarMethod::kernel();
    if (text == "series") return StarMethod::series();
    if (text.rfind("series:", 0) == 0) {
        const std::string digits = text.substr(7);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw ArgumentError("bad series order in backend '" + text + "'");
        }
        return StarMethod::series(std::stoi(digits));
    }
    throw ArgumentError("unknown backend '" + text + "' (expected exactpoly|kernel|series:K)");
}

SymbolField kernel_star(const SymbolField& a, const SymbolField& b) {
    require_same_grid(a, b, "kernel_star");
    require_one_decaying(a, b, "kernel_star");
    const KernelMatrix ka = symbol_to_kernel(a);
    const KernelMatrix kb = symbol_to_kernel(b);
    return checked_result(KernelMatrix(a.grid(), ka.entries * kb.entries * a.grid().dx()), a, b, "kernel_star");
}

SeriesDiagnostics series_star_diagnosed(const SymbolField& a, const SymbolField& b, int order) {
    require_same_grid(a, b, "series_star");
    if (order < 0 || order > StarMethod::kMaxSeriesOrder) throw ArgumentError("series_star: order must be in [0, 16]");
    const PhaseGrid& g = a.grid();
    std::vector<cplx> acc(a.values().size(), cplx{});
    std::vector<cplx> term(acc.size());
    double last = 0.0;
    cplx pref = 1.0;  // (iℏ/2)^k / k!
    for (int k = 0; k <= order; ++k) {
        if (k > 0) pref *= cplx(0.0, 0.5 * g.hbar()) / static_cast<double>(k);
        std::fill(term.begin(), term.end(), cplx{});
        for (int j = 0; j <= k; ++j) {
            const SymbolField da = spectral::derivative(a, k - j, j);
            const SymbolField db = spectral::derivative(b, j, k - j);
            const cplx c = pref * ((j % 2 == 0 ? 1.0 : -1.0) * binomial(k, j));
            for (std::size_t q = 0; q < term.size(); ++q) term[q] += c * da.values()[q] * db.values()[q];
        }
        for (std::size_t q = 0; q < acc.size(); ++q) acc[q] += term[q];
        if (k == order) last = sup_norm(SymbolField(g, term));
    }
    return {SymbolField(g, std::move(acc)), last};
}

SymbolField series_star(const SymbolField& a, const SymbolField& b, int order) {
    return series_star_diagnosed(a, b, order).product;
}

SymbolField star(const SymbolField& a, const SymbolField& b, const StarMethod& method) {
    switch (method.kind) {
        case StarMethod::Kind::Kernel: return kernel_star(a, b);
        case StarMethod::Kind::Series: return series_star(a, b, method.order);
        case StarMethod::Kind::ExactPoly:
            throw ArgumentError("exactpoly backend needs polynomial operands (use poly_star)");
    }
    throw ArgumentError("unknown backend");
}

SymbolField moyal_bracket(const SymbolField& a, const SymbolField& b, const StarMethod& method) {
    require_same_grid(a, b, "moyal_bracket");
    if (method.kind == StarMethod::Kind::Kernel) {
        require_one_decaying(a, b, "moyal_bracket");
        const KernelMatrix ka = symbol_to_kernel(a);
        const KernelMatrix kb = symbol_to_kernel(b);
        const Eigen::MatrixXcd c = (ka.entries * kb.entries - kb.entries * ka.entries) * a.grid().dx();
        return checked_result(KernelMatrix(a.grid(), c), a, b, "moyal_bracket");
    }
    return star(a, b, method) - star(b, a, method);
}

SymbolField poisson_bracket(const SymbolField& a, const SymbolField& b) {
    require_same_grid(a, b, "poisson_bracket");
    return pointwise(spectral::derivative(a, 1, 0), spectral::derivative(b, 0, 1)) -
           pointwise(spectral::derivative(a, 0, 1), spectral::derivative(b, 1, 0));
}

cplx star_trace_pair(const SymbolField& a, const SymbolField& b) { return integrate2d(kernel_star(a, b)); }

namespace {

// Doubles the sampling density in both axes by FFT zero-padding; node (2i, 2j) is the original (i, j).
std::vector<cplx> refine2(const SymbolField& f) {
    const int n = f.n();
    const int m = 2 * n;
    std::vector<cplx> c = f.values();
    fft::transform(c.data(), n, n, 1, n, fft::Direction::Forward);
    fft::transform(c.data(), n, n, n, 1, fft::Direction::Forward);
    std::vector<cplx> out(static_cast<std::size_t>(m) * m, cplx{});
    auto targets = [&](int q) {
        const int s = fft::signed_bin(q, n);
        if (s == -n / 2) return std::vector<std::pair<int, double>>{{n / 2, 0.5}, {m - n / 2, 0.5}};
        return std::vector<std::pair<int, double>>{{(s + m) % m, 1.0}};
    };
    const double norm = 1.0 / (static_cast<double>(n) * n);
    for (int qi = 0; qi < n; ++qi)
        for (const auto& [ti, wi] : targets(qi))
            for (int qj = 0; qj < n; ++qj)
                for (const auto& [tj, wj] : targets(qj))
                    out[static_cast<std::size_t>(ti) * m + tj] += wi * wj * norm * c[static_cast<std::size_t>(qi) * n + qj];
    fft::transform(out.data(), m, m, 1, m, fft::Direction::Backward);
    fft::transform(out.data(), m, m, m, 1, fft::Direction::Backward);
    return out;
}

}  // namespace

cplx integral_star_at(const SymbolField& a, const SymbolField& b, int i, int j) {
    require_same_grid(a, b, "integral_star_at");
    const PhaseGrid& g = a.grid();
    if (g.n() > 32) throw ArgumentError("integral_star_at: validation path limited to n_x <= 32");
    if (i < 0 || i >= g.n() || j < 0 || j >= g.n()) throw ArgumentError("integral_star_at: node out of range");
    const int m = 2 * g.n();
    const std::vector<cplx> fa = refine2(a);
    const std::vector<cplx> fb = refine2(b);
    const double hx = g.dx() / 2;
    const double hp = g.dp() / 2;
    const double x = g.x(i);
    const double p = g.p(j);
    // Offsets of fine nodes from the evaluation point.
    std::vector<double> ox(m), op(m);
    for (int k = 0; k < m; ++k) {
        ox[k] = g.x_min() + k * hx - x;
        op[k] = (k - m / 2) * hp - p;
    }
    const double w = 2.0 / g.hbar();
    // e^{2i x₁ p₂/ℏ} with x₁ = ox[ia], p₂ = op[jb]; e^{−2i x₂ p₁/ℏ} with x₂ = ox[ib], p₁ = op[ja].
    std::vector<cplx> e1(static_cast<std::size_t>(m) * m), e2(static_cast<std::size_t>(m) * m);
    for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
            e1[static_cast<std::size_t>(r) * m + s] = std::polar(1.0, w * ox[r] * op[s]);
            e2[static_cast<std::size_t>(r) * m + s] = std::polar(1.0, -w * ox[r] * op[s]);
        }
    cplx total{};
    for (int ia = 0; ia < m; ++ia) {
        for (int ja = 0; ja < m; ++ja) {
            const cplx av = fa[static_cast<std::size_t>(ia) * m + ja];
            if (av == cplx{}) continue;
            cplx inner{};
            for (int ib = 0; ib < m; ++ib) {
                const cplx ph2 = e2[static_cast<std::size_t>(ib) * m + ja];
                const cplx* brow = fb.data() + static_cast<std::size_t>(ib) * m;
                const cplx* e1row = e1.data() + static_cast<std::size_t>(ia) * m;
                cplx row{};
                for (int jb = 0; jb < m; ++jb) row += brow[jb] * e1row[jb];
                inner += ph2 * row;
            }
            total += av * inner;
        }
    }
    const double cell = hx * hp;
    const double pre = 1.0 / (std::numbers::pi * g.hbar() * std::numbers::pi * g.hbar());
    return pre * cell * cell * total;
}

}  // namespace mf
