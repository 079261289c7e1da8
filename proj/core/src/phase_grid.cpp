#include "mf/phase_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mf/errors.hpp"
#include "mf/parallel.hpp"

namespace mf {

PhaseGrid::PhaseGrid(int n_x, double x_min, double x_max, double hbar)
    : n_(n_x), x_min_(x_min), x_max_(x_max), hbar_(hbar) {
    if (n_x < 8 || (n_x & (n_x - 1)) != 0) {
        throw ArgumentError("grid: n_x must be a power of two >= 8, got " + std::to_string(n_x));
    }
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw ArgumentError("grid: empty or non-finite x interval");
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ArgumentError("grid: hbar must be positive");
    dx_ = (x_max - x_min) / n_x;
    dp_ = 2.0 * std::numbers::pi * hbar / (n_x * dx_);
}

PhaseGrid make_grid(int n_x, double x_min, double x_max, double hbar) {
    return PhaseGrid(n_x, x_min, x_max, hbar);
}

KernelMatrix::KernelMatrix(const PhaseGrid& g, Eigen::MatrixXcd k) : grid(g), entries(std::move(k)) {
    if (entries.rows() != g.n() || entries.cols() != g.n()) {
        throw ArgumentError("kernel: matrix shape does not match grid");
    }
}

double KernelMatrix::hermiticity_error() const {
    const double scale = entries.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() / scale;
}

SymbolField::SymbolField(const PhaseGrid& grid, std::vector<cplx> values,
                         std::shared_ptr<const KernelMatrix> kernel)
    : grid_(grid), values_(std::move(values)), kernel_(std::move(kernel)) {
    const auto n = static_cast<std::size_t>(grid_.n());
    if (values_.size() != n * n) throw ArgumentError("field: values must hold n_x^2 entries");
    if (kernel_ && kernel_->grid != grid_) throw ArgumentError("field: kernel grid mismatch");
}

SymbolField SymbolField::zeros(const PhaseGrid& grid) {
    const auto n = static_cast<std::size_t>(grid.n());
    return {grid, std::vector<cplx>(n * n, cplx{})};
}

SymbolField SymbolField::constant(const PhaseGrid& grid, cplx c) {
    const auto n = static_cast<std::size_t>(grid.n());
    return {grid, std::vector<cplx>(n * n, c)};
}

double SymbolField::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double SymbolField::max_abs_imag() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
    return m;
}

double SymbolField::max_abs_real() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v.real()));
    return m;
}

bool SymbolField::real_valued(double rel_tol) const { return max_abs_imag() <= rel_tol * max_abs_real(); }

SymbolField SymbolField::real_part() const {
    std::vector<cplx> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](cplx v) { return cplx(v.real(), 0.0); });
    std::shared_ptr<const KernelMatrix> k;
    if (kernel_) {
        k = std::make_shared<const KernelMatrix>(grid_, 0.5 * (kernel_->entries + kernel_->entries.adjoint()));
    }
    return {grid_, std::move(out), std::move(k)};
}

SymbolField SymbolField::conj() const {
    std::vector<cplx> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](cplx v) { return std::conj(v); });
    std::shared_ptr<const KernelMatrix> k;
    if (kernel_) k = std::make_shared<const KernelMatrix>(kernel_->adjoint());
    return {grid_, std::move(out), std::move(k)};
}

void require_same_grid(const SymbolField& a, const SymbolField& b, const char* op) {
    if (a.grid() != b.grid()) throw ArgumentError(std::string(op) + ": operands live on different grids");
}

namespace {

SymbolField combine(const SymbolField& a, const SymbolField& b, cplx sb, const char* op) {
    require_same_grid(a, b, op);
    std::vector<cplx> out(a.values().size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.values()[k] + sb * b.values()[k];
    std::shared_ptr<const KernelMatrix> kernel;
    if (a.kernel() && b.kernel()) {
        kernel = std::make_shared<const KernelMatrix>(a.grid(), a.kernel()->entries + sb * b.kernel()->entries);
    }
    return {a.grid(), std::move(out), std::move(kernel)};
}

}  // namespace

SymbolField operator+(const SymbolField& a, const SymbolField& b) { return combine(a, b, 1.0, "add"); }
SymbolField operator-(const SymbolField& a, const SymbolField& b) { return combine(a, b, -1.0, "subtract"); }

SymbolField operator*(cplx s, const SymbolField& a) {
    std::vector<cplx> out(a.values().size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = s * a.values()[k];
    std::shared_ptr<const KernelMatrix> kernel;
    if (a.kernel()) kernel = std::make_shared<const KernelMatrix>(a.grid(), s * a.kernel()->entries);
    return {a.grid(), std::move(out), std::move(kernel)};
}

SymbolField pointwise(const SymbolField& a, const SymbolField& b) {
    require_same_grid(a, b, "pointwise");
    std::vector<cplx> out(a.values().size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.values()[k] * b.values()[k];
    return {a.grid(), std::move(out)};
}

SymbolField sample_symbol(const PhaseGrid& grid, const PhaseFunction& f) {
    const int n = grid.n();
    std::vector<cplx> values(static_cast<std::size_t>(n) * n);
    std::vector<char> bad(n, 0);
    parallel_for(n, [&](std::size_t i) {
        const double x = grid.x(static_cast<int>(i));
        for (int j = 0; j < n; ++j) {
            const cplx v = f(x, grid.p(j));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad[i] = 1;
            values[i * n + j] = v;
        }
    });
    for (int i = 0; i < n; ++i) {
        if (!bad[i]) continue;
        for (int j = 0; j < n; ++j) {
            const cplx v = values[static_cast<std::size_t>(i) * n + j];
            if (std::isfinite(v.real()) && std::isfinite(v.imag())) continue;
            std::ostringstream msg;
            msg << "sample_symbol: non-finite value at node (" << i << ", " << j << "), x = " << grid.x(i)
                << ", p = " << grid.p(j);
            throw ArgumentError(msg.str());
        }
    }
    return {grid, std::move(values)};
}

cplx integrate2d(const SymbolField& field) {
    const int n = field.n();
    // Row sums first, then an ordered sum over rows: deterministic.
    cplx total{};
    for (int i = 0; i < n; ++i) {
        cplx row{};
        for (int j = 0; j < n; ++j) row += field(i, j);
        total += row;
    }
    return total * field.grid().dx() * field.grid().dp();
}

double boundary_mass(const SymbolField& field) {
    const int n = field.n();
    const double peak = field.max_abs();
    if (peak == 0.0) return 0.0;
    double edge = 0.0;
    for (int k = 0; k < n; ++k) {
        edge = std::max({edge, std::abs(field(0, k)), std::abs(field(n - 1, k)), std::abs(field(k, 0)),
                         std::abs(field(k, n - 1))});
    }
    return edge / peak;
}

IntegralReport integrate2d_report(const SymbolField& field) {
    return {integrate2d(field), boundary_mass(field)};
}

Marginals marginals(const SymbolField& field) {
    if (!field.real_valued()) throw ArgumentError("marginals: field is not real-valued");
    const int n = field.n();
    const double dx = field.grid().dx();
    const double dp = field.grid().dp();
    Marginals m{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = field(i, j).real();
            m.x[i] += v * dp;
            m.p[j] += v * dx;
        }
    }
    return m;
}

Window interior_window(const PhaseGrid& grid) {
    const int cut = grid.n() / 8;
    return {cut, grid.n() - cut};
}

double sup_norm(const SymbolField& a, bool interior) {
    const Window w = interior ? interior_window(a.grid()) : Window{0, a.n()};
    double m = 0.0;
    for (int i = w.lo; i < w.hi; ++i)
        for (int j = w.lo; j < w.hi; ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

double sup_diff(const SymbolField& a, const SymbolField& b, bool interior) {
    require_same_grid(a, b, "sup_diff");
    const Window w = interior ? interior_window(a.grid()) : Window{0, a.n()};
    double m = 0.0;
    for (int i = w.lo; i < w.hi; ++i)
        for (int j = w.lo; j < w.hi; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

}  // namespace mf
