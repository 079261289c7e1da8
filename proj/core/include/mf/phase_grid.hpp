#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace mf {

using cplx = std::complex<double>;

/// Uniform periodic (x, p) lattice.
///
/// x_i = x_min + i·dx for i in [0, n); x_max itself is the periodic image of x_min.
/// p_j = (j − n/2)·dp with dp = 2πℏ/(n·dx), so the p-axis is the FFT conjugate of x.
class PhaseGrid {
public:
    PhaseGrid(int n_x, double x_min, double x_max, double hbar);

    int n() const noexcept { return n_; }
    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    double hbar() const noexcept { return hbar_; }
    double length() const noexcept { return x_max_ - x_min_; }
    double dx() const noexcept { return dx_; }
    double dp() const noexcept { return dp_; }

    double x(int i) const noexcept { return x_min_ + i * dx_; }
    double p(int j) const noexcept { return (j - n_ / 2) * dp_; }

    bool operator==(const PhaseGrid& o) const noexcept {
        return n_ == o.n_ && x_min_ == o.x_min_ && x_max_ == o.x_max_ && hbar_ == o.hbar_;
    }
    bool operator!=(const PhaseGrid& o) const noexcept { return !(*this == o); }

private:
    int n_;
    double x_min_, x_max_, hbar_, dx_, dp_;
};

/// Validating factory; throws ArgumentError on a bad specification.
PhaseGrid make_grid(int n_x, double x_min, double x_max, double hbar);

/// Position-representation operator kernel K(x_a, x_b).
struct KernelMatrix {
    PhaseGrid grid;
    Eigen::MatrixXcd entries;

    KernelMatrix(const PhaseGrid& g, Eigen::MatrixXcd k);

    KernelMatrix adjoint() const { return {grid, entries.adjoint()}; }
    /// max|K − K†| / max|K|.
    double hermiticity_error() const;
};

/// Complex samples A(x_i, p_j), row-major with row = x.
///
/// A field produced from an operator keeps that operator's kernel; the
/// kernel is the exact lattice object and is preferred over resampling.
class SymbolField {
public:
    SymbolField(const PhaseGrid& grid, std::vector<cplx> values,
                std::shared_ptr<const KernelMatrix> kernel = nullptr);

    static SymbolField zeros(const PhaseGrid& grid);
    static SymbolField constant(const PhaseGrid& grid, cplx c);

    const PhaseGrid& grid() const noexcept { return grid_; }
    int n() const noexcept { return grid_.n(); }
    const std::vector<cplx>& values() const noexcept { return values_; }
    cplx operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.n() + j]; }

    const KernelMatrix* kernel() const noexcept { return kernel_.get(); }
    const std::shared_ptr<const KernelMatrix>& kernel_ptr() const noexcept { return kernel_; }
    SymbolField without_kernel() const { return {grid_, values_}; }

    double max_abs() const;
    double max_abs_imag() const;
    double max_abs_real() const;
    /// True when max|Im| ≤ rel_tol·max|Re|.
    bool real_valued(double rel_tol = 1e-12) const;

    /// Drops the imaginary part; a cached kernel is replaced by its Hermitian part.
    SymbolField real_part() const;
    /// Pointwise conjugate; a cached kernel becomes its adjoint.
    SymbolField conj() const;

private:
    PhaseGrid grid_;
    std::vector<cplx> values_;
    std::shared_ptr<const KernelMatrix> kernel_;
};

void require_same_grid(const SymbolField& a, const SymbolField& b, const char* op);

SymbolField operator+(const SymbolField& a, const SymbolField& b);
SymbolField operator-(const SymbolField& a, const SymbolField& b);
SymbolField operator*(cplx s, const SymbolField& a);
inline SymbolField operator*(const SymbolField& a, cplx s) { return s * a; }
/// Pointwise product A(x,p)·B(x,p) (the ℏ⁰ term of A⋆B).
SymbolField pointwise(const SymbolField& a, const SymbolField& b);

using PhaseFunction = std::function<cplx(double x, double p)>;

/// values[i][j] = f(x_i, p_j); non-finite output raises ArgumentError naming the node.
SymbolField sample_symbol(const PhaseGrid& grid, const PhaseFunction& f);

/// Σ values·dx·dp.
cplx integrate2d(const SymbolField& field);

/// max |value| on the outermost frame of the lattice divided by max |value| (0 for a zero field).
double boundary_mass(const SymbolField& field);

struct IntegralReport {
    cplx value;
    double boundary_mass;
};
IntegralReport integrate2d_report(const SymbolField& field);

struct Marginals {
    std::vector<double> x;  ///< Σ_j P(x_i, p_j)·dp
    std::vector<double> p;  ///< Σ_i P(x_i, p_j)·dx
};
/// Requires a real-valued field.
Marginals marginals(const SymbolField& field);

/// Index range [lo, hi) that drops 12.5% of the nodes at each edge.
struct Window {
    int lo;
    int hi;
};
Window interior_window(const PhaseGrid& grid);

/// Sup norms, optionally restricted to the interior window in both axes.
double sup_norm(const SymbolField& a, bool interior = false);
double sup_diff(const SymbolField& a, const SymbolField& b, bool interior = false);

}  // namespace mf
