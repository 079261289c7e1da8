#include "mf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mf/errors.hpp"
#include "mf/fft.hpp"

namespace mf::spectral {

namespace {

constexpr int kJumps = 6;    // jumps of derivatives 0..5
constexpr int kStencil = 8;  // one-sided points, exact to degree 7
constexpr double kDecayThreshold = 1e-10;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

void transpose(const std::vector<cplx>& in, std::vector<cplx>& out, int n) {
    out.resize(in.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j) * n + i] = in[static_cast<std::size_t>(i) * n + j];
}

}  // namespace

std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

double bernoulli_poly(int n, double t) {
    static constexpr double bn[] = {1.0, -0.5, 1.0 / 6, 0.0, -1.0 / 30, 0.0, 1.0 / 42, 0.0, -1.0 / 30};
    if (n < 0 || n > 8) throw ArgumentError("bernoulli_poly: order out of range");
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += binomial(n, k) * bn[k] * std::pow(t, n - k);
    return s;
}

void differentiate_lines(std::vector<cplx>& data, int n, int lines, double h, int order) {
    if (order == 0) return;
    if (order < 0) throw ArgumentError("derivative: negative order");
    const double length = n * h;

    double scale = 0.0;
    for (const auto& v : data) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return;

    static const auto weights = [] {
        std::vector<double> left(kStencil), right(kStencil);
        for (int k = 0; k < kStencil; ++k) {
            left[k] = k;
            right[k] = k - kStencil;
        }
        return std::pair{fornberg_weights(0.0, left, kJumps - 1), fornberg_weights(0.0, right, kJumps - 1)};
    }();

    // Bernoulli tables: B_k(t_i) for k ≤ kJumps.
    std::vector<std::vector<double>> bern(kJumps + 1, std::vector<double>(n));
    for (int k = 0; k <= kJumps; ++k)
        for (int i = 0; i < n; ++i) bern[k][i] = bernoulli_poly(k, static_cast<double>(i) / n);

    std::vector<std::vector<cplx>> coeff(lines);  // c_1..c_M per corrected line
    for (int l = 0; l < lines; ++l) {
        cplx* f = data.data() + static_cast<std::size_t>(l) * n;
        if (std::max(std::abs(f[0]), std::abs(f[n - 1])) <= kDecayThreshold * scale) continue;
        std::vector<cplx> c(kJumps + 1, cplx{});
        for (int k = 0; k < kJumps; ++k) {
            cplx dl{}, dr{};
            for (int s = 0; s < kStencil; ++s) {
                dl += weights.first[k][s] * f[s];
                dr += weights.second[k][s] * f[n - kStencil + s];
            }
            const cplx jump = (dr - dl) / std::pow(h, k);
            c[k + 1] = jump * std::pow(length, k) / factorial(k + 1);
        }
        for (int i = 0; i < n; ++i) {
            cplx q{};
            for (int m = 1; m <= kJumps; ++m) q += c[m] * bern[m][i];
            f[i] -= q;
        }
        coeff[l] = std::move(c);
    }

    fft::transform(data.data(), n, lines, 1, n, fft::Direction::Forward);
    std::vector<cplx> mult(n);
    for (int k = 0; k < n; ++k) {
        const int kk = fft::signed_bin(k, n);
        if (kk == -n / 2 && order % 2 == 1) {
            mult[k] = 0.0;
            continue;
        }
        const double kappa = 2.0 * std::numbers::pi * kk / length;
        mult[k] = std::pow(cplx(0.0, kappa), order) / static_cast<double>(n);
    }
    for (int l = 0; l < lines; ++l) {
        cplx* f = data.data() + static_cast<std::size_t>(l) * n;
        for (int k = 0; k < n; ++k) f[k] *= mult[k];
    }
    fft::transform(data.data(), n, lines, 1, n, fft::Direction::Backward);

    for (int l = 0; l < lines; ++l) {
        if (coeff[l].empty()) continue;
        cplx* f = data.data() + static_cast<std::size_t>(l) * n;
        const auto& c = coeff[l];
        for (int i = 0; i < n; ++i) {
            cplx q{};
            for (int m = std::max(order, 1); m <= kJumps; ++m) {
                q += c[m] * (factorial(m) / factorial(m - order)) * bern[m - order][i];
            }
            f[i] += q / std::pow(length, order);
        }
    }
}

SymbolField derivative(const SymbolField& f, int mx, int mp) {
    const int n = f.n();
    std::vector<cplx> data = f.values();
    if (mp > 0) differentiate_lines(data, n, n, f.grid().dp(), mp);
    if (mx > 0) {
        std::vector<cplx> t;
        transpose(data, t, n);
        differentiate_lines(t, n, n, f.grid().dx(), mx);
        transpose(t, data, n);
    }
    return {f.grid(), std::move(data)};
}

}  // namespace mf::spectral
