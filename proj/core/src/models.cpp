#include "mf/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mf/errors.hpp"

namespace mf {

namespace {

constexpr double kUnderflowExponent = 745.0;
constexpr int kMaxRefinements = 20;

double truncation_point(double y) { return std::acosh(std::max(kUnderflowExponent / y, 1.0)); }

}  // namespace

double laguerre(int n, double t) {
    if (n < 0 || n > 64) throw ArgumentError("laguerre: n must be in [0, 64]");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 - t;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1 - t) * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double sho_energy(const ShoModel& model, int n) {
    if (n < 0) throw ArgumentError("sho_energy: negative level");
    return 2.0 * model.hbar * (n + 0.5);
}

SymbolField sho_wigner(const ShoModel& model, int n, const PhaseGrid& grid) {
    if (n < 0 || n > 64) throw ArgumentError("sho_wigner: n must be in [0, 64]");
    (void)model;
    const double h = grid.hbar();
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sample_symbol(grid, [=](double x, double p) {
        const double r2 = x * x + p * p;
        return cplx(sign / (std::numbers::pi * h) * std::exp(-r2 / h) * laguerre(n, 2.0 * r2 / h), 0.0);
    });
}

SymbolField sho_hamiltonian(const PhaseGrid& grid) {
    return sample_symbol(grid, [](double x, double p) { return cplx(p * p + x * x, 0.0); });
}

cplx bessel_k(cplx alpha, double y) {
    if (!(y > 0.0)) throw ArgumentError("bessel_k: argument must be positive");
    if (y >= kUnderflowExponent) return 0.0;
    const double t_max = truncation_point(y);
    auto f = [&](double t) { return std::exp(-y * std::cosh(t)) * std::cosh(alpha * t); };
    auto f0 = [&](double t) { return std::exp(-y * std::cosh(t)); };

    int intervals = 64;
    double h = t_max / intervals;
    cplx sum = 0.5 * (f(0.0) + f(t_max));
    double sum0 = 0.5 * (f0(0.0) + f0(t_max));
    for (int k = 1; k < intervals; ++k) {
        sum += f(k * h);
        sum0 += f0(k * h);
    }
    cplx est = h * sum;
    for (int r = 0; r < kMaxRefinements; ++r) {
        cplx extra{};
        double extra0 = 0.0;
        for (int k = 0; k < intervals; ++k) {
            const double t = (k + 0.5) * h;
            extra += f(t);
            extra0 += f0(t);
        }
        sum += extra;
        sum0 += extra0;
        intervals *= 2;
        h *= 0.5;
        const cplx next = h * sum;
        const bool resolved = h * std::abs(alpha.imag()) < 1.0;
        if (r >= 2 && resolved && std::abs(next - est) <= 1e-10 * h * sum0) return next;
        est = next;
    }
    throw NumericalError("bessel_k: quadrature did not converge");
}

double bessel_k_imag(double nu, double y) {
    if (std::abs(nu) > 200.0) throw ArgumentError("bessel_k_imag: |nu| must not exceed 200");
    if (!(y > 0.0)) throw ArgumentError("bessel_k_imag: argument must be positive");
    return cosine_transform_row([y](double t) { return std::exp(-y * std::cosh(t)); }, y, {nu})[0];
}

std::vector<double> cosine_transform_row(const std::function<double(double)>& w, double decay_y,
                                         const std::vector<double>& mu, double rel_tol) {
    const std::size_t m = mu.size();
    std::vector<double> sum(m, 0.0), est(m, 0.0);
    double mu_max = 0.0;
    for (double v : mu) mu_max = std::max(mu_max, std::abs(v));
    if (!(decay_y > 0.0)) throw ArgumentError("cosine_transform_row: decay must be positive");
    if (decay_y >= kUnderflowExponent) return est;
    const double t_max = truncation_point(decay_y);

    int intervals = 64;
    double h = t_max / intervals;
    double abs_sum = 0.0;
    auto add = [&](double t, double weight) {
        const double wt = weight * w(t);
        abs_sum += std::abs(wt);
        for (std::size_t j = 0; j < m; ++j) sum[j] += wt * std::cos(mu[j] * t);
    };
    add(0.0, 0.5);
    add(t_max, 0.5);
    for (int k = 1; k < intervals; ++k) add(k * h, 1.0);
    for (std::size_t j = 0; j < m; ++j) est[j] = h * sum[j];

    for (int r = 0; r < kMaxRefinements; ++r) {
        for (int k = 0; k < intervals; ++k) add((k + 0.5) * h, 1.0);
        intervals *= 2;
        h *= 0.5;
        double change = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double next = h * sum[j];
            change = std::max(change, std::abs(next - est[j]));
            est[j] = next;
        }
        // Accept only once the fastest cosine is sampled several times per radian.
        const bool resolved = h * mu_max < 1.0;
        if (r >= 2 && resolved && change <= rel_tol * h * abs_sum) return est;
    }
    throw NumericalError("cosine_transform_row: quadrature did not converge");
}

void validate(const MorseModel& m) {
    if (!(m.a > 0.0 && m.b > 0.0 && m.s > 0.0)) throw ArgumentError("morse: a, b, s must be positive");
}

int morse_n_bound(const MorseModel& m) {
    validate(m);
    return static_cast<int>(std::ceil(m.a / m.s)) - 1;
}

double morse_energy(const MorseModel& m, int n) {
    if (n < 0 || n > morse_n_bound(m)) {
        throw ArgumentError("morse_energy: level " + std::to_string(n) + " is not bound (n_bound = " +
                            std::to_string(morse_n_bound(m)) + ")");
    }
    const double an = m.a - n * m.s;
    return m.a * m.a - an * an;
}

double morse_reference_c1(const MorseModel& m) {
    validate(m);
    return 2.0 / (std::numbers::pi * m.s) * std::pow(2.0 * m.b / m.a, 2.0 * m.a / m.s);
}

namespace {

// Fills a field that is even in p from per-row cosine transforms over p ≥ 0.
SymbolField even_in_p(const PhaseGrid& grid, const std::function<std::vector<double>(int, const std::vector<double>&)>& row) {
    const int n = grid.n();
    std::vector<double> mu_p;
    for (int j = n / 2; j < n; ++j) mu_p.push_back(grid.p(j));
    mu_p.push_back(-grid.p(0));  // |p_0| = n/2·dp
    std::vector<cplx> values(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const std::vector<double> r = row(i, mu_p);
        for (int j = 0; j < n; ++j) {
            const int k = j >= n / 2 ? j - n / 2 : (j == 0 ? n / 2 : n / 2 - j);
            values[static_cast<std::size_t>(i) * n + j] = r[k];
        }
    }
    return {grid, std::move(values)};
}

}  // namespace

MorseGroundState morse_p0(const MorseModel& m, const PhaseGrid& grid) {
    validate(m);
    const double h = grid.hbar();
    SymbolField shape = even_in_p(grid, [&](int i, const std::vector<double>& p) {
        const double x = grid.x(i);
        const double y = 2.0 * m.b / (m.s * h) * std::exp(-m.s * x);
        std::vector<double> mu(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) mu[k] = 2.0 * p[k] / (m.s * h);
        const double lead = -2.0 * m.a * x / h;
        return cosine_transform_row([=](double t) { return std::exp(lead - y * std::cosh(t)); }, y, mu);
    });
    const double integral = integrate2d(shape).real();
    if (!(integral > 0.0)) throw NumericalError("morse_p0: shape has non-positive integral");
    const double c = 1.0 / integral;
    const double reference = morse_reference_c1(m);
    return {c * shape, c, reference, c / reference};
}

MorseFirstExcited morse_p1(const MorseModel& m, const PhaseGrid& grid) {
    validate(m);
    if (!(m.a - m.s > 0.0)) throw ArgumentError("morse_p1: requires a − s > 0");
    if (grid.hbar() != 1.0) throw ArgumentError("morse_p1: the closed form is stated for hbar = 1");
    const double a = m.a, b = m.b, s = m.s;
    const double common = std::pow(b / (a - s), -2.0 + 2.0 * a / s);
    SymbolField raw = even_in_p(grid, [&](int i, const std::vector<double>& p) {
        const double x = grid.x(i);
        const double y = 2.0 * b / s * std::exp(-s * x);
        // α(x) = 2^{2a/s} e^{−2ax} c [4b² + e^{2sx}(2a−s)²] / (2π(2a−s)s²)
        // β(x) = 4^{a/s} b e^{(s−2a)x} c / (πs²); K_{ν−1} + K_{ν+1} = 2∫e^{−y cosh t} cosh t cos(μt) dt
        const double alpha_log = (2.0 * a / s) * std::log(2.0) - 2.0 * a * x;
        const double alpha_rest = common * (4.0 * b * b + std::exp(2.0 * s * x) * (2.0 * a - s) * (2.0 * a - s)) /
                                  (2.0 * std::numbers::pi * (2.0 * a - s) * s * s);
        const double beta_log = (a / s) * std::log(4.0) + (s - 2.0 * a) * x;
        const double beta_rest = b * common / (std::numbers::pi * s * s);
        std::vector<double> mu(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) mu[k] = 2.0 * p[k] / s;
        return cosine_transform_row(
            [=](double t) {
                const double ct = std::cosh(t);
                return alpha_rest * std::exp(alpha_log - y * ct) - 2.0 * beta_rest * ct * std::exp(beta_log - y * ct);
            },
            y, mu);
    });
    const double integral = integrate2d(raw).real();
    if (integral == 0.0) throw NumericalError("morse_p1: closed form integrates to zero");
    return {(1.0 / integral) * raw, integral};
}

}  // namespace mf
