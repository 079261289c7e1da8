#include "mf/susy_ladder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mf/errors.hpp"

namespace mf {

namespace {

void require_domain(const ShapeInvariantModel& m, const Params& a) {
    if (m.in_domain && !m.in_domain(a)) throw ArgumentError(m.name + ": parameters outside the model domain");
}

void require_grid_hbar(const ShapeInvariantModel& m, const PhaseGrid& g) {
    if (g.hbar() != m.hbar) throw ArgumentError(m.name + ": grid hbar differs from the model's hbar");
}

SymbolField normalized_real(const KernelMatrix& k, const char* op) {
    SymbolField r = kernel_to_symbol(k);
    const double bm = boundary_mass(r);
    if (bm > 1e-6) throw BoundaryMassError(std::string(op) + ": result leaks to the grid frame", bm);
    if (!r.real_valued(1e-9)) {
        std::ostringstream msg;
        msg << op << ": result is not real (max|Im| = " << r.max_abs_imag() << ")";
        throw NumericalError(msg.str());
    }
    const double norm = integrate2d(r).real();
    if (norm == 0.0) throw NumericalError(std::string(op) + ": result integrates to zero");
    return (1.0 / norm) * r.real_part();
}

}  // namespace

Params ShapeInvariantModel::orbit(int k) const {
    Params a = a0;
    for (int i = 0; i < k; ++i) a = f(a);
    return a;
}

ShapeInvariantModel make_sho_model(double omega, double hbar, int n_bound) {
    if (!(omega > 0.0) || !(hbar > 0.0)) throw ArgumentError("sho: omega and hbar must be positive");
    ShapeInvariantModel m;
    m.name = "sho";
    m.sp.w = [](double x, const Params& a) { return 0.5 * a[0] * x; };
    m.sp.w_prime = [](double, const Params& a) { return 0.5 * a[0]; };
    m.sp.param_names = {"omega"};
    m.hbar = hbar;
    m.a0 = {omega};
    m.f = [](const Params& a) { return a; };
    m.remainder = [hbar](const Params& a) { return hbar * a[0]; };
    m.in_domain = [](const Params& a) { return a.size() == 1 && a[0] > 0.0; };
    m.n_bound = n_bound;
    return m;
}

ShapeInvariantModel make_morse_model(double a, double b, double s, double hbar) {
    if (!(a > 0.0 && b > 0.0 && s > 0.0 && hbar > 0.0)) throw ArgumentError("morse: a, b, s, hbar must be positive");
    ShapeInvariantModel m;
    m.name = "morse";
    m.sp.w = [](double x, const Params& q) { return q[0] - q[1] * std::exp(-q[2] * x); };
    m.sp.w_prime = [](double x, const Params& q) { return q[1] * q[2] * std::exp(-q[2] * x); };
    m.sp.param_names = {"a", "b", "s"};
    m.hbar = hbar;
    m.a0 = {a, b, s};
    m.f = [hbar](const Params& q) { return Params{q[0] - hbar * q[2], q[1], q[2]}; };
    m.g = [](const Params& q) { return -q[0] * q[0]; };
    m.remainder = [g = m.g, f = m.f](const Params& q) { return g(f(q)) - g(q); };
    m.in_domain = [](const Params& q) { return q.size() == 3 && q[0] > 0.0 && q[1] > 0.0 && q[2] > 0.0; };
    m.n_bound = static_cast<int>(std::ceil(a / (hbar * s))) - 1;
    return m;
}

ShapeInvariantModel make_custom_model(std::string name, Superpotential sp, Params a0, double hbar) {
    if (!(hbar > 0.0)) throw ArgumentError("custom model: hbar must be positive");
    ShapeInvariantModel m;
    m.name = std::move(name);
    m.sp = std::move(sp);
    m.hbar = hbar;
    m.a0 = std::move(a0);
    m.f = [](const Params& a) { return a; };
    m.n_bound = 0;
    return m;
}

const std::map<std::string, std::vector<ParamSpec>>& model_registry() {
    static const std::map<std::string, std::vector<ParamSpec>> registry{
        {"sho", {{"omega", 2.0}}},
        {"morse", {{"a", 5.0}, {"b", 1.0}, {"s", 1.0}}},
    };
    return registry;
}

ShapeInvariantModel make_registered_model(const std::string& name, const std::map<std::string, double>& params,
                                          double hbar) {
    const auto& reg = model_registry();
    const auto it = reg.find(name);
    if (it == reg.end()) throw ArgumentError("unknown model '" + name + "'");
    std::map<std::string, double> values;
    for (const auto& spec : it->second) values[spec.name] = spec.default_value;
    for (const auto& [k, v] : params) {
        if (!values.count(k)) throw ArgumentError("model '" + name + "' has no parameter '" + k + "'");
        values[k] = v;
    }
    if (name == "sho") return make_sho_model(values["omega"], hbar);
    return make_morse_model(values["a"], values["b"], values["s"], hbar);
}

PartnerPotentials partner_potentials(const ShapeInvariantModel& model, const Params& a) {
    require_domain(model, a);
    const double hbar = model.hbar;
    const auto w = model.sp.w;
    const auto wp = model.sp.w_prime;
    return {[=](double x) { const double v = w(x, a); return v * v - hbar * wp(x, a); },
            [=](double x) { const double v = w(x, a); return v * v + hbar * wp(x, a); }};
}

SymbolField partner_hamiltonian(const ShapeInvariantModel& model, const Params& a, const PhaseGrid& grid,
                                Sector sector) {
    require_grid_hbar(model, grid);
    const PartnerPotentials v = partner_potentials(model, a);
    const auto& pot = sector == Sector::Minus ? v.v_minus : v.v_plus;
    std::vector<double> vx(grid.n());
    for (int i = 0; i < grid.n(); ++i) vx[i] = pot(grid.x(i));
    const int n = grid.n();
    std::vector<cplx> values(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) values[static_cast<std::size_t>(i) * n + j] = grid.p(j) * grid.p(j) + vx[i];
    return {grid, std::move(values)};
}

LadderSymbols ladder_symbols(const ShapeInvariantModel& model, const Params& a, const PhaseGrid& grid) {
    require_domain(model, a);
    require_grid_hbar(model, grid);
    const int n = grid.n();
    std::vector<cplx> values(static_cast<std::size_t>(n) * n);
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        w[i] = model.sp.w(grid.x(i), a);
        // The p = −p_nyq row stands for both ±p_nyq; the odd part i·p averages to zero there.
        values[static_cast<std::size_t>(i) * n] = w[i];
        for (int j = 1; j < n; ++j) values[static_cast<std::size_t>(i) * n + j] = cplx(w[i], grid.p(j));
    }
    // Lattice operator W + ℏ∂ₓ with the periodic spectral derivative (Nyquist mode dropped).
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
    const double c = std::numbers::pi / grid.length();
    for (int r = 0; r < n; ++r) {
        k(r, r) = w[r];
        for (int q = 0; q < n; ++q) {
            if (q == r) continue;
            const int d = r - q;
            const double sign = (d % 2 == 0) ? 1.0 : -1.0;
            k(r, q) = grid.hbar() * c * sign / std::tan(std::numbers::pi * d / n);
        }
    }
    k /= grid.dx();
    SymbolField sa(grid, std::move(values), std::make_shared<const KernelMatrix>(grid, std::move(k)));
    SymbolField sd = sa.conj();
    return {std::move(sa), std::move(sd)};
}

double si_energy_at(const ShapeInvariantModel& model, const Params& a, int n) {
    if (!model.shape_invariant()) throw ArgumentError(model.name + ": model has no shape-invariance data");
    if (n < 0 || n > model.n_bound) {
        throw ArgumentError(model.name + ": level " + std::to_string(n) + " outside [0, " +
                            std::to_string(model.n_bound) + "]");
    }
    double e = 0.0;
    Params cur = a;
    for (int k = 0; k < n; ++k) {
        require_domain(model, cur);
        e += model.remainder(cur);
        cur = model.f(cur);
    }
    return e;
}

double si_energy(const ShapeInvariantModel& model, int n) { return si_energy_at(model, model.a0, n); }

double shape_invariance_residual(const ShapeInvariantModel& model, const std::vector<double>& xs) {
    if (!model.shape_invariant()) throw ArgumentError(model.name + ": model has no shape-invariance data");
    double worst = 0.0;
    Params a = model.a0;
    for (int k = 0; k <= model.n_bound; ++k) {
        const Params next = model.f(a);
        if (model.in_domain && !model.in_domain(next)) break;
        const PartnerPotentials here = partner_potentials(model, a);
        const PartnerPotentials there = partner_potentials(model, next);
        const double r = model.remainder(a);
        double scale = 0.0, diff = 0.0;
        for (double x : xs) {
            const double vp = here.v_plus(x);
            scale = std::max(scale, std::abs(vp));
            diff = std::max(diff, std::abs(vp - there.v_minus(x) - r));
        }
        if (scale > 0.0) worst = std::max(worst, diff / scale);
        a = next;
    }
    return worst;
}

Wavefunction ground_state_wavefunction(const ShapeInvariantModel& model, const Params& a, const PhaseGrid& grid) {
    require_domain(model, a);
    require_grid_hbar(model, grid);
    const int n = grid.n();
    const double dx = grid.dx();
    std::vector<double> phi(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        const double x = grid.x(i);
        phi[i + 1] = phi[i] + dx / 6.0 * (model.sp.w(x, a) + 4.0 * model.sp.w(x + 0.5 * dx, a) + model.sp.w(x + dx, a));
    }
    double top = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) top = std::max(top, -phi[i] / grid.hbar());
    Eigen::VectorXcd psi(n);
    for (int i = 0; i < n; ++i) psi[i] = std::exp(-phi[i] / grid.hbar() - top);
    Wavefunction w(grid, std::move(psi));
    const double bm = w.boundary_mass();
    if (bm > 1e-8) {
        throw BoundaryMassError(model.name + ": ground state is not normalizable on the grid (unbroken SUSY violated)",
                                bm);
    }
    return w.normalized();
}

double annihilation_residual(const ShapeInvariantModel& model, const Params& a, const SymbolField& p) {
    const LadderSymbols l = ladder_symbols(model, a, p.grid());
    const SymbolField ap = kernel_star(l.a, p);
    return sup_norm(ap, true) / sup_norm(p);
}

SymbolField ground_wigner(const ShapeInvariantModel& model, const Params& a, const PhaseGrid& grid, double tol) {
    const SymbolField p0 = wigner_from_wavefunction(ground_state_wavefunction(model, a, grid));
    const double r = annihilation_residual(model, a, p0);
    if (r > tol) {
        std::ostringstream msg;
        msg << model.name << ": annihilation residual " << r << " exceeds " << tol;
        throw NumericalError(msg.str());
    }
    return p0;
}

namespace {

double positive_energy(const ShapeInvariantModel& model, const Params& a, int n) {
    const double e = si_energy_at(model, a, n);
    if (!(e > 0.0)) {
        std::ostringstream msg;
        msg << "ladder_step: E_" << n << " = " << e << " is not positive";
        throw ArgumentError(msg.str());
    }
    return e;
}

/// Hermitian part of a kernel; A†KA and AKA† are Hermitian for Hermitian K.
Eigen::MatrixXcd hermitian(const Eigen::MatrixXcd& k) { return 0.5 * (k + k.adjoint()); }

/// A level of the ladder with its kernel kept as K = U·diag(w)·U†.
///
/// Composing A†KA on a dense K turns rounding noise into full-rank white noise,
/// which every later step multiplies by about p_max²/E_n. On the factor, A† acts
/// on U alone and the noise grows only like p_max/√E_n per step.
struct FactoredLevel {
    SymbolField field;
    Eigen::MatrixXcd u;
    Eigen::VectorXd w;
};

FactoredLevel assemble(Eigen::MatrixXcd u, Eigen::VectorXd w, const PhaseGrid& g, const char* op) {
    const Eigen::MatrixXcd k = u * w.asDiagonal() * u.adjoint();
    const double norm = integrate2d(kernel_to_symbol(KernelMatrix(g, hermitian(k)))).real();
    if (norm == 0.0) throw NumericalError(std::string(op) + ": result integrates to zero");
    w /= norm;
    SymbolField f = normalized_real(KernelMatrix(g, hermitian(u * w.asDiagonal() * u.adjoint())), op);
    return {std::move(f), std::move(u), std::move(w)};
}

FactoredLevel factored_step(const FactoredLevel& prev, const ShapeInvariantModel& model, const Params& a, int n,
                            const PhaseGrid& g) {
    const double e = positive_energy(model, a, n);
    const Eigen::MatrixXcd& ka = symbol_to_kernel(ladder_symbols(model, a, g).a).entries;
    // Operator A† acts as K_A†·dx.
    Eigen::MatrixXcd u = ka.adjoint() * prev.u * g.dx();
    return assemble(std::move(u), prev.w / e, g, "ladder_step");
}

FactoredLevel factored_ground(const ShapeInvariantModel& model, const Params& a, const PhaseGrid& g) {
    const Wavefunction psi = ground_state_wavefunction(model, a, g);
    SymbolField p0 = ground_wigner(model, a, g);
    Eigen::VectorXd w(1);
    w[0] = 1.0 / (2.0 * std::numbers::pi * g.hbar());
    return {std::move(p0), psi.values(), std::move(w)};
}

}  // namespace

SymbolField ladder_step(const SymbolField& p_prev, const ShapeInvariantModel& model, const Params& a, int n) {
    const double e = positive_energy(model, a, n);
    const PhaseGrid& g = p_prev.grid();
    const Eigen::MatrixXcd& ka = symbol_to_kernel(ladder_symbols(model, a, g).a).entries;
    const KernelMatrix kp = symbol_to_kernel(p_prev);
    const Eigen::MatrixXcd k = ka.adjoint() * kp.entries * ka * (g.dx() * g.dx() / e);
    return normalized_real(KernelMatrix(g, hermitian(k)), "ladder_step");
}

WignerSequence build_wigner_sequence(const ShapeInvariantModel& model, const PhaseGrid& grid, int n_max,
                                     const SequenceTolerances& tol) {
    if (n_max < 0 || n_max > model.n_bound) {
        throw ArgumentError("build_wigner_sequence: n_max must be in [0, " + std::to_string(model.n_bound) + "]");
    }
    require_grid_hbar(model, grid);
    // P_m at parameter a, reused when the orbit revisits a parameter (f = identity).
    std::map<std::pair<int, Params>, FactoredLevel> memo;
    auto level = [&](auto&& self, int m, int k) -> const FactoredLevel& {
        const Params a = model.orbit(k);
        const auto key = std::make_pair(m, a);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        FactoredLevel l = m == 0 ? factored_ground(model, a, grid) : factored_step(self(self, m - 1, k + 1), model, a, m, grid);
        return memo.emplace(key, std::move(l)).first->second;
    };

    WignerSequence seq;
    const SymbolField h = partner_hamiltonian(model, model.a0, grid, Sector::Minus);
    for (int n = 0; n <= n_max; ++n) {
        seq.fields.push_back(level(level, n, 0).field);
        seq.energies.push_back(si_energy(model, n));
        const double r = star_eigen_residual(h, seq.fields.back(), seq.energies.back(), StarMethod::kernel());
        seq.residuals.push_back(r);
        if (r > tol.residual) {
            std::ostringstream msg;
            msg << "build_wigner_sequence: star-eigen residual of P_" << n << " is " << r;
            throw NumericalError(msg.str());
        }
    }
    seq.overlaps.resize(n_max + 1, n_max + 1);
    for (int i = 0; i <= n_max; ++i) {
        for (int j = 0; j <= n_max; ++j) {
            const double o = overlap(seq.fields[i], seq.fields[j]);
            seq.overlaps(i, j) = o;
            if (std::abs(o - (i == j ? 1.0 : 0.0)) > tol.overlap) {
                std::ostringstream msg;
                msg << "build_wigner_sequence: overlap(P_" << i << ", P_" << j << ") = " << o;
                throw NumericalError(msg.str());
            }
        }
    }
    return seq;
}

SymbolField partner_wigner_map(const SymbolField& p, const ShapeInvariantModel& model, const Params& a,
                               Direction direction, double e) {
    if (!(e > 0.0)) throw ArgumentError("partner_wigner_map: energy must be positive");
    const PhaseGrid& g = p.grid();
    const LadderSymbols l = ladder_symbols(model, a, g);
    const Eigen::MatrixXcd& ka = symbol_to_kernel(l.a).entries;
    const KernelMatrix kp = symbol_to_kernel(p);
    const double scale = g.dx() * g.dx() / e;
    const Eigen::MatrixXcd k = direction == Direction::Down ? Eigen::MatrixXcd(ka * kp.entries * ka.adjoint() * scale)
                                                            : Eigen::MatrixXcd(ka.adjoint() * kp.entries * ka * scale);
    return normalized_real(KernelMatrix(g, hermitian(k)), "partner_wigner_map");
}

}  // namespace mf
