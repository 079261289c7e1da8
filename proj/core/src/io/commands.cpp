#include "mf/io/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mf/errors.hpp"
#include "mf/io/expression.hpp"
#include "mf/io/field_io.hpp"
#include "mf/poly_symbol.hpp"
#include "mf/spectra_oracle.hpp"
#include "mf/susy_ladder.hpp"

namespace mf::io {

namespace {

using nlohmann::json;

json grid_json(const PhaseGrid& g) {
    return {{"n_x", g.n()}, {"x_min", g.x_min()}, {"x_max", g.x_max()}, {"hbar", g.hbar()}};
}

json config_json(const RunConfig& c) {
    const GridSpec g = resolved_grid(c);
    json j{{"model", c.model},
           {"params", c.params},
           {"grid", {{"n_x", g.n_x}, {"x_min", g.x_min}, {"x_max", g.x_max}, {"hbar", g.hbar}}},
           {"backend", c.backend.name()},
           {"n_max", c.n_max},
           {"tolerance", c.tolerance}};
    if (c.model == "custom") j["w"] = c.superpotential;
    return j;
}

PhaseGrid grid_of(const RunConfig& c) {
    const GridSpec g = resolved_grid(c);
    return make_grid(g.n_x, g.x_min, g.x_max, g.hbar);
}

std::filesystem::path prepare_out(const RunConfig& c) {
    std::error_code ec;
    std::filesystem::create_directories(c.out_dir, ec);
    if (ec) throw ArgumentError("cannot create output directory '" + c.out_dir.string() + "': " + ec.message());
    return c.out_dir;
}

void finish(CommandResult& r, const RunConfig& c, const char* name, const json& report) {
    r.report = report.dump(2);
    const auto path = prepare_out(c) / name;
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write '" + path.string() + "'");
    out << r.report << '\n';
    r.files.insert(r.files.begin(), path);
}

/// Maps library exceptions onto the exit-code contract.
CommandResult guarded(const std::function<CommandResult()>& body) {
    try {
        return body();
    } catch (const ArgumentError& e) {
        return {kExitUsage, {}, {}, e.what()};
    } catch (const NumericalError& e) {
        return {kExitTolerance, {}, {}, e.what()};
    }
}

std::vector<std::filesystem::path> write_field(const SymbolField& f, const RunConfig& c, const std::string& stem) {
    const auto dir = prepare_out(c);
    std::vector<std::filesystem::path> files;
    for (Format fmt : c.formats) {
        std::filesystem::path p = dir / stem;
        switch (fmt) {
            case Format::Csv: p += ".csv"; write_csv(f, p); break;
            case Format::Json: p += ".json"; write_json(f, p); break;
            case Format::Bin: p += ".bin"; write_binary(f, p); break;
        }
        files.push_back(p);
    }
    return files;
}

json poly_json(const PolySymbol& a) {
    json terms = json::array();
    for (const auto& [m, c] : a.terms()) {
        terms.push_back({{"x", m.x}, {"p", m.p}, {"hbar", m.h}, {"re", c.real()}, {"im", c.imag()}});
    }
    return {{"text", a.to_string()}, {"terms", terms}};
}

PolySymbol random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PolySymbol a;
    for (int dx = 0; dx <= degree; ++dx)
        for (int dp = 0; dx + dp <= degree; ++dp) a.add_term({dx, dp, 0}, cplx(u(rng), u(rng)));
    return a;
}

struct Battery {
    json items = json::array();
    bool ok = true;

    void record(const std::string& name, double value, double threshold, json extra = json::object()) {
        const bool pass = std::isfinite(value) && value <= threshold;
        json item{{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", pass}};
        item.update(extra);
        items.push_back(std::move(item));
        ok = ok && pass;
    }
    void failure(const std::string& name, const std::string& why) {
        items.push_back({{"name", name}, {"pass", false}, {"error", why}});
        ok = false;
    }
    /// Runs a check; any library error becomes a recorded failure.
    void run(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            failure(name, e.what());
        }
    }
};

}  // namespace

CommandResult cmd_spectrum(const RunConfig& c) {
    return guarded([&] {
        validate(c);
        const PhaseGrid grid = grid_of(c);
        const ShapeInvariantModel model = build_model(c);
        const bool si = model.shape_invariant();
        if (si && c.n_max > model.n_bound) {
            throw ArgumentError("n_max = " + std::to_string(c.n_max) + " exceeds the model's n_bound = " +
                                std::to_string(model.n_bound));
        }
        const auto v = partner_potentials(model, model.a0).v_minus;
        const SpectrumResult spec = eigensolve_lowest(discretize_hamiltonian(v, grid), c.n_max + 1);

        CommandResult r;
        json rows = json::array();
        bool ok = true;
        for (int n = 0; n <= c.n_max; ++n) {
            const double eo = spec.energies[n];
            json row{{"n", n}, {"E_oracle", eo}, {"oracle_residual", spec.residuals[n]},
                     {"boundary_mass", spec.wavefunctions[n].boundary_mass()}};
            if (si) {
                const double es = si_energy(model, n);
                // Relative to max(|E|, 1) so the E_0 = 0 row is an absolute comparison.
                const double rel = std::abs(eo - es) / std::max(std::abs(es), 1.0);
                row["E_shape_invariance"] = es;
                row["rel_error"] = rel;
                ok = ok && rel <= c.tolerance;
            } else {
                row["E_shape_invariance"] = nullptr;
                row["rel_error"] = nullptr;
            }
            rows.push_back(std::move(row));
        }
        r.exit_code = ok ? kExitOk : kExitTolerance;
        r.message = ok ? "spectrum agrees with the oracle" : "spectrum: oracle disagreement above tolerance";
        finish(r, c, "spectrum.json", {{"config", config_json(c)}, {"levels", rows}, {"pass", ok}});
        return r;
    });
}

CommandResult cmd_wigner(const RunConfig& c) {
    return guarded([&] {
        validate(c);
        const PhaseGrid grid = grid_of(c);
        const ShapeInvariantModel model = build_model(c);
        CommandResult r;
        std::vector<SymbolField> fields;
        std::vector<double> energies, residuals;
        if (model.shape_invariant()) {
            SequenceTolerances tol;
            tol.residual = c.tolerance;
            const WignerSequence seq = build_wigner_sequence(model, grid, c.n_max, tol);
            fields = seq.fields;
            energies = seq.energies;
            residuals = seq.residuals;
        } else {
            if (c.n_max != 0) throw ArgumentError("custom models only support n_max = 0 (no shape-invariance data)");
            fields.push_back(ground_wigner(model, model.a0, grid, c.tolerance));
            energies.push_back(0.0);
            residuals.push_back(annihilation_residual(model, model.a0, fields.back()));
        }
        json levels = json::array();
        for (std::size_t n = 0; n < fields.size(); ++n) {
            const SymbolField& f = fields[n];
            const auto files = write_field(f, c, "P_" + std::to_string(n));
            json names = json::array();
            for (const auto& p : files) names.push_back(p.filename().string());
            r.files.insert(r.files.end(), files.begin(), files.end());
            double lo = 0.0;
            for (const cplx& v : f.values()) lo = std::min(lo, v.real());
            levels.push_back({{"n", n},
                              {"energy", energies[n]},
                              {"residual", residuals[n]},
                              {"normalization", integrate2d(f).real()},
                              {"boundary_mass", boundary_mass(f)},
                              {"min_value", lo},
                              {"files", names}});
        }
        r.message = "wrote " + std::to_string(fields.size()) + " Wigner function(s)";
        finish(r, c, "manifest.json",
               {{"config", config_json(c)}, {"grid", grid_json(grid)}, {"levels", levels}, {"pass", true}});
        return r;
    });
}

CommandResult cmd_verify(const RunConfig& c) {
    return guarded([&] {
        validate(c);
        const PhaseGrid grid = grid_of(c);
        const ShapeInvariantModel model = build_model(c);
        const double hbar = grid.hbar();
        Battery b;

        // Symbolic identities (graded in ℏ, independent of the grid).
        const PolySymbol x = PolySymbol::x(), p = PolySymbol::p(), h = PolySymbol::hbar();
        const cplx i(0.0, 1.0);
        b.run("canonical_bracket", [&] {
            b.record("canonical_bracket", relative_coefficient_diff(poly_moyal_bracket(x, p), i * h), 0.0);
        });
        b.run("groenewold_anomaly", [&] {
            const PolySymbol x3 = x * x * x, p3 = p * p * p;
            const PolySymbol lhs = (poly_moyal_bracket(x3, p3) + cplx(3.0) * poly_moyal_bracket(x * p * p, x * x * p));
            const PolySymbol anomaly = (-i) * lhs.divide_by_hbar();
            const PolySymbol classical = poly_poisson_bracket(x3, p3) + cplx(3.0) * poly_poisson_bracket(x * p * p, x * x * p);
            b.record("groenewold_anomaly", relative_coefficient_diff(anomaly, cplx(-3.0) * h * h), 0.0,
                     {{"anomaly", poly_json(anomaly)}, {"anomaly_at_hbar", anomaly.at_hbar(hbar).coeff(0, 0).real()}});
            b.record("groenewold_poisson", classical.is_zero() ? 0.0 : 1.0, 0.0);
        });
        b.run("polynomial_identities", [&] {
            std::mt19937_64 rng(20240601);
            double assoc = 0.0, herm = 0.0, jacobi = 0.0, leibniz = 0.0;
            for (int t = 0; t < 10; ++t) {
                const PolySymbol a = random_poly(rng, 4), bb = random_poly(rng, 4), cc = random_poly(rng, 4);
                assoc = std::max(assoc, relative_coefficient_diff(poly_star(poly_star(a, bb), cc),
                                                                  poly_star(a, poly_star(bb, cc))));
                herm = std::max(herm, relative_coefficient_diff(poly_star(a, bb).conj(), poly_star(bb.conj(), a.conj())));
                const PolySymbol jac = poly_moyal_bracket(a, poly_moyal_bracket(bb, cc)) +
                                       poly_moyal_bracket(bb, poly_moyal_bracket(cc, a)) +
                                       poly_moyal_bracket(cc, poly_moyal_bracket(a, bb));
                const PolySymbol scale = poly_moyal_bracket(a, poly_moyal_bracket(bb, cc));
                jacobi = std::max(jacobi, relative_coefficient_diff(jac + scale, scale));
                leibniz = std::max(leibniz, relative_coefficient_diff(
                                                poly_moyal_bracket(a, poly_star(bb, cc)),
                                                poly_star(poly_moyal_bracket(a, bb), cc) +
                                                    poly_star(bb, poly_moyal_bracket(a, cc))));
            }
            b.record("associativity", assoc, 1e-12);
            b.record("hermiticity", herm, 1e-12);
            b.record("jacobi", jacobi, 1e-12);
            b.record("leibniz", leibniz, 1e-12);
        });

        // Model and grid dependent checks.
        std::vector<double> xs;
        for (int k = 0; k < grid.n(); ++k) xs.push_back(grid.x(k));
        if (model.shape_invariant()) {
            b.run("shape_invariance", [&] { b.record("shape_invariance", shape_invariance_residual(model, xs), 1e-8); });
        }
        b.run("factorization", [&] {
            // Plain samples of ip + W: ladder_symbols alters the Nyquist row to match its kernel.
            const SymbolField a = sample_symbol(grid, [&](double x, double p) {
                return cplx(model.sp.w(x, model.a0), p);
            });
            const SymbolField hm = partner_hamiltonian(model, model.a0, grid, Sector::Minus);
            const SymbolField prod = series_star(a.conj(), a, 2);
            b.record("factorization", sup_diff(prod, hm, true) / sup_norm(hm, true), 1e-8);
        });

        int levels = c.n_max;
        if (model.shape_invariant()) levels = std::min(levels, model.n_bound);
        else levels = 0;
        levels = std::min(levels, grid.n() / 4 - 1);
        std::vector<SymbolField> fields;
        b.run("wigner_sequence", [&] {
            if (levels < 0) throw ArgumentError("grid too small for any level");
            if (model.shape_invariant()) {
                SequenceTolerances loose{1e300, 1e300};  // checked individually below
                fields = build_wigner_sequence(model, grid, levels, loose).fields;
            } else {
                fields.push_back(ground_wigner(model, model.a0, grid, 1e300));
            }
        });
        if (!fields.empty()) {
            const SymbolField hm = partner_hamiltonian(model, model.a0, grid, Sector::Minus);
            json residuals = json::array();
            for (std::size_t n = 0; n < fields.size(); ++n) {
                const std::string tag = "P_" + std::to_string(n);
                const SymbolField& f = fields[n];
                b.record(tag + ".boundary_mass", boundary_mass(f), 1e-6);
                b.record(tag + ".normalization", std::abs(integrate2d(f).real() - 1.0), 1e-8);
                b.run(tag + ".star_eigen_residual", [&] {
                    const double e = model.shape_invariant() ? si_energy(model, static_cast<int>(n)) : 0.0;
                    b.record(tag + ".star_eigen_residual", star_eigen_residual(hm, f, e, StarMethod::kernel()),
                             c.tolerance, {{"energy", e}});
                });
                b.run(tag + ".marginals", [&] {
                    const Marginals m = marginals(f);
                    double lo = 0.0;
                    for (double v : m.x) lo = std::min(lo, v);
                    for (double v : m.p) lo = std::min(lo, v);
                    b.record(tag + ".marginal_negativity", -lo, 1e-6);
                });
                b.run(tag + ".idempotence", [&] {
                    const SymbolField sq = kernel_star(f, f);
                    const SymbolField target = cplx(1.0 / (2.0 * M_PI * hbar)) * f;
                    b.record(tag + ".idempotence", sup_diff(sq, target) / sup_norm(target), 1e-6);
                });
            }
            b.run("orthogonality", [&] {
                double worst = 0.0;
                for (std::size_t m = 0; m < fields.size(); ++m)
                    for (std::size_t n = 0; n < fields.size(); ++n)
                        worst = std::max(worst, std::abs(overlap(fields[m], fields[n]) - (m == n ? 1.0 : 0.0)));
                b.record("orthogonality", worst, 1e-6);
            });
            if (fields.size() >= 2) {
                b.run("trace_cyclicity", [&] {
                    const SymbolField& pa = fields[0];
                    const SymbolField& pb = fields[1];
                    const cplx ab = integrate2d(kernel_star(pa, pb));
                    const cplx ba = integrate2d(kernel_star(pb, pa));
                    b.record("trace_cyclicity", std::abs(ab - ba) / std::max(std::abs(integrate2d(pa)), 1e-300), 1e-8);
                });
            }
        }
        b.run("isospectrality", [&] {
            const int count = std::min(levels + 2, grid.n() / 4);
            if (count < 2) throw ArgumentError("grid too small for the isospectrality check");
            const PartnerPotentials v = partner_potentials(model, model.a0);
            const SpectrumResult sm = eigensolve_lowest(discretize_hamiltonian(v.v_minus, grid), count);
            const SpectrumResult sp = eigensolve_lowest(discretize_hamiltonian(v.v_plus, grid), count - 1);
            double worst = 0.0;
            for (int n = 0; n + 1 < count; ++n) {
                worst = std::max(worst, std::abs(sm.energies[n + 1] - sp.energies[n]) /
                                            std::max(std::abs(sm.energies[n + 1]), 1.0));
            }
            b.record("isospectrality", worst, 1e-4);
        });

        CommandResult r;
        r.exit_code = b.ok ? kExitOk : kExitTolerance;
        r.message = b.ok ? "all properties pass" : "some properties failed";
        finish(r, c, "verify.json", {{"config", config_json(c)}, {"properties", b.items}, {"pass", b.ok}});
        return r;
    });
}

CommandResult cmd_star(const RunConfig& c) {
    return guarded([&] {
        if (c.lhs.empty() || c.rhs.empty()) throw ArgumentError("star needs two expressions");
        const Expression a = Expression::parse(c.lhs, c.params);
        const Expression bexpr = Expression::parse(c.rhs, c.params);
        CommandResult r;
        json report{{"lhs", c.lhs}, {"rhs", c.rhs}};
        if (a.is_polynomial() && bexpr.is_polynomial()) {
            const PolySymbol pa = a.to_poly(), pb = bexpr.to_poly();
            report["backend"] = StarMethod::exact_poly().name();
            report["lhs_star_rhs"] = poly_json(poly_star(pa, pb));
            report["rhs_star_lhs"] = poly_json(poly_star(pb, pa));
            report["bracket"] = poly_json(poly_moyal_bracket(pa, pb));
            r.message = "lhs * rhs = " + poly_star(pa, pb).to_string();
        } else {
            validate(c);
            const PhaseGrid grid = grid_of(c);
            const StarMethod method =
                c.backend.kind == StarMethod::Kind::ExactPoly ? StarMethod::kernel() : c.backend;
            const SymbolField fa = sample_symbol(grid, [&](double x, double p) { return a.evaluate(x, p); });
            const SymbolField fb = sample_symbol(grid, [&](double x, double p) { return bexpr.evaluate(x, p); });
            const SymbolField ab = star(fa, fb, method);
            const SymbolField ba = star(fb, fa, method);
            const SymbolField br = ab - ba;
            report["backend"] = method.name();
            report["grid"] = grid_json(grid);
            json outputs;
            for (const auto& [stem, f] : {std::pair<const char*, const SymbolField*>{"lhs_star_rhs", &ab},
                                          {"rhs_star_lhs", &ba},
                                          {"bracket", &br}}) {
                const auto files = write_field(*f, c, stem);
                json names = json::array();
                for (const auto& p : files) names.push_back(p.filename().string());
                r.files.insert(r.files.end(), files.begin(), files.end());
                outputs[stem] = {{"files", names}, {"sup_norm", sup_norm(*f)}, {"boundary_mass", boundary_mass(*f)}};
            }
            report["outputs"] = outputs;
            if (method.kind != StarMethod::Kind::Series) {
                const SymbolField check = series_star(fa, fb, 8);
                report["series_check"] = sup_diff(ab, check, true) / std::max(sup_norm(ab, true), 1e-300);
            }
            r.message = "wrote lhs*rhs, rhs*lhs and the bracket on the grid";
        }
        finish(r, c, "star.json", report);
        return r;
    });
}

}  // namespace mf::io
