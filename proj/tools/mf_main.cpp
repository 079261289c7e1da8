#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mf/errors.hpp"
#include "mf/io/commands.hpp"
#include "mf/io/config.hpp"

namespace {

struct Options {
    std::string config_file;
    std::string model;
    std::vector<std::string> params;
    std::string grid;
    std::string backend;
    int n_max = -1;
    std::string out;
    std::string format;
    double tolerance = 0.0;
    std::string w;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config_file, "flat key = value config file");
    cmd->add_option("--model", o.model, "sho | morse | custom");
    cmd->add_option("--param", o.params, "model parameter k=v (repeatable)");
    cmd->add_option("--grid", o.grid, "n,xmin,xmax,hbar");
    cmd->add_option("--backend", o.backend, "exactpoly | kernel | series[:K]");
    cmd->add_option("--nmax", o.n_max, "highest level");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--format", o.format, "comma list of csv, json, bin");
    cmd->add_option("--tolerance", o.tolerance, "pass/fail tolerance");
    cmd->add_option("--w", o.w, "superpotential W(x) for --model custom");
}

/// Config file first, then command-line overrides.
mf::io::RunConfig assemble(const Options& o) {
    mf::io::RunConfig c = o.config_file.empty() ? mf::io::RunConfig{} : mf::io::load_config(o.config_file);
    if (!o.model.empty()) c.model = o.model;
    if (!o.w.empty()) c.superpotential = o.w;
    for (const auto& kv : o.params) {
        const auto [k, v] = mf::io::parse_param(kv);
        c.params[k] = v;
    }
    if (!o.grid.empty()) c.grid = mf::io::parse_grid_spec(o.grid);
    if (!o.backend.empty()) c.backend = mf::parse_star_method(o.backend);
    if (o.n_max >= 0) c.n_max = o.n_max;
    if (!o.out.empty()) c.out_dir = o.out;
    if (!o.format.empty()) c.formats = mf::io::parse_formats(o.format);
    if (o.tolerance > 0.0) c.tolerance = o.tolerance;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-space quantum mechanics toolkit"};
    app.require_subcommand(1);
    Options o;
    std::string lhs, rhs;
    auto* spectrum = app.add_subcommand("spectrum", "shape-invariance energies vs diagonalization");
    auto* wigner = app.add_subcommand("wigner", "ladder-built Wigner functions");
    auto* verify = app.add_subcommand("verify", "property battery");
    auto* star = app.add_subcommand("star", "star product of two expressions");
    for (auto* cmd : {spectrum, wigner, verify, star}) add_common(cmd, o);
    star->add_option("lhs", lhs, "left expression")->required();
    star->add_option("rhs", rhs, "right expression")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mf::io::kExitUsage;
    }

    mf::io::CommandResult result;
    try {
        mf::io::RunConfig c = assemble(o);
        if (*star) {
            c.lhs = lhs;
            c.rhs = rhs;
            result = mf::io::cmd_star(c);
        } else if (*spectrum) {
            result = mf::io::cmd_spectrum(c);
        } else if (*wigner) {
            result = mf::io::cmd_wigner(c);
        } else {
            result = mf::io::cmd_verify(c);
        }
    } catch (const mf::ArgumentError& e) {
        std::cerr << "mf: " << e.what() << '\n';
        return mf::io::kExitUsage;
    }
    if (!result.report.empty()) std::cout << result.report << '\n';
    if (!result.message.empty()) (result.exit_code == 0 ? std::cout : std::cerr) << "mf: " << result.message << '\n';
    return result.exit_code;
}
