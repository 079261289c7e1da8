#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "mf/star.hpp"
#include "mf/susy_ladder.hpp"

namespace mf::io {

struct GridSpec {
    int n_x = 256;
    double x_min = -8.0;
    double x_max = 8.0;
    double hbar = 1.0;
};

enum class Format { Csv, Json, Bin };

/// Settings shared by every command.
struct RunConfig {
    std::string model = "sho";
    std::map<std::string, double> params;  ///< overrides of the registry defaults
    std::string superpotential;            ///< W(x) expression for model = "custom"
    std::optional<GridSpec> grid;          ///< model default when unset
    StarMethod backend = StarMethod::kernel();
    int n_max = 5;
    std::filesystem::path out_dir = "mf_out";
    std::set<Format> formats{Format::Json};
    double tolerance = 1e-4;
    std::string lhs, rhs;                  ///< operands of `star`
};

/// Default grid per model: sho (256, [−8,8]), morse (256, [−4,12]), custom (256, [−10,10]).
GridSpec default_grid(const std::string& model);
GridSpec resolved_grid(const RunConfig& config);

/// "n,xmin,xmax,hbar".
GridSpec parse_grid_spec(const std::string& text);
/// Comma-separated subset of csv, json, bin.
std::set<Format> parse_formats(const std::string& text);
/// "k=v".
std::pair<std::string, double> parse_param(const std::string& text);

/// Reads flat `key = value` lines; `#` starts a comment. Keys: model, w, grid, n_x,
/// x_min, x_max, hbar, backend, n_max, out, format, tolerance, lhs, rhs, param.<name>.
/// Unknown keys and malformed values raise ArgumentError naming the line.
RunConfig load_config(const std::filesystem::path& file);
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Schema check against the model registry; throws ArgumentError.
void validate(const RunConfig& config);

/// The configured model at the grid's ℏ. "custom" parses `superpotential` with the
/// parameters as named constants.
ShapeInvariantModel build_model(const RunConfig& config);

}  // namespace mf::io
