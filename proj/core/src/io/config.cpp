#include "mf/io/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mf/errors.hpp"
#include "mf/io/expression.hpp"

namespace mf::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || trim(v.substr(used)).size() != 0 || !std::isfinite(d))
        throw ArgumentError(key + ": expected a number, got '" + v + "'");
    return d;
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d) || std::abs(d) > 1e9) throw ArgumentError(key + ": expected an integer, got '" + v + "'");
    return static_cast<int>(d);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

GridSpec default_grid(const std::string& model) {
    if (model == "morse") return {256, -4.0, 12.0, 1.0};
    if (model == "custom") return {256, -10.0, 10.0, 1.0};
    return {256, -8.0, 8.0, 1.0};
}

GridSpec resolved_grid(const RunConfig& config) { return config.grid ? *config.grid : default_grid(config.model); }

GridSpec parse_grid_spec(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw ArgumentError("grid: expected n,xmin,xmax,hbar, got '" + text + "'");
    return {to_int("grid", parts[0]), to_double("grid", parts[1]), to_double("grid", parts[2]),
            to_double("grid", parts[3])};
}

std::set<Format> parse_formats(const std::string& text) {
    std::set<Format> out;
    for (const auto& f : split(text, ',')) {
        if (f == "csv") out.insert(Format::Csv);
        else if (f == "json") out.insert(Format::Json);
        else if (f == "bin") out.insert(Format::Bin);
        else throw ArgumentError("format: unknown format '" + f + "' (csv, json, bin)");
    }
    if (out.empty()) throw ArgumentError("format: empty format list");
    return out;
}

std::pair<std::string, double> parse_param(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ArgumentError("param: expected k=v, got '" + text + "'");
    const std::string key = trim(text.substr(0, eq));
    if (key.empty()) throw ArgumentError("param: empty parameter name");
    return {key, to_double("param " + key, trim(text.substr(eq + 1)))};
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
    auto grid = [&]() -> GridSpec& {
        if (!c.grid) c.grid = default_grid(c.model);
        return *c.grid;
    };
    if (key == "model") c.model = value;
    else if (key == "w") c.superpotential = value;
    else if (key == "grid") c.grid = parse_grid_spec(value);
    else if (key == "n_x") grid().n_x = to_int(key, value);
    else if (key == "x_min") grid().x_min = to_double(key, value);
    else if (key == "x_max") grid().x_max = to_double(key, value);
    else if (key == "hbar") grid().hbar = to_double(key, value);
    else if (key == "backend") c.backend = parse_star_method(value);
    else if (key == "n_max") c.n_max = to_int(key, value);
    else if (key == "out") c.out_dir = value;
    else if (key == "format") c.formats = parse_formats(value);
    else if (key == "tolerance") c.tolerance = to_double(key, value);
    else if (key == "lhs") c.lhs = value;
    else if (key == "rhs") c.rhs = value;
    else if (key.rfind("param.", 0) == 0 && key.size() > 6) c.params[key.substr(6)] = to_double(key, value);
    else throw ArgumentError("unknown setting '" + key + "'");
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ArgumentError("cannot read config file '" + file.string() + "'");
    RunConfig c;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ArgumentError(file.string() + ":" + std::to_string(number) + ": expected key = value");
        }
        try {
            apply_setting(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ArgumentError& e) {
            throw ArgumentError(file.string() + ":" + std::to_string(number) + ": " + e.what());
        }
    }
    return c;
}

void validate(const RunConfig& c) {
    const auto& reg = model_registry();
    if (c.model == "custom") {
        if (c.superpotential.empty()) throw ArgumentError("model custom requires w = <expression in x>");
    } else if (const auto it = reg.find(c.model); it == reg.end()) {
        throw ArgumentError("unknown model '" + c.model + "'");
    } else {
        for (const auto& [k, v] : c.params) {
            bool known = false;
            for (const auto& spec : it->second) known = known || spec.name == k;
            if (!known) throw ArgumentError("model '" + c.model + "' has no parameter '" + k + "'");
            if (!(v > 0.0)) throw ArgumentError("parameter '" + k + "' must be positive");
        }
    }
    const GridSpec g = resolved_grid(c);
    make_grid(g.n_x, g.x_min, g.x_max, g.hbar);
    if (c.n_max < 0) throw ArgumentError("n_max must be non-negative");
    if (!(c.tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
    if (c.formats.empty()) throw ArgumentError("at least one output format is required");
}

ShapeInvariantModel build_model(const RunConfig& c) {
    const double hbar = resolved_grid(c).hbar;
    if (c.model != "custom") return make_registered_model(c.model, c.params, hbar);
    const Expression w = Expression::parse(c.superpotential, c.params);
    if (w.depends_on_p()) throw ArgumentError("w must depend on x only");
    const Expression wp = w.derivative_x();
    Superpotential sp;
    sp.w = [w](double x, const Params&) { return w.evaluate(x, 0.0).real(); };
    sp.w_prime = [wp](double x, const Params&) { return wp.evaluate(x, 0.0).real(); };
    return make_custom_model("custom", std::move(sp), {}, hbar);
}

}  // namespace mf::io
