#include "mf/io/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "mf/errors.hpp"

namespace mf::io {

namespace {

static_assert(std::endian::native == std::endian::little, "binary field I/O assumes a little-endian host");

template <class T>
void put(std::ostream& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& in) {
    char buf[sizeof(T)];
    if (!in.read(buf, sizeof(T))) throw ArgumentError("binary field: truncated input");
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

std::ofstream open_out(const std::filesystem::path& file, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(file, mode);
    if (!out) throw ArgumentError("cannot write '" + file.string() + "'");
    return out;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_binary(const SymbolField& field, std::ostream& out) {
    const PhaseGrid& g = field.grid();
    out.write("MFG1", 4);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n()));
    put<double>(out, g.x_min());
    put<double>(out, g.x_max());
    put<double>(out, g.hbar());
    for (const cplx& v : field.values()) {
        put<double>(out, v.real());
        put<double>(out, v.imag());
    }
}

void write_binary(const SymbolField& field, const std::filesystem::path& file) {
    auto out = open_out(file, std::ios::out | std::ios::binary);
    write_binary(field, out);
}

SymbolField read_binary(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "MFG1", 4) != 0) throw ArgumentError("binary field: bad magic");
    const auto n = get<std::uint32_t>(in);
    const double x_min = get<double>(in);
    const double x_max = get<double>(in);
    const double hbar = get<double>(in);
    if (n == 0 || n > 1u << 14) throw ArgumentError("binary field: implausible n_x");
    const PhaseGrid grid = make_grid(static_cast<int>(n), x_min, x_max, hbar);
    std::vector<cplx> values(static_cast<std::size_t>(n) * n);
    for (cplx& v : values) {
        const double re = get<double>(in);
        const double im = get<double>(in);
        v = {re, im};
    }
    return {grid, std::move(values)};
}

SymbolField read_binary(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ArgumentError("cannot read '" + file.string() + "'");
    return read_binary(in);
}

void write_csv(const SymbolField& field, std::ostream& out) {
    const PhaseGrid& g = field.grid();
    const bool real = field.max_abs_imag() == 0.0;
    out << (real ? "# x,p,value\n" : "# x,p,re,im\n");
    for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) {
            const cplx v = field(i, j);
            out << g17(g.x(i)) << ',' << g17(g.p(j)) << ',' << g17(v.real());
            if (!real) out << ',' << g17(v.imag());
            out << '\n';
        }
    }
}

void write_csv(const SymbolField& field, const std::filesystem::path& file) {
    auto out = open_out(file);
    write_csv(field, out);
}

void write_json(const SymbolField& field, std::ostream& out) {
    const PhaseGrid& g = field.grid();
    nlohmann::json j;
    j["grid"] = {{"n_x", g.n()}, {"x_min", g.x_min()}, {"x_max", g.x_max()}, {"hbar", g.hbar()},
                 {"dx", g.dx()}, {"dp", g.dp()}};
    const bool real = field.max_abs_imag() == 0.0;
    auto rows = [&](auto part) {
        nlohmann::json m = nlohmann::json::array();
        for (int i = 0; i < g.n(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int jj = 0; jj < g.n(); ++jj) row.push_back(part(field(i, jj)));
            m.push_back(std::move(row));
        }
        return m;
    };
    if (real) {
        j["values"] = rows([](cplx v) { return v.real(); });
    } else {
        j["re"] = rows([](cplx v) { return v.real(); });
        j["im"] = rows([](cplx v) { return v.imag(); });
    }
    out << j.dump() << '\n';
}

void write_json(const SymbolField& field, const std::filesystem::path& file) {
    auto out = open_out(file);
    write_json(field, out);
}

}  // namespace mf::io
