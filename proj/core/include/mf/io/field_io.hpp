#pragma once

#include <filesystem>
#include <iosfwd>

#include "mf/phase_grid.hpp"

namespace mf::io {

/// "MFG1", u32 n_x, f64 x_min, f64 x_max, f64 hbar (little-endian), then n_x² (re, im) f64 pairs, row-major.
void write_binary(const SymbolField& field, std::ostream& out);
void write_binary(const SymbolField& field, const std::filesystem::path& file);
/// Throws ArgumentError on a bad magic number, truncation or an invalid grid.
SymbolField read_binary(std::istream& in);
SymbolField read_binary(const std::filesystem::path& file);

/// Header "# x,p,value", then one "x,p,value" row per node (x-major), %.17g. Complex
/// fields get an extra imaginary column and the header "# x,p,re,im".
void write_csv(const SymbolField& field, std::ostream& out);
void write_csv(const SymbolField& field, const std::filesystem::path& file);

/// {"grid": {...}, "values": [[...]...]} (real fields) or {"re": ..., "im": ...}.
void write_json(const SymbolField& field, std::ostream& out);
void write_json(const SymbolField& field, const std::filesystem::path& file);

}  // namespace mf::io
