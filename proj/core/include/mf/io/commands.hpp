#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mf/io/config.hpp"

namespace mf::io {

/// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
    int exit_code = kExitOk;
    std::string report;                        ///< JSON text, also written to out_dir
    std::vector<std::filesystem::path> files;  ///< everything written, report first
    std::string message;                       ///< one-line summary or error
};

/// Shape-invariance energies against the diagonalization oracle (spectrum.json).
CommandResult cmd_spectrum(const RunConfig& config);
/// P_0..P_nmax in the requested formats plus manifest.json.
CommandResult cmd_wigner(const RunConfig& config);
/// Property battery for the configured model and grid (verify.json).
CommandResult cmd_verify(const RunConfig& config);
/// lhs ⋆ rhs, rhs ⋆ lhs and their bracket (star.json plus fields for non-polynomial input).
CommandResult cmd_star(const RunConfig& config);

}  // namespace mf::io
