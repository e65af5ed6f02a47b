#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace topvol::cli {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Census directory used when neither --data-dir nor TOPVOL_DATA_DIR is set.
std::filesystem::path default_census_dir();

/// Runs one invocation. `args` excludes the program name. Normal output goes
/// to `out`; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topvol::cli
