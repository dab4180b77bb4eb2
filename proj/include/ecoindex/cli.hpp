#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecoindex {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitIo = 3;

/// Runs `ecoindex <command> ...`. `args` excludes the program name. Results go
/// to `out` unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecoindex
