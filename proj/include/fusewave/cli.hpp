#ifndef FUSEWAVE_CLI_HPP
#define FUSEWAVE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fusewave::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `fusewave` command line. `args` excludes the program name.
/// Subcommands: fuse, decompose, reconstruct, metrics, bench.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace fusewave::cli

#endif  // FUSEWAVE_CLI_HPP
