#ifndef BSPLIT_TOOLS_CLI_HPP
#define BSPLIT_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bsplit::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 2;

/// Entry point of the `bsplit` tool. Results go to `out`, diagnostics to
/// `err`. Returns 0 on success and 2 on any usage or validation failure.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

/// Convenience overload; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bsplit::cli

#endif  // BSPLIT_TOOLS_CLI_HPP
