#ifndef COMPLAB_CLI_HPP_
#define COMPLAB_CLI_HPP_

#include <string>

namespace complab {

// Build identity baked in at configure time (git describe when available).
std::string version_string();

// Full command-line surface: parses argv, runs the requested experiment, and
// writes CSV/JSON outputs. Returns 0 on success, 1 when a verification run
// fails, 2 on configuration errors; error text goes to stderr prefixed with
// "ERROR:".
int run_cli(int argc, char** argv);

}  // namespace complab

#endif  // COMPLAB_CLI_HPP_
