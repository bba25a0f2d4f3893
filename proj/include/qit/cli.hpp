#pragma once

#include <string>
#include <vector>

namespace qit {
namespace cli {

/// Run one CLI invocation. Returns the process exit code: 0 on success,
/// 1 on a domain error, 2 on a usage error. Output (JSON or CSV) goes to
/// `out`; diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err);

/// As above, but writes to stdout/stderr and honors --output.
int main_cli(int argc, char** argv);

}  // namespace cli
}  // namespace qit
