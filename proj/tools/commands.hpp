#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cleave {

// Dispatch one CLI invocation (argv without the program name).  Reports go
// to `out`, diagnostics to `err`.  Exit code: 0 all pass, 1 verification
// failure, 2 input error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace cleave
