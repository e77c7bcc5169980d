#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deltacf::cli {

/// Runs the command line `args` (program name first). Exit codes: 0
/// success, 1 validation/verification failure, 2 usage, domain or I/O error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace deltacf::cli
