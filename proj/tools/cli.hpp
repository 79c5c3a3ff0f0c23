#pragma once

#include <iosfwd>

namespace framecomp::cli {

/// Exit codes: 0 ok, 2 malformed input, 3 numerical residual failure,
/// 4 infeasible design.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

} // namespace framecomp::cli
