#pragma once

#include <ostream>

#include "affinelab/errors.hpp"

namespace affinelab {

/// Exit codes: 0 success, 2 malformed input or domain violation, 3 degenerate
/// or tolerance failure, 4 internal consistency failure.
int exit_code(ErrorKind kind);

/// Entry point of the command-line tool; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace affinelab
