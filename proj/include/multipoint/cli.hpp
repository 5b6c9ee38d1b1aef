#pragma once

#include <ostream>

namespace multipoint::cli {

/// Runs one subcommand. Returns 0 on success, 1 on validation or usage
/// errors and 2 on numerical failures; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multipoint::cli
