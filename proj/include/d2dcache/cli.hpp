#pragma once

#include <ostream>

namespace d2dcache {

/// Command-line entry point. Returns the process exit code: 0 success,
/// 1 usage or validation error, 2 runtime or I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace d2dcache
