#pragma once

#include <ostream>

namespace wd::frontend {

// Entry point of the `wd` tool. Returns 0 on success, 1 on user errors (bad
// arguments, scripts, data) and 2 when a law check or internal invariant fails.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wd::frontend
