#pragma once

#include <iosfwd>

namespace satbeam {

/// Entry point of the `satbeam` tool. Returns 0 on success, 1 on a runtime
/// failure and 2 on a usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace satbeam
