#pragma once

namespace dp::cli {

/// Entry point for the command-line tool.  Exit codes: 0 success, 1 usage
/// error, 2 parameter/regime error, 3 solver non-convergence.
int run(int argc, const char* const* argv);

}  // namespace dp::cli
