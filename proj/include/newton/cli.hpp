#pragma once

namespace newton {

// Full command-line front end. Returns the process exit code:
// 0 success, 1 domain error, 2 usage error.
int run_cli(int argc, const char* const* argv);

} // namespace newton
