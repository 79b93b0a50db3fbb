#pragma once

namespace twpart {

// Entry point of the command line tool. Exit codes: 0 success, 1 usage
// error, 2 data error, 3 cap or parameter infeasibility.
int run_cli(int argc, const char* const* argv);

}  // namespace twpart
