#pragma once

namespace fluxring::cli {

/// Whole command-line tool behind a callable entry point (the binary is a
/// thin wrapper; tests drive this directly).
/// Exit codes: 0 success, 2 invalid arguments, 3 numerical failure, 4 I/O
/// failure.
int run_main(int argc, const char* const* argv);

}  // namespace fluxring::cli
