#pragma once

namespace graphtd {

/// Entry point for the command-line tool. Returns 0 on success, 1 on
/// usage errors, 2 on data errors; partial output files are removed on
/// failure.
int run_cli(int argc, const char* const* argv);

}  // namespace graphtd
