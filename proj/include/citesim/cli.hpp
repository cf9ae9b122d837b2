#pragma once

namespace citesim {

// Full command-line entry point; returns the process exit code
// (0 ok, 1 validation, 2 I/O, 3 analysis undefined).
int run_cli(int argc, const char* const* argv);

}  // namespace citesim
