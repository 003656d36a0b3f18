#pragma once

#include <iosfwd>

namespace stueckelberg {

// Full command-line entry point; returns the process exit status.
int run_cli(int argc, const char* const* argv);

// Runs the cross-module invariant suite, one PASS/FAIL line per property.
// Returns the number of failed properties.
int run_selftest(std::ostream& out);

}  // namespace stueckelberg
