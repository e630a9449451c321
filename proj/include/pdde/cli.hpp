#pragma once

// Subcommand front end. Everything testable lives here; main() is a thin
// shell. Exit codes are part of the interface:
//   0 success / SOLVABLE     1 parse, validation, bad parameters
//   2 UNSOLVABLE / singular  3 INCONCLUSIVE
//   4 verification failure   5 oracle divergence or non-convergence

#include <iosfwd>

namespace pdde {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdde
