#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace locind {

// One acceptance-gate row.  The `suite` subcommand and the standalone
// acceptance binary share this implementation, so a green suite and a green
// binary are the same statement.
struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

std::string criterion_line(const CriterionOutcome& row);

// Runs every acceptance criterion; when `live` is given, each row is printed
// as soon as it is decided.  Tolerances and time limits are pinned inside.
std::vector<CriterionOutcome> acceptance_suite(std::ostream* live = nullptr);

int run_cli(int argc, char** argv);

}  // namespace locind
