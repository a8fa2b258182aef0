// Acceptance gate: runs every shipped criterion, prints one line per
// criterion, and fails the process if any line is red.

#include <cstdio>
#include <iostream>

#include "locind/cli.hpp"

int main() {
  auto rows = locind::acceptance_suite(&std::cout);
  int failed = 0;
  for (const auto& r : rows)
    if (!r.pass) ++failed;
  if (failed == 0) {
    std::printf("acceptance: %zu/%zu criteria pass\n", rows.size(),
                rows.size());
    return 0;
  }
  std::printf("acceptance: %d of %zu criteria FAILED\n", failed, rows.size());
  return 1;
}
