// Runs the full end-to-end check suite and prints one pass/fail line per
// check.  Exit status is the number of failing checks.

#include <iostream>

#include "ctop/selftest.hpp"

int main() {
  int failed = ctop::report_selftest(std::cout);
  if (failed) std::cout << failed << " check(s) failed\n";
  return failed;
}
