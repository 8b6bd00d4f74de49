// One line per acceptance criterion. Criteria 1-7 run the library checks
// directly; criterion 8 runs the command-line selftest and reads its exit
// status.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "stablewave/selftest.hpp"

int main() {
  namespace st = stablewave::selftest;
  int failed = 0;
  int index = 1;
  for (const auto& r : st::criteria()) {
    std::printf("[%s] criterion %d: %s (%.2fs)\n      %s\n", r.passed ? "PASS" : "FAIL", index++, r.name.c_str(),
                r.seconds, r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }

  const std::string cmd = std::string(STABLEWAVE_CLI) + " selftest > /dev/null";
  const int raw = std::system(cmd.c_str());
  const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::printf("[%s] criterion 8: selftest command exits 0 (exit status %d)\n", status == 0 ? "PASS" : "FAIL", status);
  failed += status == 0 ? 0 : 1;

  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
