#pragma once

#include <string>
#include <vector>

namespace kdvlab::verify {

// One property suite: a named, self-contained experiment with a hard
// pass/fail verdict.  The detail string carries the measured numbers so a
// failure is diagnosable from the log alone.
struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<std::string> check_ids();
CheckResult run_check(const std::string& id);
std::vector<CheckResult> run_all();

}  // namespace kdvlab::verify
