#pragma once

// The numbered acceptance checks shared by `avor3 verify all` and the
// acceptance test binary.

#include "avor3/strata.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace avor3::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Options {
  int bound = fan::kDefaultBound;
  std::uint32_t seed = 20240611;
  int random_reps = 50;
  int random_trials = 200;
};

inline constexpr int kNumChecks = 12;

CheckResult run_check(int id, const strata::Registry& reg, const Options& opt = {});
std::vector<CheckResult> run_all(const strata::Registry& reg, const Options& opt = {});

bool all_passed(const std::vector<CheckResult>& results);
std::string to_text(const std::vector<CheckResult>& results);
mhs::ordered_json to_json(const std::vector<CheckResult>& results);

}  // namespace avor3::verify
