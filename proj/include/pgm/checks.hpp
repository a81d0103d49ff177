#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pgm/model.hpp"
#include "pgm/monty.hpp"

namespace pgm::checks {

// Cross-validation of every independent route to the same numbers: closed
// forms against enumeration, trees against the joint, simulation against
// the exact engine, builders against the known three-door tables, and the
// text format against itself. One failing entry means the build is wrong.

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // failing configuration, or a short summary
};

struct CheckOptions {
  int max_doors = 8;
  std::uint64_t trials = 100000;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  double sim_tolerance = 0.01;
  // Network source, substitutable so the suite itself can be tested: feed it
  // a corrupted builder and every consistency route must light up.
  std::function<Network(const monty::MontyConfig&)> build;
};

std::vector<CheckResult> run_cross_checks(const CheckOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

// The stock mutation for exercising the suite: one cell of the three-door
// host table changed from 1/2 to 49/100.
Network perturb_host_cell(Network net);

}  // namespace pgm::checks
