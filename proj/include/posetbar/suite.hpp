#pragma once

// Cross-invariant identity checks on random modules.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "posetbar/rep.hpp"
#include "posetbar/workspace.hpp"

namespace posetbar {

struct SuiteOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  bool adversarial = false;      // trial 0 gets a corrupted module
  std::size_t oracle_cap = 10;   // oracle comparison only up to this total dimension
  std::size_t max_generators = 3;
  std::size_t max_relations = 3;
};

struct CheckTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
};

struct SuiteFailure {
  std::size_t trial;
  std::uint64_t seed;
  std::string check;
  std::string detail;
};

struct SuiteReport {
  std::size_t trials = 0;
  std::vector<std::pair<std::string, CheckTally>> checks;
  std::vector<SuiteFailure> failures;
  std::vector<SuiteFailure> rejected;  // modules that failed validation

  bool ok() const { return failures.empty(); }
};

// Seed of trial i.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);
// The module used by trial i.
RepPtr trial_module(const Workspace& ws, const SuiteOptions& options, std::size_t trial);

SuiteReport run_identity_suite(const Workspace& ws, const SuiteOptions& options);

}  // namespace posetbar
