#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lftd/linalg.hpp"

namespace lftd {

enum class Scenario { Verify, Demo, Transit, Report };

struct RunConfig {
  std::uint64_t seed = 42;
  int trials = 100;
  Eigen::Index dim_h = 2;
  Eigen::Index dim_k = 2;
  Tolerance tol;
  Scenario scenario = Scenario::Verify;
};

inline constexpr int kMaxTrials = 1'000'000;
inline constexpr Eigen::Index kMaxDim = 8;

/// Throws InvalidArgument for trials outside [1, 1e6], dims outside [1, 8] or a
/// non-positive tolerance.
void validate(const RunConfig& config);

struct SuiteRecord {
  std::string name;
  std::string anchor;     // the formula the suite exercises
  int trials = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  double elapsed_ms = 0.0;
  std::string note;       // first error message, or extra counts
};

struct Report {
  RunConfig config;
  std::vector<SuiteRecord> suites;

  bool passed() const;
  const SuiteRecord* find(const std::string& name) const;
};

/// Names of the suite groups in their fixed run order.
const std::vector<std::string>& suite_groups();

/// Runs every suite group in order. Group i draws from its own generator seeded
/// from (seed, i), so the report depends only on the configuration.
Report run_verification(const RunConfig& config);

/// Runs one group by name; throws InvalidArgument for an unknown name.
Report run_group(const RunConfig& config, const std::string& group);

/// Seed of the generator handed to group `index`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace lftd
