#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drkit/identities.hpp"

namespace drkit {

inline constexpr double kIdentityTol = 1e-9;
inline constexpr double kSlackTol = -1e-10;

struct PairSweepReport {
  Eigen::Index dim = 0;
  std::string a_label;
  std::string b_label;
  /// Worst residual and slack per identity over all samples.
  ResidualReport worst;
};

struct IdentitySweepResult {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<PairSweepReport> pairs;
  double max_residual = 0.0;
  double min_slack = 0.0;
  bool pass = true;
};

struct SweepOptions {
  std::uint64_t seed = 7;
  int samples = 200;
  Eigen::Index min_dim = 1;
  Eigen::Index max_dim = 5;
  /// Test hook: replaces the first library operator's resolvent by its
  /// negation, which is no longer firmly nonexpansive.
  bool corrupt_first_operator = false;
};

/// Evaluates every residual identity over every ordered pair of library
/// operators in each dimension, at seeded random points.
IdentitySweepResult check_identities(const SweepOptions& opts);

}  // namespace drkit
