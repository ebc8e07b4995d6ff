#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "drkit/operators.hpp"

namespace drkit {

/// Seeded source of the random points, sets and operators used by the
/// checkers. Identical seeds give identical streams.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);
  /// Seed derived from several integers (e.g. seed, dimension, pair index).
  Sampler(std::initializer_list<std::uint64_t> keys);

  double uniform(double lo, double hi);
  double normal();
  int integer(int lo, int hi);  ///< inclusive bounds
  bool coin(double p_true);
  Point normal_point(Eigen::Index dim, double scale = 1.0);

 private:
  std::mt19937_64 rng_;
};

/// `through + span(rank random directions)`.
ConvexSet random_affine(Sampler& s, Eigen::Index dim, Eigen::Index rank,
                        const Point& through);
ConvexSet random_subspace(Sampler& s, Eigen::Index dim, Eigen::Index rank);
ConvexSet random_box(Sampler& s, Eigen::Index dim);
ConvexSet random_ball(Sampler& s, Eigen::Index dim);

/// A random monotone polyline graph on R passing through `anchor`, with
/// vertical and flat pieces mixed in.
PiecewiseLinearGraph random_monotone_graph(Sampler& s, GraphVertex anchor);

/// 1D pair whose graphs contain (z, k) and (z, -k), so (z, k) is in the
/// extended solution set and Z is nonempty.
struct RandomConsistent1d {
  PiecewiseLinearGraph a;
  PiecewiseLinearGraph b;
  double z = 0.0;
  double k = 0.0;
};
RandomConsistent1d random_consistent_1d(Sampler& s);

/// Two affine subspaces of R^dim sharing the point `common`. Pairs whose
/// Friedrichs angle has cosine above `max_cosine` are redrawn, which bounds
/// the linear convergence rate of the iteration on them.
struct RandomAffinePair {
  ConvexSet u;
  ConvexSet v;
  Point common;
};
RandomAffinePair random_affine_pair(Sampler& s, Eigen::Index dim,
                                    double max_cosine = 0.99);

/// An operator of the identity-sweep library, with an inverse built
/// through an independent construction where one is available.
struct LibraryOperator {
  MonotoneOperator op;
  std::optional<MonotoneOperator> inverse_oracle;
};

/// Every operator family and combinator instantiated in R^dim.
std::vector<LibraryOperator> operator_library(Eigen::Index dim, Sampler& s);

}  // namespace drkit
