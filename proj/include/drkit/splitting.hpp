#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "drkit/operators.hpp"

namespace drkit {

/// The sum problem 0 in (A + B)x together with a starting point.
class DRProblem {
 public:
  DRProblem(MonotoneOperator a, MonotoneOperator b, Point x0);

  const MonotoneOperator& a() const { return a_; }
  const MonotoneOperator& b() const { return b_; }
  const Point& x0() const { return x0_; }
  Eigen::Index dim() const { return x0_.size(); }

 private:
  MonotoneOperator a_;
  MonotoneOperator b_;
  Point x0_;
};

/// Everything the iteration produces at index n, for x_n = T^n x0.
struct IterationRecord {
  std::size_t n = 0;
  Point governing;      ///< T^n x0
  Point shadow;         ///< J_A x_n
  Point dual_shadow;    ///< J_{A^-1} x_n = x_n - J_A x_n
  Point b_shadow;       ///< J_B R_A x_n
  Point b_dual_shadow;  ///< J_{B^-1} R_A x_n
  Point step;           ///< x_n - x_{n+1}
};

enum class StopReason { max_iters, step_converged, shadow_cauchy };

const char* to_string(StopReason r);

struct IterateOptions {
  std::size_t max_iters = 100000;
  /// Stop once ||step|| < step_tol.
  double step_tol = 1e-12;
  /// When positive, stop once the last `shadow_window` shadows lie within a
  /// ball of this diameter.
  double shadow_tol = 0.0;
  std::size_t shadow_window = 16;
};

struct DRTrace {
  DRProblem problem;
  std::vector<IterationRecord> records;
  Point v_estimate;
  StopReason stop_reason = StopReason::max_iters;
};

/// T x = x - J_A x + J_B R_A x.
Point dr_apply(const MonotoneOperator& a, const MonotoneOperator& b,
               const Point& x);

/// One full record at x (all tracked quantities plus the step).
IterationRecord dr_record(const MonotoneOperator& a, const MonotoneOperator& b,
                          const Point& x, std::size_t n);

/// Runs x_{n+1} = T x_n from p.x0(). Divergence is not an error; a
/// non-finite value raises NonFiniteValue with the iteration index.
DRTrace iterate(const DRProblem& p, const IterateOptions& opts);
DRTrace iterate(const DRProblem& p, std::size_t max_iters,
                double step_tol = 1e-12);

struct DisplacementEstimate {
  Point v;
  std::vector<double> step_norms;
  /// Step norms nonincreasing up to 1e-12 slack.
  bool norms_nonincreasing = true;
};

/// Final step vector as the estimate of the infimal displacement vector.
DisplacementEstimate estimate_displacement(const DRTrace& trace);

struct OperatorPair {
  MonotoneOperator a;
  MonotoneOperator b;
};

/// (x -> Ax - v, x -> B(x - v)); zeros of the sum form Z_v.
OperatorPair normal_problem(const MonotoneOperator& a,
                            const MonotoneOperator& b, const Point& v);

/// (T^n x0 + n v)_n.
std::vector<Point> shifted_governing(const DRTrace& trace, const Point& v);

std::vector<Point> governing_sequence(const DRTrace& trace);
std::vector<Point> shadow_sequence(const DRTrace& trace);
std::vector<Point> dual_shadow_sequence(const DRTrace& trace);
/// (shadow_n, dual_shadow_n) stacked in R^{2d}.
std::vector<Point> shadow_pair_sequence(const DRTrace& trace);

/// Stacks two points into one element of the product space.
Point stack(const Point& first, const Point& second);

}  // namespace drkit
