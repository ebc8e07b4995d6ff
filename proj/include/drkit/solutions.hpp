#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drkit/splitting.hpp"

namespace drkit {

/// Finite stand-in for a (usually infinite) set.
struct SetSample {
  std::vector<Point> points;
  std::string description;
};

using PointPair = std::pair<Point, Point>;

/// Samples of Fix T, Z, K, the extended solution set S, v, Z_v and K_v.
struct SolutionSets {
  SetSample fix_T;
  SetSample Z;
  SetSample K;
  std::vector<PointPair> S_pairs;
  Point v;
  SetSample Z_v;
  SetSample K_v;
};

/// Iterates T until ||y - Ty|| <= tol and returns y. Throws
/// PossiblyInconsistent (carrying the last step) if max_iters is exhausted.
Point find_fixed_point(const DRProblem& p, double tol = 1e-12,
                       std::size_t max_iters = 100000);

struct PrimalDualSample {
  SetSample Z;
  SetSample K;
  std::vector<PointPair> pairs;
};

/// Z = J_A(Fix T), K = J_{A^-1}(Fix T) and S = M(Fix T) from a sample of
/// fixed points. Throws InvalidArgument naming the step norm of the first
/// point that is not fixed within tol.
PrimalDualSample primal_dual_from_fix(const MonotoneOperator& a,
                                      const MonotoneOperator& b,
                                      const SetSample& fix_points,
                                      double tol = 1e-9);

/// Z x K for paramonotone A and B, checking z + k in Fix T for each pair.
/// Refuses (InvalidArgument) unless both operators are paramonotone.
std::vector<PointPair> paramonotone_cross_product(const MonotoneOperator& a,
                                                  const MonotoneOperator& b,
                                                  const SetSample& z,
                                                  const SetSample& k,
                                                  double tol = 1e-9);

/// Fills S_pairs, Z and K from fix_T and checks both directions of the
/// Minty correspondence. Throws InvalidArgument on an inconsistent sample.
SolutionSets consistent_solution_sets(const MonotoneOperator& a,
                                      const MonotoneOperator& b,
                                      SetSample fix_points, double tol = 1e-9);

struct FejerResult {
  bool monotone = true;
  /// Smallest n with ||x_{n+1} - e|| > ||x_n - e|| + slack for some e.
  std::optional<std::size_t> first_violation;
  /// Index in E of the point witnessing the first violation.
  std::size_t witness_point = 0;
  /// ||x_{n+1} - e||^2 - ||x_n - e||^2 at the first violation.
  double violation_sq_increase = 0.0;
  /// Largest ||x_{n+1} - e|| - ||x_n - e|| over all n and e.
  double worst_increase = 0.0;
};

FejerResult fejer_check(const std::vector<Point>& seq, const SetSample& e,
                        double slack);

/// Largest pairwise distance among the last quarter of `seq`.
double trailing_quarter_diameter(const std::vector<Point>& seq);

struct SweetPrincipleReport {
  bool x_fejer = false;
  /// max over e of |<u_n - e, u_n - x_n>| over the trailing quarter.
  double key_property = 0.0;
  double u_cauchy_diameter = 0.0;
  bool verdict = false;
};

/// Numerical evidence for the hypotheses of the generalized Fejer principle:
/// x Fejer monotone w.r.t. E, <u_n - e, u_n - x_n> -> 0, u Cauchy.
SweetPrincipleReport sweet_principle_check(const std::vector<Point>& x_seq,
                                           const std::vector<Point>& u_seq,
                                           const SetSample& e, double tol,
                                           double fejer_slack = 1e-10);

struct SeriesSummary {
  std::vector<double> partial_sums;
  double last_term = 0.0;
  double min_term = 0.0;
};

struct SummabilityReport {
  SeriesSummary step_difference;  ///< ||(Id-T)T^n x - (Id-T)T^n y||^2
  SeriesSummary a_pairing;        ///< pairing of the A-shadows
  SeriesSummary b_pairing;        ///< pairing of the B-shadows
  bool pairings_nonnegative = true;
  bool final_terms_small = true;
  bool verdict = true;
};

/// Series built from two traces of the same problem. Throws InvalidArgument
/// when the traces come from different operator pairs.
SummabilityReport summability_report(const DRTrace& trace_x,
                                     const DRTrace& trace_y,
                                     double term_tol = 1e-8,
                                     double pairing_slack = 1e-10);

struct DecoupledFejerResult {
  bool shadow_fejer = true;
  bool dual_shadow_fejer = true;
  std::optional<std::size_t> first_violation;
  bool ok() const { return shadow_fejer && dual_shadow_fejer; }
};

/// On the real line: |shadow_{n+1} - z| <= |shadow_n - z| and the same for
/// the dual shadow against k, up to 1e-12.
DecoupledFejerResult decoupled_1d_fejer_check(const DRProblem& p,
                                              const Point& z, const Point& k,
                                              const DRTrace& trace);

}  // namespace drkit
