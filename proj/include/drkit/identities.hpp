#pragma once

#include <map>
#include <optional>
#include <string>

#include "drkit/operators.hpp"

namespace drkit {

/// Named residuals of identities and signed slacks of inequalities, together
/// with the points they were evaluated at.
///
/// Scalar identities are reported as |lhs - rhs| / (1 + max(|lhs|, |rhs|)),
/// vector identities as ||lhs - rhs|| / (1 + max(||lhs||, ||rhs||)).
/// Slacks are lhs - rhs of an inequality lhs >= rhs, never clamped.
struct ResidualReport {
  std::map<std::string, double> residuals;
  std::map<std::string, double> slacks;
  std::map<std::string, Point> context;

  double max_residual() const;
  /// +infinity when there are no slacks.
  double min_slack() const;
  /// Folds `other` in, keeping the worst value per name.
  void merge_worst(const ResidualReport& other);
};

double relative_gap(double lhs, double rhs);
double relative_gap(const Point& lhs, const Point& rhs);

/// Three elementary identities in (a, b, z).
ResidualReport three_point_residuals(const Point& a, const Point& b,
                                     const Point& z);

/// Expansion of <(a,b) - (x,y), (as,bs) - (u,v)> into single pairings.
double eight_point_residual(const Point& a, const Point& b, const Point& x,
                            const Point& y, const Point& as, const Point& bs,
                            const Point& u, const Point& v);

/// Decomposition of <Tx - Ty, x - y>, of (Id - T), of ||x - y||^2, of the
/// shadow-pair decrease, and the signed slack of that decrease. Also
/// reports the two graph pairings and firm nonexpansiveness of T as slacks.
ResidualReport dr_decomposition_residuals(const MonotoneOperator& a,
                                          const MonotoneOperator& b,
                                          const Point& x, const Point& y);

/// x - Tx = J_A x - J_B R_A x = J_{A^-1} x + J_{B^-1} R_A x, with Tx taken
/// from the reflection form (x + R_B R_A x) / 2, plus membership of the
/// four shadows in gra(A x B).
ResidualReport fixed_point_step_residuals(const MonotoneOperator& a,
                                          const MonotoneOperator& b,
                                          const Point& x);

/// T_(A,B) x against T_(A^-1, flip(B^-1)) x.
double self_duality_residual(const MonotoneOperator& a,
                             const MonotoneOperator& b, const Point& x);

/// J_A x + J_{A^-1} x = x, with `a_inverse` built independently of `a`.
double inverse_resolvent_residual(const MonotoneOperator& a,
                                  const MonotoneOperator& a_inverse,
                                  const Point& x);

/// J_{A x B}(x, y) = (J_A x, J_B y).
double product_resolvent_residual(const MonotoneOperator& a,
                                  const MonotoneOperator& b, const Point& x,
                                  const Point& y);

/// ||(x - Tx) - (J_A x - 2 J_B J_A x + J_B x)||, absolute. Both operators
/// must be linear relations.
double linear_relation_residual(const MonotoneOperator& a,
                                const MonotoneOperator& b, const Point& x);

/// Resolvent of P_U against a direct solve of (Id + P_U) y = x, and the
/// reflected resolvent against P_{U-perp} = Id - P_U.
ResidualReport projector_resolvent_residuals(const ConvexSet& u,
                                             const Point& x);

/// Identities for a pair of planar skew operators with A^2 = B^2 = -Id.
/// Throws InvalidArgument for operators outside that family.
ResidualReport skew_residuals(const MonotoneOperator& a,
                              const MonotoneOperator& b, const Point& x,
                              const Point& y);

/// ||x - Tx||^2 = ||P_U x - P_V x||^2 for A = N_U, B = N_V with U, V affine
/// and `common` in both. With (z, k) in Z x K also the distance identities
/// through z + k.
ResidualReport affine_gap_residual(
    const ConvexSet& u, const ConvexSet& v, const Point& common,
    const Point& x,
    const std::optional<std::pair<Point, Point>>& zk = std::nullopt);

}  // namespace drkit
