#pragma once

#include <functional>
#include <string>
#include <vector>

#include "drkit/hilbert.hpp"

namespace drkit {

/// Structural facts about an operator, declared at construction and never
/// inferred from the resolvent.
struct OperatorTraits {
  bool is_linear_relation = false;
  bool is_paramonotone = false;
  bool is_subdifferential = false;
  /// Skew linear operator with A^2 = -Id (the planar rotator family).
  bool is_skew = false;
};

/// A maximally monotone operator on R^d, represented by its resolvent
/// J_A = (Id + A)^{-1}. The (possibly multivalued) map A is never formed.
class MonotoneOperator {
 public:
  using Resolvent = std::function<Point(const Point&)>;

  MonotoneOperator(Eigen::Index dim, Resolvent resolvent, OperatorTraits traits,
                   std::string label);

  /// J_A(x). Throws DimensionMismatch on wrong input size.
  Point resolvent(const Point& x) const;
  Point operator()(const Point& x) const { return resolvent(x); }

  Eigen::Index dim() const { return dim_; }
  const OperatorTraits& traits() const { return traits_; }
  const std::string& label() const { return label_; }

 private:
  Eigen::Index dim_;
  Resolvent resolvent_;
  OperatorTraits traits_;
  std::string label_;
};

/// (point, normal) with normal in A(point). Only minty_forward creates them.
class GraphPoint {
 public:
  const Point& point() const { return point_; }
  const Point& normal() const { return normal_; }

 private:
  GraphPoint(Point p, Point n) : point_(std::move(p)), normal_(std::move(n)) {}
  friend GraphPoint minty_forward(const MonotoneOperator& a, const Point& x);

  Point point_;
  Point normal_;
};

// Operator families.

MonotoneOperator normal_cone(const ConvexSet& s);
/// lambda * Id + N_C for an affine set C; J(x) = P_C(x / (1 + lambda)).
MonotoneOperator scaled_id_plus_normal_cone(double lambda, const ConvexSet& c);
/// (x1, x2) -> (-x2, x1).
MonotoneOperator rotator();
/// The linear operator P_U for a linear subspace U; J = (Id + P_{U-perp}) / 2.
MonotoneOperator projector_operator(const ConvexSet& u);
MonotoneOperator identity_map(Eigen::Index dim);
MonotoneOperator zero_map(Eigen::Index dim);

/// A vertex of the graph of a monotone map on the real line.
struct GraphVertex {
  double position;
  double value;
};

/// A maximally monotone operator on R whose graph is the polyline through
/// `vertices` (nondecreasing in both coordinates, no repeated vertex),
/// extended by a ray of slope `left_slope` to the left of the first vertex
/// and `right_slope` to the right of the last. A slope of +infinity is a
/// vertical ray (the domain ends at that vertex).
struct PiecewiseLinearGraph {
  std::vector<GraphVertex> vertices;
  double left_slope = 0.0;
  double right_slope = 0.0;
};

/// Throws InvalidArgument if the graph is not monotone.
MonotoneOperator piecewise_linear_1d(const PiecewiseLinearGraph& graph);
/// Graph of A^{-1}: coordinates swapped, slopes inverted.
PiecewiseLinearGraph inverse_graph(const PiecewiseLinearGraph& graph);

// Combinators.

MonotoneOperator inverse(const MonotoneOperator& a);
/// B^flip = (-Id) o B o (-Id).
MonotoneOperator dual_flip(const MonotoneOperator& b);
/// x -> Ax - w.
MonotoneOperator outer_shift(const MonotoneOperator& a, const Point& w);
/// x -> A(x - w).
MonotoneOperator inner_shift(const MonotoneOperator& a, const Point& w);
/// A x B on R^{dim A + dim B}.
MonotoneOperator product(const MonotoneOperator& a, const MonotoneOperator& b);

/// R_A x = 2 J_A x - x.
Point reflected(const MonotoneOperator& a, const Point& x);

GraphPoint minty_forward(const MonotoneOperator& a, const Point& x);
Point minty_inverse(const GraphPoint& g);

/// Membership of (point, normal) in gra A, decided through the resolvent:
/// J_A(point + normal) = point within `tol`.
bool in_graph(const MonotoneOperator& a, const Point& point,
              const Point& normal, double tol = 1e-10);

/// Matrix of a linear resolvent, assembled from its action on the canonical
/// basis. Throws InvalidArgument unless the operator is a linear relation.
Eigen::MatrixXd resolvent_matrix(const MonotoneOperator& a);

}  // namespace drkit
