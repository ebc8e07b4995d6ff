#include "drkit/operators.hpp"

#include <utility>

#include "drkit/errors.hpp"

namespace drkit {

MonotoneOperator::MonotoneOperator(Eigen::Index dim, Resolvent resolvent,
                                   OperatorTraits traits, std::string label)
    : dim_(dim),
      resolvent_(std::move(resolvent)),
      traits_(traits),
      label_(std::move(label)) {
  if (dim_ < 1) throw InvalidArgument("MonotoneOperator: dimension must be >= 1");
  if (!resolvent_) throw InvalidArgument("MonotoneOperator: empty resolvent");
}

Point MonotoneOperator::resolvent(const Point& x) const {
  require_dim(x, dim_, label_.c_str());
  return resolvent_(x);
}

MonotoneOperator normal_cone(const ConvexSet& s) {
  OperatorTraits t;
  t.is_paramonotone = true;
  t.is_subdifferential = true;
  t.is_linear_relation = s.is_linear_subspace();
  return MonotoneOperator(
      s.dim(), [s](const Point& x) { return s.project(x); }, t,
      "N[" + s.describe() + "]");
}

MonotoneOperator scaled_id_plus_normal_cone(double lambda, const ConvexSet& c) {
  if (!(lambda > 0.0))
    throw InvalidArgument("scaled_id_plus_normal_cone: lambda must be > 0");
  if (!c.is_affine())
    throw InvalidArgument("scaled_id_plus_normal_cone: set must be affine");
  OperatorTraits t;
  t.is_paramonotone = true;
  t.is_subdifferential = true;
  t.is_linear_relation = c.is_linear_subspace();
  const double shrink = 1.0 / (1.0 + lambda);
  return MonotoneOperator(
      c.dim(), [c, shrink](const Point& x) { return c.project(shrink * x); },
      t, std::to_string(lambda) + "Id+N[" + c.describe() + "]");
}

MonotoneOperator rotator() {
  OperatorTraits t;
  t.is_linear_relation = true;
  t.is_skew = true;
  return MonotoneOperator(
      2,
      [](const Point& x) {
        return make_point({0.5 * (x(0) + x(1)), 0.5 * (-x(0) + x(1))});
      },
      t, "rotator");
}

MonotoneOperator projector_operator(const ConvexSet& u) {
  if (!u.is_linear_subspace())
    throw InvalidArgument("projector_operator: U must be a linear subspace");
  OperatorTraits t;
  t.is_linear_relation = true;
  t.is_paramonotone = true;
  t.is_subdifferential = true;
  return MonotoneOperator(
      u.dim(),
      [u](const Point& x) -> Point { return x - 0.5 * u.project(x); },
      t, "P[" + u.describe() + "]");
}

MonotoneOperator identity_map(Eigen::Index dim) {
  OperatorTraits t{true, true, true, false};
  return MonotoneOperator(
      dim, [](const Point& x) -> Point { return 0.5 * x; }, t, "Id");
}

MonotoneOperator zero_map(Eigen::Index dim) {
  OperatorTraits t{true, true, true, false};
  return MonotoneOperator(
      dim, [](const Point& x) { return x; }, t, "0");
}

MonotoneOperator inverse(const MonotoneOperator& a) {
  return MonotoneOperator(
      a.dim(), [a](const Point& x) -> Point { return x - a.resolvent(x); },
      a.traits(), "inv(" + a.label() + ")");
}

MonotoneOperator dual_flip(const MonotoneOperator& b) {
  return MonotoneOperator(
      b.dim(), [b](const Point& x) -> Point { return -b.resolvent(-x); },
      b.traits(), "flip(" + b.label() + ")");
}

namespace {

OperatorTraits shifted_traits(const OperatorTraits& t, const Point& w) {
  OperatorTraits out = t;
  if (w.squaredNorm() != 0.0) {
    out.is_linear_relation = false;
    out.is_skew = false;
  }
  return out;
}

}  // namespace

MonotoneOperator outer_shift(const MonotoneOperator& a, const Point& w) {
  require_dim(w, a.dim(), "outer_shift");
  return MonotoneOperator(
      a.dim(), [a, w](const Point& x) { return a.resolvent(x + w); },
      shifted_traits(a.traits(), w), "outer(" + a.label() + ")");
}

MonotoneOperator inner_shift(const MonotoneOperator& a, const Point& w) {
  require_dim(w, a.dim(), "inner_shift");
  return MonotoneOperator(
      a.dim(),
      [a, w](const Point& x) -> Point { return w + a.resolvent(x - w); },
      shifted_traits(a.traits(), w), "inner(" + a.label() + ")");
}

MonotoneOperator product(const MonotoneOperator& a, const MonotoneOperator& b) {
  const Eigen::Index da = a.dim();
  const Eigen::Index db = b.dim();
  OperatorTraits t;
  t.is_linear_relation = a.traits().is_linear_relation && b.traits().is_linear_relation;
  t.is_paramonotone = a.traits().is_paramonotone && b.traits().is_paramonotone;
  t.is_subdifferential =
      a.traits().is_subdifferential && b.traits().is_subdifferential;
  return MonotoneOperator(
      da + db,
      [a, b, da, db](const Point& x) {
        Point out(da + db);
        out.head(da) = a.resolvent(x.head(da));
        out.tail(db) = b.resolvent(x.tail(db));
        return out;
      },
      t, a.label() + "x" + b.label());
}

Point reflected(const MonotoneOperator& a, const Point& x) {
  return 2.0 * a.resolvent(x) - x;
}

GraphPoint minty_forward(const MonotoneOperator& a, const Point& x) {
  Point p = a.resolvent(x);
  Point n = x - p;
  return GraphPoint(std::move(p), std::move(n));
}

Point minty_inverse(const GraphPoint& g) { return g.point() + g.normal(); }

bool in_graph(const MonotoneOperator& a, const Point& point,
              const Point& normal, double tol) {
  require_dim(normal, point.size(), "in_graph");
  return (a.resolvent(point + normal) - point).norm() <=
         tol * (1.0 + point.norm());
}

Eigen::MatrixXd resolvent_matrix(const MonotoneOperator& a) {
  if (!a.traits().is_linear_relation)
    throw InvalidArgument("resolvent_matrix: " + a.label() +
                          " is not a linear relation");
  const Eigen::Index d = a.dim();
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    m.col(j) = a.resolvent(Point::Unit(d, j));
  return m;
}

}  // namespace drkit
