#include "drkit/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "drkit/errors.hpp"
#include "drkit/splitting.hpp"

namespace drkit {

double ResidualReport::max_residual() const {
  double m = 0.0;
  for (const auto& [_, r] : residuals) m = std::max(m, r);
  return m;
}

double ResidualReport::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [_, s] : slacks) m = std::min(m, s);
  return m;
}

void ResidualReport::merge_worst(const ResidualReport& other) {
  for (const auto& [name, r] : other.residuals) {
    auto [it, inserted] = residuals.emplace(name, r);
    if (!inserted) it->second = std::max(it->second, r);
  }
  for (const auto& [name, s] : other.slacks) {
    auto [it, inserted] = slacks.emplace(name, s);
    if (!inserted) it->second = std::min(it->second, s);
  }
}

double relative_gap(double lhs, double rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

double relative_gap(const Point& lhs, const Point& rhs) {
  return (lhs - rhs).norm() / (1.0 + std::max(lhs.norm(), rhs.norm()));
}

namespace {

void require_same(const MonotoneOperator& a, const MonotoneOperator& b,
                  const Point& x, const char* where) {
  require_dim(x, a.dim(), where);
  if (b.dim() != a.dim()) throw DimensionMismatch(a.dim(), b.dim(), where);
}

// Quantities the decomposition identities are written in.
struct Shadows {
  Point t;        // Tx
  Point ja;       // J_A x
  Point ja_inv;   // J_{A^-1} x
  Point jb;       // J_B R_A x
  Point jb_inv;   // J_{B^-1} R_A x
};

Shadows shadows_at(const MonotoneOperator& a, const MonotoneOperator& b,
                   const Point& x) {
  Shadows s;
  s.ja = a.resolvent(x);
  s.ja_inv = x - s.ja;
  const Point ra = 2.0 * s.ja - x;
  s.jb = b.resolvent(ra);
  s.jb_inv = ra - s.jb;
  s.t = dr_apply(a, b, x);
  return s;
}

}  // namespace

ResidualReport three_point_residuals(const Point& a, const Point& b,
                                     const Point& z) {
  require_dim(b, a.size(), "three_point_residuals");
  require_dim(z, a.size(), "three_point_residuals");
  const Point w = z - a + b;
  const double common = a.dot(z - a) + b.dot(2.0 * a - z - b);

  ResidualReport rep;
  rep.residuals["pairing_with_z_minus_a_plus_b"] =
      relative_gap(z.dot(w), w.squaredNorm() + common);
  rep.residuals["pairing_with_a_minus_b"] =
      relative_gap(z.dot(a - b), (a - b).squaredNorm() + common);
  rep.residuals["norm_split"] = relative_gap(
      z.squaredNorm(), w.squaredNorm() + (b - a).squaredNorm() + 2.0 * common);
  rep.context = {{"a", a}, {"b", b}, {"z", z}};
  return rep;
}

double eight_point_residual(const Point& a, const Point& b, const Point& x,
                            const Point& y, const Point& as, const Point& bs,
                            const Point& u, const Point& v) {
  const Eigen::Index d = a.size();
  for (const Point* p : {&b, &x, &y, &as, &bs, &u, &v})
    require_dim(*p, d, "eight_point_residual");
  const double lhs = (a - x).dot(as - u) + (b - y).dot(bs - v);
  const double rhs = (a - b).dot(as) + x.dot(u) - x.dot(as) - (a - b).dot(u) +
                     b.dot(as + bs) + y.dot(v) - y.dot(bs) - b.dot(u + v);
  return relative_gap(lhs, rhs);
}

ResidualReport dr_decomposition_residuals(const MonotoneOperator& a,
                                          const MonotoneOperator& b,
                                          const Point& x, const Point& y) {
  require_same(a, b, x, "dr_decomposition_residuals");
  require_dim(y, x.size(), "dr_decomposition_residuals");
  const Shadows sx = shadows_at(a, b, x);
  const Shadows sy = shadows_at(a, b, y);

  const Point dt = sx.t - sy.t;
  const Point dxy = x - y;
  const Point dstep = dxy - dt;
  const double pair_a = (sx.ja - sy.ja).dot(sx.ja_inv - sy.ja_inv);
  const double pair_b = (sx.jb - sy.jb).dot(sx.jb_inv - sy.jb_inv);

  const Point ja_tx = a.resolvent(sx.t);
  const Point ja_ty = a.resolvent(sy.t);
  const Point dja_t = ja_tx - ja_ty;
  const Point djainv_t = (sx.t - ja_tx) - (sy.t - ja_ty);
  const double pair_a_t = dja_t.dot(djainv_t);

  const double before =
      (sx.ja - sy.ja).squaredNorm() + (sx.ja_inv - sy.ja_inv).squaredNorm();
  const double after = dja_t.squaredNorm() + djainv_t.squaredNorm();

  ResidualReport rep;
  rep.residuals["T_pairing_decomposition"] =
      relative_gap(dt.dot(dxy), dt.squaredNorm() + pair_a + pair_b);
  rep.residuals["step_pairing_decomposition"] =
      relative_gap(dstep.dot(dxy), dstep.squaredNorm() + pair_a + pair_b);
  rep.residuals["distance_decomposition"] =
      relative_gap(dxy.squaredNorm(), dt.squaredNorm() + dstep.squaredNorm() +
                                          2.0 * pair_a + 2.0 * pair_b);
  rep.residuals["shadow_pair_decrease_decomposition"] = relative_gap(
      before - after, dstep.squaredNorm() + 2.0 * pair_a_t + 2.0 * pair_b);
  rep.slacks["shadow_pair_decrease"] = before - after;
  rep.slacks["A_graph_pairing"] = pair_a;
  rep.slacks["B_graph_pairing"] = pair_b;
  rep.slacks["T_firm_nonexpansive"] = dt.dot(dxy) - dt.squaredNorm();
  rep.context = {{"x", x}, {"y", y}};
  return rep;
}

ResidualReport fixed_point_step_residuals(const MonotoneOperator& a,
                                          const MonotoneOperator& b,
                                          const Point& x) {
  require_same(a, b, x, "fixed_point_step_residuals");
  const MonotoneOperator a_inv = inverse(a);
  const MonotoneOperator b_inv = inverse(b);
  const Point ra = reflected(a, x);
  const Point tx = 0.5 * (x + reflected(b, ra));
  const Point step = x - tx;

  const Point ja = a.resolvent(x);
  const Point jb = b.resolvent(ra);
  const Point ja_inv = a_inv.resolvent(x);
  const Point jb_inv = b_inv.resolvent(ra);

  ResidualReport rep;
  rep.residuals["step_as_primal_shadows"] = relative_gap(step, ja - jb);
  rep.residuals["step_as_dual_shadows"] = relative_gap(step, ja_inv + jb_inv);
  const MonotoneOperator ab = product(a, b);
  const Point p = stack(ja, jb);
  const Point nrm = stack(ja_inv, jb_inv);
  rep.residuals["shadows_in_product_graph"] =
      relative_gap(ab.resolvent(p + nrm), p);
  rep.context = {{"x", x}};
  return rep;
}

double self_duality_residual(const MonotoneOperator& a,
                             const MonotoneOperator& b, const Point& x) {
  require_same(a, b, x, "self_duality_residual");
  return relative_gap(dr_apply(a, b, x),
                      dr_apply(inverse(a), dual_flip(inverse(b)), x));
}

double inverse_resolvent_residual(const MonotoneOperator& a,
                                  const MonotoneOperator& a_inverse,
                                  const Point& x) {
  require_same(a, a_inverse, x, "inverse_resolvent_residual");
  return relative_gap(a.resolvent(x) + a_inverse.resolvent(x), x);
}

double product_resolvent_residual(const MonotoneOperator& a,
                                  const MonotoneOperator& b, const Point& x,
                                  const Point& y) {
  require_dim(x, a.dim(), "product_resolvent_residual");
  require_dim(y, b.dim(), "product_resolvent_residual");
  return relative_gap(product(a, b).resolvent(stack(x, y)),
                      stack(a.resolvent(x), b.resolvent(y)));
}

double linear_relation_residual(const MonotoneOperator& a,
                                const MonotoneOperator& b, const Point& x) {
  require_same(a, b, x, "linear_relation_residual");
  if (!a.traits().is_linear_relation || !b.traits().is_linear_relation)
    throw InvalidArgument("linear_relation_residual: operators must be linear relations");
  const Point ja = a.resolvent(x);
  const Point rhs = ja - 2.0 * b.resolvent(ja) + b.resolvent(x);
  return ((x - dr_apply(a, b, x)) - rhs).norm();
}

ResidualReport projector_resolvent_residuals(const ConvexSet& u,
                                             const Point& x) {
  require_dim(x, u.dim(), "projector_resolvent_residuals");
  const MonotoneOperator a = projector_operator(u);
  const Eigen::MatrixXd pu = u.direction_projector();
  const Eigen::Index d = u.dim();
  const Point direct =
      (Eigen::MatrixXd::Identity(d, d) + pu).ldlt().solve(x);
  const Point pu_perp_x = x - pu * x;

  ResidualReport rep;
  rep.residuals["resolvent_vs_direct_solve"] =
      relative_gap(a.resolvent(x), direct);
  rep.residuals["resolvent_half_identity_plus_complement"] =
      relative_gap(direct, 0.5 * (x + pu_perp_x));
  rep.residuals["reflection_is_complement_projector"] =
      relative_gap(reflected(a, x), pu_perp_x);
  rep.context = {{"x", x}};
  return rep;
}

namespace {

// The forward map of a planar skew operator from its resolvent matrix,
// A = J^{-1} - Id; throws unless A is skew with A^2 = -Id.
Eigen::Matrix2d skew_forward(const MonotoneOperator& op) {
  if (!op.traits().is_skew || op.dim() != 2)
    throw InvalidArgument("skew_residuals: " + op.label() +
                          " is not a planar skew operator");
  const Eigen::Matrix2d j = resolvent_matrix(op);
  const Eigen::Matrix2d m = j.inverse() - Eigen::Matrix2d::Identity();
  const bool skew = (m + m.transpose()).norm() <= 1e-12;
  const bool involutive = (m * m + Eigen::Matrix2d::Identity()).norm() <= 1e-12;
  if (!skew || !involutive)
    throw InvalidArgument("skew_residuals: " + op.label() +
                          " is not skew with square -Id");
  return m;
}

}  // namespace

ResidualReport skew_residuals(const MonotoneOperator& a,
                              const MonotoneOperator& b, const Point& x,
                              const Point& y) {
  require_same(a, b, x, "skew_residuals");
  require_dim(y, x.size(), "skew_residuals");
  const Eigen::Matrix2d fa = skew_forward(a);
  const Eigen::Matrix2d fb = skew_forward(b);

  const auto dr = [&](const Point& p) { return dr_apply(a, b, p); };
  const Point tx = dr(x);
  const Point ty = dr(y);
  const Point dt = tx - ty;
  const Point dxy = x - y;
  const Point dstep = dxy - dt;

  const auto shadow_norms = [&](const Point& p, const Point& q) {
    const Point dj = a.resolvent(p) - a.resolvent(q);
    return dj.squaredNorm() + (p - q - dj).squaredNorm();
  };

  ResidualReport rep;
  rep.residuals["T_pairing_equals_norm"] =
      relative_gap(dt.dot(dxy), dt.squaredNorm());
  rep.residuals["step_pairing_equals_norm"] =
      relative_gap(dstep.dot(dxy), dstep.squaredNorm());
  rep.residuals["pythagoras_pair"] =
      relative_gap(dxy.squaredNorm(), dt.squaredNorm() + dstep.squaredNorm());
  rep.residuals["shadow_pair_decrease_equals_step"] = relative_gap(
      shadow_norms(x, y) - shadow_norms(tx, ty), dstep.squaredNorm());
  rep.residuals["pythagoras"] =
      relative_gap(x.squaredNorm(), tx.squaredNorm() + (x - tx).squaredNorm());
  rep.residuals["T_orthogonal_to_step"] = relative_gap(tx.dot(x - tx), 0.0);
  const Point half_id_minus_ba = 0.5 * (x - fb * (fa * x));
  rep.residuals["step_is_half_id_minus_BA"] = relative_gap(x - tx, half_id_minus_ba);
  rep.context = {{"x", x}, {"y", y}};
  return rep;
}

ResidualReport affine_gap_residual(
    const ConvexSet& u, const ConvexSet& v, const Point& common,
    const Point& x, const std::optional<std::pair<Point, Point>>& zk) {
  if (!u.is_affine() || !v.is_affine())
    throw InvalidArgument("affine_gap_residual: sets must be affine");
  if (v.dim() != u.dim())
    throw DimensionMismatch(u.dim(), v.dim(), "affine_gap_residual");
  require_dim(x, u.dim(), "affine_gap_residual");
  require_dim(common, u.dim(), "affine_gap_residual");
  const double scale = 1e-9 * (1.0 + common.norm());
  if ((u.project(common) - common).norm() > scale ||
      (v.project(common) - common).norm() > scale)
    throw InvalidArgument("affine_gap_residual: common point not in U and V");

  const MonotoneOperator a = normal_cone(u);
  const MonotoneOperator b = normal_cone(v);
  const Point tx = dr_apply(a, b, x);
  const double step_sq = (x - tx).squaredNorm();

  ResidualReport rep;
  rep.residuals["step_equals_projection_gap"] =
      relative_gap(step_sq, (u.project(x) - v.project(x)).squaredNorm());
  rep.context = {{"x", x}, {"common", common}};
  if (zk) {
    const auto& [z, k] = *zk;
    require_dim(z, u.dim(), "affine_gap_residual");
    require_dim(k, u.dim(), "affine_gap_residual");
    const Point c = z + k;
    const double dist_drop = (x - c).squaredNorm() - (tx - c).squaredNorm();
    const auto pair_dist = [&](const Point& p) {
      const Point pp = u.project(p);
      return (pp - z).squaredNorm() + ((p - pp) - k).squaredNorm();
    };
    rep.residuals["pair_distance_drop_equals_distance_drop"] =
        relative_gap(pair_dist(x) - pair_dist(tx), dist_drop);
    rep.residuals["distance_drop_equals_step"] = relative_gap(dist_drop, step_sq);
    rep.context["z"] = z;
    rep.context["k"] = k;
  }
  return rep;
}

}  // namespace drkit
