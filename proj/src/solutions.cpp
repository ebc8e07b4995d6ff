#include "drkit/solutions.hpp"

#include <algorithm>
#include <cmath>

#include "drkit/errors.hpp"

namespace drkit {

Point find_fixed_point(const DRProblem& p, double tol, std::size_t max_iters) {
  Point x = p.x0();
  Point step = Point::Zero(p.dim());
  for (std::size_t n = 0; n < max_iters; ++n) {
    const Point tx = dr_apply(p.a(), p.b(), x);
    if (!tx.allFinite()) throw NonFiniteValue(n, "find_fixed_point");
    step = x - tx;
    if (step.norm() <= tol) return x;
    x = tx;
  }
  throw PossiblyInconsistent(step, step.norm());
}

PrimalDualSample primal_dual_from_fix(const MonotoneOperator& a,
                                      const MonotoneOperator& b,
                                      const SetSample& fix_points, double tol) {
  PrimalDualSample out;
  out.Z.description = "J_A(" + fix_points.description + ")";
  out.K.description = "J_{A^-1}(" + fix_points.description + ")";
  for (std::size_t i = 0; i < fix_points.points.size(); ++i) {
    const Point& y = fix_points.points[i];
    const double step = (y - dr_apply(a, b, y)).norm();
    if (step > tol)
      throw InvalidArgument("primal_dual_from_fix: point " + std::to_string(i) +
                            " is not fixed (step norm " + std::to_string(step) +
                            ")");
    const GraphPoint g = minty_forward(a, y);
    out.Z.points.push_back(g.point());
    out.K.points.push_back(g.normal());
    out.pairs.emplace_back(g.point(), g.normal());
  }
  return out;
}

std::vector<PointPair> paramonotone_cross_product(const MonotoneOperator& a,
                                                  const MonotoneOperator& b,
                                                  const SetSample& z,
                                                  const SetSample& k,
                                                  double tol) {
  if (!a.traits().is_paramonotone || !b.traits().is_paramonotone)
    throw InvalidArgument(
        "paramonotone_cross_product: Z x K is not the extended solution set "
        "unless both operators are paramonotone");
  std::vector<PointPair> out;
  out.reserve(z.points.size() * k.points.size());
  for (const auto& zp : z.points) {
    for (const auto& kp : k.points) {
      const Point y = zp + kp;
      const double step = (y - dr_apply(a, b, y)).norm();
      if (step > tol * (1.0 + y.norm()))
        throw InvalidArgument("paramonotone_cross_product: z + k not in Fix T "
                              "(step norm " + std::to_string(step) + ")");
      out.emplace_back(zp, kp);
    }
  }
  return out;
}

SolutionSets consistent_solution_sets(const MonotoneOperator& a,
                                      const MonotoneOperator& b,
                                      SetSample fix_points, double tol) {
  PrimalDualSample pd = primal_dual_from_fix(a, b, fix_points, tol);
  for (std::size_t i = 0; i < pd.pairs.size(); ++i) {
    const auto& [z, k] = pd.pairs[i];
    const Point y = z + k;
    if ((y - fix_points.points[i]).norm() > tol ||
        (a.resolvent(y) - z).norm() > tol)
      throw InvalidArgument("consistent_solution_sets: Minty round trip failed "
                            "for pair " + std::to_string(i));
  }
  SolutionSets s;
  s.fix_T = std::move(fix_points);
  s.Z = std::move(pd.Z);
  s.K = std::move(pd.K);
  s.S_pairs = std::move(pd.pairs);
  s.v = Point::Zero(a.dim());
  s.Z_v = s.Z;
  s.K_v = s.K;
  return s;
}

FejerResult fejer_check(const std::vector<Point>& seq, const SetSample& e,
                        double slack) {
  FejerResult res;
  if (seq.empty() || e.points.empty())
    throw InvalidArgument("fejer_check: empty sequence or reference sample");
  for (const auto& p : e.points) require_dim(p, seq.front().size(), "fejer_check");

  std::vector<double> prev(e.points.size());
  for (std::size_t j = 0; j < e.points.size(); ++j)
    prev[j] = (seq.front() - e.points[j]).norm();
  for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
    for (std::size_t j = 0; j < e.points.size(); ++j) {
      const double next = (seq[n + 1] - e.points[j]).norm();
      const double increase = next - prev[j];
      res.worst_increase = std::max(res.worst_increase, increase);
      if (increase > slack && !res.first_violation) {
        res.monotone = false;
        res.first_violation = n;
        res.witness_point = j;
        res.violation_sq_increase =
            (seq[n + 1] - e.points[j]).squaredNorm() -
            (seq[n] - e.points[j]).squaredNorm();
      }
      prev[j] = next;
    }
  }
  return res;
}

double trailing_quarter_diameter(const std::vector<Point>& seq) {
  if (seq.empty()) return 0.0;
  const std::size_t window = std::max<std::size_t>(1, seq.size() / 4);
  const std::size_t first = seq.size() - window;
  // Exact up to a few thousand points, then the bound 2 * max ||p - last||.
  if (window > 4096) {
    double r = 0.0;
    for (std::size_t i = first; i < seq.size(); ++i)
      r = std::max(r, (seq[i] - seq.back()).norm());
    return 2.0 * r;
  }
  double diam = 0.0;
  for (std::size_t i = first; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      diam = std::max(diam, (seq[i] - seq[j]).norm());
  return diam;
}

SweetPrincipleReport sweet_principle_check(const std::vector<Point>& x_seq,
                                           const std::vector<Point>& u_seq,
                                           const SetSample& e, double tol,
                                           double fejer_slack) {
  if (x_seq.size() != u_seq.size())
    throw InvalidArgument("sweet_principle_check: sequence lengths differ");
  if (x_seq.size() < 2)
    throw InvalidArgument("sweet_principle_check: need at least 2 terms");
  SweetPrincipleReport rep;
  rep.x_fejer = fejer_check(x_seq, e, fejer_slack).monotone;
  const std::size_t window = std::max<std::size_t>(1, x_seq.size() / 4);
  for (std::size_t n = x_seq.size() - window; n < x_seq.size(); ++n)
    for (const auto& ep : e.points)
      rep.key_property = std::max(
          rep.key_property, std::abs((u_seq[n] - ep).dot(u_seq[n] - x_seq[n])));
  rep.u_cauchy_diameter = trailing_quarter_diameter(u_seq);
  rep.verdict =
      rep.x_fejer && rep.key_property <= tol && rep.u_cauchy_diameter <= tol;
  return rep;
}

namespace {

bool same_operator(const MonotoneOperator& p, const MonotoneOperator& q) {
  if (p.dim() != q.dim() || p.label() != q.label()) return false;
  const Eigen::Index d = p.dim();
  for (Eigen::Index j = 0; j <= d; ++j) {
    const Point probe = j < d ? Point(3.0 * Point::Unit(d, j))
                              : Point(Point::LinSpaced(d, -1.5, 2.5));
    if ((p.resolvent(probe) - q.resolvent(probe)).norm() > 1e-14) return false;
  }
  return true;
}

}  // namespace

SummabilityReport summability_report(const DRTrace& trace_x,
                                     const DRTrace& trace_y, double term_tol,
                                     double pairing_slack) {
  if (!same_operator(trace_x.problem.a(), trace_y.problem.a()) ||
      !same_operator(trace_x.problem.b(), trace_y.problem.b()))
    throw InvalidArgument("summability_report: traces come from different problems");

  SummabilityReport rep;
  const std::size_t m = std::min(trace_x.records.size(), trace_y.records.size());
  double sums[3] = {0.0, 0.0, 0.0};
  double last[3] = {0.0, 0.0, 0.0};
  SeriesSummary* series[3] = {&rep.step_difference, &rep.a_pairing, &rep.b_pairing};
  for (auto* s : series) {
    s->partial_sums.reserve(m);
    s->min_term = m > 0 ? INFINITY : 0.0;
  }
  for (std::size_t n = 0; n < m; ++n) {
    const auto& rx = trace_x.records[n];
    const auto& ry = trace_y.records[n];
    last[0] = (rx.step - ry.step).squaredNorm();
    last[1] = (rx.shadow - ry.shadow).dot(rx.dual_shadow - ry.dual_shadow);
    last[2] = (rx.b_shadow - ry.b_shadow).dot(rx.b_dual_shadow - ry.b_dual_shadow);
    for (int i = 0; i < 3; ++i) {
      sums[i] += last[i];
      series[i]->partial_sums.push_back(sums[i]);
      series[i]->min_term = std::min(series[i]->min_term, last[i]);
    }
  }
  for (int i = 0; i < 3; ++i) series[i]->last_term = last[i];
  rep.pairings_nonnegative = rep.a_pairing.min_term >= -pairing_slack &&
                             rep.b_pairing.min_term >= -pairing_slack;
  rep.final_terms_small = std::abs(last[0]) <= term_tol &&
                          std::abs(last[1]) <= term_tol &&
                          std::abs(last[2]) <= term_tol;
  rep.verdict = rep.pairings_nonnegative && rep.final_terms_small;
  return rep;
}

DecoupledFejerResult decoupled_1d_fejer_check(const DRProblem& p,
                                              const Point& z, const Point& k,
                                              const DRTrace& trace) {
  if (p.dim() != 1 || z.size() != 1 || k.size() != 1)
    throw InvalidArgument("decoupled_1d_fejer_check: requires dimension 1");
  constexpr double slack = 1e-12;
  DecoupledFejerResult res;
  const auto& recs = trace.records;
  for (std::size_t n = 0; n + 1 < recs.size(); ++n) {
    const bool s_ok = std::abs(recs[n + 1].shadow(0) - z(0)) <=
                      std::abs(recs[n].shadow(0) - z(0)) + slack;
    const bool d_ok = std::abs(recs[n + 1].dual_shadow(0) - k(0)) <=
                      std::abs(recs[n].dual_shadow(0) - k(0)) + slack;
    if ((!s_ok || !d_ok) && !res.first_violation) res.first_violation = n;
    res.shadow_fejer = res.shadow_fejer && s_ok;
    res.dual_shadow_fejer = res.dual_shadow_fejer && d_ok;
  }
  return res;
}

}  // namespace drkit
