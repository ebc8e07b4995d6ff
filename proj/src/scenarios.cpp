#include "drkit/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/LU>
#include <Eigen/QR>

#include "drkit/identities.hpp"
#include "drkit/report_io.hpp"
#include "drkit/sampling.hpp"

namespace drkit {

bool RunSummary::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.verdict; });
}

const CheckResult* RunSummary::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

struct Resolved {
  Eigen::Index dim = 0;
  Point x0;
  std::size_t iters = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, double> p;
};

using Checks = std::vector<CheckResult>;

struct Instance {
  DRProblem problem;
  std::function<void(const DRTrace&, Checks&)> checks;
};

struct ParamSpec {
  std::string name;
  double fallback;
  std::function<bool(double)> valid;
  std::string requirement;
};

struct ScenarioDef {
  ScenarioInfo info;
  std::vector<ParamSpec> params;
  Eigen::Index default_dim;
  Eigen::Index min_dim;
  Eigen::Index max_dim;
  std::size_t default_iters;
  double default_tol;
  std::function<Point(const Resolved&)> default_x0;
  std::function<Instance(const Resolved&)> build;
};

CheckResult at_most(std::string name, double value, double tol,
                    std::optional<std::size_t> witness = std::nullopt) {
  return {std::move(name), value <= tol, value, witness};
}

// Largest value of f over the records, with the index where it occurs.
template <class F>
std::pair<double, std::size_t> worst_over(const DRTrace& t, F f) {
  double worst = 0.0;
  std::size_t at = 0;
  for (std::size_t n = 0; n < t.records.size(); ++n) {
    const double v = f(t.records[n]);
    if (v > worst || std::isnan(v)) {
      worst = v;
      at = n;
    }
  }
  return {worst, at};
}

CheckResult fejer_verdict(std::string name, const std::vector<Point>& seq,
                          const SetSample& e, double slack) {
  const FejerResult r = fejer_check(seq, e, slack);
  return {std::move(name), r.monotone, r.worst_increase, r.first_violation};
}

CheckResult step_identity_check(const DRTrace& t) {
  auto [w, at] = worst_over(t, [](const IterationRecord& r) {
    return std::max(relative_gap(r.step, r.shadow - r.b_shadow),
                    relative_gap(r.step, r.dual_shadow + r.b_dual_shadow));
  });
  return at_most("step_as_shadow_differences", w, 1e-10, at);
}

// Both starts run the full budget without early stopping so the series
// terms are compared over the same horizon.
CheckResult summability_check(const DRTrace& t, const Point& y0,
                              std::size_t iters) {
  IterateOptions opts;
  opts.max_iters = iters;
  opts.step_tol = 0.0;
  const DRTrace x = iterate(t.problem, opts);
  const DRTrace u =
      iterate(DRProblem(t.problem.a(), t.problem.b(), y0), opts);
  const SummabilityReport rep = summability_report(x, u);
  const double worst =
      std::max({rep.step_difference.last_term, rep.a_pairing.last_term,
                rep.b_pairing.last_term});
  return {"summability", rep.verdict, worst, std::nullopt};
}

IterateOptions same_options(const DRTrace& t) {
  IterateOptions o;
  o.max_iters = t.records.size();
  o.step_tol = 0.0;
  return o;
}

// Basis (columns) of the kernel of m, empty when m is injective.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  if (lu.rank() == m.cols()) return Eigen::MatrixXd(m.cols(), 0);
  return lu.kernel();
}

SetSample span_sample(const Point& base, const Eigen::MatrixXd& basis,
                      std::string description) {
  SetSample s{{base}, std::move(description)};
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const Point d = basis.col(j).normalized();
    s.points.push_back(base + d);
    s.points.push_back(base - 2.0 * d);
  }
  if (basis.cols() >= 2)
    s.points.push_back(base + basis.rowwise().sum().normalized() * 1.5);
  return s;
}

// Consistent pair of normal cones to affine subspaces through `common`:
// Z = common + (U0 ∩ V0), K = (U0 + V0)^⊥.
void affine_checks(const ConvexSet& u, const ConvexSet& v, const Point& common,
                   const Point& second_start, std::size_t iters,
                   const DRTrace& t, Checks& out) {
  const Eigen::Index d = common.size();
  const Eigen::MatrixXd pu = u.direction_projector();
  const Eigen::MatrixXd pv = v.direction_projector();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd both_perp(2 * d, d), both(2 * d, d);
  both_perp << id - pu, id - pv;
  both << pu, pv;
  const SetSample z = span_sample(common, kernel_basis(both_perp), "Z");
  const SetSample k = span_sample(Point::Zero(d), kernel_basis(both), "K");

  const auto& a = t.problem.a();
  const auto& b = t.problem.b();
  bool cross_ok = true;
  std::vector<PointPair> s_pairs;
  try {
    s_pairs = paramonotone_cross_product(a, b, z, k);
  } catch (const Error&) {
    cross_ok = false;
  }
  out.push_back({"S_equals_Z_times_K", cross_ok, 0.0, std::nullopt});

  SetSample s_sample{{}, "S"};
  SetSample fix{{}, "Fix T"};
  for (const auto& [zi, ki] : s_pairs) {
    s_sample.points.push_back(stack(zi, ki));
    fix.points.push_back(zi + ki);
  }

  auto [gap, gap_at] = worst_over(t, [&](const IterationRecord& r) {
    return affine_gap_residual(u, v, common, r.governing,
                               std::make_pair(z.points.front(),
                                              k.points.back()))
        .max_residual();
  });
  out.push_back(at_most("affine_gap_identity", gap, 1e-10, gap_at));

  const auto shadows = shadow_sequence(t);
  out.push_back(
      at_most("shadow_cauchy", trailing_quarter_diameter(shadows), 1e-6));
  out.push_back(fejer_verdict("shadow_pair_fejer_S", shadow_pair_sequence(t),
                              s_sample, 1e-10));
  out.push_back(
      fejer_verdict("governing_fejer_fix", governing_sequence(t), fix, 1e-10));

  const SweetPrincipleReport sw =
      sweet_principle_check(governing_sequence(t), shadows, z, 1e-6);
  out.push_back({"sweet_principle", sw.verdict,
                 std::max(sw.key_property, sw.u_cauchy_diameter),
                 std::nullopt});
  out.push_back(summability_check(t, second_start, iters));

  const Eigen::MatrixXd zdir = kernel_basis(both_perp);
  Point off = shadows.back() - common;
  if (zdir.cols() > 0) {
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(zdir);
    const Eigen::MatrixXd q =
        qr.householderQ() * Eigen::MatrixXd::Identity(d, zdir.cols());
    off -= q * (q.transpose() * off);
  }
  out.push_back(at_most("shadow_limit_in_Z", off.norm(), 1e-6));
  out.push_back(step_identity_check(t));
}

ConvexSet line(const Point& offset, const Point& dir) {
  const Point dirs[] = {dir};
  return ConvexSet::affine(offset, dirs);
}

std::vector<ScenarioDef> registry() {
  auto positive = [](double x) { return x > 0.0; };
  auto nonzero = [](double x) { return x != 0.0; };
  auto any = [](double) { return true; };

  std::vector<ScenarioDef> r;

  r.push_back(ScenarioDef{
      {"rotator-cone",
       "N of the nonnegative quadrant against the 90-degree rotator",
       "cone plus skew rotator: shadow pairs are Fejer monotone w.r.t. the "
       "extended solution set but not w.r.t. Z x K",
       {"a"}},
      {{"a", 1.0, positive, "> 0"}},
      2, 2, 2, 100, 1e-12,
      [](const Resolved& c) { return make_point({c.p.at("a"), 0.0}); },
      [](const Resolved& c) {
        const double a = c.p.at("a");
        DRProblem prob(normal_cone(ConvexSet::orthant(2)), rotator(), c.x0);
        return Instance{prob, [a](const DRTrace& t, Checks& out) {
          const auto& A = t.problem.a();
          const auto& B = t.problem.b();
          const Point x = make_point({a, 0.0});
          const Point tx = dr_apply(A, B, x);
          const Point z = make_point({2.0 * a, 0.0});
          const Point k = make_point({0.0, -a});
          const Point zk = stack(z, k);
          auto pair_at = [&](const Point& y) {
            const Point j = A.resolvent(y);
            return stack(j, y - j);
          };
          const double pair_diff = (pair_at(tx) - zk).squaredNorm() -
                                   (pair_at(x) - zk).squaredNorm();
          const double z_diff = (A.resolvent(tx) - z).squaredNorm() -
                                (A.resolvent(x) - z).squaredNorm();
          const double scale = std::max(1.0, a * a);
          out.push_back({"pair_distance_increase",
                         std::abs(pair_diff - 0.5 * a * a) <= 1e-12 * scale,
                         pair_diff, 0});
          out.push_back({"z_distance_increase",
                         std::abs(z_diff - 1.25 * a * a) <= 1e-12 * scale,
                         z_diff, 0});
          out.push_back(at_most("T_of_start",
                                (tx - make_point({0.5 * a, -0.5 * a})).norm(),
                                1e-15 * std::max(1.0, a)));

          const FejerResult zf =
              fejer_check({A.resolvent(x), A.resolvent(tx)}, {{z}, "z"}, 0.0);
          out.push_back({"z_only_fejer_fails",
                         !zf.monotone && zf.first_violation == 0 &&
                             std::abs(zf.violation_sq_increase - 1.25 * a * a) <=
                                 1e-12 * scale,
                         zf.violation_sq_increase, zf.first_violation});

          SetSample s{{}, "S = {((t,0),(0,-t)) : t >= 0}"};
          for (double m : {0.0, 0.5, 1.0, 2.0, 4.0})
            s.points.push_back(make_point({m * a, 0.0, 0.0, -m * a}));
          out.push_back(fejer_verdict("shadow_pair_fejer_S",
                                      shadow_pair_sequence(t), s, 1e-10));

          const Point y = find_fixed_point(t.problem);
          const double tpar = std::max(0.0, 0.5 * (y(0) - y(1)));
          out.push_back(at_most("fixed_point_on_ray",
                                (y - tpar * make_point({1.0, -1.0})).norm(),
                                1e-10));

          SetSample fix{{}, "t(1,-1)"};
          for (double m : {0.0, 0.5, 1.0, 3.0})
            fix.points.push_back(make_point({m, -m}));
          const PrimalDualSample pd = primal_dual_from_fix(A, B, fix);
          double zk_err = 0.0;
          for (std::size_t i = 0; i < fix.points.size(); ++i) {
            const double m = fix.points[i](0);
            zk_err = std::max(
                {zk_err, (pd.Z.points[i] - make_point({m, 0.0})).norm(),
                 (pd.K.points[i] - make_point({0.0, -m})).norm()});
          }
          out.push_back(at_most("Z_and_K_on_fixed_ray", zk_err, 1e-12));

          bool refused = false;
          try {
            paramonotone_cross_product(A, B, pd.Z, pd.K);
          } catch (const InvalidArgument&) {
            refused = true;
          }
          out.push_back({"cross_product_refused", refused, 0.0, std::nullopt});
          out.push_back(step_identity_check(t));
        }};
      }});

  r.push_back(ScenarioDef{
      {"shifted-subspace",
       "N_U against Id + N_{U-b} with U = R^{d-1} x {0} and b = beta e_d",
       "inconsistent pair with v = b: shadows converge while the governing "
       "and dual shadow sequences diverge",
       {"beta", "growth_from"}},
      {{"beta", 1.0, nonzero, "!= 0"},
       {"growth_from", 5.0, [](double x) { return x >= 0 && x == std::floor(x); },
        "nonnegative integer"}},
      2, 2, 64, 201, 1e-12,
      [](const Resolved& c) { return Point::Ones(c.dim); },
      [](const Resolved& c) {
        const Eigen::Index d = c.dim;
        std::vector<Point> dirs;
        for (Eigen::Index i = 0; i + 1 < d; ++i) {
          Point e = Point::Zero(d);
          e(i) = 1.0;
          dirs.push_back(e);
        }
        const ConvexSet u = ConvexSet::subspace(d, dirs);
        Point b = Point::Zero(d);
        b(d - 1) = c.p.at("beta");
        const auto growth_from = static_cast<std::size_t>(c.p.at("growth_from"));
        DRProblem prob(normal_cone(u),
                       scaled_id_plus_normal_cone(1.0, ConvexSet::affine(-b, dirs)),
                       c.x0);
        return Instance{prob, [u, b, growth_from](const DRTrace& t, Checks& out) {
          const auto& recs = t.records;
          out.push_back(at_most("v_estimate", (t.v_estimate - b).norm(), 1e-9));

          const Point pu0 = u.project(t.problem.x0());
          auto [halving, h_at] = worst_over(t, [&](const IterationRecord& r) {
            if (r.n > 40) return 0.0;
            return (r.shadow - std::ldexp(1.0, -static_cast<int>(r.n)) * pu0).norm();
          });
          out.push_back(at_most("shadow_halving", halving, 1e-10, h_at));

          std::optional<std::size_t> drop;
          for (std::size_t n = growth_from; n + 1 < recs.size(); ++n)
            if (!(recs[n + 1].governing.norm() > recs[n].governing.norm())) {
              drop = n;
              break;
            }
          out.push_back({"governing_norm_increasing", !drop.has_value(),
                         recs.back().governing.norm(), drop});

          const std::size_t last = recs.size() - 1;
          const double ds_last = recs[last].dual_shadow.norm();
          const double ds_quarter = recs[last / 4].dual_shadow.norm();
          out.push_back({"dual_shadow_unbounded", last >= 4 && ds_last > ds_quarter,
                         ds_last - ds_quarter, last});

          const OperatorPair np = normal_problem(t.problem.a(), t.problem.b(), b);
          const DRProblem shifted(np.a, np.b, t.problem.x0());
          const Point y = find_fixed_point(shifted);
          out.push_back(at_most("normal_problem_zero_at_origin",
                                np.a.resolvent(y).norm(), 1e-9));
          const Point k = y - np.a.resolvent(y);
          out.push_back(at_most("normal_problem_dual_in_U_perp",
                                u.project(k).norm(), 1e-9));
          out.push_back(step_identity_check(t));
        }};
      }});

  r.push_back(ScenarioDef{
      {"parallel-lines",
       "normal cones of the lines y = h and y = -h",
       "inconsistent affine feasibility: v = (0, 2h), constant shadows, "
       "normal problem with zeros on the upper line",
       {"half_gap"}},
      {{"half_gap", 1.0, positive, "> 0"}},
      2, 2, 2, 100, 1e-12,
      [](const Resolved&) { return make_point({3.0, 5.0}); },
      [](const Resolved& c) {
        const double h = c.p.at("half_gap");
        const Point e1 = make_point({1.0, 0.0});
        DRProblem prob(normal_cone(line(make_point({0.0, h}), e1)),
                       normal_cone(line(make_point({0.0, -h}), e1)), c.x0);
        return Instance{prob, [h](const DRTrace& t, Checks& out) {
          const Point v = make_point({0.0, 2.0 * h});
          const Point x0 = t.problem.x0();
          out.push_back(at_most("v_estimate", (t.v_estimate - v).norm(), 1e-9));
          const Point s0 = make_point({x0(0), h});
          auto [sc, sc_at] = worst_over(t, [&](const IterationRecord& r) {
            return relative_gap(r.shadow, s0);
          });
          out.push_back(at_most("shadow_constant", sc, 1e-12, sc_at));

          SetSample zv{{}, "Z_v sample on y = h"};
          for (double m : {-2.0, -1.0, 0.0, 1.0, 2.0})
            zv.points.push_back(make_point({x0(0) + m, h}));
          const auto shifted = shifted_governing(t, v);
          out.push_back(
              fejer_verdict("shifted_governing_fejer_Zv", shifted, zv, 1e-9));

          bool flagged = false;
          double v_err = std::numeric_limits<double>::infinity();
          try {
            find_fixed_point(t.problem, 1e-12, 1000);
          } catch (const PossiblyInconsistent& e) {
            flagged = true;
            v_err = (e.v_estimate() - v).norm();
          }
          out.push_back({"possibly_inconsistent_flagged", flagged && v_err <= 1e-9,
                         v_err, std::nullopt});

          const SummabilityReport sr = summability_report(
              t, iterate(DRProblem(t.problem.a(), t.problem.b(),
                                   x0 + make_point({1.0, -2.0})),
                         same_options(t)));
          const double step_sum = sr.step_difference.partial_sums.empty()
                                      ? 0.0
                                      : sr.step_difference.partial_sums.back();
          out.push_back(at_most("translation_step_differences", step_sum, 1e-20));

          const SweetPrincipleReport sw = sweet_principle_check(
              shifted, shadow_sequence(t), {{s0}, "(x0_1, h)"}, 1e-9);
          out.push_back({"sweet_principle", sw.verdict,
                         std::max(sw.key_property, sw.u_cauchy_diameter),
                         std::nullopt});

          const OperatorPair np = normal_problem(t.problem.a(), t.problem.b(), v);
          const Point y = find_fixed_point(DRProblem(np.a, np.b, x0));
          out.push_back(at_most("normal_problem_zero_on_line",
                                std::abs(np.a.resolvent(y)(1) - h), 1e-9));
          out.push_back(step_identity_check(t));
        }};
      }});

  r.push_back(ScenarioDef{
      {"disjoint-balls",
       "normal cones of unit balls centred at (0,0) and (s,0), s > 2",
       "inconsistent feasibility with a curved boundary: shadows converge to "
       "the nearest point (1,0) and v = (2 - s, 0)",
       {"separation"}},
      {{"separation", 4.0, [](double x) { return x > 2.0; }, "> 2"}},
      2, 2, 2, 5000, 1e-12,
      [](const Resolved&) { return make_point({0.0, 2.0}); },
      [](const Resolved& c) {
        const double s = c.p.at("separation");
        DRProblem prob(normal_cone(ConvexSet::ball(Point::Zero(2), 1.0)),
                       normal_cone(ConvexSet::ball(make_point({s, 0.0}), 1.0)),
                       c.x0);
        return Instance{prob, [s](const DRTrace& t, Checks& out) {
          const Point v = make_point({2.0 - s, 0.0});
          const Point near = make_point({1.0, 0.0});
          const auto shadows = shadow_sequence(t);
          out.push_back(at_most("shadow_limit", (shadows.back() - near).norm(),
                                1e-6, shadows.size() - 1));
          out.push_back(at_most("v_estimate", (t.v_estimate - v).norm(), 1e-5));
          out.push_back(fejer_verdict("shifted_governing_fejer_Zv",
                                      shifted_governing(t, v),
                                      {{near}, "Z_v = {(1,0)}"}, 1e-9));
          out.push_back(
              at_most("shadow_cauchy", trailing_quarter_diameter(shadows), 1e-6));
          if (t.records.size() >= 2) {
            const DisplacementEstimate est = estimate_displacement(t);
            out.push_back({"step_norms_nonincreasing", est.norms_nonincreasing,
                           est.step_norms.back(), std::nullopt});
          }
          const OperatorPair np = normal_problem(t.problem.a(), t.problem.b(), v);
          const Point y = find_fixed_point(DRProblem(np.a, np.b, t.problem.x0()));
          out.push_back(at_most("normal_problem_zero_at_nearest_point",
                                (np.a.resolvent(y) - near).norm(), 1e-9));
          out.push_back(step_identity_check(t));
        }};
      }});

  r.push_back(ScenarioDef{
      {"affine-consistent",
       "normal cones of w + span{(1,0)} and w + span{(1,1)}",
       "linear relations meeting in one point: gap identity, Fejer "
       "monotonicity and summability on a consistent affine pair",
       {"w0", "w1"}},
      {{"w0", 1.0, any, "finite"}, {"w1", 2.0, any, "finite"}},
      2, 2, 2, 10000, 1e-15,
      [](const Resolved&) { return make_point({-3.0, 4.0}); },
      [](const Resolved& c) {
        const Point w = make_point({c.p.at("w0"), c.p.at("w1")});
        const ConvexSet u = line(w, make_point({1.0, 0.0}));
        const ConvexSet v = line(w, make_point({1.0, 1.0}));
        DRProblem prob(normal_cone(u), normal_cone(v), c.x0);
        const Point y0 = c.x0 + make_point({2.0, -1.0});
        return Instance{prob, [u, v, w, y0, n = c.iters](const DRTrace& t,
                                                          Checks& out) {
          affine_checks(u, v, w, y0, n, t, out);
        }};
      }});

  r.push_back(ScenarioDef{
      {"points-1d",
       "normal cones of {0} and {c} on the real line",
       "simplest inconsistent pair: T is translation by c and v = -c",
       {"c"}},
      {{"c", 2.0, nonzero, "!= 0"}},
      1, 1, 1, 50, 1e-12,
      [](const Resolved&) { return make_point({0.0}); },
      [](const Resolved& c) {
        const double off = c.p.at("c");
        DRProblem prob(normal_cone(ConvexSet::singleton(make_point({0.0}))),
                       normal_cone(ConvexSet::singleton(make_point({off}))),
                       c.x0);
        return Instance{prob, [off](const DRTrace& t, Checks& out) {
          const Point v = make_point({-off});
          const double x0 = t.problem.x0()(0);
          out.push_back(at_most("v_estimate", (t.v_estimate - v).norm(), 1e-12));
          auto [g, g_at] = worst_over(t, [&](const IterationRecord& r) {
            return relative_gap(r.governing(0),
                                x0 + static_cast<double>(r.n) * off);
          });
          out.push_back(at_most("governing_translation", g, 1e-12, g_at));
          auto [sh, sh_at] = worst_over(
              t, [](const IterationRecord& r) { return r.shadow.norm(); });
          out.push_back(at_most("shadow_zero", sh, 0.0, sh_at));
          double shift = 0.0;
          for (const Point& p : shifted_governing(t, v))
            shift = std::max(shift, relative_gap(p, t.problem.x0()));
          out.push_back(at_most("shifted_governing_constant", shift, 1e-12));

          bool flagged = false;
          double v_err = std::numeric_limits<double>::infinity();
          try {
            find_fixed_point(t.problem, 1e-12, 100);
          } catch (const PossiblyInconsistent& e) {
            flagged = true;
            v_err = (e.v_estimate() - v).norm();
          }
          out.push_back({"possibly_inconsistent_flagged", flagged && v_err <= 1e-12,
                         v_err, std::nullopt});

          const OperatorPair np = normal_problem(t.problem.a(), t.problem.b(), v);
          const Point y = find_fixed_point(DRProblem(np.a, np.b, t.problem.x0()));
          out.push_back(at_most("normal_problem_zero_at_origin",
                                np.a.resolvent(y).norm(), 1e-12));
        }};
      }});

  r.push_back(ScenarioDef{
      {"random-1d",
       "seeded pair of monotone piecewise linear graphs on the real line "
       "sharing a solution",
       "real-line case: shadow and dual shadow are separately Fejer "
       "monotone w.r.t. Z and K",
       {}},
      {},
      1, 1, 1, 10000, 1e-15,
      [](const Resolved& c) {
        Sampler s{c.seed, 2};
        return make_point({s.uniform(-5.0, 5.0)});
      },
      [](const Resolved& c) {
        Sampler s{c.seed, 1};
        const RandomConsistent1d g = random_consistent_1d(s);
        DRProblem prob(piecewise_linear_1d(g.a), piecewise_linear_1d(g.b), c.x0);
        Sampler s2{c.seed, 3};
        const Point y0 = make_point({s2.uniform(-5.0, 5.0)});
        return Instance{prob, [g, y0, n = c.iters](const DRTrace& t,
                                                    Checks& out) {
          const auto& A = t.problem.a();
          const auto& B = t.problem.b();
          const Point z = make_point({g.z});
          const Point k = make_point({g.k});
          const DecoupledFejerResult dec =
              decoupled_1d_fejer_check(t.problem, z, k, t);
          out.push_back({"decoupled_fejer", dec.ok(), 0.0, dec.first_violation});

          const auto shadows = shadow_sequence(t);
          out.push_back(
              at_most("shadow_cauchy", trailing_quarter_diameter(shadows), 1e-6));

          SetSample fix{{z + k}, "Fix T"};
          for (double start : {-6.0, -1.0, 0.5, 4.0})
            fix.points.push_back(
                find_fixed_point(DRProblem(A, B, make_point({start}))));
          const PrimalDualSample pd = primal_dual_from_fix(A, B, fix);
          bool cross_ok = true;
          std::vector<PointPair> pairs;
          try {
            pairs = paramonotone_cross_product(A, B, pd.Z, pd.K);
          } catch (const Error&) {
            cross_ok = false;
          }
          out.push_back({"S_equals_Z_times_K", cross_ok, 0.0, std::nullopt});
          SetSample s_sample{{}, "S"};
          for (const auto& [zi, ki] : pairs) s_sample.points.push_back(stack(zi, ki));
          out.push_back(fejer_verdict("shadow_pair_fejer_S",
                                      shadow_pair_sequence(t), s_sample, 1e-10));
          out.push_back(summability_check(t, y0, n));

          const Point sl = shadows.back();
          const Point kl = t.records.back().dual_shadow;
          out.push_back(at_most(
              "shadow_limit_in_Z",
              std::max((A.resolvent(sl + kl) - sl).norm(),
                       (B.resolvent(sl - kl) - sl).norm()),
              1e-6));
          out.push_back(step_identity_check(t));
        }};
      }});

  r.push_back(ScenarioDef{
      {"random-affine",
       "normal cones of two seeded random affine subspaces through a common "
       "point",
       "consistent linear-relation pair: Z = common + (U0 ∩ V0), "
       "K = (U0 + V0)^perp, S = Z x K",
       {}},
      {},
      5, 1, 64, 10000, 1e-15,
      [](const Resolved& c) {
        Sampler s{c.seed, static_cast<std::uint64_t>(c.dim), 2};
        return s.normal_point(c.dim, 3.0);
      },
      [](const Resolved& c) {
        Sampler s{c.seed, static_cast<std::uint64_t>(c.dim), 1};
        const RandomAffinePair pr = random_affine_pair(s, c.dim);
        DRProblem prob(normal_cone(pr.u), normal_cone(pr.v), c.x0);
        Sampler s2{c.seed, static_cast<std::uint64_t>(c.dim), 3};
        const Point y0 = s2.normal_point(c.dim, 3.0);
        return Instance{prob, [pr, y0, n = c.iters](const DRTrace& t,
                                                     Checks& out) {
          affine_checks(pr.u, pr.v, pr.common, y0, n, t, out);
        }};
      }});

  return r;
}

const ScenarioDef& lookup(const std::vector<ScenarioDef>& reg,
                          const std::string& name) {
  for (const auto& d : reg)
    if (d.info.name == name) return d;
  throw ConfigError("unknown scenario '" + name + "' (see --list)");
}

double parse_param(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw ConfigError("parameter '" + key + "' is not a finite number: '" +
                      text + "'");
  return v;
}

Resolved resolve(const ScenarioDef& def, const ScenarioConfig& cfg) {
  Resolved r;
  r.seed = cfg.seed;
  r.dim = cfg.dim.value_or(cfg.x0 ? cfg.x0->size() : def.default_dim);
  if (r.dim < def.min_dim || r.dim > def.max_dim)
    throw ConfigError("invalid dimension " + std::to_string(r.dim) + " for " +
                      def.info.name + " (allowed " +
                      std::to_string(def.min_dim) + ".." +
                      std::to_string(def.max_dim) + ")");

  for (const auto& [key, text] : cfg.params) {
    const auto it = std::find_if(def.params.begin(), def.params.end(),
                                 [&](const ParamSpec& p) { return p.name == key; });
    if (it == def.params.end())
      throw ConfigError("scenario " + def.info.name +
                        " has no parameter '" + key + "'");
  }
  for (const auto& spec : def.params) {
    const auto it = cfg.params.find(spec.name);
    const double v =
        it == cfg.params.end() ? spec.fallback : parse_param(spec.name, it->second);
    if (!spec.valid(v))
      throw ConfigError("parameter '" + spec.name + "' must be " +
                        spec.requirement);
    r.p[spec.name] = v;
  }

  r.iters = cfg.iters.value_or(def.default_iters);
  if (r.iters < 1) throw ConfigError("iters must be >= 1");
  r.tol = cfg.tol.value_or(def.default_tol);
  if (!(r.tol >= 0.0) || !std::isfinite(r.tol))
    throw ConfigError("tol must be a finite number >= 0");

  r.x0 = cfg.x0 ? *cfg.x0 : def.default_x0(r);
  if (r.x0.size() != r.dim)
    throw ConfigError("x0 has " + std::to_string(r.x0.size()) +
                      " coordinates, expected " + std::to_string(r.dim));
  if (!is_finite(r.x0)) throw ConfigError("x0 must be finite");
  return r;
}

}  // namespace

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const auto& d : registry()) out.push_back(d.info);
  return out;
}

ScenarioRun run_scenario(const ScenarioConfig& config) {
  const auto reg = registry();
  const ScenarioDef& def = lookup(reg, config.scenario);
  const Resolved res = resolve(def, config);

  const auto start = std::chrono::steady_clock::now();
  Instance inst = def.build(res);
  IterateOptions opts;
  opts.max_iters = res.iters;
  opts.step_tol = res.tol;
  DRTrace trace = iterate(inst.problem, opts);

  RunSummary s;
  s.scenario = def.info.name;
  s.iters = trace.records.size();
  s.v_estimate = trace.v_estimate;
  s.final_step_norm = trace.records.back().step.norm();
  s.shadow_limit = trace.records.back().shadow;
  inst.checks(trace, s.checks);
  if (config.timing)
    s.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return {std::move(s), std::move(trace)};
}

RunSummary run(const ScenarioConfig& config) {
  OutputFile trace_out(config.out_trace);
  OutputFile summary_out(config.out_summary);
  ScenarioRun r = run_scenario(config);
  trace_out.write(trace_csv(r.trace));
  summary_out.write(summary_json(r.summary));
  return std::move(r.summary);
}

}  // namespace drkit
