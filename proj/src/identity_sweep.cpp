#include "drkit/identity_sweep.hpp"

#include <algorithm>
#include <limits>

#include "drkit/errors.hpp"
#include "drkit/sampling.hpp"
#include "drkit/splitting.hpp"

namespace drkit {

namespace {

MonotoneOperator negated(const MonotoneOperator& a) {
  return MonotoneOperator(
      a.dim(), [a](const Point& x) -> Point { return -a.resolvent(x); },
      a.traits(), "neg(" + a.label() + ")");
}

ResidualReport sample_once(const LibraryOperator& la, const LibraryOperator& lb,
                           Sampler& s) {
  const MonotoneOperator& a = la.op;
  const MonotoneOperator& b = lb.op;
  const Eigen::Index d = a.dim();
  const Point x = s.normal_point(d, 2.0);
  const Point y = s.normal_point(d, 2.0);

  ResidualReport rep = dr_decomposition_residuals(a, b, x, y);
  rep.merge_worst(fixed_point_step_residuals(a, b, x));
  rep.merge_worst(three_point_residuals(s.normal_point(d, 2.0),
                                        s.normal_point(d, 2.0),
                                        s.normal_point(d, 2.0)));
  {
    Point p[8];
    for (auto& q : p) q = s.normal_point(d, 2.0);
    rep.residuals["eight_point_expansion"] =
        eight_point_residual(p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7]);
  }
  rep.residuals["self_duality"] = self_duality_residual(a, b, x);
  rep.residuals["product_resolvent"] = product_resolvent_residual(a, b, x, y);
  if (la.inverse_oracle)
    rep.residuals["inverse_resolvent_A"] =
        inverse_resolvent_residual(a, *la.inverse_oracle, x);
  if (lb.inverse_oracle)
    rep.residuals["inverse_resolvent_B"] =
        inverse_resolvent_residual(b, *lb.inverse_oracle, x);
  rep.residuals["minty_round_trip"] =
      relative_gap(minty_inverse(minty_forward(a, x)), x);

  const Point jx = a.resolvent(x);
  const Point jy = a.resolvent(y);
  rep.slacks["J_A_firm_nonexpansive"] =
      (jx - jy).dot(x - y) - (jx - jy).squaredNorm();

  if (a.traits().is_linear_relation && b.traits().is_linear_relation)
    rep.residuals["linear_relation_step"] =
        linear_relation_residual(a, b, x) / (1.0 + x.norm());
  if (a.traits().is_skew && b.traits().is_skew)
    rep.merge_worst(skew_residuals(a, b, x, y));
  rep.context.clear();
  return rep;
}

}  // namespace

IdentitySweepResult check_identities(const SweepOptions& opts) {
  if (opts.samples < 1)
    throw InvalidArgument("check_identities: samples must be >= 1");
  IdentitySweepResult out;
  out.seed = opts.seed;
  out.samples = opts.samples;
  out.min_slack = std::numeric_limits<double>::infinity();

  for (Eigen::Index d = opts.min_dim; d <= opts.max_dim; ++d) {
    Sampler lib_rng{opts.seed, static_cast<std::uint64_t>(d), 0};
    std::vector<LibraryOperator> lib = operator_library(d, lib_rng);
    if (opts.corrupt_first_operator && !lib.empty())
      lib.front().op = negated(lib.front().op);

    for (std::size_t i = 0; i < lib.size(); ++i) {
      for (std::size_t j = 0; j < lib.size(); ++j) {
        Sampler s{opts.seed, static_cast<std::uint64_t>(d), i + 1, j + 1};
        PairSweepReport pr;
        pr.dim = d;
        pr.a_label = lib[i].op.label();
        pr.b_label = lib[j].op.label();
        for (int k = 0; k < opts.samples; ++k)
          pr.worst.merge_worst(sample_once(lib[i], lib[j], s));
        out.max_residual = std::max(out.max_residual, pr.worst.max_residual());
        out.min_slack = std::min(out.min_slack, pr.worst.min_slack());
        out.pairs.push_back(std::move(pr));
      }
    }
  }
  out.pass = out.max_residual <= kIdentityTol && out.min_slack >= kSlackTol;
  return out;
}

}  // namespace drkit
