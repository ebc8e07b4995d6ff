#include "drkit/splitting.hpp"

#include "drkit/errors.hpp"

namespace drkit {

DRProblem::DRProblem(MonotoneOperator a, MonotoneOperator b, Point x0)
    : a_(std::move(a)), b_(std::move(b)), x0_(std::move(x0)) {
  require_dim(x0_, a_.dim(), "DRProblem: x0");
  if (b_.dim() != a_.dim())
    throw DimensionMismatch(a_.dim(), b_.dim(), "DRProblem: B");
  require_finite(x0_, "DRProblem: x0");
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::max_iters:
      return "max_iters";
    case StopReason::step_converged:
      return "step_converged";
    case StopReason::shadow_cauchy:
      return "shadow_cauchy";
  }
  return "unknown";
}

Point dr_apply(const MonotoneOperator& a, const MonotoneOperator& b,
               const Point& x) {
  require_dim(x, a.dim(), "dr_apply");
  if (b.dim() != a.dim()) throw DimensionMismatch(a.dim(), b.dim(), "dr_apply");
  const Point ja = a.resolvent(x);
  return x - ja + b.resolvent(2.0 * ja - x);
}

IterationRecord dr_record(const MonotoneOperator& a, const MonotoneOperator& b,
                          const Point& x, std::size_t n) {
  require_dim(x, a.dim(), "dr_record");
  if (b.dim() != a.dim()) throw DimensionMismatch(a.dim(), b.dim(), "dr_record");
  IterationRecord r;
  r.n = n;
  r.governing = x;
  r.shadow = a.resolvent(x);
  r.dual_shadow = x - r.shadow;
  const Point ra = 2.0 * r.shadow - x;
  r.b_shadow = b.resolvent(ra);
  r.b_dual_shadow = ra - r.b_shadow;
  r.step = r.shadow - r.b_shadow;
  return r;
}

namespace {

bool record_finite(const IterationRecord& r) {
  return r.governing.allFinite() && r.shadow.allFinite() &&
         r.b_shadow.allFinite() && r.step.allFinite();
}

double window_diameter(const std::vector<IterationRecord>& recs,
                       std::size_t window) {
  const std::size_t first = recs.size() - window;
  double diam = 0.0;
  for (std::size_t i = first; i < recs.size(); ++i)
    for (std::size_t j = i + 1; j < recs.size(); ++j)
      diam = std::max(diam, (recs[i].shadow - recs[j].shadow).norm());
  return diam;
}

}  // namespace

DRTrace iterate(const DRProblem& p, const IterateOptions& opts) {
  if (opts.max_iters < 1)
    throw InvalidArgument("iterate: max_iters must be >= 1");
  if (!(opts.step_tol >= 0.0))
    throw InvalidArgument("iterate: step_tol must be >= 0");

  DRTrace trace{p, {}, Point::Zero(p.dim()), StopReason::max_iters};
  trace.records.reserve(opts.max_iters);
  Point x = p.x0();
  for (std::size_t n = 0; n < opts.max_iters; ++n) {
    IterationRecord rec = dr_record(p.a(), p.b(), x, n);
    if (!record_finite(rec)) throw NonFiniteValue(n, "iterate");
    x = rec.governing - rec.step;
    const double step_norm = rec.step.norm();
    trace.records.push_back(std::move(rec));
    if (step_norm < opts.step_tol) {
      trace.stop_reason = StopReason::step_converged;
      break;
    }
    if (opts.shadow_tol > 0.0 && opts.shadow_window >= 2 &&
        trace.records.size() >= opts.shadow_window &&
        window_diameter(trace.records, opts.shadow_window) <= opts.shadow_tol) {
      trace.stop_reason = StopReason::shadow_cauchy;
      break;
    }
  }
  trace.v_estimate = trace.records.back().step;
  return trace;
}

DRTrace iterate(const DRProblem& p, std::size_t max_iters, double step_tol) {
  IterateOptions opts;
  opts.max_iters = max_iters;
  opts.step_tol = step_tol;
  return iterate(p, opts);
}

DisplacementEstimate estimate_displacement(const DRTrace& trace) {
  if (trace.records.size() < 2)
    throw InvalidArgument("estimate_displacement: need at least 2 records");
  DisplacementEstimate est;
  est.v = trace.records.back().step;
  est.step_norms.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    const double s = r.step.norm();
    if (!est.step_norms.empty() && s > est.step_norms.back() + 1e-12)
      est.norms_nonincreasing = false;
    est.step_norms.push_back(s);
  }
  return est;
}

OperatorPair normal_problem(const MonotoneOperator& a,
                            const MonotoneOperator& b, const Point& v) {
  require_dim(v, a.dim(), "normal_problem");
  if (b.dim() != a.dim())
    throw DimensionMismatch(a.dim(), b.dim(), "normal_problem");
  return {outer_shift(a, v), inner_shift(b, v)};
}

std::vector<Point> shifted_governing(const DRTrace& trace, const Point& v) {
  require_dim(v, trace.problem.dim(), "shifted_governing");
  std::vector<Point> out;
  out.reserve(trace.records.size());
  for (const auto& r : trace.records)
    out.push_back(r.governing + static_cast<double>(r.n) * v);
  return out;
}

std::vector<Point> governing_sequence(const DRTrace& trace) {
  std::vector<Point> out;
  out.reserve(trace.records.size());
  for (const auto& r : trace.records) out.push_back(r.governing);
  return out;
}

std::vector<Point> shadow_sequence(const DRTrace& trace) {
  std::vector<Point> out;
  out.reserve(trace.records.size());
  for (const auto& r : trace.records) out.push_back(r.shadow);
  return out;
}

std::vector<Point> dual_shadow_sequence(const DRTrace& trace) {
  std::vector<Point> out;
  out.reserve(trace.records.size());
  for (const auto& r : trace.records) out.push_back(r.dual_shadow);
  return out;
}

Point stack(const Point& first, const Point& second) {
  Point out(first.size() + second.size());
  out << first, second;
  return out;
}

std::vector<Point> shadow_pair_sequence(const DRTrace& trace) {
  std::vector<Point> out;
  out.reserve(trace.records.size());
  for (const auto& r : trace.records) out.push_back(stack(r.shadow, r.dual_shadow));
  return out;
}

}  // namespace drkit
