#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "drkit/errors.hpp"
#include "drkit/operators.hpp"

namespace drkit {

namespace {

void validate(const PiecewiseLinearGraph& g) {
  if (g.vertices.empty())
    throw InvalidArgument("piecewise_linear_1d: at least one vertex required");
  for (double s : {g.left_slope, g.right_slope})
    if (std::isnan(s) || s < 0.0)
      throw InvalidArgument("piecewise_linear_1d: tail slopes must be >= 0");
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    if (!std::isfinite(v.position) || !std::isfinite(v.value))
      throw InvalidArgument("piecewise_linear_1d: non-finite vertex " +
                            std::to_string(i));
    if (i == 0) continue;
    const auto& u = g.vertices[i - 1];
    const double dx = v.position - u.position;
    const double dy = v.value - u.value;
    if (dx < 0.0 || dy < 0.0 || dx + dy <= 0.0)
      throw InvalidArgument(
          "piecewise_linear_1d: graph not monotone between vertices " +
          std::to_string(i - 1) + " and " + std::to_string(i));
  }
}

// Along the graph, position + value is strictly increasing; the resolvent
// maps that sum back to the position.
class PiecewiseResolvent {
 public:
  explicit PiecewiseResolvent(const PiecewiseLinearGraph& g) : g_(g) {
    sums_.reserve(g.vertices.size());
    for (const auto& v : g.vertices) sums_.push_back(v.position + v.value);
  }

  double operator()(double t) const {
    const auto& vs = g_.vertices;
    if (t <= sums_.front()) {
      if (std::isinf(g_.left_slope)) return vs.front().position;
      return vs.front().position - (sums_.front() - t) / (1.0 + g_.left_slope);
    }
    if (t >= sums_.back()) {
      if (std::isinf(g_.right_slope)) return vs.back().position;
      return vs.back().position + (t - sums_.back()) / (1.0 + g_.right_slope);
    }
    const auto it = std::upper_bound(sums_.begin(), sums_.end(), t);
    const auto hi = static_cast<std::size_t>(it - sums_.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - sums_[lo]) / (sums_[hi] - sums_[lo]);
    return vs[lo].position + w * (vs[hi].position - vs[lo].position);
  }

 private:
  PiecewiseLinearGraph g_;
  std::vector<double> sums_;
};

double invert_slope(double s) {
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(s)) return 0.0;
  return 1.0 / s;
}

}  // namespace

MonotoneOperator piecewise_linear_1d(const PiecewiseLinearGraph& graph) {
  validate(graph);
  PiecewiseResolvent j(graph);
  OperatorTraits t;
  t.is_paramonotone = true;
  t.is_subdifferential = true;
  // Linear iff the graph is a line through the origin.
  const bool single_slope = graph.left_slope == graph.right_slope;
  bool through_origin = true;
  for (const auto& v : graph.vertices) {
    const double s = graph.left_slope;
    through_origin = through_origin && std::isfinite(s) &&
                     v.value == s * v.position;
  }
  t.is_linear_relation = single_slope && through_origin;
  std::ostringstream label;
  label << "pl1d(" << graph.vertices.size() << " vertices)";
  return MonotoneOperator(
      1,
      [j](const Point& x) {
        Point out(1);
        out(0) = j(x(0));
        return out;
      },
      t, label.str());
}

PiecewiseLinearGraph inverse_graph(const PiecewiseLinearGraph& graph) {
  PiecewiseLinearGraph inv;
  inv.vertices.reserve(graph.vertices.size());
  for (const auto& v : graph.vertices)
    inv.vertices.push_back({v.value, v.position});
  inv.left_slope = invert_slope(graph.left_slope);
  inv.right_slope = invert_slope(graph.right_slope);
  return inv;
}

}  // namespace drkit
