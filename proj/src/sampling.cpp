#include "drkit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace drkit {

Sampler::Sampler(std::uint64_t seed) : rng_(seed) {}

Sampler::Sampler(std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  for (auto k : keys) {
    words.push_back(static_cast<std::uint32_t>(k));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  rng_.seed(seq);
}

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double Sampler::normal() { return std::normal_distribution<double>()(rng_); }

int Sampler::integer(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

bool Sampler::coin(double p_true) { return uniform(0.0, 1.0) < p_true; }

Point Sampler::normal_point(Eigen::Index dim, double scale) {
  Point p(dim);
  for (Eigen::Index i = 0; i < dim; ++i) p(i) = scale * normal();
  return p;
}

ConvexSet random_affine(Sampler& s, Eigen::Index dim, Eigen::Index rank,
                        const Point& through) {
  std::vector<Point> dirs;
  for (Eigen::Index i = 0; i < rank; ++i) dirs.push_back(s.normal_point(dim));
  return ConvexSet::affine(through, dirs);
}

ConvexSet random_subspace(Sampler& s, Eigen::Index dim, Eigen::Index rank) {
  return random_affine(s, dim, rank, Point::Zero(dim));
}

ConvexSet random_box(Sampler& s, Eigen::Index dim) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Point lo(dim), hi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double c = s.uniform(-1.0, 1.0);
    lo(i) = s.coin(0.2) ? -inf : c - s.uniform(0.1, 1.5);
    hi(i) = s.coin(0.2) ? inf : c + s.uniform(0.0, 1.5);
  }
  return ConvexSet::box(lo, hi);
}

ConvexSet random_ball(Sampler& s, Eigen::Index dim) {
  return ConvexSet::ball(s.normal_point(dim), s.uniform(0.3, 2.0));
}

namespace {

// A nonnegative increment (dx, dy) with dx + dy > 0; a quarter of them are
// vertical and a quarter flat.
std::pair<double, double> monotone_increment(Sampler& s) {
  const int kind = s.integer(0, 3);
  const double a = s.uniform(0.1, 1.5);
  const double b = s.uniform(0.1, 1.5);
  if (kind == 0) return {0.0, b};
  if (kind == 1) return {a, 0.0};
  return {a, b};
}

double random_tail_slope(Sampler& s) {
  const int kind = s.integer(0, 3);
  if (kind == 0) return 0.0;
  if (kind == 1) return std::numeric_limits<double>::infinity();
  return s.uniform(0.2, 3.0);
}

}  // namespace

PiecewiseLinearGraph random_monotone_graph(Sampler& s, GraphVertex anchor) {
  const int before = s.integer(0, 2);
  const int after = s.integer(0, 2);
  std::vector<GraphVertex> left;
  GraphVertex cur = anchor;
  for (int i = 0; i < before; ++i) {
    auto [dx, dy] = monotone_increment(s);
    cur = {cur.position - dx, cur.value - dy};
    left.push_back(cur);
  }
  PiecewiseLinearGraph g;
  g.vertices.assign(left.rbegin(), left.rend());
  g.vertices.push_back(anchor);
  cur = anchor;
  for (int i = 0; i < after; ++i) {
    auto [dx, dy] = monotone_increment(s);
    cur = {cur.position + dx, cur.value + dy};
    g.vertices.push_back(cur);
  }
  g.left_slope = random_tail_slope(s);
  g.right_slope = random_tail_slope(s);
  return g;
}

RandomConsistent1d random_consistent_1d(Sampler& s) {
  RandomConsistent1d r;
  r.z = s.uniform(-2.0, 2.0);
  r.k = s.coin(0.3) ? 0.0 : s.uniform(-1.5, 1.5);
  r.a = random_monotone_graph(s, {r.z, r.k});
  r.b = random_monotone_graph(s, {r.z, -r.k});
  return r;
}

namespace {

// Largest cosine of a principal angle between the direction spaces that is
// not an angle of the intersection. Douglas-Rachford on two subspaces
// contracts at exactly this rate.
double friedrichs_cosine(const ConvexSet& u, const ConvexSet& v) {
  const auto& bu = std::get<AffineSubspace>(u.variant()).basis;
  const auto& bv = std::get<AffineSubspace>(v.variant()).basis;
  if (bu.cols() == 0 || bv.cols() == 0) return 0.0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(bu.transpose() * bv);
  double c = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double sv = svd.singularValues()(i);
    if (sv < 1.0 - 1e-9) c = std::max(c, sv);
  }
  return c;
}

}  // namespace

RandomAffinePair random_affine_pair(Sampler& s, Eigen::Index dim,
                                    double max_cosine) {
  const Point common = s.normal_point(dim);
  const Eigen::Index lo = dim >= 2 ? 1 : 0;
  const Eigen::Index hi = dim >= 2 ? dim - 1 : 1;
  for (;;) {
    const Eigen::Index ru = s.integer(static_cast<int>(lo), static_cast<int>(hi));
    const Eigen::Index rv = s.integer(static_cast<int>(lo), static_cast<int>(hi));
    ConvexSet u = random_affine(s, dim, ru, common);
    ConvexSet v = random_affine(s, dim, rv, common);
    if (friedrichs_cosine(u, v) <= max_cosine)
      return {std::move(u), std::move(v), common};
  }
}

std::vector<LibraryOperator> operator_library(Eigen::Index dim, Sampler& s) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<LibraryOperator> lib;

  // N_{R+^d}; its inverse is N of the polar cone -R+^d.
  lib.push_back({normal_cone(ConvexSet::orthant(dim)),
                 normal_cone(ConvexSet::box(Point::Constant(dim, -inf),
                                            Point::Zero(dim)))});
  lib.push_back({normal_cone(random_box(s, dim)), std::nullopt});
  const ConvexSet ball = random_ball(s, dim);
  lib.push_back({normal_cone(ball), std::nullopt});
  const Eigen::Index rank = dim >= 2 ? s.integer(1, static_cast<int>(dim) - 1) : 1;
  lib.push_back({normal_cone(random_affine(s, dim, rank, s.normal_point(dim))),
                 std::nullopt});
  // N_{c}^{-1} is the constant map c.
  const Point c = s.normal_point(dim);
  lib.push_back({normal_cone(ConvexSet::singleton(c)),
                 outer_shift(zero_map(dim), -c)});
  // P_U^{-1} = Id + N_U.
  const ConvexSet sub = random_subspace(s, dim, rank);
  lib.push_back({projector_operator(sub), scaled_id_plus_normal_cone(1.0, sub)});
  lib.push_back({scaled_id_plus_normal_cone(
                     s.uniform(0.2, 3.0),
                     random_affine(s, dim, rank, s.normal_point(dim))),
                 std::nullopt});
  lib.push_back({identity_map(dim), identity_map(dim)});
  lib.push_back({zero_map(dim),
                 normal_cone(ConvexSet::singleton(Point::Zero(dim)))});
  lib.push_back({inverse(normal_cone(ball)), normal_cone(ball)});
  lib.push_back({dual_flip(normal_cone(random_box(s, dim))), std::nullopt});
  lib.push_back({outer_shift(projector_operator(sub), s.normal_point(dim)),
                 std::nullopt});
  lib.push_back({inner_shift(normal_cone(random_ball(s, dim)),
                             s.normal_point(dim)),
                 std::nullopt});

  if (dim == 1) {
    for (int i = 0; i < 2; ++i) {
      const auto g = random_monotone_graph(
          s, {s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0)});
      lib.push_back({piecewise_linear_1d(g), piecewise_linear_1d(inverse_graph(g))});
    }
  }
  if (dim == 2) {
    // rotator^{-1} = -rotator, whose resolvent is (Id - rotator)^{-1}.
    OperatorTraits skew{true, false, false, true};
    MonotoneOperator rot_inv(
        2,
        [](const Point& x) {
          return make_point({0.5 * (x(0) - x(1)), 0.5 * (x(0) + x(1))});
        },
        skew, "rotator^-1");
    lib.push_back({rotator(), rot_inv});
    lib.push_back({rot_inv, rotator()});
  }
  if (dim >= 2) {
    const MonotoneOperator half = identity_map(dim - 1);
    lib.push_back(
        {product(normal_cone(ConvexSet::orthant(1)), half),
         product(normal_cone(ConvexSet::box(make_point({-inf}), make_point({0.0}))),
                 half)});
  }
  return lib;
}

}  // namespace drkit
