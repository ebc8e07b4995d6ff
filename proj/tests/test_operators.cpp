#include <algorithm>
#include <cmath>
#include <limits>

#include "drkit/errors.hpp"
#include "drkit/sampling.hpp"
#include "test_util.hpp"

using namespace drkit;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

ConvexSet x_axis() {
  const Point e1[] = {make_point({1, 0})};
  return ConvexSet::subspace(2, e1);
}

}  // namespace

TEST(NormalCone, Examples) {
  EXPECT_TRUE(near(normal_cone(ConvexSet::orthant(2))(make_point({1, -1})),
                   make_point({1, 0}), 0.0));
  EXPECT_TRUE(near(normal_cone(x_axis())(make_point({3, 7})), make_point({3, 0}),
                   1e-15));
  const auto n2 = normal_cone(ConvexSet::singleton(make_point({2})));
  for (double x : {-10.0, 0.0, 2.0, 1e6})
    EXPECT_EQ(n2(make_point({x}))(0), 2.0);
}

TEST(NormalCone, Flags) {
  EXPECT_TRUE(normal_cone(x_axis()).traits().is_linear_relation);
  EXPECT_FALSE(normal_cone(ConvexSet::orthant(2)).traits().is_linear_relation);
  EXPECT_TRUE(normal_cone(ConvexSet::orthant(2)).traits().is_paramonotone);
}

TEST(ResolventRejectsWrongDimension, Everywhere) {
  EXPECT_THROW(rotator()(make_point({1, 2, 3})), DimensionMismatch);
  EXPECT_THROW(normal_cone(ConvexSet::orthant(3))(make_point({1})),
               DimensionMismatch);
}

TEST(ScaledIdPlusNormalCone, Examples) {
  const Point e1[] = {make_point({1, 0})};
  const auto b =
      scaled_id_plus_normal_cone(1.0, ConvexSet::affine(make_point({0, -1}), e1));
  EXPECT_TRUE(near(b(make_point({2, 0})), make_point({1, -1}), 1e-15));
  Sampler s(1);
  const auto half = scaled_id_plus_normal_cone(1.0, ConvexSet::whole_space(3));
  const auto zero = scaled_id_plus_normal_cone(3.0, ConvexSet::singleton(Point::Zero(3)));
  for (int i = 0; i < 10; ++i) {
    const Point x = s.normal_point(3);
    EXPECT_TRUE(near(half(x), x / 2, 1e-15));
    EXPECT_TRUE(near(zero(x), Point::Zero(3), 0.0));
  }
}

TEST(ScaledIdPlusNormalCone, RejectsNonAffineOrBadLambda) {
  EXPECT_THROW(scaled_id_plus_normal_cone(1.0, ConvexSet::orthant(2)),
               InvalidArgument);
  EXPECT_THROW(scaled_id_plus_normal_cone(0.0, x_axis()), InvalidArgument);
}

TEST(Rotator, Examples) {
  const auto r = rotator();
  EXPECT_TRUE(near(r(make_point({1, 0})), make_point({0.5, -0.5}), 0.0));
  EXPECT_TRUE(near(r(make_point({0, 0})), make_point({0, 0}), 0.0));
  EXPECT_TRUE(near(r(make_point({1, 1})), make_point({1, 0}), 0.0));
}

TEST(Rotator, ReflectionIsQuarterTurn) {
  Sampler s(2);
  for (int i = 0; i < 20; ++i) {
    const Point x = s.normal_point(2);
    EXPECT_TRUE(near(reflected(rotator(), x), make_point({x(1), -x(0)}), 1e-15));
  }
}

TEST(Rotator, GraphIsSkew) {
  Sampler s(4);
  for (int i = 0; i < 100; ++i) {
    const GraphPoint g = minty_forward(rotator(), s.normal_point(2, 5.0));
    EXPECT_LE(std::abs(g.point().dot(g.normal())), 1e-12);
  }
}

TEST(ProjectorOperator, Examples) {
  EXPECT_TRUE(near(projector_operator(x_axis())(make_point({2, 2})),
                   make_point({1, 2}), 1e-15));
  const auto zero_space = projector_operator(ConvexSet::subspace(2, {}));
  const Point e[] = {make_point({1, 0}), make_point({0, 1})};
  const auto full = projector_operator(ConvexSet::subspace(2, e));
  Sampler s(6);
  for (int i = 0; i < 10; ++i) {
    const Point x = s.normal_point(2);
    EXPECT_TRUE(near(zero_space(x), x, 1e-15));
    EXPECT_TRUE(near(full(x), x / 2, 1e-15));
    EXPECT_TRUE(near(reflected(projector_operator(x_axis()), x),
                     make_point({0, x(1)}), 1e-15));
  }
}

TEST(ProjectorOperator, RejectsAffineNonLinear) {
  const Point e1[] = {make_point({1, 0})};
  EXPECT_THROW(projector_operator(ConvexSet::affine(make_point({0, 1}), e1)),
               InvalidArgument);
}

TEST(PiecewiseLinear1d, Examples) {
  const auto id = piecewise_linear_1d({{{0, 0}}, 1.0, 1.0});
  const auto box = piecewise_linear_1d({{{0, 0}, {1, 0}}, inf, inf});
  const auto zero = piecewise_linear_1d({{{0, 0}}, 0.0, 0.0});
  for (double x : {-3.0, -0.2, 0.0, 0.4, 1.0, 2.5}) {
    EXPECT_DOUBLE_EQ(id(make_point({x}))(0), x / 2);
    EXPECT_DOUBLE_EQ(box(make_point({x}))(0), std::clamp(x, 0.0, 1.0));
    EXPECT_DOUBLE_EQ(zero(make_point({x}))(0), x);
  }
  EXPECT_TRUE(id.traits().is_linear_relation);
  EXPECT_FALSE(box.traits().is_linear_relation);
}

TEST(PiecewiseLinear1d, SignWithJump) {
  // Subdifferential of |x|: -1 left of 0, [-1, 1] at 0, +1 right of 0.
  const auto abs_sub = piecewise_linear_1d({{{0, -1}, {0, 1}}, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(abs_sub(make_point({3}))(0), 2.0);
  EXPECT_DOUBLE_EQ(abs_sub(make_point({-3}))(0), -2.0);
  EXPECT_DOUBLE_EQ(abs_sub(make_point({0.7}))(0), 0.0);
}

TEST(PiecewiseLinear1d, RejectsNonMonotoneInput) {
  EXPECT_THROW(piecewise_linear_1d({{{0, 0}, {1, -1}}, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(piecewise_linear_1d({{{1, 0}, {0, 1}}, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(piecewise_linear_1d({{{0, 0}}, -1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(piecewise_linear_1d({{}, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(piecewise_linear_1d({{{0, 0}, {0, 0}}, 0.0, 0.0}), InvalidArgument);
}

TEST(PiecewiseLinear1d, InverseGraphMatchesInverse) {
  Sampler s(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_monotone_graph(s, {s.uniform(-1, 1), s.uniform(-1, 1)});
    const auto a = piecewise_linear_1d(g);
    const auto ainv = piecewise_linear_1d(inverse_graph(g));
    for (int k = 0; k < 10; ++k) {
      const Point x = make_point({s.uniform(-6, 6)});
      EXPECT_TRUE(near(a(x) + ainv(x), x, 1e-12 * (1 + std::abs(x(0)))));
    }
  }
}

TEST(PiecewiseLinear1d, ParamonotoneCrossMembership) {
  // Pairs of graph points with zero pairing must be cross members.
  Sampler s(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_monotone_graph(s, {s.uniform(-1, 1), s.uniform(-1, 1)});
    const auto a = piecewise_linear_1d(g);
    ASSERT_TRUE(a.traits().is_paramonotone);
    const GraphPoint p = minty_forward(a, make_point({s.uniform(-4, 4)}));
    const GraphPoint q = minty_forward(a, make_point({s.uniform(-4, 4)}));
    const double pairing =
        (p.point() - q.point()).dot(p.normal() - q.normal());
    ASSERT_GE(pairing, -1e-10);
    if (std::abs(pairing) <= 1e-10) {
      EXPECT_TRUE(in_graph(a, p.point(), q.normal()));
      EXPECT_TRUE(in_graph(a, q.point(), p.normal()));
    }
  }
}

TEST(Inverse, Examples) {
  const auto a = normal_cone(ConvexSet::orthant(2));
  EXPECT_TRUE(near(inverse(a)(make_point({1, -1})), make_point({0, -1}), 0.0));
  EXPECT_TRUE(near(inverse(identity_map(3))(make_point({2, 4, 6})),
                   make_point({1, 2, 3}), 0.0));
  Sampler s(10);
  const auto twice = inverse(inverse(a));
  for (int i = 0; i < 20; ++i) {
    const Point x = s.normal_point(2);
    EXPECT_TRUE(near(twice(x), a(x), 1e-15));
  }
}

TEST(DualFlip, Examples) {
  EXPECT_TRUE(near(dual_flip(rotator())(make_point({1, 0})),
                   make_point({0.5, -0.5}), 0.0));
  const Point c = make_point({1.5, -2});
  Sampler s(12);
  const auto odd = normal_cone(ConvexSet::ball(Point::Zero(2), 1.0));
  for (int i = 0; i < 20; ++i) {
    const Point x = s.normal_point(2, 3.0);
    EXPECT_TRUE(near(dual_flip(normal_cone(ConvexSet::singleton(c)))(x), -c, 0.0));
    EXPECT_TRUE(near(dual_flip(odd)(x), odd(x), 1e-15));
  }
}

TEST(Shifts, Examples) {
  Sampler s(13);
  const auto a = normal_cone(random_ball(s, 3));
  const auto same = outer_shift(a, Point::Zero(3));
  for (int i = 0; i < 20; ++i) {
    const Point x = s.normal_point(3);
    EXPECT_TRUE(near(same(x), a(x), 0.0));
  }
  const auto in = inner_shift(normal_cone(ConvexSet::singleton(make_point({0}))),
                              make_point({-2}));
  for (double x : {-5.0, 0.0, 3.0}) EXPECT_EQ(in(make_point({x}))(0), -2.0);
  // x -> N_{0}(x) - w has resolvent x -> 0 for every w.
  const auto out = outer_shift(normal_cone(ConvexSet::singleton(make_point({0}))),
                               make_point({4}));
  EXPECT_EQ(out(make_point({1}))(0), 0.0);
  EXPECT_THROW(outer_shift(a, make_point({1})), DimensionMismatch);
  EXPECT_THROW(inner_shift(a, make_point({1})), DimensionMismatch);
}

TEST(Shifts, GraphsAreTranslated) {
  // gra(A - w) = gra A - (0, w), gra A(. - w) = gra A + (w, 0).
  Sampler s(14);
  const auto a = normal_cone(random_box(s, 2));
  const Point w = s.normal_point(2);
  for (int i = 0; i < 20; ++i) {
    const GraphPoint g = minty_forward(a, s.normal_point(2, 3.0));
    EXPECT_TRUE(in_graph(outer_shift(a, w), g.point(), g.normal() - w));
    EXPECT_TRUE(in_graph(inner_shift(a, w), g.point() + w, g.normal()));
  }
}

TEST(Product, Examples) {
  const auto p = product(normal_cone(ConvexSet::singleton(make_point({0}))),
                         normal_cone(ConvexSet::singleton(make_point({2}))));
  EXPECT_EQ(p.dim(), 2);
  EXPECT_TRUE(near(p(make_point({5, 5})), make_point({0, 2}), 0.0));
  const auto a = normal_cone(ConvexSet::orthant(2));
  const auto q = product(a, identity_map(3));
  EXPECT_EQ(q.dim(), 5);
  const Point x = make_point({1, -1, 2, 4, 6});
  EXPECT_TRUE(near(q(x), make_point({1, 0, 1, 2, 3}), 0.0));
}

TEST(Reflected, LinearSubspaceReflectionIsInvolution) {
  Sampler s(15);
  const auto a = normal_cone(random_subspace(s, 4, 2));
  for (int i = 0; i < 20; ++i) {
    const Point x = s.normal_point(4);
    EXPECT_TRUE(near(reflected(a, reflected(a, x)), x, 1e-12));
  }
}

TEST(Minty, Examples) {
  const GraphPoint g = minty_forward(normal_cone(ConvexSet::orthant(2)),
                                     make_point({1, -1}));
  EXPECT_TRUE(near(g.point(), make_point({1, 0}), 0.0));
  EXPECT_TRUE(near(g.normal(), make_point({0, -1}), 0.0));
  const GraphPoint h = minty_forward(identity_map(1), make_point({2}));
  EXPECT_TRUE(near(h.point(), make_point({1}), 0.0));
  EXPECT_TRUE(near(h.normal(), make_point({1}), 0.0));
}

TEST(ResolventMatrix, RequiresLinearRelation) {
  EXPECT_THROW(resolvent_matrix(normal_cone(ConvexSet::orthant(2))),
               InvalidArgument);
  const Eigen::MatrixXd m = resolvent_matrix(rotator());
  Eigen::MatrixXd expected(2, 2);
  expected << 0.5, 0.5, -0.5, 0.5;
  EXPECT_LE((m - expected).norm(), 1e-15);
}

// Properties over every library operator.
class LibraryProperties : public ::testing::TestWithParam<int> {};

TEST_P(LibraryProperties, FirmNonexpansiveMintyMonotoneInverseIdentity) {
  const Eigen::Index d = GetParam();
  Sampler lib_rng{99, static_cast<std::uint64_t>(d)};
  for (const LibraryOperator& lo : operator_library(d, lib_rng)) {
    const MonotoneOperator& a = lo.op;
    const MonotoneOperator ainv = inverse(a);
    Sampler s{100, static_cast<std::uint64_t>(d)};
    for (int k = 0; k < 120; ++k) {
      const Point x = s.normal_point(d, 3.0);
      const Point y = s.normal_point(d, 3.0);
      const Point jx = a(x), jy = a(y);
      EXPECT_GE((jx - jy).dot(x - y) - (jx - jy).squaredNorm(), -1e-10) << a.label();
      EXPECT_GE((jx - jy).dot((x - jx) - (y - jy)), -1e-10) << a.label();
      EXPECT_LE((jx + ainv(x) - x).norm(), 1e-12 * (1 + x.norm())) << a.label();
      EXPECT_TRUE(near(minty_inverse(minty_forward(a, x)), x, 1e-12 * (1 + x.norm())));
      EXPECT_TRUE(near(a(x), jx, 0.0)) << "resolvent not deterministic";
      if (lo.inverse_oracle)
        EXPECT_LE((lo.inverse_oracle->resolvent(x) - ainv(x)).norm(),
                  1e-12 * (1 + x.norm()))
            << a.label();
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, LibraryProperties, ::testing::Values(1, 2, 3, 4, 5));
