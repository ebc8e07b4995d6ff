#include <cmath>
#include <limits>

#include "drkit/errors.hpp"
#include "drkit/sampling.hpp"
#include "drkit/splitting.hpp"
#include "test_util.hpp"

using namespace drkit;

namespace {

ConvexSet horizontal_line(double height) {
  const Point e1[] = {make_point({1, 0})};
  return ConvexSet::affine(make_point({0, height}), e1);
}

MonotoneOperator point_cone(double c) {
  return normal_cone(ConvexSet::singleton(make_point({c})));
}

}  // namespace

TEST(DRApply, Examples) {
  const auto a = normal_cone(ConvexSet::orthant(2));
  EXPECT_TRUE(near(dr_apply(a, rotator(), make_point({1, 0})),
                   make_point({0.5, -0.5}), 1e-15));
  const auto up = normal_cone(horizontal_line(1));
  const auto down = normal_cone(horizontal_line(-1));
  Sampler s(1);
  for (int i = 0; i < 20; ++i) {
    const Point x = s.normal_point(2, 4.0);
    EXPECT_TRUE(near(dr_apply(up, down, x), make_point({x(0), x(1) - 2}), 1e-14));
  }
  // Points of Fix T on the ray R+ (1,-1).
  for (double t : {0.0, 0.5, 3.0})
    EXPECT_TRUE(near(dr_apply(a, rotator(), make_point({t, -t})),
                     make_point({t, -t}), 1e-15));
  EXPECT_THROW(dr_apply(a, point_cone(0), make_point({1, 0})), DimensionMismatch);
}

TEST(DRApply, EqualsAveragedReflections) {
  Sampler lib_rng(2);
  const auto lib = operator_library(3, lib_rng);
  Sampler s(3);
  for (const auto& a : lib)
    for (const auto& b : lib) {
      const Point x = s.normal_point(3, 2.0);
      const Point avg = 0.5 * (x + reflected(b.op, reflected(a.op, x)));
      EXPECT_TRUE(near(dr_apply(a.op, b.op, x), avg, 1e-12 * (1 + x.norm())));
    }
}

TEST(DRProblem, Validates) {
  EXPECT_THROW(DRProblem(point_cone(0), rotator(), make_point({0})),
               DimensionMismatch);
  EXPECT_THROW(DRProblem(point_cone(0), point_cone(1), make_point({0, 0})),
               DimensionMismatch);
  EXPECT_THROW(DRProblem(point_cone(0), point_cone(1),
                         make_point({std::numeric_limits<double>::quiet_NaN()})),
               Error);
}

TEST(Iterate, PointsOnLine) {
  const DRTrace t = iterate(DRProblem(point_cone(0), point_cone(2), make_point({0})), 30);
  ASSERT_EQ(t.records.size(), 30u);
  for (const auto& r : t.records) {
    EXPECT_EQ(r.governing(0), 2.0 * r.n);
    EXPECT_EQ(r.shadow(0), 0.0);
  }
  EXPECT_TRUE(near(estimate_displacement(t).v, make_point({-2}), 0.0));
  EXPECT_EQ(t.stop_reason, StopReason::max_iters);
}

TEST(Iterate, RotatorFixedRayIsConstant) {
  const DRProblem p(normal_cone(ConvexSet::orthant(2)), rotator(), make_point({2, -2}));
  const DRTrace t = iterate(p, 10, 0.0);
  for (const auto& r : t.records) EXPECT_TRUE(near(r.governing, p.x0(), 0.0));
}

TEST(Iterate, ParallelLines) {
  const DRProblem p(normal_cone(horizontal_line(1)), normal_cone(horizontal_line(-1)),
                    make_point({3, 5}));
  const DRTrace t = iterate(p, 50);
  for (const auto& r : t.records) {
    EXPECT_TRUE(near(r.governing, make_point({3, 5.0 - 2.0 * r.n}), 1e-12));
    EXPECT_TRUE(near(r.shadow, make_point({3, 1}), 0.0));
  }
  EXPECT_TRUE(near(estimate_displacement(t).v, make_point({0, 2}), 1e-12));
  EXPECT_TRUE(near(shifted_governing(t, make_point({0, 0}))[7], t.records[7].governing, 0.0));
  for (const Point& q : shifted_governing(t, make_point({0, 2})))
    EXPECT_TRUE(near(q, make_point({3, 5}), 1e-12));
}

TEST(Iterate, StopsOnStepTolerance) {
  const Point e1[] = {make_point({1, 0})};
  const Point diag[] = {make_point({1, 1})};
  const DRProblem p(normal_cone(ConvexSet::subspace(2, e1)),
                    normal_cone(ConvexSet::subspace(2, diag)), make_point({0, 1}));
  const DRTrace t = iterate(p, 100000, 1e-12);
  EXPECT_EQ(t.stop_reason, StopReason::step_converged);
  EXPECT_LT(t.records.back().step.norm(), 1e-12);
  EXPECT_LE(estimate_displacement(t).v.norm(), 1e-12);
}

TEST(Iterate, StopsOnShadowCauchy) {
  const DRProblem p(normal_cone(ConvexSet::ball(Point::Zero(2), 1.0)),
                    normal_cone(ConvexSet::ball(make_point({4, 0}), 1.0)),
                    make_point({0, 2}));
  IterateOptions o;
  o.shadow_tol = 1e-6;
  const DRTrace t = iterate(p, o);
  EXPECT_EQ(t.stop_reason, StopReason::shadow_cauchy);
  EXPECT_LT(t.records.size(), 100000u);
}

TEST(Iterate, NonFiniteValueNamesIteration) {
  // A resolvent that overflows after a few steps.
  MonotoneOperator blow(
      1, [](const Point& x) -> Point { return x * 1e200; }, {}, "bad");
  const DRProblem p(blow, point_cone(0), make_point({1}));
  try {
    iterate(p, 10);
    FAIL() << "expected NonFiniteValue";
  } catch (const NonFiniteValue& e) {
    EXPECT_LE(e.iteration(), 3u);
  }
}

TEST(Iterate, RejectsBadOptions) {
  const DRProblem p(point_cone(0), point_cone(1), make_point({0}));
  EXPECT_THROW(iterate(p, 0), InvalidArgument);
  EXPECT_THROW(iterate(p, 5, -1.0), InvalidArgument);
}

TEST(Records, StepAndInverseResolventIdentities) {
  Sampler lib_rng(4);
  const auto lib = operator_library(2, lib_rng);
  Sampler s(5);
  for (const auto& a : lib)
    for (const auto& b : lib) {
      const DRTrace t = iterate(DRProblem(a.op, b.op, s.normal_point(2, 3.0)), 20, 0.0);
      for (const auto& r : t.records) {
        const double scale = 1 + r.governing.norm();
        EXPECT_TRUE(near(r.step, r.shadow - r.b_shadow, 1e-10 * scale));
        EXPECT_TRUE(near(r.step, r.dual_shadow + r.b_dual_shadow, 1e-10 * scale));
        EXPECT_TRUE(near(r.shadow + r.dual_shadow, r.governing, 1e-12 * scale));
      }
      const DisplacementEstimate est = estimate_displacement(t);
      EXPECT_TRUE(est.norms_nonincreasing) << a.op.label() << " / " << b.op.label();
    }
}

TEST(Properties, FirmlyNonexpansiveAndSelfDual) {
  for (Eigen::Index d = 1; d <= 4; ++d) {
    Sampler lib_rng{6, static_cast<std::uint64_t>(d)};
    const auto lib = operator_library(d, lib_rng);
    Sampler s{7, static_cast<std::uint64_t>(d)};
    for (const auto& a : lib)
      for (const auto& b : lib) {
        const auto dual_b = dual_flip(inverse(b.op));
        const auto dual_a = inverse(a.op);
        for (int k = 0; k < 5; ++k) {
          const Point x = s.normal_point(d, 3.0), y = s.normal_point(d, 3.0);
          const Point tx = dr_apply(a.op, b.op, x), ty = dr_apply(a.op, b.op, y);
          EXPECT_GE((tx - ty).dot(x - y) - (tx - ty).squaredNorm(), -1e-10);
          EXPECT_TRUE(near(tx, dr_apply(dual_a, dual_b, x), 1e-10 * (1 + x.norm())));
        }
      }
  }
}

TEST(NormalProblem, ZeroShiftKeepsResolvents) {
  Sampler s(8);
  const auto a = normal_cone(random_box(s, 3));
  const auto b = normal_cone(random_ball(s, 3));
  const OperatorPair np = normal_problem(a, b, Point::Zero(3));
  for (int i = 0; i < 20; ++i) {
    const Point x = s.normal_point(3, 3.0);
    EXPECT_TRUE(near(np.a(x), a(x), 0.0));
    EXPECT_TRUE(near(np.b(x), b(x), 0.0));
  }
}

TEST(NormalProblem, ShiftedSubspaceHasZeroAtOrigin) {
  const Point e1[] = {make_point({1, 0})};
  const ConvexSet u = ConvexSet::subspace(2, e1);
  const Point b = make_point({0, 1});
  const auto bb = scaled_id_plus_normal_cone(1.0, ConvexSet::affine(-b, e1));
  const OperatorPair np = normal_problem(normal_cone(u), bb, b);
  const DRTrace t = iterate(DRProblem(np.a, np.b, make_point({1, 1})), 200, 0.0);
  EXPECT_LE(t.records.back().shadow.norm(), 1e-12);
}

TEST(NormalProblem, PointsOnLineHaveZeroAtOrigin) {
  const OperatorPair np = normal_problem(point_cone(0), point_cone(2), make_point({-2}));
  EXPECT_EQ(np.a(make_point({5}))(0), 0.0);
  EXPECT_EQ(np.b(make_point({5}))(0), 0.0);
  EXPECT_TRUE(near(dr_apply(np.a, np.b, make_point({0})), make_point({0}), 0.0));
}

TEST(ShiftedGoverning, PointsOnLineIsConstant) {
  const DRTrace t = iterate(DRProblem(point_cone(0), point_cone(2), make_point({0})), 25);
  for (const Point& q : shifted_governing(t, make_point({-2}))) EXPECT_EQ(q(0), 0.0);
}

TEST(Stack, Concatenates) {
  EXPECT_TRUE(near(stack(make_point({1, 2}), make_point({3})), make_point({1, 2, 3}), 0.0));
}
