#include <cmath>
#include <limits>

#include "drkit/errors.hpp"
#include "drkit/sampling.hpp"
#include "test_util.hpp"

using namespace drkit;

TEST(Inner, Examples) {
  EXPECT_EQ(inner(make_point({1, 0}), make_point({0, 1})), 0.0);
  EXPECT_EQ(inner(make_point({1, 2}), make_point({3, 4})), 11.0);
  EXPECT_EQ(inner(make_point({1, 0}), make_point({1, 0})), 1.0);
}

TEST(Inner, RejectsDimensionMismatch) {
  EXPECT_THROW(inner(make_point({1, 0}), make_point({1, 0, 0})),
               DimensionMismatch);
}

TEST(Project, Examples) {
  EXPECT_TRUE(near(project(ConvexSet::orthant(2), make_point({1, -1})),
                   make_point({1, 0}), 0.0));
  const Point e1[] = {make_point({1, 0})};
  const ConvexSet line = ConvexSet::affine(make_point({0, 1}), e1);
  EXPECT_TRUE(near(line.project(make_point({3, 5})), make_point({3, 1}), 1e-15));
  const ConvexSet ball = ConvexSet::ball(make_point({4, 0}), 1.0);
  EXPECT_TRUE(near(ball.project(make_point({0, 0})), make_point({3, 0}), 1e-15));
}

TEST(Project, BoxWithInfiniteBoundsClamps) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const ConvexSet b = ConvexSet::box(make_point({-inf, 0, -1}), make_point({0, inf, 1}));
  EXPECT_TRUE(near(b.project(make_point({3, -2, 5})), make_point({0, 0, 1}), 0.0));
  EXPECT_TRUE(near(b.project(make_point({-7, 9, 0.5})), make_point({-7, 9, 0.5}), 0.0));
}

TEST(Project, RejectsDimensionMismatch) {
  EXPECT_THROW(ConvexSet::orthant(2).project(make_point({1, 2, 3})),
               DimensionMismatch);
}

TEST(ConvexSetFactories, Validate) {
  EXPECT_THROW(ConvexSet::ball(make_point({0, 0}), 0.0), InvalidArgument);
  EXPECT_THROW(ConvexSet::ball(make_point({0, 0}), -1.0), InvalidArgument);
  EXPECT_THROW(ConvexSet::box(make_point({1}), make_point({0})), InvalidArgument);
  EXPECT_THROW(ConvexSet::singleton(make_point({NAN})), Error);
}

TEST(Orthonormalize, Examples) {
  const Point one[] = {make_point({2, 0})};
  auto q = orthonormalize(one);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_TRUE(near(q[0], make_point({1, 0}), 1e-15));

  const Point two[] = {make_point({1, 0}), make_point({1, 1})};
  q = orthonormalize(two);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_TRUE(near(q[0], make_point({1, 0}), 1e-15));
  EXPECT_TRUE(near(q[1], make_point({0, 1}), 1e-15));
}

TEST(Orthonormalize, NamesDependentVector) {
  const Point dep[] = {make_point({1, 1}), make_point({-1, -1})};
  try {
    orthonormalize(dep);
    FAIL() << "expected RankDeficient";
  } catch (const RankDeficient& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Orthonormalize, BasisIsOrthonormal) {
  Sampler s(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> v;
    for (int i = 0; i < 4; ++i) v.push_back(s.normal_point(6));
    const auto q = orthonormalize(v);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j)
        EXPECT_NEAR(q[i].dot(q[j]), i == j ? 1.0 : 0.0, kOrthoTol);
  }
}

namespace {

std::vector<ConvexSet> sample_sets(Sampler& s, Eigen::Index d) {
  return {ConvexSet::orthant(d), random_box(s, d), random_ball(s, d),
          random_affine(s, d, d > 1 ? d - 1 : 1, s.normal_point(d)),
          ConvexSet::singleton(s.normal_point(d)), ConvexSet::whole_space(d)};
}

}  // namespace

TEST(ProjectionProperties, MonotoneIdempotentAndOrthogonalOnAffine) {
  Sampler s(3);
  for (Eigen::Index d = 1; d <= 5; ++d) {
    for (const ConvexSet& set : sample_sets(s, d)) {
      for (int k = 0; k < 40; ++k) {
        const Point x = s.normal_point(d, 3.0);
        const Point y = s.normal_point(d, 3.0);
        const Point px = set.project(x), py = set.project(y);
        const double pairing = (px - py).dot((x - px) - (y - py));
        EXPECT_GE(pairing, -1e-10) << set.describe();
        if (set.is_affine()) EXPECT_NEAR(pairing, 0.0, 1e-10) << set.describe();
        EXPECT_LE((set.project(px) - px).norm(), 1e-12 * (1 + x.norm()))
            << set.describe();
      }
    }
  }
}

TEST(ProjectionProperties, AffineMatchesBruteForceGrid) {
  Sampler s(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = 2 + trial % 2;
    const Eigen::Index rank = 1 + trial % (d - 1);
    const ConvexSet set = random_affine(s, d, rank, s.normal_point(d));
    const auto& aff = std::get<AffineSubspace>(set.variant());
    const Point x = s.normal_point(d, 2.0);
    const double best = (x - set.project(x)).norm();
    const int steps = 60;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= (rank > 1 ? steps : 0); ++j) {
        Point p = aff.offset;
        p += aff.basis.col(0) * (-6.0 + 12.0 * i / steps);
        if (rank > 1) p += aff.basis.col(1) * (-6.0 + 12.0 * j / steps);
        EXPECT_LE(best, (x - p).norm() + 1e-12);
      }
    }
  }
}

TEST(ConvexSet, AffineFlags) {
  const Point e1[] = {make_point({1, 0})};
  EXPECT_TRUE(ConvexSet::subspace(2, e1).is_linear_subspace());
  EXPECT_FALSE(ConvexSet::affine(make_point({0, 1}), e1).is_linear_subspace());
  EXPECT_TRUE(ConvexSet::affine(make_point({5, 0}), e1).is_linear_subspace());
  EXPECT_FALSE(ConvexSet::orthant(2).is_affine());
  EXPECT_THROW(ConvexSet::orthant(2).direction_projector(), InvalidArgument);
}
