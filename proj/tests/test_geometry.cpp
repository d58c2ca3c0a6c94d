#include <gtest/gtest.h>

#include "chromatic/constructions.hpp"
#include "chromatic/geometry.hpp"

using namespace chromatic;

namespace {

std::vector<Point> first_points(int k) {
  std::vector<Point> d;
  for (int i = 0; i < k; ++i) d.push_back(i);
  return d;
}

}  // namespace

TEST(ValidateSpace, AcceptsAffinePlanes) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) EXPECT_TRUE(validate_space(affine_plane(q).space).valid()) << q;
}

TEST(ValidateSpace, ReportsEachAxiom) {
  LinearSpace sp{4, {{0, 1, 2}, {0, 3}, {1, 3}}};
  SpaceReport r = validate_space(sp);
  EXPECT_FALSE(r.ls1);  // {2,3} uncovered
  sp.lines.push_back({2, 3});
  sp.lines.push_back({0, 1});
  r = validate_space(sp);
  EXPECT_TRUE(r.ls1);
  EXPECT_FALSE(r.ls2);
  LinearSpace tiny{2, {{0}, {0, 1}}};
  EXPECT_FALSE(validate_space(tiny).ls3);
  LinearSpace unsorted{2, {{1, 0}}};
  EXPECT_FALSE(validate_space(unsorted).well_formed);
}

TEST(ValidateParallelism, DetectsCrossingsAndGaps) {
  Geometry g = near_pencil(4);
  g.parallelism.blocks = {{0, 1}, {2, 3}};
  const ParallelismReport r = validate_parallelism(g.space, g.parallelism);
  EXPECT_FALSE(r.non_crossing);
  EXPECT_FALSE(r.crossings.empty());
  g.parallelism.blocks = {{0}, {1}, {2}};
  EXPECT_FALSE(validate_parallelism(g.space, g.parallelism).partition);
}

TEST(AffinePlane, ShapeAndOrder) {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11}) {
    const Geometry g = affine_plane(q);
    EXPECT_EQ(affine_order(g), q);
    EXPECT_EQ(g.space.point_count, q * q);
    EXPECT_EQ(static_cast<int>(g.parallelism.blocks.size()), q + 1);
  }
  EXPECT_THROW(affine_plane(6), std::invalid_argument);
  EXPECT_THROW(affine_plane(1), std::invalid_argument);
}

TEST(AffinePlane, PrimeOrderUsesModularLines) {
  const Geometry g = affine_plane(3);
  // slope 1, intercept 2: points (t, t+2 mod 3)
  EXPECT_EQ(g.space.lines[g.parallelism.blocks[1][2]], (Line{2, 3, 7}));
  // vertical x = 1
  EXPECT_EQ(g.space.lines[g.parallelism.blocks[3][1]], (Line{3, 4, 5}));
}

TEST(FiniteField, PrimePowerArithmetic) {
  for (int q : {4, 8, 9, 16, 25, 27}) {
    const FiniteField f(q);
    for (int a = 1; a < q; ++a) {
      int inverses = 0;
      for (int b = 1; b < q; ++b) inverses += f.mul(a, b) == 1;
      EXPECT_EQ(inverses, 1) << q << " " << a;
      int zero_sum = 0;
      for (int b = 0; b < q; ++b) zero_sum += f.add(a, b) == 0;
      EXPECT_EQ(zero_sum, 1);
    }
    for (int a = 0; a < q; a += 3)
      for (int b = 0; b < q; b += 2)
        for (int c = 0; c < q; ++c) EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
  }
  EXPECT_EQ(prime_power_base(12), 0);
  EXPECT_EQ(prime_power_base(27), 3);
  EXPECT_THROW(FiniteField(10), std::invalid_argument);
}

TEST(Ls4Ls5, AffinePlanesSatisfyBoth) {
  for (int q : {3, 4, 5}) {
    const Geometry g = affine_plane(q);
    EXPECT_TRUE(check_ls4(g).passed);
    const Ls5Report r = check_ls5(g);
    EXPECT_TRUE(r.passed);
    for (const auto& w : r.witnesses) {
      const auto blocks = pair_blocks(g);
      const int P = g.space.point_count;
      const auto [p1, p2, p3] = w.points;
      EXPECT_EQ(blocks[p1 * P + p2], w.blocks[0]);
      EXPECT_EQ(blocks[p2 * P + p3], w.blocks[1]);
      EXPECT_EQ(blocks[p3 * P + p1], w.blocks[2]);
    }
  }
}

TEST(Ls4, NearPencilFails) {
  const Ls4Report r = check_ls4(near_pencil(5));
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.failing_blocks.size(), 4u);
}

TEST(DropPoints, BlockCountIsOrderPlusDroppedPlusOne) {
  for (int q : {3, 4, 5, 7})
    for (int k = 0; k <= q - 2; ++k) {
      const Geometry g = drop_points(affine_plane(q), first_points(k));
      EXPECT_EQ(static_cast<int>(g.parallelism.blocks.size()), q + k + 1);
      EXPECT_EQ(g.space.point_count, q * q - k);
      EXPECT_TRUE(validate_space(g.space).valid());
      EXPECT_TRUE(validate_parallelism(g.space, g.parallelism).valid());
    }
}

TEST(DropPoints, LyndonAxiomsAboveOrderThree) {
  for (int q : {4, 5, 7})
    for (int k = 0; k <= q - 2; ++k) {
      const Geometry g = drop_points(affine_plane(q), first_points(k));
      EXPECT_TRUE(check_ls4(g).passed) << q << " " << k;
      EXPECT_TRUE(check_ls5(g).passed) << q << " " << k;
    }
}

TEST(DropPoints, OrderThreeLosesLs4) {
  const Geometry g = drop_points(affine_plane(3), {4});
  EXPECT_FALSE(check_ls4(g).passed);
}

TEST(DropPoints, ArbitraryPointSets) {
  const Geometry g = drop_points(affine_plane(5), {24, 7, 12});
  EXPECT_EQ(g.parallelism.blocks.size(), 9u);
  EXPECT_TRUE(check_ls4(g).passed);
  EXPECT_TRUE(check_ls5(g).passed);
}

TEST(DropPoints, RejectsBadRequests) {
  EXPECT_THROW(drop_points(affine_plane(3), {0, 1}), std::invalid_argument);
  EXPECT_THROW(drop_points(affine_plane(5), {3, 3}), std::invalid_argument);
  EXPECT_THROW(drop_points(affine_plane(5), {25}), std::invalid_argument);
  EXPECT_THROW(drop_points(affine_plane(2), {}), std::invalid_argument);
  EXPECT_THROW(drop_points(near_pencil(4), {}), std::invalid_argument);
}

TEST(NearPencil, Shape) {
  const Geometry g = near_pencil(5);
  EXPECT_EQ(g.space.point_count, 5);
  EXPECT_EQ(g.space.lines.front(), (Line{1, 2, 3, 4}));
  EXPECT_EQ(g.parallelism.blocks.size(), 5u);
  EXPECT_THROW(near_pencil(2), std::invalid_argument);
}

TEST(Colouring, ParallelismGivesFeebleLyndonColouring) {
  for (int q : {3, 4, 5}) {
    const EdgeColouring g = colouring_from_parallelism(affine_plane(q));
    EXPECT_EQ(g.colour_count(), q + 1);
    EXPECT_TRUE(verify(g, Signature({1, 3}, q + 1), Level::strong).passed);
  }
}

TEST(Colouring, RoundTripRecoversGeometry) {
  std::vector<Geometry> built{affine_plane(2), affine_plane(3), affine_plane(4), near_pencil(3), near_pencil(6),
                              drop_points(affine_plane(5), {0, 1, 2})};
  for (const auto& geo : built) {
    const Geometry back = linear_space_from_colouring(colouring_from_parallelism(geo));
    EXPECT_TRUE(same_geometry(geo, back));
    EXPECT_TRUE(geometries_isomorphic(geo, back));
  }
}

TEST(Colouring, ReadBackRejectsDichromaticTriangles) {
  EXPECT_THROW(linear_space_from_colouring(pentagon()), std::invalid_argument);
}

TEST(Isomorphism, DistinguishesDifferentGeometries) {
  EXPECT_FALSE(geometries_isomorphic(near_pencil(4), affine_plane(2)));
  const Geometry a = drop_points(affine_plane(5), {0});
  const Geometry b = drop_points(affine_plane(5), {13});
  EXPECT_TRUE(geometries_isomorphic(a, b));
}
