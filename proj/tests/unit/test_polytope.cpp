#include <gtest/gtest.h>

#include "connsum/errors.hpp"
#include "connsum/polytope.hpp"
#include "test_support.hpp"

using namespace connsum;
using namespace connsum::testing;

namespace {

Inequality ineq(std::vector<long long> normal, long long offset) {
  Inequality h;
  for (long long x : normal) h.normal.emplace_back(x);
  h.offset = offset;
  return h;
}

std::vector<Integer> ints(std::vector<long long> v) { return {v.begin(), v.end()}; }

// [0, s]^2 in the order x ≥ 0, y ≥ 0, s - x ≥ 0, s - y ≥ 0.
std::vector<Inequality> square(long long s) {
  return {ineq({1, 0}, 0), ineq({0, 1}, 0), ineq({-1, 0}, s), ineq({0, -1}, s)};
}

RationalPolytope cube(long long s) {
  std::vector<Inequality> h;
  for (int i = 0; i < 3; ++i) {
    std::vector<long long> e(3, 0);
    e[static_cast<std::size_t>(i)] = 1;
    h.push_back(ineq(e, 0));
    e[static_cast<std::size_t>(i)] = -1;
    h.push_back(ineq(e, s));
  }
  return RationalPolytope(3, h);
}

// The worked example: [0,2]^2 and the corner cut -x + y + 1 ≥ 0.
RationalPolytope worked_square() { return RationalPolytope(2, square(2)); }
CutSpec worked_cut() { return CutSpec(ints({-1, 1}), 1); }

RationalPoint pt(std::vector<Rational> v) { return v; }

bool has_vertex(const RationalPolytope& p, const RationalPoint& x) {
  for (const auto& v : p.vertices())
    if (v.point == x) return true;
  return false;
}

}  // namespace

TEST(Vertices, UnitSquare) {
  RationalPolytope p(2, square(1));
  ASSERT_EQ(p.vertices().size(), 4u);
  EXPECT_TRUE(has_vertex(p, pt({1, 1})));
  EXPECT_EQ(p.vertices().front().active, Face::of({1, 2}));
}

TEST(Vertices, SquareCutByDiagonalIsPentagon) {
  auto h = square(1);
  h.push_back(ineq({-2, -2}, 3));  // x + y ≤ 3/2
  RationalPolytope p(2, h);
  EXPECT_EQ(p.vertices().size(), 5u);
  EXPECT_TRUE(has_vertex(p, pt({1, Rational(1, 2)})));
  EXPECT_TRUE(has_vertex(p, pt({Rational(1, 2), 1})));
  EXPECT_FALSE(has_vertex(p, pt({1, 1})));
}

TEST(Vertices, RedundantInequalityIsAGhostFacet) {
  auto h = square(2);
  h.push_back(ineq({-1, 1}, 100));
  RationalPolytope p(2, h);
  EXPECT_EQ(p.vertices().size(), 4u);
  EXPECT_EQ(p.ghost_inequalities(), Face::of({5}));
  EXPECT_EQ(complex_of_polytope(p), worked_k());
}

TEST(Vertices, UnboundedOrEmptyIsRejected) {
  EXPECT_THROW(RationalPolytope(2, {ineq({1, 0}, 0), ineq({0, 1}, 0)}), InvalidArgument);
  EXPECT_THROW(RationalPolytope(2, {ineq({1, 0}, 0), ineq({-1, 0}, 1)}), InvalidArgument);
  EXPECT_THROW(RationalPolytope(1, {ineq({1}, 0), ineq({-1}, -1)}), InvalidArgument);
  EXPECT_THROW(RationalPolytope(2, {ineq({1, 0}, 0), ineq({0, 0}, 1)}), InvalidArgument);
}

TEST(Vertices, Segment) {
  RationalPolytope p(1, {ineq({1}, 0), ineq({-1}, 3)});
  ASSERT_EQ(p.vertices().size(), 2u);
  EXPECT_TRUE(is_simple(p));
  EXPECT_EQ(complex_of_polytope(p), SimplicialComplex::from_facets(2, {Face::of({1}), Face::of({2})}));
}

TEST(Simple, SquareYesPyramidApexNo) {
  EXPECT_TRUE(is_simple(RationalPolytope(2, square(1))));
  // Square pyramid: base z ≥ 0 plus four sides meeting at the apex (1,1,1).
  RationalPolytope pyramid(3, {ineq({0, 0, 1}, 0), ineq({1, 0, -1}, 0), ineq({0, 1, -1}, 0),
                               ineq({-1, 0, -1}, 2), ineq({0, -1, -1}, 2)});
  EXPECT_EQ(pyramid.vertices().size(), 5u);
  EXPECT_FALSE(is_simple(pyramid));
  EXPECT_THROW(complex_of_polytope(pyramid), InvalidArgument);
}

TEST(Simple, RedundantHyperplaneThroughAVertexBreaksSimplicity) {
  auto h = square(2);
  h.push_back(ineq({-1, -1}, 4));  // touches only (2,2)
  EXPECT_FALSE(is_simple(RationalPolytope(2, h)));
}

TEST(ComplexOfPolytope, SquareIsFourCycle) {
  EXPECT_EQ(complex_of_polytope(RationalPolytope(2, square(1))), cycle(4, {1, 2, 3, 4}));
}

TEST(ComplexOfPolytope, PentagonIsFiveCycle) {
  auto h = square(2);
  h.push_back(CutSpec(ints({-1, 1}), 1).positive_side());
  EXPECT_EQ(complex_of_polytope(RationalPolytope(2, h)), worked_k1());
}

TEST(ComplexOfPolytope, PaddingAddsGhosts) {
  auto k = complex_of_polytope(worked_square(), 5);
  EXPECT_EQ(k, worked_k());
  EXPECT_TRUE(k.is_ghost(5));
}

TEST(Generic, DiagonalCutOfDoubledSquare) {
  // x + y = 3/2 on the unit square, scaled by two so the offset is integral.
  auto cert = is_generic_cut(worked_square(), CutSpec(ints({-1, -1}), 3));
  EXPECT_TRUE(cert.generic) << cert.reason;
}

TEST(Generic, CutThroughCornerNamesTheCorner) {
  auto cert = is_generic_cut(worked_square(), CutSpec(ints({-1, -1}), 2));
  EXPECT_FALSE(cert.generic);
  ASSERT_TRUE(cert.witness.has_value());
  const Rational v = CutSpec(ints({-1, -1}), 2).positive_side().evaluate(*cert.witness);
  EXPECT_EQ(v, 0);
  EXPECT_TRUE(*cert.witness == pt({2, 0}) || *cert.witness == pt({0, 2}));
}

TEST(Generic, CutMissingThePolytope) {
  auto cert = is_generic_cut(worked_square(), CutSpec(ints({1, 1}), 5));
  EXPECT_FALSE(cert.generic);
  EXPECT_NE(cert.reason.find("H_o = ∅"), std::string::npos);
}

TEST(Generic, NonPrimitiveNormalRejected) {
  EXPECT_THROW(CutSpec(ints({2, 2}), 3), InvalidArgument);
  EXPECT_THROW(CutSpec(ints({0, 0}), 3), InvalidArgument);
}

TEST(Generic, CutContainingCubeEdges) {
  // x + y = 2 on [0,2]^3 contains the edges {x=2, y=0} and {x=0, y=2}.
  auto cert = is_generic_cut(cube(2), CutSpec(ints({-1, -1, 0}), 2));
  EXPECT_FALSE(cert.generic);
}

TEST(Cut, WorkedExample) {
  auto r = cut(worked_square(), worked_cut());
  EXPECT_EQ(r.new_vertex, 5);
  EXPECT_EQ(r.k_delta, worked_k());
  EXPECT_EQ(r.k_plus, worked_k1());
  EXPECT_EQ(r.k_minus, worked_k2());
  EXPECT_TRUE(r.k_minus.is_ghost(1));
  EXPECT_TRUE(r.k_minus.is_ghost(4));
  EXPECT_EQ(r.z_o.members(), (std::vector<Face>{Face::of({5}), Face::of({2, 5}), Face::of({3, 5})}));
  EXPECT_EQ(r.z_plus.members(), (std::vector<Face>{Face::of({1}), Face::of({4}), Face::of({1, 2}), Face::of({1, 4}),
                                                   Face::of({3, 4})}));
  for (const auto& c : r.checks) EXPECT_TRUE(c.holds) << c.name;
  EXPECT_EQ(r.plus.vertices().size(), 5u);
  EXPECT_EQ(r.minus.vertices().size(), 3u);
}

TEST(Cut, CubeCornerTruncation) {
  auto r = cut(cube(4), CutSpec(ints({-1, -1, -1}), 2));
  EXPECT_TRUE(r.all_checks_hold());
  // x + y + z ≤ 2 is the corner: a tetrahedron with three cube facets plus the cut.
  EXPECT_EQ(r.k_plus.facets().size(), 4u);
  EXPECT_EQ(r.k_minus.f_vector(), (std::vector<std::size_t>{1, 7, 15, 10}));
}

TEST(Cut, SquareIntoTwoRectangles) {
  auto r = cut(worked_square(), CutSpec(ints({-1, 0}), 1));
  EXPECT_TRUE(r.all_checks_hold());
  EXPECT_EQ(r.k_plus, cycle(5, {1, 2, 5, 4}));
  EXPECT_EQ(r.k_minus, cycle(5, {2, 3, 4, 5}));
}

TEST(Cut, NonGenericThrows) { EXPECT_THROW(cut(worked_square(), CutSpec(ints({-1, -1}), 2)), InvalidArgument); }

TEST(CharacteristicMatrix, WorkedExtendedMatrix) {
  LabeledPolytope l(worked_square(), ints({1, 2, 2, 1}));
  EXPECT_EQ(extended_matrix(l, worked_cut()), (IntegerMatrix{{1, 0, -2, 0, -1}, {0, 2, 0, -1, 1}}));
}

TEST(CharacteristicMatrix, UnitSquare) {
  LabeledPolytope l(RationalPolytope(2, square(1)), ints({1, 1, 1, 1}));
  EXPECT_EQ(characteristic_matrix(l), (IntegerMatrix{{1, 0, -1, 0}, {0, 1, 0, -1}}));
}

TEST(CharacteristicMatrix, NormalsAreMadePrimitive) {
  auto h = square(1);
  h[0] = ineq({3, 0}, 0);
  LabeledPolytope l(RationalPolytope(2, h), ints({2, 1, 1, 1}));
  EXPECT_EQ(characteristic_matrix(l)(0, 0), 2);
}

TEST(CharacteristicMatrix, RankDeficiencyAndBadLabels) {
  EXPECT_THROW(characteristic_matrix(2, {ints({1, 0}), ints({-2, 0})}, ints({1, 1})), InvalidArgument);
  EXPECT_THROW(LabeledPolytope(worked_square(), ints({1, 2, 0, 1})), InvalidArgument);
  EXPECT_THROW(LabeledPolytope(worked_square(), ints({1, 2})), InvalidArgument);
}

TEST(Random, SimplePolytopesSatisfyVertexCountIdentities) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + trial % 2;
    const int facets = 2 * dim + static_cast<int>(rng() % (9 - 2 * dim));
    auto p = random_simple_polytope(rng, dim, facets);
    ASSERT_EQ(p.inequality_count(), facets);
    ASSERT_TRUE(is_simple(p));
    EXPECT_EQ(p.ghost_inequalities(), Face{});
    // Simple polygons: V = F. Simple 3-polytopes: V = 2F - 4 (Euler + 2E = 3V).
    const std::size_t expected = dim == 2 ? facets : 2 * facets - 4;
    EXPECT_EQ(p.vertices().size(), expected);
    for (const auto& v : p.vertices()) {
      for (const auto& h : p.inequalities()) EXPECT_GE(h.evaluate(v.point), 0);
      IntegerMatrix a(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
      std::size_t r = 0;
      for (int i : v.active.vertices()) {
        for (int c = 0; c < dim; ++c) a(r, static_cast<std::size_t>(c)) = p.inequality(i).normal[static_cast<std::size_t>(c)];
        ++r;
      }
      EXPECT_EQ(rank(a), static_cast<std::size_t>(dim));
    }
  }
}

TEST(Random, GenericCutsSatisfyBothSumTheorems) {
  std::mt19937_64 rng(42);
  int cuts = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 1 + trial % 3;
    const int facets = dim == 1 ? 2 : 2 * dim + static_cast<int>(rng() % (8 - 2 * dim + 1));
    auto p = random_simple_polytope(rng, dim, facets);
    auto c = random_generic_cut(rng, p);
    ASSERT_TRUE(c.has_value());
    auto r = cut(p, *c);
    ++cuts;
    for (const auto& check : r.checks) EXPECT_TRUE(check.holds) << check.name;
    EXPECT_TRUE(r.k_delta.is_ghost(r.new_vertex));
  }
  EXPECT_EQ(cuts, 40);
}
