#include <gtest/gtest.h>

#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "connsum/errors.hpp"
#include "connsum/homology_tor.hpp"
#include "connsum/polytope.hpp"
#include "test_support.hpp"

using namespace connsum;
using namespace connsum::testing;

namespace {

SimplicialComplex rp2() {
  const std::vector<std::vector<int>> t = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2},
                                           {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}};
  std::vector<Face> f;
  for (const auto& v : t) f.push_back(Face::of(v));
  return SimplicialComplex::from_facets(6, f);
}

SimplicialComplex full_simplex(int m) { return SimplicialComplex::from_facets(m, {full_face(m)}); }

const IntegerMatrix kWorkedB{{1, 0, -2, 0, -1}, {0, 2, 0, -1, 1}};

FaceSubset z_worked() { return FaceSubset::in(worked_w(), {Face::of({5}), Face::of({2, 5}), Face::of({3, 5})}); }

AbelianGroup group(std::size_t free, std::vector<Integer> torsion = {}) { return {free, std::move(torsion)}; }

/// Independent Koszul complex: elements are maps (wedge mask, monomial) → coefficient, the
/// differential is applied term by term, and matrices are indexed by std::map.
std::vector<InvariantFactors> oracle_koszul_factors(const SimplicialComplex& k, const IntegerMatrix& b, int d) {
  const int n = static_cast<int>(b.rows()), m = k.vertex_count();
  using Key = std::pair<unsigned, Monomial>;
  auto chain_basis = [&](int p) {
    std::map<Key, std::size_t> idx;
    if (d - p < 0) return idx;
    // Every monomial of degree d − p in m variables with face support.
    std::vector<Monomial> mons;
    Monomial a(m, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == m - 1) {
        a[i] = static_cast<std::uint16_t>(left);
        if (k.contains(support(a))) mons.push_back(a);
        a[i] = 0;
        return;
      }
      for (int e = 0; e <= left; ++e) {
        a[i] = static_cast<std::uint16_t>(e);
        rec(i + 1, left - e);
      }
      a[i] = 0;
    };
    rec(0, d - p);
    for (unsigned s = 0; s < (1U << n); ++s)
      if (std::popcount(s) == p)
        for (const auto& x : mons) idx.emplace(Key{s, x}, idx.size());
    return idx;
  };
  std::vector<InvariantFactors> out(n + 2);
  for (int p = 1; p <= n; ++p) {
    const auto src = chain_basis(p), dst = chain_basis(p - 1);
    IntegerMatrix mat(dst.size(), src.size());
    for (const auto& [key, col] : src) {
      int position = 0;
      for (int i = 0; i < n; ++i) {
        if (!((key.first >> i) & 1U)) continue;
        const int sign = position++ % 2 == 0 ? 1 : -1;
        for (int j = 0; j < m; ++j) {
          if (b(i, j) == 0) continue;
          Monomial y = key.second;
          ++y[j];
          auto it = dst.find(Key{key.first & ~(1U << i), y});
          if (it != dst.end()) mat(it->second, col) += sign * b(i, j);
        }
      }
    }
    out[p] = invariant_factors(mat);
  }
  return out;
}

IntegerMatrix random_full_rank(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<int> e(-2, 2);
  while (true) {
    IntegerMatrix b(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) b(i, j) = e(rng);
    if (rank(b) == static_cast<std::size_t>(n)) return b;
  }
}

}  // namespace

TEST(Homology, SpecExamples) {
  const GradedAbelianGroup square = simplicial_homology(cycle(4, {1, 2, 3, 4}));
  EXPECT_EQ(square.at(0), group(0));
  EXPECT_EQ(square.at(1), group(1));
  EXPECT_EQ(simplicial_homology(simplex_boundary(3, full_face(3))).at(1), group(1));
  const SimplicialComplex two_edges = SimplicialComplex::from_facets(4, {Face::of({1, 2}), Face::of({3, 4})});
  const GradedAbelianGroup h = simplicial_homology(two_edges);
  EXPECT_EQ(h.at(0), group(1));
  EXPECT_EQ(h.pieces().size(), 1u);
  // {∅} is the (−1)-sphere; a point is acyclic.
  EXPECT_EQ(simplicial_homology(SimplicialComplex(2)).at(-1), group(1));
  EXPECT_TRUE(simplicial_homology(full_simplex(1)).is_zero());
}

TEST(Homology, ProjectivePlaneTorsion) {
  const GradedAbelianGroup h = simplicial_homology(rp2());
  EXPECT_EQ(h.at(1), group(0, {2}));
  EXPECT_EQ(h.pieces().size(), 1u);
  EXPECT_EQ(h.at(1).to_string(), "Z/2");
  EXPECT_EQ(reduced_betti(rp2(), Field::rationals()), (std::vector<std::size_t>{0, 0, 0, 0}));
  EXPECT_EQ(reduced_betti(rp2(), Field::prime(2)), (std::vector<std::size_t>{0, 0, 1, 1}));
}

TEST(Homology, EulerCharacteristicAndUniversalCoefficients) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 80; ++trial) {
    const SimplicialComplex k = random_complex(rng, 2 + trial % 6);
    const GradedAbelianGroup h = simplicial_homology(k);
    const auto f = k.f_vector();
    long chi_f = 0, chi_h = 0;
    for (std::size_t i = 0; i < f.size(); ++i) chi_f += (i % 2 ? 1 : -1) * static_cast<long>(f[i]);
    for (const auto& [d, g] : h.pieces()) chi_h += (d % 2 ? -1 : 1) * static_cast<long>(g.free_rank);
    EXPECT_EQ(chi_f, chi_h);
    for (std::uint32_t p : {2u, 3u}) {
      const auto b = reduced_betti(k, Field::prime(p));
      for (int i = -1; i <= k.dimension(); ++i) {
        auto divisible = [&](int deg) {
          std::size_t c = 0;
          for (const Integer& t : h.at(deg).torsion) c += (t % p == 0);
          return c;
        };
        EXPECT_EQ(b[i + 1], h.at(i).free_rank + divisible(i) + divisible(i - 1));
      }
    }
  }
}

TEST(Fields, Parsing) {
  EXPECT_EQ(Field::parse("Q").characteristic, 0u);
  EXPECT_EQ(Field::parse("Fp:3").characteristic, 3u);
  EXPECT_EQ(Field::parse("F5").characteristic, 5u);
  EXPECT_EQ(Field::parse("Fp:7").to_string(), "Fp:7");
  EXPECT_THROW(Field::parse("Fp:4"), InvalidArgument);
  EXPECT_THROW(Field::parse("R"), InvalidArgument);
}

TEST(CohenMacaulay, SpecExamples) {
  EXPECT_TRUE(is_cohen_macaulay(worked_w()));
  const SimplicialComplex edge_and_point = SimplicialComplex::from_facets(3, {Face::of({1, 2}), Face::of({3})});
  EXPECT_FALSE(is_cohen_macaulay(edge_and_point));
  EXPECT_TRUE(is_cohen_macaulay(cycle(4, {1, 2, 3, 4})));
  EXPECT_TRUE(is_cohen_macaulay(SimplicialComplex(3)));
  // Field dependence: RP² is CM over Q but not over F₂.
  EXPECT_TRUE(is_cohen_macaulay(rp2(), Field::rationals()));
  EXPECT_FALSE(is_cohen_macaulay(rp2(), Field::prime(2)));
}

TEST(Gorenstein, SpecExamples) {
  EXPECT_TRUE(is_gorenstein(cycle(4, {1, 2, 3, 4})));
  EXPECT_TRUE(is_gorenstein(full_simplex(3)));
  // 3–5–2 is a cone over two points, so its core is S⁰: Gorenstein.
  EXPECT_TRUE(is_gorenstein(worked_w()));
  // A path with no cone point is a 1-ball: not Gorenstein.
  EXPECT_FALSE(is_gorenstein(SimplicialComplex::from_facets(4, {Face::of({1, 2}), Face::of({2, 3}), Face::of({3, 4})})));
  EXPECT_TRUE(is_gorenstein(SimplicialComplex(2)));
  EXPECT_FALSE(is_gorenstein(rp2(), Field::prime(2)));
  EXPECT_FALSE(is_gorenstein(rp2()));
  EXPECT_TRUE(is_gorenstein(simplex_boundary(5, full_face(5))));
  EXPECT_TRUE(is_gorenstein(worked_k1()));
}

TEST(Gorenstein, RelabelingInvariance) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 3 + trial % 4;
    const SimplicialComplex k = trial % 3 == 0 ? simplex_boundary(m, full_face(m)) : random_complex(rng, m, 4, 3);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const SimplicialComplex r = relabel(k, perm);
    EXPECT_EQ(is_cohen_macaulay(k), is_cohen_macaulay(r));
    EXPECT_EQ(is_gorenstein(k), is_gorenstein(r));
  }
}

TEST(Gorenstein, FacetSumsOfSpheresStayGorenstein) {
  // Boundary of a simplex glued to the boundary of another along a facet.
  const SimplicialComplex a = simplex_boundary(6, Face::of({1, 2, 3, 4}));
  const SimplicialComplex b = simplex_boundary(6, Face::of({2, 3, 4, 5}));
  const FaceSubset z = FaceSubset::in(complex_intersection(a, b), {Face::of({2, 3, 4})});
  ASSERT_TRUE(is_strong_connected_sum(a, b, z).strong);
  EXPECT_TRUE(is_cohen_macaulay(complex_intersection(a, b)));
  EXPECT_TRUE(is_gorenstein(connected_sum(a, b, z)));
  // Two 4-cycles glued along an edge give a 6-cycle.
  const SimplicialComplex c1 = cycle(6, {1, 2, 3, 4}), c2 = cycle(6, {1, 2, 5, 6});
  const FaceSubset e = FaceSubset::in(complex_intersection(c1, c2), {Face::of({1, 2})});
  ASSERT_TRUE(is_strong_connected_sum(c1, c2, e).strong);
  EXPECT_TRUE(is_gorenstein(connected_sum(c1, c2, e)));
}

TEST(Subring, ValidationAndLsop) {
  EXPECT_THROW(SubringSpec(IntegerMatrix{{1, 2}, {2, 4}}), InvalidArgument);
  EXPECT_THROW(SubringSpec(IntegerMatrix(0, 3)), InvalidArgument);
  const SubringSpec worked(kWorkedB);
  EXPECT_EQ(worked.n(), 2);
  EXPECT_TRUE(lsop_check(worked_k1(), worked));
  EXPECT_FALSE(lsop_check(worked_k1(), SubringSpec(IntegerMatrix{{1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}})));
  EXPECT_TRUE(lsop_check(full_simplex(3), SubringSpec(IntegerMatrix::identity(3))));
  EXPECT_THROW(lsop_check(full_simplex(2), worked), InvalidArgument);
}

TEST(KoszulTor, SpecExamples) {
  // Z[x] over Z[u], u = x: Tor₀ = Z in degree 0, Tor₁ = 0.
  const TorResult poly = koszul_tor(full_simplex(1), SubringSpec(IntegerMatrix{{1}}), 1, 6);
  EXPECT_EQ(poly.tor[0].pieces().size(), 1u);
  EXPECT_EQ(poly.tor[0].at(0), group(1));
  EXPECT_TRUE(poly.vanishes(1));
  EXPECT_EQ(poly.confidence(), "certified");
  // K = {∅}: Z[K] = Z, Tor_p = Λ^p in degree p.
  const TorResult trivial = koszul_tor(SimplicialComplex(2), SubringSpec(IntegerMatrix{{1, 3}, {0, 2}}), 2, 5);
  EXPECT_EQ(trivial.tor[0].at(0), group(1));
  EXPECT_EQ(trivial.tor[1].at(1), group(2));
  EXPECT_EQ(trivial.tor[2].at(2), group(1));
  for (int p = 0; p <= 2; ++p) EXPECT_EQ(trivial.tor[p].pieces().size(), 1u);
  EXPECT_TRUE(trivial.euler_ok());
  EXPECT_THROW(koszul_tor(full_simplex(1), SubringSpec(IntegerMatrix{{1}}), 3, 2), InvalidArgument);
  EXPECT_THROW(koszul_tor(full_simplex(2), SubringSpec(IntegerMatrix{{1}}), 1, 2), InvalidArgument);
}

TEST(KoszulTor, WorkedMatrix) {
  const SubringSpec s(kWorkedB);
  EXPECT_TRUE(koszul_tor(worked_w(), s, 2, 10).vanishes(1));
  EXPECT_TRUE(koszul_tor(worked_k1(), s, 2, 10).vanishes(1));
  const TorResult k = koszul_tor(worked_k(), s, 2, 10);
  ASSERT_FALSE(k.vanishes(1));
  EXPECT_EQ(k.tor[1].first_nonzero_degree(), 4);
  EXPECT_EQ(k.tor[1].at(4), group(0, {2}));
  EXPECT_EQ(k.confidence(), "bounded evidence");
  // Triangle 2,3,5: modulo u₁ the ring is Z[x2,x3]/(2·x2·x3²) and u₂ = 2(x2 − x3)
  // kills x2·x3², so Tor₁ = Z/2 first in degree 4.
  const TorResult k2 = koszul_tor(worked_k2(), s, 2, 6);
  EXPECT_EQ(k2.tor[1].first_nonzero_degree(), 4);
  EXPECT_EQ(k2.tor[1].at(4), group(0, {2}));
  for (const TorResult* r : {&k, &k2}) EXPECT_TRUE(r->euler_ok());
}

TEST(KoszulTor, MatchesIndependentKoszulComplex) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 2 + trial % 4;
    const int n = 1 + trial % 3;
    if (n > m) continue;
    const SimplicialComplex k = random_complex(rng, m, 3);
    const IntegerMatrix b = random_full_rank(rng, n, m);
    const int d_max = 4;
    const TorResult r = koszul_tor(k, SubringSpec(b), n, std::max(d_max, n));
    EXPECT_TRUE(r.euler_ok());
    for (int d = 0; d <= d_max; ++d) {
      const auto f = oracle_koszul_factors(k, b, d);
      for (int p = 1; p <= std::min(n, d); ++p) {
        // Torsion of Tor_p in degree d comes from the differential out of C_{p+1}.
        EXPECT_EQ(r.tor[p].at(d).torsion, p + 1 <= n ? f[p + 1].torsion() : std::vector<Integer>{})
            << "p=" << p << " d=" << d;
      }
      if (d >= 1) EXPECT_EQ(r.tor[0].at(d).torsion, f[1].torsion());
    }
  }
}

TEST(KoszulTor, HigherVanishingAndEuler) {
  std::mt19937_64 rng(23);
  int vanishing = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 3 + trial % 3;
    const SimplicialComplex k = random_complex(rng, m, 3, 2);
    const int n = std::max(1, k.dimension() + 1);
    const TorResult r = koszul_tor(k, SubringSpec(random_full_rank(rng, n, m)), n, 5);
    EXPECT_TRUE(r.euler_ok());
    EXPECT_TRUE(r.higher_vanishing_consistent());
    vanishing += r.vanishes(1);
  }
  EXPECT_GT(vanishing, 0);
}

TEST(KoszulTor, Tor0PresentationRank) {
  const SubringSpec s(kWorkedB);
  const PresentedModule m = tor0_presentation(worked_k(), s, 2);
  EXPECT_EQ(m.generators, 8u);  // x1², x2², x3², x4² and the four edges
  EXPECT_EQ(m.relations.cols(), 8u);
  EXPECT_EQ(tor0_presentation(worked_k(), s, 0).generators, 1u);
}

TEST(TorSum, WorkedExample) {
  const TorSumReport r = verify_tor_fiber_product(worked_k1(), worked_k2(), z_worked(), SubringSpec(kWorkedB), 8);
  EXPECT_EQ(r.rings.size(), 5u);
  EXPECT_TRUE(r.ring("W").tor.vanishes(1));
  EXPECT_TRUE(r.ring("K1").tor.vanishes(1));
  EXPECT_FALSE(r.ring("K").tor.vanishes(1));
  EXPECT_TRUE(r.consistent());
  // Tor₁(W) = 0 here, so the Tor₀ fiber-product sequence must be exact.
  EXPECT_TRUE(r.tor0_fiber_product.all_exact());
  EXPECT_EQ(r.confidence, "bounded evidence");
  EXPECT_THROW(r.ring("nope"), InvalidArgument);
}

TEST(TorSum, IdentityMatrixIsTrivial) {
  // n = m and B = I: the u's are the x's and every Tor₀ is Z in degree 0.
  const TorSumReport r =
      verify_tor_fiber_product(worked_k1(), worked_k2(), z_worked(), SubringSpec(IntegerMatrix::identity(5)), 6);
  for (const auto& ring : r.rings) {
    EXPECT_EQ(ring.tor.tor[0].pieces().size(), 1u) << ring.name;
    EXPECT_EQ(ring.tor.tor[0].at(0), group(1));
  }
  EXPECT_TRUE(r.tor0_fiber_product.all_exact());
  // Tor₁ over the full polynomial ring sees the minimal non-faces, so the
  // I_Z sequence is not exact: Tor₀(I_Z) has x5 in degree 1, Tor₀(K̃) does not.
  EXPECT_FALSE(r.ring("K").tor.vanishes(1));
  EXPECT_FALSE(r.tor0_ideal.degrees[1].verdict.injective);
  EXPECT_TRUE(r.consistent());
}

TEST(TorSum, CubeCornerCut) {
  std::vector<Inequality> ineq;
  for (int i = 0; i < 3; ++i) {
    std::vector<Integer> e(3, 0);
    e[i] = 1;
    ineq.push_back({e, 0});
    e[i] = -1;
    ineq.push_back({e, 4});
  }
  const RationalPolytope cube(3, ineq);
  const CutSpec c({-1, -1, -1}, 2);  // x + y + z ≤ 2 is the corner at the origin
  const CutResult res = cut(cube, c);
  ASSERT_TRUE(res.all_checks_hold());
  const LabeledPolytope labeled(cube, {1, 1, 1, 1, 1, 1});
  const SubringSpec s(extended_matrix(labeled, c));
  const TorSumReport r = verify_tor_fiber_product(res.k_plus, res.k_minus, res.z_o, s, 5);
  for (const auto& ring : r.rings) EXPECT_TRUE(ring.tor.vanishes(1)) << ring.name;
  EXPECT_TRUE(r.tor0_fiber_product.all_exact());
  EXPECT_TRUE(r.tor0_ideal.all_exact());
  EXPECT_TRUE(r.consistent());
  EXPECT_FALSE(r.converse_fails());
}
