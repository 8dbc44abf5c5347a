#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "connsum/errors.hpp"
#include "connsum/integer_matrix.hpp"

using namespace connsum;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound, double density = 1.0) {
  IntegerMatrix m(r, c);
  std::uniform_int_distribution<int> value(-bound, bound);
  std::bernoulli_distribution nonzero(density);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (nonzero(rng)) m(i, j) = value(rng);
  return m;
}

// Determinant by cofactor expansion; only used on matrices up to 4x4.
Integer det(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntegerMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    total += ((j % 2) ? -1 : 1) * m(0, j) * det(minor);
  }
  return total;
}

// gcd of all k×k minors (the k-th determinantal divisor).
Integer determinantal_divisor(const IntegerMatrix& m, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rows, cols;
  std::function<void(std::size_t)> pick_cols;
  std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
    if (rows.size() == k) {
      pick_cols(0);
      return;
    }
    for (std::size_t i = start; i < m.rows(); ++i) {
      rows.push_back(i);
      pick_rows(i + 1);
      rows.pop_back();
    }
  };
  pick_cols = [&](std::size_t start) {
    if (cols.size() == k) {
      IntegerMatrix sub(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rows[a], cols[b]);
      g = boost::multiprecision::gcd(g, abs(det(sub)));
      return;
    }
    for (std::size_t j = start; j < m.cols(); ++j) {
      cols.push_back(j);
      pick_cols(j + 1);
      cols.pop_back();
    }
  };
  pick_rows(0);
  return g;
}

// Rank over Q by fraction-free elimination.
std::size_t rational_rank(IntegerMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const Integer a = m(r, c), b = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = a * m(i, j) - b * m(r, j);
    }
    ++r;
  }
  return r;
}

Integer abs_det_or_zero(const IntegerMatrix& m) { return m.rows() == m.cols() ? abs(det(m)) : Integer(0); }

IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    const std::size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    const int k = coef(rng);
    for (std::size_t j = 0; j < n; ++j) u(a, j) += k * u(b, j);
  }
  return u;
}

}  // namespace

TEST(Smith, DiagTwoThreeBecomesOneSix) {
  auto s = smith_normal_form(IntegerMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.d, (IntegerMatrix{{1, 0}, {0, 6}}));
  EXPECT_EQ(s.rank, 2u);
  EXPECT_EQ((s.u * IntegerMatrix{{2, 0}, {0, 3}} * s.v), s.d);
}

TEST(Smith, ZeroAndEmptyMatrices) {
  EXPECT_EQ(smith_normal_form(IntegerMatrix(3, 2)).rank, 0u);
  EXPECT_EQ(smith_normal_form(IntegerMatrix(0, 4)).rank, 0u);
  EXPECT_EQ(invariant_factors(IntegerMatrix(4, 0)).rank, 0u);
}

TEST(Smith, BoundaryOfProjectivePlaneStyleTorsion) {
  // coker of [[2]] is Z/2, of [[2,0],[0,0]] is Z/2 ⊕ Z.
  auto f = invariant_factors(IntegerMatrix{{2, 0}, {0, 0}});
  EXPECT_EQ(f.rank, 1u);
  EXPECT_EQ(f.torsion(), (std::vector<Integer>{2}));
}

TEST(Smith, RandomTransformsReproduceDiagonal) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto m = random_matrix(rng, r, c, 9, 0.6);
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.u * m * s.v, s.d);
    EXPECT_EQ(abs_det_or_zero(s.u), 1);
    EXPECT_EQ(abs_det_or_zero(s.v), 1);
    for (std::size_t i = 0; i + 1 < s.rank; ++i) EXPECT_EQ(s.d(i + 1, i + 1) % s.d(i, i), 0);
  }
}

TEST(Smith, InvariantFactorsMatchDeterminantalDivisors) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto m = random_matrix(rng, r, c, 6, 0.7);
    auto f = invariant_factors(m);
    ASSERT_EQ(f.rank, rational_rank(m));
    Integer product = 1;
    for (std::size_t k = 1; k <= f.rank; ++k) {
      product *= f.factors[k - 1];
      EXPECT_EQ(product, determinantal_divisor(m, k)) << m.to_string();
    }
    EXPECT_EQ(determinantal_divisor(m, f.rank + 1 <= std::min(r, c) ? f.rank + 1 : f.rank) == 0,
              f.rank < std::min(r, c));
  }
}

TEST(Smith, AgreesWithInvariantFactors) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_matrix(rng, 1 + rng() % 7, 1 + rng() % 7, 20, 0.5);
    auto s = smith_normal_form(m);
    auto f = invariant_factors(m);
    ASSERT_EQ(s.rank, f.rank);
    for (std::size_t i = 0; i < s.rank; ++i) EXPECT_EQ(s.d(i, i), f.factors[i]);
  }
}

TEST(Smith, LargeEntriesFallBackToBigIntegers) {
  IntegerMatrix m(2, 2);
  m(0, 0) = Integer(1) << 70;
  m(0, 1) = 3;
  m(1, 0) = 5;
  m(1, 1) = (Integer(1) << 65) + 1;
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.u * m * s.v, s.d);
  EXPECT_EQ(s.d(0, 0) * s.d(1, 1), abs(det(m)));
}

TEST(Smith, GrowthDuringEliminationIsHandled) {
  // Entries below the fast-path bound whose products overflow int64.
  IntegerMatrix m(3, 3);
  const Integer big = (Integer(1) << 60) - 7;
  m(0, 0) = big;
  m(0, 1) = big - 2;
  m(1, 0) = big - 4;
  m(1, 1) = big - 1;
  m(2, 2) = big;
  m(2, 0) = 3;
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.u * m * s.v, s.d);
}

TEST(Rank, ModPDropsWhenPDividesFactor) {
  IntegerMatrix m{{2, 0}, {0, 3}};
  EXPECT_EQ(rank(m), 2u);
  EXPECT_EQ(rank_mod_p(m, 2), 1u);
  EXPECT_EQ(rank_mod_p(m, 3), 1u);
  EXPECT_EQ(rank_mod_p(m, 5), 2u);
}

TEST(Rank, ModPMatchesInvariantFactors) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 150; ++trial) {
    auto m = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, 12, 0.6);
    auto f = invariant_factors(m);
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      std::size_t expected = 0;
      for (const Integer& d : f.factors)
        if (d % p != 0) ++expected;
      EXPECT_EQ(rank_mod_p(m, p), expected);
    }
  }
}

TEST(Kernel, OfSimpleRow) {
  auto k = kernel_basis(IntegerMatrix{{2, 4}});
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE((IntegerMatrix{{2, 4}} * k).is_zero());
  EXPECT_EQ(abs(k(0, 0)), 2);
  EXPECT_EQ(abs(k(1, 0)), 1);
}

TEST(Kernel, RandomIsSaturatedBasis) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 7;
    auto m = random_matrix(rng, r, c, 7, 0.6);
    auto k = kernel_basis(m);
    ASSERT_EQ(k.rows(), c);
    EXPECT_EQ(k.cols(), c - rational_rank(m));
    EXPECT_TRUE((m * k).is_zero());
    // A saturated lattice has all invariant factors equal to one.
    auto f = invariant_factors(k);
    EXPECT_EQ(f.rank, k.cols());
    EXPECT_TRUE(f.torsion().empty());
  }
}

TEST(Hermite, InvariantUnderUnimodularChange) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 5, g = 1 + rng() % 5;
    auto gens = random_matrix(rng, n, g, 8, 0.6);
    auto h = hermite_basis(gens);
    EXPECT_EQ(h.cols(), rational_rank(gens));
    EXPECT_EQ(hermite_basis(gens * random_unimodular(rng, g)), h);
    // Adding a redundant generator does not change the lattice.
    auto extra = hstack(gens, gens * random_matrix(rng, g, 1, 3));
    EXPECT_EQ(hermite_basis(extra), h);
  }
}

TEST(Hermite, DistinguishesSublattices) {
  IntegerMatrix full = IntegerMatrix::identity(2);
  IntegerMatrix even{{2, 0}, {0, 1}};
  EXPECT_NE(hermite_basis(full), hermite_basis(even));
  EXPECT_EQ(hermite_basis(IntegerMatrix{{2, 3}, {1, 1}}), hermite_basis(full));
}

TEST(Matrix, StackingAndRanges) {
  IntegerMatrix a{{1, 2}, {3, 4}};
  IntegerMatrix b{{5}, {6}};
  auto h = hstack(a, b);
  EXPECT_EQ(h.cols(), 3u);
  EXPECT_EQ(h.column_range(2, 1), b);
  auto v = vstack(a, IntegerMatrix{{7, 8}});
  EXPECT_EQ(v.row_range(0, 2), a);
  EXPECT_EQ(a.transpose().transpose(), a);
  EXPECT_EQ(v.max_abs(), 8);
  EXPECT_THROW(hstack(a, IntegerMatrix(3, 1)), InvalidArgument);
}
