#include "connsum/exactness.hpp"

#include <algorithm>

#include "connsum/errors.hpp"

namespace connsum {

namespace {

bool all_units(const InvariantFactors& f) {
  return std::all_of(f.factors.begin(), f.factors.end(), [](const Integer& d) { return d == 1; });
}

void require_shape(const IntegerMatrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) throw InvalidArgument(std::string(what) + " has the wrong shape");
}

}  // namespace

ExactnessVerdict& ExactnessVerdict::operator&=(const ExactnessVerdict& o) {
  well_defined = well_defined && o.well_defined;
  injective = injective && o.injective;
  exact_middle = exact_middle && o.exact_middle;
  surjective = surjective && o.surjective;
  rank_f += o.rank_f;
  rank_g += o.rank_g;
  return *this;
}

ExactnessVerdict check_short_exact_free(const IntegerMatrix& f, const IntegerMatrix& g) {
  const std::size_t a = f.cols(), b = f.rows(), c = g.rows();
  if (g.cols() != b) throw InvalidArgument("f and g are not composable");
  ExactnessVerdict v;
  v.well_defined = (g * f).is_zero();
  const InvariantFactors ff = invariant_factors(f), fg = invariant_factors(g);
  v.rank_f = ff.rank;
  v.rank_g = fg.rank;
  v.injective = ff.rank == a;
  // im f ⊆ ker g; both are saturated of equal rank exactly when im f is
  // saturated and the ranks add up.
  v.exact_middle = v.well_defined && ff.rank + fg.rank == b && all_units(ff);
  v.surjective = fg.rank == c && all_units(fg);
  return v;
}

IntegerMatrix block_diagonal(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  return {a.generators + b.generators, block_diagonal(a.relations, b.relations)};
}

bool same_lattice(const IntegerMatrix& x, const IntegerMatrix& y) {
  if (x.rows() != y.rows()) throw InvalidArgument("lattices live in different ambient spaces");
  return hermite_basis(x) == hermite_basis(y);
}

bool lattice_contains(const IntegerMatrix& y, const IntegerMatrix& x) { return same_lattice(hstack(y, x), y); }

IntegerMatrix lattice_preimage(const IntegerMatrix& f, const IntegerMatrix& target_relations) {
  if (f.rows() != target_relations.rows()) throw InvalidArgument("preimage: shape mismatch");
  // (v, w) with f v - R w = 0; project onto v.
  IntegerMatrix neg = target_relations;
  for (std::size_t r = 0; r < neg.rows(); ++r)
    for (std::size_t c = 0; c < neg.cols(); ++c) neg(r, c) = -neg(r, c);
  const IntegerMatrix k = kernel_basis(hstack(f, neg));
  return k.row_range(0, f.cols());
}

ExactnessVerdict check_short_exact(const PresentedModule& a, const IntegerMatrix& f, const PresentedModule& b,
                                   const IntegerMatrix& g, const PresentedModule& c) {
  require_shape(f, b.generators, a.generators, "f");
  require_shape(g, c.generators, b.generators, "g");
  if (a.relations.rows() != a.generators || b.relations.rows() != b.generators || c.relations.rows() != c.generators)
    throw InvalidArgument("relation matrix does not match the generator count");

  ExactnessVerdict v;
  v.well_defined = lattice_contains(b.relations, f * a.relations) && lattice_contains(c.relations, g * b.relations) &&
                   lattice_contains(c.relations, g * f);
  v.rank_f = rank(hstack(f, b.relations)) - rank(b.relations);
  v.rank_g = rank(hstack(g, c.relations)) - rank(c.relations);
  v.injective = same_lattice(lattice_preimage(f, b.relations), a.relations);
  v.exact_middle = same_lattice(lattice_preimage(g, c.relations), hstack(f, b.relations));
  v.surjective = same_lattice(hstack(g, c.relations), IntegerMatrix::identity(c.generators));
  return v;
}

std::optional<IntegerMatrix> coordinates_in_hermite_basis(const IntegerMatrix& basis, const IntegerMatrix& y) {
  if (basis.rows() != y.rows()) throw InvalidArgument("coordinates: shape mismatch");
  // Hermite bases are echelon: column k starts (first nonzero row) strictly
  // below column k-1, so forward substitution recovers the coordinates.
  std::vector<std::size_t> pivot(basis.cols());
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    std::size_t r = 0;
    while (r < basis.rows() && basis(r, k) == 0) ++r;
    if (r == basis.rows()) throw InvalidArgument("coordinates: zero basis vector");
    pivot[k] = r;
  }
  IntegerMatrix x(basis.cols(), y.cols());
  for (std::size_t c = 0; c < y.cols(); ++c) {
    std::vector<Integer> rest = y.column(c);
    for (std::size_t k = 0; k < basis.cols(); ++k) {
      const Integer& p = basis(pivot[k], k);
      if (rest[pivot[k]] % p != 0) return std::nullopt;
      const Integer q = rest[pivot[k]] / p;
      x(k, c) = q;
      if (q != 0)
        for (std::size_t r = pivot[k]; r < basis.rows(); ++r) rest[r] -= q * basis(r, k);
    }
    if (std::any_of(rest.begin(), rest.end(), [](const Integer& v) { return v != 0; })) return std::nullopt;
  }
  return x;
}

}  // namespace connsum
