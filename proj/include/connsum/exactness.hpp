#pragma once

#include <cstddef>
#include <optional>

#include "connsum/integer_matrix.hpp"

namespace connsum {

/// Outcome of checking 0 → A --f--> B --g--> C → 0 over Z.
struct ExactnessVerdict {
  bool well_defined = true;  // maps respect relations and g∘f = 0
  bool injective = false;
  bool exact_middle = false;
  bool surjective = false;
  std::size_t rank_f = 0;
  std::size_t rank_g = 0;

  bool exact() const { return well_defined && injective && exact_middle && surjective; }
  ExactnessVerdict& operator&=(const ExactnessVerdict& o);
};

/// Free modules A = Z^a, B = Z^b, C = Z^c; f is b×a, g is c×b. Kernel and
/// image are compared by rank plus saturation of the image lattices.
ExactnessVerdict check_short_exact_free(const IntegerMatrix& f, const IntegerMatrix& g);

/// Finitely presented module Z^generators / span(columns of relations).
struct PresentedModule {
  std::size_t generators = 0;
  IntegerMatrix relations;  // generators × r

  static PresentedModule free(std::size_t n) { return {n, IntegerMatrix(n, 0)}; }
};

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);
/// [[a, 0], [0, b]].
IntegerMatrix block_diagonal(const IntegerMatrix& a, const IntegerMatrix& b);

/// Same check for cokernel modules; f and g act on generators. Every
/// comparison is an equality of lattices in Hermite normal form.
ExactnessVerdict check_short_exact(const PresentedModule& a, const IntegerMatrix& f, const PresentedModule& b,
                                   const IntegerMatrix& g, const PresentedModule& c);

/// Lattice helpers, all in column convention.
bool same_lattice(const IntegerMatrix& x, const IntegerMatrix& y);
/// span(x) ⊆ span(y).
bool lattice_contains(const IntegerMatrix& y, const IntegerMatrix& x);
/// {v ∈ Z^cols(f) | f v ∈ span(target_relations)} as generator columns.
IntegerMatrix lattice_preimage(const IntegerMatrix& f, const IntegerMatrix& target_relations);

/// Integer coordinates of the columns of y in a basis returned by
/// hermite_basis; nullopt if some column is not in the lattice.
std::optional<IntegerMatrix> coordinates_in_hermite_basis(const IntegerMatrix& basis, const IntegerMatrix& y);

}  // namespace connsum
