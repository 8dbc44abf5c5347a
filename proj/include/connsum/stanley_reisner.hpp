#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "connsum/exactness.hpp"
#include "connsum/integer_matrix.hpp"
#include "connsum/simplicial_complex.hpp"

namespace connsum {

/// Exponent vector of x₁^a₁ ⋯ x_m^a_m. Degrees are monomial units; the
/// cohomological degree is twice that.
using Monomial = std::vector<std::uint16_t>;

Face support(const Monomial& a);
int degree(const Monomial& a);
/// "x1^2*x3", or "1" for the constant monomial.
std::string to_string(const Monomial& a);

/// Monomial basis of one graded piece with index lookup.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  explicit MonomialBasis(std::vector<Monomial> monomials);

  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const& { return monomials_; }
  // By value on temporaries so `for (auto& a : graded_basis(k, d).monomials())` is safe.
  std::vector<Monomial> monomials() && { return std::move(monomials_); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  /// Position of `a`, or -1 when absent.
  long index_of(const Monomial& a) const;

 private:
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> index_;
};

/// Z[K] = Z[x₁..x_m]/⟨x_σ | σ ∉ K⟩ with deg xᵢ = 2.
class SRPresentation {
 public:
  explicit SRPresentation(SimplicialComplex k);

  const SimplicialComplex& complex() const { return k_; }
  int vertex_count() const { return k_.vertex_count(); }
  /// Inclusion-minimal non-faces.
  const std::vector<Face>& minimal_nonfaces() const { return minimal_nonfaces_; }
  bool is_nonzero(const Monomial& a) const { return k_.contains(support(a)); }

 private:
  SimplicialComplex k_;
  std::vector<Face> minimal_nonfaces_;
};

SRPresentation sr_presentation(const SimplicialComplex& k);

/// Every monomial of degree d supported on a face of K, in decreasing
/// lexicographic order of exponent vectors.
MonomialBasis graded_basis(const SimplicialComplex& k, int d);
inline MonomialBasis graded_basis(const SRPresentation& r, int d) { return graded_basis(r.complex(), d); }

/// Monomial ideal of an SR ring generated by squarefree x_σ. Generators
/// whose support is not a face are zero and are dropped; the empty face
/// generates the unit ideal.
class MonomialIdeal {
 public:
  MonomialIdeal(SimplicialComplex ambient, std::vector<Face> generators);

  const SimplicialComplex& ambient() const { return ambient_; }
  /// Inclusion-minimal nonzero generators.
  const std::vector<Face>& generators() const { return generators_; }
  bool is_unit() const { return generators_.size() == 1 && generators_.front().empty(); }
  bool contains(const Monomial& a) const;
  /// Faces of the ambient complex that support monomials of the ideal.
  std::vector<Face> support_faces() const;
  MonomialBasis graded_basis(int d) const;

 private:
  SimplicialComplex ambient_;
  std::vector<Face> generators_;
};

/// numerator(t) / (1 − t²)^denominator_exponent.
struct HilbertSeries {
  std::vector<Integer> numerator;  // coefficient of t^i at index i
  int denominator_exponent = 0;

  /// Rank of the piece of monomial degree d (coefficient of t^{2d}).
  Integer coefficient(int d) const;
  std::string to_string() const;
  friend bool operator==(const HilbertSeries&, const HilbertSeries&) = default;
};

/// Σ_{σ∈K} t^{2|σ|}(1−t²)^{D−|σ|} / (1−t²)^D with D = dim K + 1.
HilbertSeries hilbert_series(const SimplicialComplex& k);
inline HilbertSeries hilbert_series(const SRPresentation& r) { return hilbert_series(r.complex()); }

/// Rank of Z[K]_d by counting compositions over faces.
Integer hilbert_function(const SimplicialComplex& k, int d);
/// Coefficients of s^0..s^d_max in Hilb(s)·(1−s)^n, s = t².
std::vector<Integer> hilbert_times_one_minus_s(const SimplicialComplex& k, int n, int d_max);

/// Matrix of the quotient Z[big]_d → Z[small]_d in graded bases (rows index
/// the small basis). Throws InvalidArgument unless small ⊆ big.
IntegerMatrix restriction_map(const SimplicialComplex& big, const SimplicialComplex& small, int d);

/// Sends each monomial of `from` to the same monomial of `to`, or to 0.
IntegerMatrix monomial_projection(const MonomialBasis& from, const MonomialBasis& to);

/// Per-degree verdict for a short exact sequence 0 → A → B → C → 0.
struct DegreeReport {
  int degree = 0;  // monomial units; cohomological degree is 2·degree
  ExactnessVerdict verdict;
  std::size_t rank_a = 0, rank_b = 0, rank_c = 0;
  /// Extra per-degree conditions, e.g. the I_Z ≅ 𝒥_Z comparison.
  std::map<std::string, bool> extra;

  bool ok() const;
};

struct SequenceReport {
  std::string sequence;
  std::vector<DegreeReport> degrees;

  bool all_exact() const;
};

/// How matrices are assembled for exactness checks. All maps here send
/// monomials to monomials, so the degree-d sequence is a direct sum of
/// blocks indexed by multidegree; blocks whose monomials share a support are
/// identical. `BySupport` checks each support block once (weighted by its
/// multiplicity for ranks); `FullDegree` builds the whole degree-d matrices.
enum class Assembly { BySupport, FullDegree };

/// 0 → Z[K̃] → Z[K₁] ⊕ Z[K₂] → Z[W] → 0 with (f₁, f₂) and g₁ − g₂, for
/// K̃ = K₁ ∪ K₂ and W = K₁ ∩ K₂.
SequenceReport verify_fiber_product(const SimplicialComplex& k1, const SimplicialComplex& k2, int d_max,
                                    Assembly assembly = Assembly::BySupport);

/// 0 → I_Z → Z[K₁] ×_{Z[W]} Z[K₂] → Z[K₁ #^Z K₂] → 0 with I_Z ⊆ Z[K̃]
/// embedded by θ, plus the per-degree comparison of I_Z with 𝒥_Z ⊆ Z[W]
/// (keys "j bijective on monomials" and "quotient rank = rank Z[K]").
/// Throws HypothesisError when (K₁, K₂, Z) is not a connected sum.
SequenceReport verify_connected_sum_ring(const SimplicialComplex& k1, const SimplicialComplex& k2,
                                         const FaceSubset& z, int d_max, Assembly assembly = Assembly::BySupport);

/// Generators of (0 :_{Z[K]} I_{K∖W}): x_σ for σ ∈ W ∖ closure(K ∖ W), or the
/// unit ideal when W = K.
MonomialIdeal annihilator_generators(const SimplicialComplex& k, const SimplicialComplex& w);

/// Annihilator computed directly: for each degree d ≤ d_max, the kernel of
/// x ↦ (x·x_τ)_τ over the minimal generators x_τ of I_{K∖W}. Column lattice
/// bases in the coordinates of graded_basis(K, d).
struct TruncatedModule {
  std::vector<MonomialBasis> bases;
  std::vector<IntegerMatrix> lattices;
};
TruncatedModule annihilator_truncated(const SimplicialComplex& k, const SimplicialComplex& w, int d_max);

/// Per-degree agreement of the two annihilator computations.
std::vector<bool> compare_annihilators(const SimplicialComplex& k, const SimplicialComplex& w, int d_max);

}  // namespace connsum
