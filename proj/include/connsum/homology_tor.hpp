#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "connsum/check.hpp"
#include "connsum/integer_matrix.hpp"
#include "connsum/simplicial_complex.hpp"
#include "connsum/stanley_reisner.hpp"

namespace connsum {

/// Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k with t₁ | t₂ | … and every tᵢ > 1.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  /// "0", "Z^2", "Z + Z/2 + Z/4".
  std::string to_string() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Degree ↦ abelian group; only nonzero pieces are stored.
class GradedAbelianGroup {
 public:
  void set(int degree, AbelianGroup group);
  AbelianGroup at(int degree) const;
  const std::map<int, AbelianGroup>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }
  std::optional<int> first_nonzero_degree() const;
  std::string to_string() const;
  friend bool operator==(const GradedAbelianGroup&, const GradedAbelianGroup&) = default;

 private:
  std::map<int, AbelianGroup> pieces_;
};

/// Coefficient field for the Reisner-type criteria: Q (characteristic 0) or F_p.
struct Field {
  std::uint32_t characteristic = 0;

  static Field rationals() { return {}; }
  /// Throws InvalidArgument unless p is prime.
  static Field prime(std::uint32_t p);
  /// "Q", "Fp:<p>" (also accepts "0" and "F<p>").
  static Field parse(const std::string& text);
  std::string to_string() const;
};

/// Reduced integral homology indexed by dimension -1..dim K. The complex {∅}
/// has H̃₋₁ = Z; the void complex does not occur.
GradedAbelianGroup simplicial_homology(const SimplicialComplex& k);
/// Reduced Betti numbers over the field, index i ↦ dimension i − 1.
std::vector<std::size_t> reduced_betti(const SimplicialComplex& k, Field field = {});

/// Reisner: every link (including lk ∅ = K) has vanishing reduced homology
/// below its own dimension.
bool is_cohen_macaulay(const SimplicialComplex& k, Field field = {});
/// Gorenstein* test on core(K): every link has the reduced homology of a
/// sphere of its dimension ({∅} counts as the (−1)-sphere).
bool is_gorenstein(const SimplicialComplex& k, Field field = {});

/// Linear forms uᵢ = Σⱼ B_ij xⱼ for an n×m integer matrix of rank n.
class SubringSpec {
 public:
  /// Throws InvalidArgument unless rank B = rows B ≥ 1.
  explicit SubringSpec(IntegerMatrix b);
  const IntegerMatrix& matrix() const { return b_; }
  int n() const { return static_cast<int>(b_.rows()); }
  int m() const { return static_cast<int>(b_.cols()); }

 private:
  IntegerMatrix b_;
};

/// For every facet σ the columns B_j (j ∈ σ) are linearly independent over Q.
bool lsop_check(const SimplicialComplex& k, const SubringSpec& s);

/// Graded Tor_p^{Z[u]}(Z[K], Z) for p ≤ p_max and monomial degree d ≤ d_max,
/// as the homology of the Koszul complex Λ^p Zⁿ ⊗ Z[K]_{d−p}.
struct TorResult {
  int n = 0, p_max = 0, d_max = 0;
  std::vector<GradedAbelianGroup> tor;  // index p
  /// Σ_p (−1)^p rank Tor_p,d equals the coefficient of s^d in Hilb·(1−s)^n.
  std::vector<bool> euler_by_degree;
  bool lsop = false;
  /// Degree of Hilb·(1−s)^n when it is a polynomial.
  std::optional<int> euler_polynomial_degree;

  bool euler_ok() const;
  /// Tor_p vanishes in every computed degree.
  bool vanishes(int p) const;
  /// Tor₁ = 0 in the window forces Tor_i = 0 in the window for 2 ≤ i ≤ p_max.
  bool higher_vanishing_consistent() const;
  /// "certified" when lsop holds, the Euler polynomial has degree < d_max and
  /// all Tor groups vanish in the window above that degree; otherwise
  /// "bounded evidence" (statements hold up to d_max only).
  std::string confidence() const;
};

/// Throws InvalidArgument when B has the wrong column count, p_max < 0, or
/// d_max < p_max. The Koszul differential is checked to square to zero
/// (std::logic_error otherwise).
TorResult koszul_tor(const SimplicialComplex& k, const SubringSpec& s, int p_max, int d_max);
inline TorResult koszul_tor(const SRPresentation& r, const SubringSpec& s, int p_max, int d_max) {
  return koszul_tor(r.complex(), s, p_max, d_max);
}

/// Tor₀ in degree d as a presented module: Z[K]_d modulo Σ uᵢ Z[K]_{d−1}.
PresentedModule tor0_presentation(const SimplicialComplex& k, const SubringSpec& s, int d);

/// Tor computations attached to a connected sum K = K₁ #^Z K₂, W = K₁ ∩ K₂,
/// K̃ = K₁ ∪ K₂: Tor₁ hypotheses, Tor₀-level fiber-product and I_Z sequences,
/// and consistency checks.
struct TorSumReport {
  struct Ring {
    std::string name;  // "W", "K1", "K2", "Ktilde", "K"
    TorResult tor;
  };
  std::vector<Ring> rings;
  /// Tor₁ vanishing of each ring (up to d_max).
  std::vector<NamedCheck> hypotheses;
  /// Consequences of the hypotheses, verified directly.
  std::vector<NamedCheck> conclusions;
  /// Internal consistency (Euler characteristic, higher vanishing).
  std::vector<NamedCheck> consistency;
  SequenceReport tor0_fiber_product;  // 0 → Tor₀(K̃) → Tor₀(K₁) ⊕ Tor₀(K₂) → Tor₀(W) → 0
  SequenceReport tor0_ideal;          // 0 → Tor₀(I_Z) → Tor₀(K̃) → Tor₀(K) → 0
  std::string confidence;

  const Ring& ring(const std::string& name) const;
  bool consistent() const;
  /// Hypotheses on W, K₁, K₂ hold but Tor₁(Z[K]) ≠ 0.
  bool converse_fails() const;
};

TorSumReport verify_tor_fiber_product(const SimplicialComplex& k1, const SimplicialComplex& k2, const FaceSubset& z,
                                      const SubringSpec& s, int d_max);

}  // namespace connsum
