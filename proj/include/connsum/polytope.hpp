#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "connsum/check.hpp"
#include "connsum/integer.hpp"
#include "connsum/integer_matrix.hpp"
#include "connsum/simplicial_complex.hpp"

namespace connsum {

using RationalPoint = std::vector<Rational>;

std::string to_string(const RationalPoint& p);

/// ⟨x, normal⟩ + offset ≥ 0.
struct Inequality {
  std::vector<Integer> normal;
  Integer offset;

  Rational evaluate(const RationalPoint& x) const;
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

struct PolytopeVertex {
  RationalPoint point;
  /// Indices (1-based, as vertex labels) of the inequalities tight here.
  Face active;
};

/// Bounded, nonempty polytope given by inequalities; vertices are enumerated
/// exactly on construction. Redundant inequalities are kept as-is.
class RationalPolytope {
 public:
  /// Throws InvalidArgument for unbounded or empty input, or when the
  /// dimension / inequality count exceed the desk-scale limits.
  RationalPolytope(int dim, std::vector<Inequality> inequalities);

  int dim() const { return dim_; }
  int inequality_count() const { return static_cast<int>(inequalities_.size()); }
  const std::vector<Inequality>& inequalities() const { return inequalities_; }
  const Inequality& inequality(int label) const { return inequalities_[static_cast<std::size_t>(label - 1)]; }
  const std::vector<PolytopeVertex>& vertices() const { return vertices_; }

  /// Labels of inequalities whose hyperplane misses the polytope.
  Face ghost_inequalities() const;

  static constexpr int kMaxDim = 8;
  static constexpr int kMaxInequalities = 24;

 private:
  int dim_;
  std::vector<Inequality> inequalities_;
  std::vector<PolytopeVertex> vertices_;
};

/// All vertices of {x | ⟨x,λᵢ⟩ + ηᵢ ≥ 0} by solving every n×n subsystem.
/// Throws InvalidArgument if the region is unbounded or empty.
std::vector<PolytopeVertex> enumerate_vertices(int dim, const std::vector<Inequality>& inequalities);

/// Every vertex lies on exactly dim of the hyperplanes that touch P.
bool is_simple(const RationalPolytope& p);

/// Boundary complex on the inequality labels, padded with ghost vertices up
/// to `vertex_count` (0 means one vertex per inequality). Throws for
/// non-simple input.
SimplicialComplex complex_of_polytope(const RationalPolytope& p, int vertex_count = 0);

/// The hyperplane ⟨x, γ⟩ + ξ = 0; γ must be primitive.
struct CutSpec {
  std::vector<Integer> gamma;
  Integer xi;

  CutSpec(std::vector<Integer> gamma, Integer xi);
  Inequality positive_side() const { return {gamma, xi}; }
  Inequality negative_side() const;
};

struct GenericityCertificate {
  bool generic = false;
  /// Empty when generic; otherwise which clause failed.
  std::string reason;
  /// Offending point when the failure is witnessed by a vertex.
  std::optional<RationalPoint> witness;
};

GenericityCertificate is_generic_cut(const RationalPolytope& p, const CutSpec& c);

/// Everything produced by cutting P along a generic hyperplane. All complexes
/// live on m+1 vertices; the new facet is vertex m+1.
struct CutResult {
  RationalPolytope plus;
  RationalPolytope minus;
  SimplicialComplex k_delta;
  SimplicialComplex k_plus;
  SimplicialComplex k_minus;
  FaceSubset z_o;
  FaceSubset z_plus;
  int new_vertex = 0;
  /// Both sum theorems plus the supporting face identities.
  std::vector<NamedCheck> checks;

  bool all_checks_hold() const;
};

/// Throws InvalidArgument (with the certificate reason) for non-generic cuts.
CutResult cut(const RationalPolytope& p, const CutSpec& c);

struct LabeledPolytope {
  RationalPolytope polytope;
  std::vector<Integer> labels;

  LabeledPolytope(RationalPolytope polytope, std::vector<Integer> labels);
};

/// Columns bᵢβᵢ with βᵢ the primitive inward normal of facet i.
IntegerMatrix characteristic_matrix(const LabeledPolytope& l);
/// Same from raw normals; throws InvalidArgument unless the result has rank n.
IntegerMatrix characteristic_matrix(int dim, const std::vector<std::vector<Integer>>& normals,
                                    const std::vector<Integer>& labels);
/// characteristic_matrix with γ appended as the last column.
IntegerMatrix extended_matrix(const LabeledPolytope& l, const CutSpec& c);

// Generators used by tests, the acceptance run and the CLI's --seed mode.

/// Box [0, side]^n truncated by random generic cuts until it has `facets`
/// facets (at least 2n). The result is simple with no ghost inequalities.
RationalPolytope random_simple_polytope(std::mt19937_64& rng, int dim, int facets);

/// Random generic cut with small primitive normal; nullopt if none found in
/// `attempts` tries.
std::optional<CutSpec> random_generic_cut(std::mt19937_64& rng, const RationalPolytope& p, int attempts = 200);

}  // namespace connsum
