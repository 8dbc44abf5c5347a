#pragma once

#include <string>
#include <utility>
#include <vector>

#include "connsum/face.hpp"

namespace connsum {

/**
 * A simplicial complex on the vertex set {1..m}, stored as the explicit,
 * sorted list of all of its faces.
 *
 * The empty face is always present. Vertices i with {i} not a face are ghost
 * vertices; the vertex count is part of the value, so two complexes with the
 * same faces on different vertex sets compare unequal.
 */
class SimplicialComplex {
 public:
  /// The complex {∅} on m vertices (all of them ghosts).
  explicit SimplicialComplex(int vertex_count);

  /// Smallest complex on m vertices containing every listed set.
  static SimplicialComplex from_facets(int vertex_count, const std::vector<Face>& generators);

  /// Wraps an explicit face list; throws unless it is downward closed and
  /// contains ∅.
  static SimplicialComplex from_faces(int vertex_count, std::vector<Face> faces);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Face>& faces() const& { return faces_; }
  // By value on temporaries, so range-for over a returned complex is safe.
  std::vector<Face> faces() && { return std::move(faces_); }
  std::size_t face_count() const { return faces_.size(); }
  bool contains(Face face) const;

  /// Inclusion-maximal faces, in face order.
  std::vector<Face> facets() const;
  /// Largest face dimension; -1 for {∅}.
  int dimension() const;
  bool is_pure() const;
  bool is_ghost(int vertex) const { return !contains(Face::vertex(vertex)); }
  std::vector<int> ghost_vertices() const;
  /// Union of all faces.
  Face support() const;
  /// Number of faces of each dimension -1, 0, 1, ... (index 0 is the empty face).
  std::vector<std::size_t> f_vector() const;

  bool is_subcomplex_of(const SimplicialComplex& other) const;

  /// Same faces on a different vertex count. Growing adds ghosts; shrinking
  /// requires the removed vertices to be ghosts.
  SimplicialComplex with_vertex_count(int vertex_count) const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  SimplicialComplex(int vertex_count, std::vector<Face> sorted_faces, bool);

  int vertex_count_;
  std::vector<Face> faces_;
};

/**
 * A set Z of nonempty faces of some complex K. Not necessarily a subcomplex.
 * Construction through `in` checks that ∅ ∉ Z and Z ⊆ K.
 */
class FaceSubset {
 public:
  explicit FaceSubset(int vertex_count) : vertex_count_(vertex_count) {}

  static FaceSubset in(const SimplicialComplex& parent, std::vector<Face> members);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Face>& members() const& { return members_; }
  std::vector<Face> members() && { return std::move(members_); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Face face) const;

  friend bool operator==(const FaceSubset&, const FaceSubset&) = default;

 private:
  friend FaceSubset make_face_subset_unchecked(int, std::vector<Face>);
  int vertex_count_;
  std::vector<Face> members_;
};

/// Builds a FaceSubset without validating membership. Input need not be sorted.
FaceSubset make_face_subset_unchecked(int vertex_count, std::vector<Face> members);

/// Smallest subcomplex containing every member of Z.
SimplicialComplex closure(const FaceSubset& z);

/// O_K(Z): faces of K containing some member of Z.
FaceSubset open_neighborhood(const SimplicialComplex& k, const FaceSubset& z);

/// closure(O_K(Z)).
SimplicialComplex star(const SimplicialComplex& k, const FaceSubset& z);

/// Del_Z(K) = K \ O_K(Z).
SimplicialComplex deletion(const SimplicialComplex& k, const FaceSubset& z);

SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b);
SimplicialComplex complex_intersection(const SimplicialComplex& a, const SimplicialComplex& b);

/// K \ W as a face subset (W need not be a subcomplex of K).
FaceSubset face_difference(const SimplicialComplex& k, const SimplicialComplex& w);

/// K1 #^Z K2 = Del_Z(K1 ∪ K2). Throws HypothesisError unless Z ⊆ K1 ∩ K2 and
/// O_{K1∪K2}(Z) ⊆ K1 ∩ K2; the witness is an offending face.
SimplicialComplex connected_sum(const SimplicialComplex& k1, const SimplicialComplex& k2, const FaceSubset& z);

/// Z = {τ ∈ K | τ ∪ σ ∉ K for all σ ∈ K \ W}. Throws unless W ⊆ K.
FaceSubset strong_z(const SimplicialComplex& k, const SimplicialComplex& w);

/// W \ closure(K \ W), the second characterization of strong_z.
FaceSubset strong_z_by_closure(const SimplicialComplex& k, const SimplicialComplex& w);

struct StrongSumVerdict {
  bool strong = false;
  /// Empty when strong; otherwise names the first clause that failed.
  std::string failed_clause;
};

/// Checks that K1, K2, W = K1 ∩ K2 are pure of equal dimension and that
/// Z = W \ closure(K1 \ W) = W \ closure(K2 \ W).
StrongSumVerdict is_strong_connected_sum(const SimplicialComplex& k1, const SimplicialComplex& k2,
                                         const FaceSubset& z);

/// lk_K(σ) = {τ ∈ K | τ ∩ σ = ∅, τ ∪ σ ∈ K}, kept on the same vertex count
/// (vertices of σ become ghosts). Throws unless σ ∈ K.
SimplicialComplex link(const SimplicialComplex& k, Face sigma);

/// Full subcomplex on the vertices in `vertices`.
SimplicialComplex induced_subcomplex(const SimplicialComplex& k, Face vertices);

/// Restriction to non-ghost vertices that are not cone points (vertices
/// lying in every facet).
SimplicialComplex core(const SimplicialComplex& k);

/// Relabels vertex i to permutation[i - 1].
SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<int>& permutation);

}  // namespace connsum
