#pragma once

// Shared fixtures, random generators and brute-force oracles for the test
// suites. The oracles work on raw bitmask sets and never call the library
// operations they are used to check.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "connsum/simplicial_complex.hpp"

namespace connsum::testing {

using MaskSet = std::set<std::uint64_t>;

inline MaskSet masks_of(const SimplicialComplex& k) {
  MaskSet s;
  for (Face f : k.faces()) s.insert(f.bits());
  return s;
}

inline MaskSet masks_of(const FaceSubset& z) {
  MaskSet s;
  for (Face f : z.members()) s.insert(f.bits());
  return s;
}

inline bool is_subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

/// Every subset of {1..m} that lies below some generator.
inline MaskSet brute_closure(int m, const MaskSet& generators) {
  MaskSet out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    if (s == 0) {
      out.insert(0);
      continue;
    }
    for (std::uint64_t g : generators)
      if (is_subset(s, g)) {
        out.insert(s);
        break;
      }
  }
  return out;
}

inline MaskSet brute_open(const MaskSet& k, const MaskSet& z) {
  MaskSet out;
  for (std::uint64_t s : k)
    for (std::uint64_t t : z)
      if (is_subset(t, s)) {
        out.insert(s);
        break;
      }
  return out;
}

inline bool brute_downward_closed(const MaskSet& k) {
  if (!k.contains(0)) return false;
  for (std::uint64_t s : k)
    for (std::uint64_t sub = s; sub != 0; sub = (sub - 1) & s)
      if (!k.contains(sub)) return false;
  return true;
}

inline MaskSet set_minus(const MaskSet& a, const MaskSet& b) {
  MaskSet out;
  for (std::uint64_t x : a)
    if (!b.contains(x)) out.insert(x);
  return out;
}

// ---------------------------------------------------------------------------
// The worked example: K1 pentagon, K2 triangle, W path, K the square with
// ghost vertex 5. Vertex 5 is the new facet created by the cut.
// ---------------------------------------------------------------------------

inline SimplicialComplex worked_k() {
  return SimplicialComplex::from_facets(5, {Face::of({1, 4}), Face::of({4, 3}), Face::of({3, 2}), Face::of({2, 1})});
}
inline SimplicialComplex worked_k1() {
  return SimplicialComplex::from_facets(
      5, {Face::of({1, 4}), Face::of({4, 3}), Face::of({3, 5}), Face::of({5, 2}), Face::of({2, 1})});
}
inline SimplicialComplex worked_k2() {
  return SimplicialComplex::from_facets(5, {Face::of({2, 3}), Face::of({3, 5}), Face::of({5, 2})});
}
inline SimplicialComplex worked_w() {
  return SimplicialComplex::from_facets(5, {Face::of({3, 5}), Face::of({5, 2})});
}

inline SimplicialComplex simplex_boundary(int m, Face vertices) {
  std::vector<Face> facets;
  for (int v : vertices.vertices()) facets.push_back(vertices.minus(Face::vertex(v)));
  return SimplicialComplex::from_facets(m, facets);
}

/// Cycle through the listed vertices in order.
inline SimplicialComplex cycle(int m, const std::vector<int>& order) {
  std::vector<Face> edges;
  for (std::size_t i = 0; i < order.size(); ++i)
    edges.push_back(Face::of({order[i], order[(i + 1) % order.size()]}));
  return SimplicialComplex::from_facets(m, edges);
}

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

inline SimplicialComplex random_complex(std::mt19937_64& rng, int m, int max_generators = 5, int max_size = 0) {
  if (max_size <= 0) max_size = m;
  std::uniform_int_distribution<int> count(0, max_generators);
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << m) - 1);
  std::vector<Face> gens;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Face f(mask(rng));
    while (f.size() > max_size) f = f.minus(Face::vertex(f.vertices().front()));
    gens.push_back(f);
  }
  return SimplicialComplex::from_facets(m, gens);
}

/// Random subcomplex of K: closure of a random subset of K's faces.
inline SimplicialComplex random_subcomplex(std::mt19937_64& rng, const SimplicialComplex& k) {
  std::bernoulli_distribution keep(0.3);
  std::vector<Face> gens;
  for (Face f : k.faces())
    if (keep(rng)) gens.push_back(f);
  return SimplicialComplex::from_facets(k.vertex_count(), gens);
}

/// Random Z ⊆ W = K1 ∩ K2 satisfying O_{K1∪K2}(Z) ⊆ W (may be empty).
inline FaceSubset random_admissible_z(std::mt19937_64& rng, const SimplicialComplex& k1,
                                      const SimplicialComplex& k2) {
  const SimplicialComplex w = complex_intersection(k1, k2);
  const SimplicialComplex whole = complex_union(k1, k2);
  std::bernoulli_distribution keep(0.5);
  std::vector<Face> members;
  for (Face tau : w.faces()) {
    if (tau.empty()) continue;
    bool admissible = true;
    for (Face sigma : whole.faces())
      if (tau.subset_of(sigma) && !w.contains(sigma)) admissible = false;
    if (admissible && keep(rng)) members.push_back(tau);
  }
  return make_face_subset_unchecked(k1.vertex_count(), members);
}

}  // namespace connsum::testing
