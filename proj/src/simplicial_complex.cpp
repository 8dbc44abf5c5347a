#include "connsum/simplicial_complex.hpp"

#include <algorithm>
#include <unordered_set>

#include "connsum/errors.hpp"

namespace connsum {

Face Face::of(std::initializer_list<int> vertices) { return of(std::vector<int>(vertices)); }

Face Face::of(const std::vector<int>& vertices) {
  std::uint64_t bits = 0;
  for (int v : vertices) {
    if (v < 1 || v > kMaxVertices) throw InvalidArgument("vertex label out of range: " + std::to_string(v));
    bits |= std::uint64_t{1} << (v - 1);
  }
  return Face(bits);
}

std::vector<int> Face::vertices() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string Face::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int v : vertices()) {
    if (!first) s += ',';
    s += std::to_string(v);
    first = false;
  }
  return s + "}";
}

namespace {

void check_vertex_count(int m) {
  if (m < 0 || m > kMaxVertices)
    throw InvalidArgument("vertex count must lie in [0, " + std::to_string(kMaxVertices) + "], got " +
                          std::to_string(m));
}

void check_in_range(int m, Face f) {
  if (f.max_vertex() > m)
    throw InvalidArgument("face " + f.to_string() + " uses a vertex outside {1.." + std::to_string(m) + "}");
}

void require_same_vertices(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count())
    throw InvalidArgument("complexes live on different vertex sets (" + std::to_string(a.vertex_count()) + " vs " +
                          std::to_string(b.vertex_count()) + " vertices)");
}

std::vector<Face> sorted_unique(std::vector<Face> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

SimplicialComplex::SimplicialComplex(int vertex_count) : vertex_count_(vertex_count), faces_{Face{}} {
  check_vertex_count(vertex_count);
}

SimplicialComplex::SimplicialComplex(int vertex_count, std::vector<Face> sorted_faces, bool)
    : vertex_count_(vertex_count), faces_(std::move(sorted_faces)) {}

SimplicialComplex SimplicialComplex::from_facets(int vertex_count, const std::vector<Face>& generators) {
  check_vertex_count(vertex_count);
  std::unordered_set<Face> all{Face{}};
  for (Face g : generators) {
    check_in_range(vertex_count, g);
    if (all.contains(g)) continue;
    for_each_subset(g, [&](Face s) { all.insert(s); });
  }
  return SimplicialComplex(vertex_count, sorted_unique({all.begin(), all.end()}), true);
}

SimplicialComplex SimplicialComplex::from_faces(int vertex_count, std::vector<Face> faces) {
  check_vertex_count(vertex_count);
  for (Face f : faces) check_in_range(vertex_count, f);
  faces = sorted_unique(std::move(faces));
  SimplicialComplex k(vertex_count, std::move(faces), true);
  if (!k.contains(Face{})) throw InvalidArgument("face list must contain the empty face");
  for (Face f : k.faces_) {
    // Checking codimension-one subsets suffices for downward closure.
    for (int v : f.vertices()) {
      if (!k.contains(f.minus(Face::vertex(v))))
        throw InvalidArgument("face list is not downward closed: " + f.to_string() + " present but " +
                              f.minus(Face::vertex(v)).to_string() + " missing");
    }
  }
  return k;
}

bool SimplicialComplex::contains(Face face) const { return std::binary_search(faces_.begin(), faces_.end(), face); }

std::vector<Face> SimplicialComplex::facets() const {
  std::vector<Face> out;
  for (auto it = faces_.rbegin(); it != faces_.rend(); ++it) {
    const Face f = *it;
    bool maximal = std::none_of(out.begin(), out.end(), [&](Face g) { return f.subset_of(g); });
    if (maximal) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int SimplicialComplex::dimension() const { return faces_.back().dim(); }

bool SimplicialComplex::is_pure() const {
  const int d = dimension();
  for (Face f : facets())
    if (f.dim() != d) return false;
  return true;
}

std::vector<int> SimplicialComplex::ghost_vertices() const {
  std::vector<int> out;
  for (int v = 1; v <= vertex_count_; ++v)
    if (is_ghost(v)) out.push_back(v);
  return out;
}

Face SimplicialComplex::support() const {
  Face s;
  for (Face f : faces_) s = s | f;
  return s;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f(static_cast<std::size_t>(dimension() + 2), 0);
  for (Face face : faces_) ++f[static_cast<std::size_t>(face.size())];
  return f;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  if (vertex_count_ != other.vertex_count_) return false;
  return std::includes(other.faces_.begin(), other.faces_.end(), faces_.begin(), faces_.end());
}

SimplicialComplex SimplicialComplex::with_vertex_count(int vertex_count) const {
  check_vertex_count(vertex_count);
  check_in_range(vertex_count, support());
  return SimplicialComplex(vertex_count, faces_, true);
}

bool FaceSubset::contains(Face face) const { return std::binary_search(members_.begin(), members_.end(), face); }

FaceSubset FaceSubset::in(const SimplicialComplex& parent, std::vector<Face> members) {
  for (Face f : members) {
    if (f.empty()) throw InvalidArgument("a face subset may not contain the empty face");
    if (!parent.contains(f)) throw InvalidArgument(f.to_string() + " is not a face of the complex");
  }
  return make_face_subset_unchecked(parent.vertex_count(), std::move(members));
}

FaceSubset make_face_subset_unchecked(int vertex_count, std::vector<Face> members) {
  FaceSubset z(vertex_count);
  z.members_ = sorted_unique(std::move(members));
  return z;
}

SimplicialComplex closure(const FaceSubset& z) { return SimplicialComplex::from_facets(z.vertex_count(), z.members()); }

FaceSubset open_neighborhood(const SimplicialComplex& k, const FaceSubset& z) {
  std::vector<Face> out;
  for (Face sigma : k.faces()) {
    if (std::any_of(z.members().begin(), z.members().end(), [&](Face tau) { return tau.subset_of(sigma); }))
      out.push_back(sigma);
  }
  return make_face_subset_unchecked(k.vertex_count(), std::move(out));
}

SimplicialComplex star(const SimplicialComplex& k, const FaceSubset& z) { return closure(open_neighborhood(k, z)); }

SimplicialComplex deletion(const SimplicialComplex& k, const FaceSubset& z) {
  const FaceSubset open = open_neighborhood(k, z);
  std::vector<Face> kept;
  std::set_difference(k.faces().begin(), k.faces().end(), open.members().begin(), open.members().end(),
                      std::back_inserter(kept));
  return SimplicialComplex::from_faces(k.vertex_count(), std::move(kept));
}

SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b) {
  require_same_vertices(a, b);
  std::vector<Face> out;
  std::set_union(a.faces().begin(), a.faces().end(), b.faces().begin(), b.faces().end(), std::back_inserter(out));
  return SimplicialComplex::from_faces(a.vertex_count(), std::move(out));
}

SimplicialComplex complex_intersection(const SimplicialComplex& a, const SimplicialComplex& b) {
  require_same_vertices(a, b);
  std::vector<Face> out;
  std::set_intersection(a.faces().begin(), a.faces().end(), b.faces().begin(), b.faces().end(),
                        std::back_inserter(out));
  return SimplicialComplex::from_faces(a.vertex_count(), std::move(out));
}

FaceSubset face_difference(const SimplicialComplex& k, const SimplicialComplex& w) {
  require_same_vertices(k, w);
  std::vector<Face> out;
  std::set_difference(k.faces().begin(), k.faces().end(), w.faces().begin(), w.faces().end(),
                      std::back_inserter(out));
  return make_face_subset_unchecked(k.vertex_count(), std::move(out));
}

SimplicialComplex connected_sum(const SimplicialComplex& k1, const SimplicialComplex& k2, const FaceSubset& z) {
  require_same_vertices(k1, k2);
  if (z.vertex_count() != k1.vertex_count()) throw InvalidArgument("face subset lives on a different vertex set");
  const SimplicialComplex w = complex_intersection(k1, k2);
  for (Face tau : z.members()) {
    if (tau.empty()) throw HypothesisError("Z may not contain the empty face");
    if (!w.contains(tau)) throw HypothesisError("Z is not contained in K1 ∩ K2: " + tau.to_string(), tau);
  }
  const SimplicialComplex whole = complex_union(k1, k2);
  const FaceSubset open = open_neighborhood(whole, z);
  for (Face sigma : open.members()) {
    if (!w.contains(sigma))
      throw HypothesisError("O_{K1∪K2}(Z) is not contained in K1 ∩ K2: " + sigma.to_string(), sigma);
  }
  return deletion(whole, z);
}

FaceSubset strong_z(const SimplicialComplex& k, const SimplicialComplex& w) {
  if (!w.is_subcomplex_of(k)) throw InvalidArgument("W is not a subcomplex of K");
  const FaceSubset outside = face_difference(k, w);
  std::vector<Face> out;
  for (Face tau : k.faces()) {
    if (tau.empty()) continue;
    const bool completes_nothing = std::none_of(outside.members().begin(), outside.members().end(),
                                                [&](Face sigma) { return k.contains(tau | sigma); });
    if (completes_nothing) out.push_back(tau);
  }
  return make_face_subset_unchecked(k.vertex_count(), std::move(out));
}

FaceSubset strong_z_by_closure(const SimplicialComplex& k, const SimplicialComplex& w) {
  if (!w.is_subcomplex_of(k)) throw InvalidArgument("W is not a subcomplex of K");
  const SimplicialComplex covered = closure(face_difference(k, w));
  return face_difference(w, covered);
}

StrongSumVerdict is_strong_connected_sum(const SimplicialComplex& k1, const SimplicialComplex& k2,
                                         const FaceSubset& z) {
  try {
    (void)connected_sum(k1, k2, z);
  } catch (const Error& e) {
    return {false, std::string("not a connected sum: ") + e.what()};
  }
  const SimplicialComplex w = complex_intersection(k1, k2);
  if (!k1.is_pure()) return {false, "K1 is not pure"};
  if (!k2.is_pure()) return {false, "K2 is not pure"};
  if (!w.is_pure()) return {false, "K1 ∩ K2 is not pure"};
  if (k1.dimension() != k2.dimension() || k1.dimension() != w.dimension())
    return {false, "dimension mismatch: dim K1 = " + std::to_string(k1.dimension()) +
                       ", dim K2 = " + std::to_string(k2.dimension()) +
                       ", dim W = " + std::to_string(w.dimension())};
  if (strong_z_by_closure(k1, w) != z) return {false, "Z differs from W \\ closure(K1 \\ W)"};
  if (strong_z_by_closure(k2, w) != z) return {false, "Z differs from W \\ closure(K2 \\ W)"};
  return {true, ""};
}

SimplicialComplex link(const SimplicialComplex& k, Face sigma) {
  if (!k.contains(sigma)) throw InvalidArgument(sigma.to_string() + " is not a face of the complex");
  std::vector<Face> out;
  for (Face tau : k.faces()) {
    if (tau.disjoint(sigma) && k.contains(tau | sigma)) out.push_back(tau);
  }
  return SimplicialComplex::from_faces(k.vertex_count(), std::move(out));
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& k, Face vertices) {
  std::vector<Face> out;
  for (Face f : k.faces())
    if (f.subset_of(vertices)) out.push_back(f);
  return SimplicialComplex::from_faces(k.vertex_count(), std::move(out));
}

SimplicialComplex core(const SimplicialComplex& k) {
  const std::vector<Face> facets = k.facets();
  Face in_every = full_face(k.vertex_count());
  for (Face f : facets) in_every = in_every & f;
  return induced_subcomplex(k, k.support().minus(in_every));
}

SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<int>& permutation) {
  const int m = k.vertex_count();
  if (static_cast<int>(permutation.size()) != m) throw InvalidArgument("permutation has the wrong length");
  std::vector<int> seen(static_cast<std::size_t>(m) + 1, 0);
  for (int p : permutation) {
    if (p < 1 || p > m || seen[static_cast<std::size_t>(p)]++) throw InvalidArgument("not a permutation of 1..m");
  }
  std::vector<Face> out;
  out.reserve(k.face_count());
  for (Face f : k.faces()) {
    std::vector<int> image;
    for (int v : f.vertices()) image.push_back(permutation[static_cast<std::size_t>(v - 1)]);
    out.push_back(Face::of(image));
  }
  return SimplicialComplex::from_faces(m, std::move(out));
}

}  // namespace connsum
