#include "connsum/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "connsum/errors.hpp"

namespace connsum {

namespace {

Integer gcd_of(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const Integer& x : v) g = boost::multiprecision::gcd(g, x);
  return abs(g);
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k > n || k < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Solves A x = b for square A; nullopt when A is singular.
std::optional<RationalPoint> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  RationalPoint x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

IntegerMatrix normal_matrix(const std::vector<Inequality>& ineqs, const std::vector<int>& rows, int dim) {
  IntegerMatrix m(rows.size(), static_cast<std::size_t>(dim));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < dim; ++c) m(r, static_cast<std::size_t>(c)) = ineqs[static_cast<std::size_t>(rows[r])].normal[static_cast<std::size_t>(c)];
  return m;
}

void validate(int dim, const std::vector<Inequality>& ineqs) {
  if (dim < 1 || dim > RationalPolytope::kMaxDim)
    throw InvalidArgument("polytope dimension must be between 1 and " + std::to_string(RationalPolytope::kMaxDim));
  if (ineqs.size() > static_cast<std::size_t>(RationalPolytope::kMaxInequalities) + 1)
    throw InvalidArgument("too many inequalities (limit " + std::to_string(RationalPolytope::kMaxInequalities) + ")");
  for (const Inequality& h : ineqs) {
    if (h.normal.size() != static_cast<std::size_t>(dim)) throw InvalidArgument("inequality normal has the wrong length");
    if (std::all_of(h.normal.begin(), h.normal.end(), [](const Integer& x) { return x == 0; }))
      throw InvalidArgument("inequality with zero normal");
  }
}

// The recession cone {r | A r ≥ 0} is {0} iff A has rank n and no ray of the
// cone exists; every extreme ray is cut out by n-1 independent rows.
bool is_bounded(int dim, const std::vector<Inequality>& ineqs) {
  const int m = static_cast<int>(ineqs.size());
  std::vector<int> all(static_cast<std::size_t>(m));
  std::iota(all.begin(), all.end(), 0);
  if (static_cast<int>(rank(normal_matrix(ineqs, all, dim))) < dim) return false;
  bool bounded = true;
  for_each_combination(m, dim - 1, [&](const std::vector<int>& rows) {
    if (!bounded) return;
    IntegerMatrix sub = normal_matrix(ineqs, rows, dim);
    if (rows.empty()) sub = IntegerMatrix(1, static_cast<std::size_t>(dim));
    const IntegerMatrix k = kernel_basis(sub);
    if (k.cols() != 1) return;
    for (int sign : {1, -1}) {
      bool ray = true;
      for (const Inequality& h : ineqs) {
        Integer dot = 0;
        for (int c = 0; c < dim; ++c) dot += h.normal[static_cast<std::size_t>(c)] * k(static_cast<std::size_t>(c), 0);
        if (sign * dot < 0) {
          ray = false;
          break;
        }
      }
      if (ray) bounded = false;
    }
  });
  return bounded;
}

}  // namespace

std::string to_string(const RationalPoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += p[i].str();
  }
  return out + ")";
}

Rational Inequality::evaluate(const RationalPoint& x) const {
  Rational s = offset;
  for (std::size_t i = 0; i < normal.size(); ++i) s += Rational(normal[i]) * x[i];
  return s;
}

std::vector<PolytopeVertex> enumerate_vertices(int dim, const std::vector<Inequality>& ineqs) {
  validate(dim, ineqs);
  if (!is_bounded(dim, ineqs)) throw InvalidArgument("polytope is unbounded");
  const int m = static_cast<int>(ineqs.size());
  std::map<RationalPoint, Face> found;
  for_each_combination(m, dim, [&](const std::vector<int>& rows) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int r : rows) {
      const Inequality& h = ineqs[static_cast<std::size_t>(r)];
      a.emplace_back(h.normal.begin(), h.normal.end());
      b.emplace_back(-h.offset);
    }
    auto x = solve(std::move(a), std::move(b));
    if (!x || found.contains(*x)) return;
    Face active;
    for (int i = 0; i < m; ++i) {
      const Rational v = ineqs[static_cast<std::size_t>(i)].evaluate(*x);
      if (v < 0) return;
      if (v == 0) active = active | Face::vertex(i + 1);
    }
    found.emplace(std::move(*x), active);
  });
  if (found.empty()) throw InvalidArgument("polytope is empty");
  std::vector<PolytopeVertex> out;
  for (auto& [point, active] : found) out.push_back({point, active});
  return out;
}

RationalPolytope::RationalPolytope(int dim, std::vector<Inequality> inequalities)
    : dim_(dim), inequalities_(std::move(inequalities)) {
  vertices_ = enumerate_vertices(dim_, inequalities_);
}

Face RationalPolytope::ghost_inequalities() const {
  Face touched;
  for (const PolytopeVertex& v : vertices_) touched = touched | v.active;
  return full_face(inequality_count()).minus(touched);
}

bool is_simple(const RationalPolytope& p) {
  // Hyperplanes that miss P are never active, so counting active sets
  // already ignores ghost inequalities.
  return std::all_of(p.vertices().begin(), p.vertices().end(),
                     [&](const PolytopeVertex& v) { return v.active.size() == p.dim(); });
}

SimplicialComplex complex_of_polytope(const RationalPolytope& p, int vertex_count) {
  if (!is_simple(p)) throw InvalidArgument("polytope is not simple");
  if (vertex_count == 0) vertex_count = p.inequality_count();
  if (vertex_count < p.inequality_count()) throw InvalidArgument("vertex count smaller than the inequality count");
  std::vector<Face> facets;
  for (const PolytopeVertex& v : p.vertices()) facets.push_back(v.active);
  return SimplicialComplex::from_facets(vertex_count, facets);
}

CutSpec::CutSpec(std::vector<Integer> g, Integer x) : gamma(std::move(g)), xi(std::move(x)) {
  if (gcd_of(gamma) != 1) throw InvalidArgument("cut normal must be nonzero and primitive");
}

Inequality CutSpec::negative_side() const {
  Inequality h{gamma, -xi};
  for (Integer& x : h.normal) x = -x;
  return h;
}

GenericityCertificate is_generic_cut(const RationalPolytope& p, const CutSpec& c) {
  if (c.gamma.size() != static_cast<std::size_t>(p.dim())) return {false, "cut normal has the wrong length", {}};
  if (!is_simple(p)) return {false, "polytope is not simple", {}};
  const Inequality h = c.positive_side();
  bool above = false, below = false;
  for (const PolytopeVertex& v : p.vertices()) {
    const Rational s = h.evaluate(v.point);
    if (s == 0) return {false, "vertex lies on the cut hyperplane", v.point};
    (s > 0 ? above : below) = true;
  }
  if (!above || !below) return {false, "H_o = ∅: the hyperplane misses the polytope", {}};
  for (const Inequality& side : {c.positive_side(), c.negative_side()}) {
    std::vector<Inequality> ineqs = p.inequalities();
    ineqs.push_back(side);
    for (const PolytopeVertex& v : enumerate_vertices(p.dim(), ineqs))
      if (v.active.size() != p.dim())
        return {false, "vertex of a cut piece lies on " + std::to_string(v.active.size()) + " hyperplanes", v.point};
  }
  return {true, "", {}};
}

bool CutResult::all_checks_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.holds; });
}

CutResult cut(const RationalPolytope& p, const CutSpec& c) {
  const GenericityCertificate cert = is_generic_cut(p, c);
  if (!cert.generic) throw InvalidArgument("cut is not generic: " + cert.reason);
  const int m = p.inequality_count();
  const int o = m + 1;
  const Face fo = Face::vertex(o);

  std::vector<Inequality> plus_ineqs = p.inequalities(), minus_ineqs = p.inequalities();
  plus_ineqs.push_back(c.positive_side());
  minus_ineqs.push_back(c.negative_side());
  RationalPolytope plus(p.dim(), std::move(plus_ineqs));
  RationalPolytope minus(p.dim(), std::move(minus_ineqs));

  SimplicialComplex k_delta = complex_of_polytope(p, o);
  SimplicialComplex k_plus = complex_of_polytope(plus);
  SimplicialComplex k_minus = complex_of_polytope(minus);

  const SimplicialComplex pieces = complex_union(k_plus, k_minus);
  const FaceSubset just_o = make_face_subset_unchecked(o, {fo});
  FaceSubset z_o = open_neighborhood(pieces, just_o);

  // σ ∈ Z₊ iff the face F_σ of P is nonempty and lies strictly on the
  // positive side; F_σ is the hull of the vertices whose active set holds σ.
  std::vector<Face> z_plus_members;
  const Inequality side = c.positive_side();
  for (Face sigma : k_delta.faces()) {
    if (sigma.empty()) continue;
    const bool strictly_positive = std::all_of(p.vertices().begin(), p.vertices().end(), [&](const PolytopeVertex& v) {
      return !sigma.subset_of(v.active) || side.evaluate(v.point) > 0;
    });
    if (strictly_positive) z_plus_members.push_back(sigma);
  }
  FaceSubset z_plus = make_face_subset_unchecked(o, std::move(z_plus_members));

  std::vector<NamedCheck> checks;
  auto sum_equals = [](const SimplicialComplex& a, const SimplicialComplex& b, const FaceSubset& z,
                       const SimplicialComplex& expected) {
    try {
      return connected_sum(a, b, z) == expected;
    } catch (const HypothesisError&) {
      return false;
    }
  };
  checks.push_back({"K_delta = K_plus #(Z_o) K_minus", sum_equals(k_plus, k_minus, z_o, k_delta)});
  checks.push_back({"(K_plus, K_minus, Z_o) is a strong connected sum", is_strong_connected_sum(k_plus, k_minus, z_o).strong});
  checks.push_back({"K_minus = K_plus #(Z_plus) K_delta", sum_equals(k_plus, k_delta, z_plus, k_minus)});
  checks.push_back(
      {"(K_plus, K_delta, Z_plus) is a strong connected sum", is_strong_connected_sum(k_plus, k_delta, z_plus).strong});

  const SimplicialComplex star_plus = star(k_plus, just_o), star_minus = star(k_minus, just_o);
  checks.push_back({"K_plus ∩ K_minus = star_K_plus(o) = star_K_minus(o)",
                    complex_intersection(k_plus, k_minus) == star_plus && star_plus == star_minus});
  const FaceSubset open_plus = open_neighborhood(k_plus, just_o), open_minus = open_neighborhood(k_minus, just_o);
  checks.push_back({"(K_plus ∪ K_minus) \\ K_delta = O_K_plus(o) = O_K_minus(o)",
                    face_difference(pieces, k_delta) == open_plus && open_plus == open_minus});
  const SimplicialComplex z_plus_closure = closure(z_plus);
  checks.push_back({"K_plus ∩ K_delta = closure(Z_plus)", complex_intersection(k_plus, k_delta) == z_plus_closure});
  checks.push_back({"(K_plus ∪ K_delta) \\ K_minus = Z_plus",
                    face_difference(complex_union(k_plus, k_delta), k_minus) == z_plus});
  checks.push_back({"K_plus \\ closure(Z_plus) = O_K_plus(o)", face_difference(k_plus, z_plus_closure) == open_plus});

  return CutResult{std::move(plus),    std::move(minus), std::move(k_delta), std::move(k_plus),
                   std::move(k_minus), std::move(z_o),   std::move(z_plus),  o,
                   std::move(checks)};
}

LabeledPolytope::LabeledPolytope(RationalPolytope p, std::vector<Integer> l) : polytope(std::move(p)), labels(std::move(l)) {
  if (labels.size() != static_cast<std::size_t>(polytope.inequality_count()))
    throw InvalidArgument("need exactly one label per inequality");
  for (const Integer& b : labels)
    if (b <= 0) throw InvalidArgument("labels must be positive integers");
}

IntegerMatrix characteristic_matrix(int dim, const std::vector<std::vector<Integer>>& normals,
                                    const std::vector<Integer>& labels) {
  if (labels.size() != normals.size()) throw InvalidArgument("need exactly one label per normal");
  IntegerMatrix b(static_cast<std::size_t>(dim), normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].size() != static_cast<std::size_t>(dim)) throw InvalidArgument("normal has the wrong length");
    if (labels[i] <= 0) throw InvalidArgument("labels must be positive integers");
    const Integer g = gcd_of(normals[i]);
    if (g == 0) throw InvalidArgument("zero normal");
    for (int r = 0; r < dim; ++r) b(static_cast<std::size_t>(r), i) = labels[i] * (normals[i][static_cast<std::size_t>(r)] / g);
  }
  if (static_cast<int>(rank(b)) != dim) throw InvalidArgument("characteristic matrix is rank deficient");
  return b;
}

IntegerMatrix characteristic_matrix(const LabeledPolytope& l) {
  std::vector<std::vector<Integer>> normals;
  for (const Inequality& h : l.polytope.inequalities()) normals.push_back(h.normal);
  return characteristic_matrix(l.polytope.dim(), normals, l.labels);
}

IntegerMatrix extended_matrix(const LabeledPolytope& l, const CutSpec& c) {
  if (c.gamma.size() != static_cast<std::size_t>(l.polytope.dim())) throw InvalidArgument("cut normal has the wrong length");
  return hstack(characteristic_matrix(l), IntegerMatrix::from_columns({c.gamma}, c.gamma.size()));
}

std::optional<CutSpec> random_generic_cut(std::mt19937_64& rng, const RationalPolytope& p, int attempts) {
  for (int a = 0; a < attempts; ++a) {
    // Thin polytopes need steeper normals before an integral offset fits.
    std::uniform_int_distribution<int> entry(-3 - a / 10, 3 + a / 10);
    std::vector<Integer> gamma(static_cast<std::size_t>(p.dim()));
    for (Integer& g : gamma) g = entry(rng);
    const Integer g = gcd_of(gamma);
    if (g == 0) continue;
    for (Integer& x : gamma) x /= g;
    // Pick ξ strictly between the extreme values of -⟨v, γ⟩ on the vertices.
    Rational lo, hi;
    bool first = true;
    for (const PolytopeVertex& v : p.vertices()) {
      Rational s = 0;
      for (std::size_t i = 0; i < gamma.size(); ++i) s -= Rational(gamma[i]) * v.point[i];
      if (first || s < lo) lo = s;
      if (first || s > hi) hi = s;
      first = false;
    }
    const Integer low = static_cast<Integer>(numerator(lo) / denominator(lo)) - 1;
    const Integer high = static_cast<Integer>(numerator(hi) / denominator(hi)) + 1;
    if (high - low < 2) continue;
    std::uniform_int_distribution<long long> pick(static_cast<long long>(low + 1), static_cast<long long>(high - 1));
    CutSpec c(gamma, Integer(pick(rng)));
    if (is_generic_cut(p, c).generic) return c;
  }
  return std::nullopt;
}

RationalPolytope random_simple_polytope(std::mt19937_64& rng, int dim, int facets) {
  if (facets < 2 * dim) throw InvalidArgument("a box already has 2n facets");
  constexpr int kSide = 12;
  while (true) {
    std::vector<Inequality> box;
    for (int i = 0; i < dim; ++i) {
      std::vector<Integer> e(static_cast<std::size_t>(dim));
      e[static_cast<std::size_t>(i)] = 1;
      box.push_back({e, 0});
      e[static_cast<std::size_t>(i)] = -1;
      box.push_back({e, kSide});
    }
    RationalPolytope p(dim, std::move(box));
    for (int step = 0; step < 4 * facets && p.inequality_count() < facets; ++step) {
      auto c = random_generic_cut(rng, p);
      if (!c) break;
      // Keep the piece with more vertices so repeated truncation does not
      // shrink the polytope, and drop inequalities that became redundant.
      std::vector<Inequality> ineqs = p.inequalities();
      ineqs.push_back(c->positive_side());
      RationalPolytope piece(dim, ineqs);
      ineqs.back() = c->negative_side();
      RationalPolytope other(dim, ineqs);
      if (other.vertices().size() > piece.vertices().size() ||
          (other.vertices().size() == piece.vertices().size() && rng() % 2))
        piece = std::move(other);
      const Face ghosts = piece.ghost_inequalities();
      std::vector<Inequality> kept;
      for (int i = 1; i <= piece.inequality_count(); ++i)
        if (!ghosts.contains(i)) kept.push_back(piece.inequality(i));
      if (static_cast<int>(kept.size()) <= facets) p = RationalPolytope(dim, std::move(kept));
    }
    if (p.inequality_count() == facets) return p;
  }
}

}  // namespace connsum
