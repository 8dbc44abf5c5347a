#include "connsum/homology_tor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "connsum/errors.hpp"

namespace connsum {

// ---------------------------------------------------------------------------
// Graded groups
// ---------------------------------------------------------------------------

std::string AbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << 'Z';
    if (free_rank > 1) out << '^' << free_rank;
    first = false;
  }
  for (const Integer& t : torsion) {
    if (!first) out << " + ";
    first = false;
    out << "Z/" << t;
  }
  return out.str();
}

void GradedAbelianGroup::set(int degree, AbelianGroup group) {
  if (group.is_zero())
    pieces_.erase(degree);
  else
    pieces_[degree] = std::move(group);
}

AbelianGroup GradedAbelianGroup::at(int degree) const {
  auto it = pieces_.find(degree);
  return it == pieces_.end() ? AbelianGroup{} : it->second;
}

std::optional<int> GradedAbelianGroup::first_nonzero_degree() const {
  if (pieces_.empty()) return std::nullopt;
  return pieces_.begin()->first;
}

std::string GradedAbelianGroup::to_string() const {
  if (pieces_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [d, g] : pieces_) {
    if (!first) out << ", ";
    first = false;
    out << d << ": " << g.to_string();
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

Field Field::prime(std::uint32_t p) {
  bool prime = p >= 2;
  for (std::uint32_t q = 2; prime && q * q <= p; ++q) prime = p % q != 0;
  if (!prime) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  return Field{p};
}

Field Field::parse(const std::string& text) {
  if (text == "Q" || text == "q" || text == "0") return rationals();
  std::string digits;
  if (text.rfind("Fp:", 0) == 0)
    digits = text.substr(3);
  else if (!text.empty() && (text[0] == 'F' || text[0] == 'f'))
    digits = text.substr(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      digits.size() > 9)
    throw InvalidArgument("unrecognised field '" + text + "' (expected Q or Fp:<prime>)");
  return prime(static_cast<std::uint32_t>(std::stoul(digits)));
}

std::string Field::to_string() const { return characteristic == 0 ? "Q" : "Fp:" + std::to_string(characteristic); }

// ---------------------------------------------------------------------------
// Simplicial homology
// ---------------------------------------------------------------------------

namespace {

/// Faces grouped by size, 0..dim+1.
std::vector<std::vector<Face>> faces_by_size(const SimplicialComplex& k) {
  std::vector<std::vector<Face>> out(k.dimension() + 2);
  for (Face f : k.faces()) out[f.size()].push_back(f);
  return out;
}

/// Boundary from faces of size s to faces of size s − 1 (s ≥ 1).
IntegerMatrix boundary(const std::vector<Face>& upper, const std::vector<Face>& lower) {
  std::unordered_map<Face, std::size_t> index;
  for (std::size_t i = 0; i < lower.size(); ++i) index.emplace(lower[i], i);
  IntegerMatrix d(lower.size(), upper.size());
  for (std::size_t j = 0; j < upper.size(); ++j) {
    const std::vector<int> vs = upper[j].vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      d(index.at(upper[j].minus(Face::vertex(vs[i]))), j) = (i % 2 == 0) ? 1 : -1;
  }
  return d;
}

std::size_t rank_over(const IntegerMatrix& m, Field f) {
  if (m.empty()) return 0;
  return f.characteristic == 0 ? rank(m) : rank_mod_p(m, f.characteristic);
}

}  // namespace

GradedAbelianGroup simplicial_homology(const SimplicialComplex& k) {
  const auto by_size = faces_by_size(k);
  const int top = static_cast<int>(by_size.size()) - 1;  // largest face size
  // factors[s] for the boundary from size s to size s − 1.
  std::vector<InvariantFactors> factors(top + 2);
  for (int s = 1; s <= top; ++s) factors[s] = invariant_factors(boundary(by_size[s], by_size[s - 1]));
  GradedAbelianGroup h;
  for (int s = 0; s <= top; ++s) {
    AbelianGroup g;
    g.free_rank = by_size[s].size() - factors[s].rank - factors[s + 1].rank;
    g.torsion = factors[s + 1].torsion();
    h.set(s - 1, std::move(g));
  }
  return h;
}

std::vector<std::size_t> reduced_betti(const SimplicialComplex& k, Field field) {
  const auto by_size = faces_by_size(k);
  const int top = static_cast<int>(by_size.size()) - 1;
  std::vector<std::size_t> ranks(top + 2, 0);
  for (int s = 1; s <= top; ++s) ranks[s] = rank_over(boundary(by_size[s], by_size[s - 1]), field);
  std::vector<std::size_t> betti(top + 1);
  for (int s = 0; s <= top; ++s) betti[s] = by_size[s].size() - ranks[s] - ranks[s + 1];
  return betti;
}

bool is_cohen_macaulay(const SimplicialComplex& k, Field field) {
  for (Face sigma : k.faces()) {
    const SimplicialComplex l = link(k, sigma);
    const std::vector<std::size_t> b = reduced_betti(l, field);
    // b[i + 1] is H̃_i; only i < dim l is constrained.
    for (int i = -1; i < l.dimension(); ++i)
      if (b[i + 1] != 0) return false;
  }
  return true;
}

bool is_gorenstein(const SimplicialComplex& k, Field field) {
  const SimplicialComplex c = core(k);
  for (Face sigma : c.faces()) {
    const SimplicialComplex l = link(c, sigma);
    const std::vector<std::size_t> b = reduced_betti(l, field);
    for (int i = -1; i <= l.dimension(); ++i)
      if (b[i + 1] != (i == l.dimension() ? 1u : 0u)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Koszul complexes
// ---------------------------------------------------------------------------

SubringSpec::SubringSpec(IntegerMatrix b) : b_(std::move(b)) {
  if (b_.rows() == 0) throw InvalidArgument("subring matrix needs at least one row");
  if (rank(b_) != b_.rows()) throw InvalidArgument("subring matrix must have full row rank");
}

bool lsop_check(const SimplicialComplex& k, const SubringSpec& s) {
  if (s.m() != k.vertex_count()) throw InvalidArgument("matrix column count differs from the vertex count");
  for (Face f : k.facets()) {
    if (f.empty()) continue;
    const std::vector<int> vs = f.vertices();
    IntegerMatrix cols(s.matrix().rows(), vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t i = 0; i < cols.rows(); ++i) cols(i, j) = s.matrix()(i, vs[j] - 1);
    if (rank(cols) != vs.size()) return false;
  }
  return true;
}

namespace {

/// Matrix of multiplication by uᵢ from `lower` (degree e) to `upper`
/// (degree e + 1); products leaving `upper` are zero in the ring.
IntegerMatrix multiplication(const IntegerMatrix& b, std::size_t i, const MonomialBasis& lower,
                             const MonomialBasis& upper) {
  IntegerMatrix out(upper.size(), lower.size());
  for (std::size_t c = 0; c < lower.size(); ++c) {
    Monomial a = lower[c];
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (b(i, j) == 0) continue;
      ++a[j];
      const long r = upper.index_of(a);
      if (r >= 0) out(static_cast<std::size_t>(r), c) += b(i, j);
      --a[j];
    }
  }
  return out;
}

/// Σᵢ uᵢ · lower as relation columns inside `upper`.
IntegerMatrix linear_relations(const IntegerMatrix& b, const MonomialBasis& lower, const MonomialBasis& upper) {
  IntegerMatrix rel(upper.size(), 0);
  for (std::size_t i = 0; i < b.rows(); ++i) rel = hstack(rel, multiplication(b, i, lower, upper));
  return rel;
}

/// Koszul differential Λ^p ⊗ R_{e} → Λ^{p−1} ⊗ R_{e+1}, e_S ⊗ f ↦ Σ_k (−1)^k e_{S∖i_k} ⊗ u_{i_k} f
/// (k counted from 0).
IntegerMatrix koszul_differential(const std::vector<std::uint32_t>& wedge_p,
                                  const std::unordered_map<std::uint32_t, std::size_t>& wedge_index_lower,
                                  std::size_t wedge_lower_count, const std::vector<IntegerMatrix>& mult) {
  const std::size_t lo = mult.front().cols(), hi = mult.front().rows();
  IntegerMatrix d(wedge_lower_count * hi, wedge_p.size() * lo);
  for (std::size_t si = 0; si < wedge_p.size(); ++si) {
    const std::uint32_t s = wedge_p[si];
    int k = 0;
    for (std::size_t i = 0; i < mult.size(); ++i) {
      if (!((s >> i) & 1U)) continue;
      const std::size_t target = wedge_index_lower.at(s & ~(1U << i));
      const int sign = (k % 2 == 0) ? 1 : -1;
      ++k;
      const IntegerMatrix& mu = mult[i];
      for (std::size_t r = 0; r < hi; ++r)
        for (std::size_t c = 0; c < lo; ++c) {
          if (mu(r, c) == 0) continue;
          d(target * hi + r, si * lo + c) += sign * mu(r, c);
        }
    }
  }
  return d;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::optional<int> euler_degree(const SimplicialComplex& k, int n) {
  const HilbertSeries h = hilbert_series(k);
  const int big_d = h.denominator_exponent;
  if (n < big_d) return std::nullopt;
  std::vector<Integer> num;  // in s
  for (std::size_t i = 0; i < h.numerator.size(); i += 2) num.push_back(h.numerator[i]);
  std::vector<Integer> poly(num.size() + (n - big_d), 0);
  for (std::size_t a = 0; a < num.size(); ++a)
    for (int j = 0; j <= n - big_d; ++j) {
      const Integer c = binomial(n - big_d, j) * num[a];
      poly[a + j] += (j % 2 ? -c : c);
    }
  for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i)
    if (poly[i] != 0) return i;
  return -1;
}

}  // namespace

PresentedModule tor0_presentation(const SimplicialComplex& k, const SubringSpec& s, int d) {
  if (s.m() != k.vertex_count()) throw InvalidArgument("matrix column count differs from the vertex count");
  const MonomialBasis top = graded_basis(k, d);
  if (d == 0) return PresentedModule::free(top.size());
  return {top.size(), linear_relations(s.matrix(), graded_basis(k, d - 1), top)};
}

bool TorResult::euler_ok() const {
  return std::all_of(euler_by_degree.begin(), euler_by_degree.end(), [](bool b) { return b; });
}

bool TorResult::vanishes(int p) const { return p >= static_cast<int>(tor.size()) || tor[p].is_zero(); }

bool TorResult::higher_vanishing_consistent() const {
  if (!vanishes(1)) return true;
  for (int p = 2; p <= p_max; ++p)
    if (!vanishes(p)) return false;
  return true;
}

std::string TorResult::confidence() const {
  bool certified = lsop && euler_polynomial_degree && *euler_polynomial_degree < d_max;
  for (int p = 1; certified && p < static_cast<int>(tor.size()); ++p)
    for (const auto& [d, g] : tor[p].pieces())
      if (d > *euler_polynomial_degree) certified = false;
  return certified ? "certified" : "bounded evidence";
}

TorResult koszul_tor(const SimplicialComplex& k, const SubringSpec& s, int p_max, int d_max) {
  if (s.m() != k.vertex_count()) throw InvalidArgument("matrix column count differs from the vertex count");
  if (p_max < 0) throw InvalidArgument("p_max must be nonnegative");
  if (d_max < p_max) throw InvalidArgument("d_max must be at least p_max");
  const int n = s.n();
  if (n > 20) throw InvalidArgument("at most 20 linear forms are supported");

  TorResult res;
  res.n = n;
  res.p_max = p_max;
  res.d_max = d_max;
  res.tor.assign(p_max + 1, {});
  res.lsop = lsop_check(k, s);
  res.euler_polynomial_degree = euler_degree(k, n);

  // Exterior basis by size, as bitmasks over the n forms.
  std::vector<std::vector<std::uint32_t>> wedge(n + 1);
  std::vector<std::unordered_map<std::uint32_t, std::size_t>> wedge_index(n + 1);
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const int p = std::popcount(mask);
    wedge_index[p].emplace(mask, wedge[p].size());
    wedge[p].push_back(mask);
  }

  std::vector<MonomialBasis> bases;
  for (int e = 0; e <= d_max; ++e) bases.push_back(graded_basis(k, e));
  // mult[e][i]: R_e → R_{e+1}.
  std::vector<std::vector<IntegerMatrix>> mult(d_max);
  for (int e = 0; e < d_max; ++e)
    for (int i = 0; i < n; ++i) mult[e].push_back(multiplication(s.matrix(), i, bases[e], bases[e + 1]));

  const std::vector<Integer> euler = hilbert_times_one_minus_s(k, n, d_max);
  for (int d = 0; d <= d_max; ++d) {
    const int top = std::min(n, d);
    // diff[p] : C_p → C_{p−1} for 1 ≤ p ≤ top.
    std::vector<IntegerMatrix> diff(top + 2);
    std::vector<InvariantFactors> f(top + 2);
    for (int p = 1; p <= top; ++p) {
      diff[p] = koszul_differential(wedge[p], wedge_index[p - 1], wedge[p - 1].size(), mult[d - p]);
      f[p] = invariant_factors(diff[p]);
    }
    for (int p = 2; p <= top; ++p)
      if (!(diff[p - 1] * diff[p]).is_zero()) throw std::logic_error("Koszul differential does not square to zero");
    Integer chi = 0;
    for (int p = 0; p <= top; ++p) {
      AbelianGroup g;
      const std::size_t dim = wedge[p].size() * bases[d - p].size();
      g.free_rank = dim - f[p].rank - f[p + 1].rank;
      g.torsion = f[p + 1].torsion();
      chi += (p % 2 ? -1 : 1) * Integer(g.free_rank);
      if (p <= p_max) res.tor[p].set(d, std::move(g));
    }
    res.euler_by_degree.push_back(chi == euler[d]);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Connected sums
// ---------------------------------------------------------------------------

const TorSumReport::Ring& TorSumReport::ring(const std::string& name) const {
  for (const Ring& r : rings)
    if (r.name == name) return r;
  throw InvalidArgument("no ring named " + name);
}

bool TorSumReport::consistent() const {
  return std::all_of(consistency.begin(), consistency.end(), [](const NamedCheck& c) { return c.holds; }) &&
         std::all_of(conclusions.begin(), conclusions.end(), [](const NamedCheck& c) { return c.holds; });
}

bool TorSumReport::converse_fails() const {
  return ring("W").tor.vanishes(1) && ring("K1").tor.vanishes(1) && ring("K2").tor.vanishes(1) &&
         !ring("K").tor.vanishes(1);
}

namespace {

std::size_t module_rank(const PresentedModule& m) {
  return m.generators - (m.relations.empty() ? 0 : rank(m.relations));
}

IntegerMatrix negate(IntegerMatrix m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
  return m;
}

DegreeReport tor0_degree(int d, const PresentedModule& a, const IntegerMatrix& f, const PresentedModule& b,
                         const IntegerMatrix& g, const PresentedModule& c) {
  DegreeReport r;
  r.degree = d;
  r.verdict = check_short_exact(a, f, b, g, c);
  r.rank_a = module_rank(a);
  r.rank_b = module_rank(b);
  r.rank_c = module_rank(c);
  return r;
}

}  // namespace

TorSumReport verify_tor_fiber_product(const SimplicialComplex& k1, const SimplicialComplex& k2, const FaceSubset& z,
                                      const SubringSpec& s, int d_max) {
  const SimplicialComplex k = connected_sum(k1, k2, z);
  const SimplicialComplex kt = complex_union(k1, k2);
  const SimplicialComplex w = complex_intersection(k1, k2);
  const int p_max = std::min(s.n(), d_max);

  TorSumReport rep;
  for (const auto& [name, cx] : std::vector<std::pair<std::string, const SimplicialComplex*>>{
           {"W", &w}, {"K1", &k1}, {"K2", &k2}, {"Ktilde", &kt}, {"K", &k}})
    rep.rings.push_back({name, koszul_tor(*cx, s, p_max, d_max)});

  const bool t1w = rep.ring("W").tor.vanishes(1), t1k1 = rep.ring("K1").tor.vanishes(1),
             t1k2 = rep.ring("K2").tor.vanishes(1), t1kt = rep.ring("Ktilde").tor.vanishes(1),
             t1k = rep.ring("K").tor.vanishes(1);
  rep.hypotheses = {{"Tor1(Z[W]) = 0", t1w},
                    {"Tor1(Z[K1]) = 0", t1k1},
                    {"Tor1(Z[K2]) = 0", t1k2},
                    {"Tor1(Z[K]) = 0", t1k}};

  // Tor₀ sequences, degree by degree.
  const MonomialIdeal ideal(kt, z.members());
  rep.tor0_fiber_product.sequence = "0 -> Tor0(Ktilde) -> Tor0(K1) + Tor0(K2) -> Tor0(W) -> 0";
  rep.tor0_ideal.sequence = "0 -> Tor0(I_Z) -> Tor0(Ktilde) -> Tor0(K) -> 0";
  for (int d = 0; d <= d_max; ++d) {
    const MonomialBasis bt = graded_basis(kt, d), b1 = graded_basis(k1, d), b2 = graded_basis(k2, d),
                        bw = graded_basis(w, d), bk = graded_basis(k, d), bi = ideal.graded_basis(d);
    const PresentedModule mt = tor0_presentation(kt, s, d), m1 = tor0_presentation(k1, s, d),
                          m2 = tor0_presentation(k2, s, d), mw = tor0_presentation(w, s, d),
                          mk = tor0_presentation(k, s, d);
    const IntegerMatrix f = vstack(monomial_projection(bt, b1), monomial_projection(bt, b2));
    const IntegerMatrix g = hstack(monomial_projection(b1, bw), negate(monomial_projection(b2, bw)));
    rep.tor0_fiber_product.degrees.push_back(tor0_degree(d, mt, f, direct_sum(m1, m2), g, mw));

    PresentedModule mi = PresentedModule::free(bi.size());
    if (d > 0) mi.relations = linear_relations(s.matrix(), ideal.graded_basis(d - 1), bi);
    rep.tor0_ideal.degrees.push_back(
        tor0_degree(d, mi, monomial_projection(bi, bt), mt, monomial_projection(bt, bk), mk));
  }
  const bool fp_exact = rep.tor0_fiber_product.all_exact();
  const bool ideal_exact = rep.tor0_ideal.all_exact();

  rep.conclusions = {
      {"Tor1(Z[W]) = 0 implies (Tor1(Z[Ktilde]) = 0 iff Tor1(Z[K1]) = Tor1(Z[K2]) = 0)",
       !t1w || (t1kt == (t1k1 && t1k2))},
      {"Tor1(Z[W]) = 0 implies Tor0 fiber-product sequence exact", !t1w || fp_exact},
      {"Tor1 of K1, K2, K, W all 0 implies Tor0(Z[K]) is the connected sum", !(t1w && t1k1 && t1k2 && t1k) ||
                                                                              (fp_exact && ideal_exact)},
  };
  for (const auto& r : rep.rings) {
    rep.consistency.push_back({"Euler characteristic of Tor(Z[" + r.name + "])", r.tor.euler_ok()});
    rep.consistency.push_back({"Tor1(Z[" + r.name + "]) = 0 forces higher Tor to vanish",
                               r.tor.higher_vanishing_consistent()});
  }
  const bool certified = std::all_of(rep.rings.begin(), rep.rings.end(),
                                     [](const TorSumReport::Ring& r) { return r.tor.confidence() == "certified"; });
  rep.confidence = certified ? "certified" : "bounded evidence";
  return rep;
}

}  // namespace connsum
