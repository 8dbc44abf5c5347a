#include "connsum/stanley_reisner.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "connsum/errors.hpp"

namespace connsum {

Face support(const Monomial& a) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) bits |= std::uint64_t{1} << i;
  return Face(bits);
}

int degree(const Monomial& a) {
  int d = 0;
  for (auto e : a) d += e;
  return d;
}

std::string to_string(const Monomial& a) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << 'x' << (i + 1);
    if (a[i] > 1) out << '^' << a[i];
  }
  if (first) return "1";
  return out.str();
}

MonomialBasis::MonomialBasis(std::vector<Monomial> monomials) : monomials_(std::move(monomials)) {
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    if (!index_.emplace(monomials_[i], i).second) throw InvalidArgument("duplicate monomial " + to_string(monomials_[i]));
}

long MonomialBasis::index_of(const Monomial& a) const {
  auto it = index_.find(a);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

namespace {

/// Every monomial of degree d with support exactly `s`, appended to out.
void monomials_with_support(int m, Face s, int d, std::vector<Monomial>& out) {
  const std::vector<int> vs = s.vertices();
  const int k = static_cast<int>(vs.size());
  if (k == 0) {
    if (d == 0) out.emplace_back(m, 0);
    return;
  }
  if (d < k) return;
  Monomial a(m, 0);
  // Compositions of d into k positive parts.
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      a[vs[i] - 1] = static_cast<std::uint16_t>(left);
      out.push_back(a);
      return;
    }
    for (int e = 1; e <= left - (k - 1 - i); ++e) {
      a[vs[i] - 1] = static_cast<std::uint16_t>(e);
      rec(i + 1, left - e);
    }
  };
  rec(0, d);
}

/// Degree-d monomial of support s: exponent 1 on s, the excess on its
/// smallest vertex. Every monomial block of that support looks like this one.
Monomial representative(int m, Face s, int d) {
  Monomial a(m, 0);
  const std::vector<int> vs = s.vertices();
  for (int v : vs) a[v - 1] = 1;
  if (!vs.empty()) a[vs.front() - 1] = static_cast<std::uint16_t>(d - static_cast<int>(vs.size()) + 1);
  return a;
}

void sort_descending(std::vector<Monomial>& v) { std::sort(v.begin(), v.end(), std::greater<>()); }

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Matrix of the monomial projection: a column monomial goes to the same
/// monomial in the row list, or to 0.
IntegerMatrix projection(const std::vector<Monomial>& from, const MonomialBasis& to) {
  IntegerMatrix p(to.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j) {
    const long i = to.index_of(from[j]);
    if (i >= 0) p(static_cast<std::size_t>(i), j) = 1;
  }
  return p;
}

MonomialBasis filter(const std::vector<Monomial>& all, const std::function<bool(Face)>& keep) {
  std::vector<Monomial> out;
  for (const auto& a : all)
    if (keep(support(a))) out.push_back(a);
  return MonomialBasis(std::move(out));
}

IntegerMatrix negated(IntegerMatrix m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
  return m;
}

/// Monomial blocks of degree d over `big`, with multiplicities.
std::vector<std::pair<std::vector<Monomial>, std::size_t>> blocks(const SimplicialComplex& big, int d,
                                                                   Assembly assembly) {
  std::vector<std::pair<std::vector<Monomial>, std::size_t>> out;
  const int m = big.vertex_count();
  if (assembly == Assembly::FullDegree) {
    out.emplace_back(graded_basis(big, d).monomials(), 1);
    return out;
  }
  for (Face s : big.faces()) {
    if (s.size() > d || (d > 0 && s.empty())) continue;
    const Integer mult = d == 0 ? Integer(1) : binomial(d - 1, s.size() - 1);
    out.push_back({{representative(m, s, d)}, static_cast<std::size_t>(mult)});
  }
  return out;
}

void scale(DegreeReport& r, const ExactnessVerdict& v, std::size_t a, std::size_t b, std::size_t c,
           std::size_t mult) {
  ExactnessVerdict scaled = v;
  scaled.rank_f *= mult;
  scaled.rank_g *= mult;
  r.verdict &= scaled;
  r.rank_a += a * mult;
  r.rank_b += b * mult;
  r.rank_c += c * mult;
}

DegreeReport fresh_report(int d) {
  DegreeReport r;
  r.degree = d;
  r.verdict.injective = r.verdict.exact_middle = r.verdict.surjective = true;
  return r;
}

void require_same_vertex_count(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count()) throw InvalidArgument("complexes live on different vertex counts");
}

}  // namespace

SRPresentation::SRPresentation(SimplicialComplex k) : k_(std::move(k)) {
  // A minimal non-face is a face plus one vertex, all of whose facets are faces.
  std::set<Face> found;
  for (int v = 1; v <= k_.vertex_count(); ++v)
    for (Face f : k_.faces()) {
      if (f.contains(v)) continue;
      const Face s = f | Face::vertex(v);
      if (k_.contains(s) || found.count(s)) continue;
      bool minimal = true;
      for (int u : s.vertices())
        if (!k_.contains(s.minus(Face::vertex(u)))) {
          minimal = false;
          break;
        }
      if (minimal) found.insert(s);
    }
  minimal_nonfaces_.assign(found.begin(), found.end());
}

SRPresentation sr_presentation(const SimplicialComplex& k) { return SRPresentation(k); }

MonomialBasis graded_basis(const SimplicialComplex& k, int d) {
  if (d < 0) throw InvalidArgument("negative degree");
  std::vector<Monomial> out;
  for (Face s : k.faces())
    if (s.size() <= d) monomials_with_support(k.vertex_count(), s, d, out);
  sort_descending(out);
  return MonomialBasis(std::move(out));
}

MonomialIdeal::MonomialIdeal(SimplicialComplex ambient, std::vector<Face> generators) : ambient_(std::move(ambient)) {
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (Face g : generators) {
    if (!ambient_.contains(g)) continue;
    // Sorted by size, so any divisor of g is already present.
    if (std::any_of(generators_.begin(), generators_.end(), [&](Face h) { return h.subset_of(g); })) continue;
    generators_.push_back(g);
  }
}

bool MonomialIdeal::contains(const Monomial& a) const {
  const Face s = support(a);
  if (!ambient_.contains(s)) return true;  // the zero element
  return std::any_of(generators_.begin(), generators_.end(), [&](Face g) { return g.subset_of(s); });
}

std::vector<Face> MonomialIdeal::support_faces() const {
  std::vector<Face> out;
  for (Face f : ambient_.faces())
    if (std::any_of(generators_.begin(), generators_.end(), [&](Face g) { return g.subset_of(f); })) out.push_back(f);
  return out;
}

MonomialBasis MonomialIdeal::graded_basis(int d) const {
  return filter(connsum::graded_basis(ambient_, d).monomials(), [&](Face s) {
    return std::any_of(generators_.begin(), generators_.end(), [&](Face g) { return g.subset_of(s); });
  });
}

Integer HilbertSeries::coefficient(int d) const {
  if (d < 0) return 0;
  // numerator has only even powers of t; s = t².
  Integer total = 0;
  for (std::size_t i = 0; i < numerator.size(); i += 2) {
    const long k = static_cast<long>(i / 2);
    if (k > d) break;
    if (denominator_exponent == 0) {
      if (k == d) total += numerator[i];
    } else {
      total += numerator[i] * binomial(d - k + denominator_exponent - 1, denominator_exponent - 1);
    }
  }
  return total;
}

std::string HilbertSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  out << '(';
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    const Integer& c = numerator[i];
    if (c == 0) continue;
    const Integer mag = c < 0 ? Integer(-c) : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) out << mag;
    if (i > 0) out << "t" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  if (first) out << '0';
  out << ')';
  if (denominator_exponent > 0) {
    out << "/(1 - t^2)";
    if (denominator_exponent > 1) out << '^' << denominator_exponent;
  }
  return out.str();
}

HilbertSeries hilbert_series(const SimplicialComplex& k) {
  HilbertSeries h;
  const int dd = k.dimension() + 1;
  h.denominator_exponent = dd;
  std::vector<Integer> in_s(dd + 1);
  for (Face f : k.faces()) {
    const int j = f.size();
    // s^j (1 - s)^(dd - j)
    for (int i = 0; i <= dd - j; ++i) {
      Integer c = binomial(dd - j, i);
      in_s[j + i] += (i % 2 ? -c : c);
    }
  }
  while (in_s.size() > 1 && in_s.back() == 0) in_s.pop_back();
  h.numerator.assign(2 * in_s.size() - 1, 0);
  for (std::size_t i = 0; i < in_s.size(); ++i) h.numerator[2 * i] = in_s[i];
  return h;
}

Integer hilbert_function(const SimplicialComplex& k, int d) {
  if (d < 0) return 0;
  if (d == 0) return 1;
  Integer total = 0;
  for (Face f : k.faces())
    if (!f.empty()) total += binomial(d - 1, f.size() - 1);
  return total;
}

std::vector<Integer> hilbert_times_one_minus_s(const SimplicialComplex& k, int n, int d_max) {
  std::vector<Integer> h(d_max + 1), out(d_max + 1);
  for (int d = 0; d <= d_max; ++d) h[d] = hilbert_function(k, d);
  for (int d = 0; d <= d_max; ++d)
    for (int j = 0; j <= std::min(d, n); ++j) {
      const Integer c = binomial(n, j) * h[d - j];
      out[d] += (j % 2 ? -c : c);
    }
  return out;
}

IntegerMatrix restriction_map(const SimplicialComplex& big, const SimplicialComplex& small, int d) {
  require_same_vertex_count(big, small);
  if (!small.is_subcomplex_of(big)) throw InvalidArgument("restriction_map: target is not a subcomplex");
  return projection(graded_basis(big, d).monomials(), graded_basis(small, d));
}

IntegerMatrix monomial_projection(const MonomialBasis& from, const MonomialBasis& to) {
  return projection(from.monomials(), to);
}

bool DegreeReport::ok() const {
  return verdict.exact() && std::all_of(extra.begin(), extra.end(), [](const auto& kv) { return kv.second; });
}

bool SequenceReport::all_exact() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeReport& r) { return r.ok(); });
}

SequenceReport verify_fiber_product(const SimplicialComplex& k1, const SimplicialComplex& k2, int d_max,
                                    Assembly assembly) {
  require_same_vertex_count(k1, k2);
  const SimplicialComplex kt = complex_union(k1, k2);
  const SimplicialComplex w = complex_intersection(k1, k2);
  SequenceReport report;
  report.sequence = "0 -> Z[K1 u K2] -> Z[K1] + Z[K2] -> Z[K1 n K2] -> 0";
  for (int d = 0; d <= d_max; ++d) {
    DegreeReport r = fresh_report(d);
    for (const auto& [mons, mult] : blocks(kt, d, assembly)) {
      const MonomialBasis a(mons);
      const MonomialBasis b1 = filter(mons, [&](Face s) { return k1.contains(s); });
      const MonomialBasis b2 = filter(mons, [&](Face s) { return k2.contains(s); });
      const MonomialBasis c = filter(mons, [&](Face s) { return w.contains(s); });
      const IntegerMatrix f = vstack(projection(mons, b1), projection(mons, b2));
      const IntegerMatrix g = hstack(projection(b1.monomials(), c), negated(projection(b2.monomials(), c)));
      scale(r, check_short_exact_free(f, g), a.size(), b1.size() + b2.size(), c.size(), mult);
    }
    report.degrees.push_back(std::move(r));
  }
  return report;
}

SequenceReport verify_connected_sum_ring(const SimplicialComplex& k1, const SimplicialComplex& k2,
                                         const FaceSubset& z, int d_max, Assembly assembly) {
  require_same_vertex_count(k1, k2);
  const SimplicialComplex k = connected_sum(k1, k2, z);  // validates the hypothesis
  const SimplicialComplex kt = complex_union(k1, k2);
  const SimplicialComplex w = complex_intersection(k1, k2);
  const FaceSubset open_kt = open_neighborhood(kt, z);
  const FaceSubset open_w = open_neighborhood(w, z);

  SequenceReport report;
  report.sequence = "0 -> I_Z -> Z[K1] x_Z[W] Z[K2] -> Z[K1 #Z K2] -> 0";
  for (int d = 0; d <= d_max; ++d) {
    DegreeReport r = fresh_report(d);
    bool embeds = true, bijective = true, quotient_rank = true;
    for (const auto& [mons, mult] : blocks(kt, d, assembly)) {
      const MonomialBasis ideal = filter(mons, [&](Face s) { return open_kt.contains(s); });
      const MonomialBasis ideal_w = filter(mons, [&](Face s) { return open_w.contains(s); });
      const MonomialBasis b1 = filter(mons, [&](Face s) { return k1.contains(s); });
      const MonomialBasis b2 = filter(mons, [&](Face s) { return k2.contains(s); });
      const MonomialBasis c = filter(mons, [&](Face s) { return w.contains(s); });
      const MonomialBasis quotient = filter(mons, [&](Face s) { return k.contains(s); });

      // Fiber product P = ker(g1 − g2) with a canonical basis.
      const IntegerMatrix g = hstack(projection(b1.monomials(), c), negated(projection(b2.monomials(), c)));
      const IntegerMatrix p = hermite_basis(kernel_basis(g));
      const std::size_t p_rank = p.cols();

      const IntegerMatrix theta =
          vstack(projection(ideal.monomials(), b1), projection(ideal.monomials(), b2));
      const auto coords = coordinates_in_hermite_basis(p, theta);

      // Z[K1] ⊕ Z[K2] → Z[K]: read the K1 coordinate when the support lies in
      // K1, otherwise the K2 coordinate.
      IntegerMatrix psi(quotient.size(), b1.size() + b2.size());
      for (std::size_t i = 0; i < quotient.size(); ++i) {
        const Monomial& x = quotient[i];
        const long j1 = b1.index_of(x);
        if (j1 >= 0)
          psi(i, static_cast<std::size_t>(j1)) = 1;
        else
          psi(i, b1.size() + static_cast<std::size_t>(b2.index_of(x))) = 1;
      }
      const IntegerMatrix psi_p = psi * p;

      ExactnessVerdict v;
      if (coords) {
        v = check_short_exact_free(*coords, psi_p);
      } else {
        embeds = false;
        v.well_defined = false;
      }
      scale(r, v, ideal.size(), p_rank, quotient.size(), mult);
      bijective = bijective && ideal.monomials() == ideal_w.monomials();
      quotient_rank = quotient_rank && p_rank == ideal.size() + quotient.size();
    }
    r.extra["theta(I_Z) lies in the fiber product"] = embeds;
    r.extra["j bijective on monomials"] = bijective;
    r.extra["quotient rank = rank Z[K]"] = quotient_rank;
    report.degrees.push_back(std::move(r));
  }
  return report;
}

MonomialIdeal annihilator_generators(const SimplicialComplex& k, const SimplicialComplex& w) {
  const FaceSubset z = strong_z(k, w);
  if (face_difference(k, w).empty()) return MonomialIdeal(k, {Face()});
  return MonomialIdeal(k, z.members());
}

TruncatedModule annihilator_truncated(const SimplicialComplex& k, const SimplicialComplex& w, int d_max) {
  require_same_vertex_count(k, w);
  if (!w.is_subcomplex_of(k)) throw InvalidArgument("annihilator: W is not a subcomplex of K");
  // I_{K∖W} is generated by x_τ for the inclusion-minimal τ ∈ K ∖ W.
  std::vector<Face> taus;
  for (Face t : face_difference(k, w).members())
    if (std::none_of(taus.begin(), taus.end(), [&](Face u) { return u.subset_of(t); })) taus.push_back(t);

  TruncatedModule out;
  const int m = k.vertex_count();
  for (int d = 0; d <= d_max; ++d) {
    MonomialBasis basis = graded_basis(k, d);
    std::vector<MonomialBasis> targets;
    std::size_t rows = 0;
    for (Face t : taus) {
      targets.push_back(graded_basis(k, d + t.size()));
      rows += targets.back().size();
    }
    IntegerMatrix mult(rows, basis.size());
    std::size_t offset = 0;
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Monomial prod = basis[j];
        for (int v = 1; v <= m; ++v)
          if (taus[ti].contains(v)) ++prod[v - 1];
        const long i = targets[ti].index_of(prod);
        if (i >= 0) mult(offset + static_cast<std::size_t>(i), j) = 1;
      }
      offset += targets[ti].size();
    }
    out.lattices.push_back(taus.empty() ? IntegerMatrix::identity(basis.size()) : kernel_basis(mult));
    out.bases.push_back(std::move(basis));
  }
  return out;
}

std::vector<bool> compare_annihilators(const SimplicialComplex& k, const SimplicialComplex& w, int d_max) {
  const MonomialIdeal ideal = annihilator_generators(k, w);
  const TruncatedModule direct = annihilator_truncated(k, w, d_max);
  std::vector<bool> out;
  for (int d = 0; d <= d_max; ++d) {
    const MonomialBasis& basis = direct.bases[d];
    const MonomialBasis gens = ideal.graded_basis(d);
    IntegerMatrix span(basis.size(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) span(static_cast<std::size_t>(basis.index_of(gens[j])), j) = 1;
    out.push_back(same_lattice(span, direct.lattices[d]));
  }
  return out;
}

}  // namespace connsum
