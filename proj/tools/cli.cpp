#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <random>

#include "connsum/errors.hpp"
#include "connsum/homology_tor.hpp"
#include "connsum/io.hpp"
#include "connsum/polytope.hpp"
#include "connsum/simplicial_complex.hpp"
#include "connsum/stanley_reisner.hpp"

namespace connsum::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::optional<int> dmax;
  std::optional<int> pmax;
  std::string field = "Q";
  std::uint64_t seed = 20240601;
  bool text = false;
};

// Everything a command produces. Any failing check makes the run a finding.
struct Report {
  json body = json::object();
  std::vector<NamedCheck> hypotheses;
  std::vector<NamedCheck> conclusions;
  std::vector<NamedCheck> consistency;
  std::string confidence = "exact";
  std::vector<std::string> findings;

  bool is_finding() const {
    auto failed = [](const std::vector<NamedCheck>& cs) {
      return std::any_of(cs.begin(), cs.end(), [](const NamedCheck& c) { return !c.holds; });
    };
    return !findings.empty() || failed(hypotheses) || failed(conclusions) || failed(consistency);
  }
};

// ---------------------------------------------------------------------------
// JSON helpers

json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

json faces_json(const std::vector<Face>& faces) {
  json a = json::array();
  for (Face f : faces) a.push_back(f.to_string());
  return a;
}

json complex_json(const SimplicialComplex& k) {
  return {{"vertices", k.vertex_count()},
          {"facets", faces_json(k.facets())},
          {"dimension", k.dimension()},
          {"f_vector", k.f_vector()},
          {"ghosts", k.ghost_vertices()}};
}

json matrix_json(const IntegerMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json checks_json(const std::vector<NamedCheck>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"holds", c.holds}});
  return a;
}

json sequence_json(const SequenceReport& s) {
  json rows = json::array();
  for (const DegreeReport& d : s.degrees) {
    json extra = json::object();
    for (const auto& [k, v] : d.extra) extra[k] = v;
    rows.push_back({{"degree", d.degree},
                    {"well_defined", d.verdict.well_defined},
                    {"injective", d.verdict.injective},
                    {"exact_mid", d.verdict.exact_middle},
                    {"surjective", d.verdict.surjective},
                    {"ranks", {d.rank_a, d.rank_b, d.rank_c}},
                    {"extra", extra}});
  }
  return {{"sequence", s.sequence}, {"all_exact", s.all_exact()}, {"degrees", rows}};
}

json tor_json(const TorResult& r) {
  json rows = json::array();
  json summary = json::object();
  for (std::size_t p = 0; p < r.tor.size(); ++p) {
    for (const auto& [degree, g] : r.tor[p].pieces()) {
      json torsion = json::array();
      for (const Integer& t : g.torsion) torsion.push_back(integer_json(t));
      rows.push_back({{"p", p}, {"degree", degree}, {"rank", g.free_rank}, {"torsion", torsion}});
    }
    summary["Tor_" + std::to_string(p)] = r.tor[p].to_string();
  }
  json j = {{"n", r.n},
            {"p_max", r.p_max},
            {"d_max", r.d_max},
            {"lsop", r.lsop},
            {"euler_ok", r.euler_ok()},
            {"euler_polynomial_degree", nullptr},
            {"higher_vanishing_consistent", r.higher_vanishing_consistent()},
            {"confidence", r.confidence()},
            {"summary", summary},
            {"rows", rows}};
  if (r.euler_polynomial_degree) j["euler_polynomial_degree"] = *r.euler_polynomial_degree;
  return j;
}

// YAML-like rendering of a report for --text.
bool is_scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_text(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (is_scalar(v)) {
      out << pad << it.key() << ": " << scalar_text(v) << "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_scalar)) {
      out << pad << it.key() << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
      out << "]\n";
    } else if (v.is_array()) {
      out << pad << it.key() << ":\n";
      for (const json& item : v) {
        if (item.is_object() && std::all_of(item.begin(), item.end(), [](const json& x) {
              return is_scalar(x) || (x.is_array() && std::all_of(x.begin(), x.end(), is_scalar));
            })) {
          out << pad << "  -";
          for (auto f = item.begin(); f != item.end(); ++f)
            out << " " << f.key() << "=" << (f.value().is_string() ? f.value().get<std::string>() : f.value().dump());
          out << "\n";
        } else if (item.is_object()) {
          out << pad << "  -\n";
          render_text(item, out, indent + 4);
        } else {
          out << pad << "  - " << item.dump() << "\n";
        }
      }
    } else {
      out << pad << it.key() << ":\n";
      render_text(v, out, indent + 2);
    }
  }
}

// ---------------------------------------------------------------------------
// Input helpers

FaceSubset parse_z(const std::string& text, int vertex_count) {
  std::vector<Face> faces = parse_face_list(text, vertex_count);
  for (Face f : faces)
    if (f.empty()) throw InvalidArgument("--z may not contain the empty face");
  return make_face_subset_unchecked(vertex_count, std::move(faces));
}

void require_same_vertex_count(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count())
    throw InvalidArgument("complexes have different vertex counts (" + std::to_string(a.vertex_count()) + " vs " +
                          std::to_string(b.vertex_count()) + ")");
}

struct SumInputs {
  SimplicialComplex k1, k2, w;
  FaceSubset z;
  bool z_default = false;
};

SumInputs load_sum(const std::string& k1_path, const std::string& k2_path, const std::string& z_text) {
  SimplicialComplex k1 = parse_complex_file(k1_path);
  SimplicialComplex k2 = parse_complex_file(k2_path);
  require_same_vertex_count(k1, k2);
  SimplicialComplex w = complex_intersection(k1, k2);
  const bool by_default = z_text.empty();
  FaceSubset z = by_default ? strong_z_by_closure(k1, w) : parse_z(z_text, k1.vertex_count());
  return {std::move(k1), std::move(k2), std::move(w), std::move(z), by_default};
}

/// Adds the "connected sum defined" hypothesis; returns the sum when it is.
std::optional<SimplicialComplex> checked_sum(const SumInputs& in, Report& r) {
  r.body["W"] = complex_json(in.w);
  r.body["Z"] = {{"faces", faces_json(in.z.members())}, {"default", in.z_default}};
  try {
    SimplicialComplex k = connected_sum(in.k1, in.k2, in.z);
    r.hypotheses.push_back({"connected sum K1 #^Z K2 is defined", true});
    return k;
  } catch (const HypothesisError& e) {
    r.hypotheses.push_back({"connected sum K1 #^Z K2 is defined", false});
    r.findings.push_back(e.what());
    return std::nullopt;
  }
}

int d_max_or(const Options& o, int fallback) { return o.dmax.value_or(fallback); }

// ---------------------------------------------------------------------------
// Commands

struct ComplexOpArgs {
  std::string in, other, faces, op, perm, out_path;
};

Report complex_op(const ComplexOpArgs& a, const Options& o) {
  Report r;
  const SimplicialComplex k = parse_complex_file(a.in);
  const int m = k.vertex_count();
  auto other = [&] {
    if (a.other.empty()) throw InvalidArgument("--op " + a.op + " needs --other");
    SimplicialComplex b = parse_complex_file(a.other);
    require_same_vertex_count(k, b);
    return b;
  };
  auto subset = [&] {
    if (a.faces.empty()) throw InvalidArgument("--op " + a.op + " needs --faces");
    return parse_z(a.faces, m);
  };
  r.body["input"] = complex_json(k);

  std::optional<SimplicialComplex> result;
  if (a.op == "describe") {
    result = k;
  } else if (a.op == "closure") {
    result = closure(subset());
  } else if (a.op == "open") {
    const FaceSubset z = subset();
    for (Face f : z.members())
      if (!k.contains(f)) throw InvalidArgument(f.to_string() + " is not a face of the input");
    r.body["result"] = {{"faces", faces_json(open_neighborhood(k, z).members())}};
  } else if (a.op == "star") {
    result = star(k, subset());
  } else if (a.op == "deletion") {
    result = deletion(k, subset());
  } else if (a.op == "link") {
    const auto fs = parse_face_list(a.faces, m);
    if (fs.size() != 1) throw InvalidArgument("--op link needs exactly one face in --faces");
    result = link(k, fs.front());
  } else if (a.op == "induced") {
    Face vs;
    for (Face f : parse_face_list(a.faces, m)) vs = vs | f;
    result = induced_subcomplex(k, vs);
  } else if (a.op == "union") {
    result = complex_union(k, other());
  } else if (a.op == "intersection") {
    result = complex_intersection(k, other());
  } else if (a.op == "difference") {
    r.body["result"] = {{"faces", faces_json(face_difference(k, other()).members())}};
  } else if (a.op == "core") {
    result = core(k);
  } else if (a.op == "strong-z") {
    const SimplicialComplex w = other();
    const FaceSubset z = strong_z(k, w);
    r.body["result"] = {{"faces", faces_json(z.members())}};
    r.consistency.push_back({"Z(K, W) = W \\ closure(K \\ W)", z == strong_z_by_closure(k, w)});
  } else if (a.op == "minimal-nonfaces") {
    r.body["result"] = {{"faces", faces_json(sr_presentation(k).minimal_nonfaces())}};
  } else if (a.op == "hilbert") {
    const int d = d_max_or(o, 8);
    json values = json::array();
    for (int i = 0; i <= d; ++i) values.push_back(integer_json(hilbert_function(k, i)));
    r.body["result"] = {{"series", hilbert_series(k).to_string()}, {"dimensions", values}};
  } else if (a.op == "homology") {
    const Field f = Field::parse(o.field);
    r.body["result"] = {{"reduced_homology", simplicial_homology(k).to_string()},
                        {"field", f.to_string()},
                        {"reduced_betti_from_dim_-1", reduced_betti(k, f)}};
  } else if (a.op == "relabel") {
    std::vector<int> perm;
    std::istringstream in(a.perm);
    for (std::string t; in >> t;) perm.push_back(std::stoi(t));
    result = relabel(k, perm);
  }
  if (result) {
    r.body["result"] = complex_json(*result);
    if (!a.out_path.empty()) {
      std::ofstream f(a.out_path);
      if (!f) throw InvalidArgument("cannot write " + a.out_path);
      f << format_complex(*result);
    }
  }
  return r;
}

struct SumArgs {
  std::string k1, k2, z, expect, out_path;
};

Report sum_check(const SumArgs& a) {
  Report r;
  const SumInputs in = load_sum(a.k1, a.k2, a.z);
  r.body["K1"] = complex_json(in.k1);
  r.body["K2"] = complex_json(in.k2);
  const auto k = checked_sum(in, r);
  if (!k) return r;
  r.body["K"] = complex_json(*k);
  const StrongSumVerdict strong = is_strong_connected_sum(in.k1, in.k2, in.z);
  r.body["strong"] = {{"strong", strong.strong}, {"failed_clause", strong.failed_clause}};
  r.consistency.push_back({"Z(K1, W) = W \\ closure(K1 \\ W)", strong_z(in.k1, in.w) == strong_z_by_closure(in.k1, in.w)});
  r.consistency.push_back({"Z(K2, W) = W \\ closure(K2 \\ W)", strong_z(in.k2, in.w) == strong_z_by_closure(in.k2, in.w)});
  if (!a.expect.empty()) {
    const SimplicialComplex expected = parse_complex_file(a.expect);
    r.conclusions.push_back({"K1 #^Z K2 equals the expected complex", expected == *k});
  }
  if (!a.out_path.empty()) {
    std::ofstream f(a.out_path);
    if (!f) throw InvalidArgument("cannot write " + a.out_path);
    f << format_complex(*k);
  }
  return r;
}

struct CutArgs {
  std::string in, cut;
  int random = 0;
  int dim = 3;
  int max_facets = 8;
};

json cut_json(const CutResult& c) {
  return {{"new_vertex", c.new_vertex},
          {"P_plus_vertices", c.plus.vertices().size()},
          {"P_minus_vertices", c.minus.vertices().size()},
          {"K_delta", complex_json(c.k_delta)},
          {"K_plus", complex_json(c.k_plus)},
          {"K_minus", complex_json(c.k_minus)},
          {"Z_o", faces_json(c.z_o.members())},
          {"Z_plus", faces_json(c.z_plus.members())}};
}

Report polytope_cut_random(const CutArgs& a, const Options& o) {
  Report r;
  if (a.dim < 2 || a.dim > 3) throw InvalidArgument("--dim must be 2 or 3 in random mode");
  if (a.max_facets < 2 * a.dim || a.max_facets > RationalPolytope::kMaxInequalities)
    throw InvalidArgument("--max-facets must lie in [2*dim, " + std::to_string(RationalPolytope::kMaxInequalities) + "]");
  std::mt19937_64 rng(o.seed);
  int tried = 0, skipped = 0, passed = 0;
  json failures = json::array();
  for (int i = 0; i < a.random; ++i) {
    const int n = std::uniform_int_distribution<int>(2, a.dim)(rng);
    const int f = std::uniform_int_distribution<int>(2 * n, std::max(2 * n, a.max_facets))(rng);
    const RationalPolytope p = random_simple_polytope(rng, n, f);
    const auto c = random_generic_cut(rng, p);
    if (!c) {
      ++skipped;
      continue;
    }
    ++tried;
    const CutResult res = cut(p, *c);
    if (res.all_checks_hold()) {
      ++passed;
    } else {
      PolytopeSpec spec{p, std::vector<Integer>(static_cast<std::size_t>(p.inequality_count()), 1), *c};
      failures.push_back({{"trial", i}, {"polytope", format_polytope(spec)}, {"checks", checks_json(res.checks)}});
    }
  }
  r.body["random"] = {{"trials", a.random}, {"cuts", tried}, {"skipped_no_generic_cut", skipped},
                      {"passed", passed}, {"failures", failures}};
  r.conclusions.push_back({"every random generic cut satisfies both strong-sum theorems", passed == tried});
  return r;
}

Report polytope_cut(const CutArgs& a, const Options& o) {
  if (a.random > 0) return polytope_cut_random(a, o);
  if (a.in.empty()) throw InvalidArgument("polytope-cut needs --in (or --random)");
  Report r;
  const PolytopeSpec spec = parse_polytope_file(a.in);
  const std::optional<CutSpec> c = a.cut.empty() ? spec.cut : std::optional<CutSpec>(parse_cut(a.cut, spec.polytope.dim()));
  if (!c) throw InvalidArgument("no cut: add a 'cut:' line or pass --cut");
  r.body["polytope"] = {{"dim", spec.polytope.dim()},
                        {"inequalities", spec.polytope.inequality_count()},
                        {"vertices", spec.polytope.vertices().size()},
                        {"simple", is_simple(spec.polytope)}};
  const GenericityCertificate cert = is_generic_cut(spec.polytope, *c);
  r.hypotheses.push_back({"cut is generic", cert.generic});
  if (!cert.generic) {
    r.findings.push_back("cut is not generic: " + cert.reason +
                         (cert.witness ? " at " + to_string(*cert.witness) : std::string()));
    return r;
  }
  const CutResult res = cut(spec.polytope, *c);
  r.body["cut"] = cut_json(res);
  r.conclusions = res.checks;
  const LabeledPolytope labeled(spec.polytope, spec.labels);
  r.body["characteristic_matrix"] = matrix_json(characteristic_matrix(labeled));
  r.body["extended_matrix"] = matrix_json(extended_matrix(labeled, *c));
  return r;
}

struct PairArgs {
  std::string k1, k2, z, matrix;
  bool full = false;
};

Report sr_verify(const PairArgs& a, const Options& o) {
  Report r;
  const int d = d_max_or(o, 8);
  const SumInputs in = load_sum(a.k1, a.k2, a.z);
  const auto k = checked_sum(in, r);
  if (!k) return r;
  const Assembly how = a.full ? Assembly::FullDegree : Assembly::BySupport;
  const SequenceReport fp = verify_fiber_product(in.k1, in.k2, d, how);
  const SequenceReport cs = verify_connected_sum_ring(in.k1, in.k2, in.z, d, how);
  r.body["hilbert"] = {{"K1", hilbert_series(in.k1).to_string()},
                       {"K2", hilbert_series(in.k2).to_string()},
                       {"W", hilbert_series(in.w).to_string()},
                       {"K", hilbert_series(*k).to_string()}};
  r.body["fiber_product"] = sequence_json(fp);
  r.body["connected_sum"] = sequence_json(cs);
  r.conclusions.push_back({"fiber product sequence exact in degrees 0.." + std::to_string(d), fp.all_exact()});
  r.conclusions.push_back({"connected-sum sequence exact in degrees 0.." + std::to_string(d), cs.all_exact()});
  r.confidence = "exact up to degree " + std::to_string(d);
  return r;
}

Report annihilator(const std::string& k_path, const std::string& w_path, const Options& o) {
  Report r;
  const int d = d_max_or(o, 8);
  const SimplicialComplex k = parse_complex_file(k_path);
  const SimplicialComplex w = parse_complex_file(w_path);
  require_same_vertex_count(k, w);
  if (!w.is_subcomplex_of(k)) throw InvalidArgument("W is not a subcomplex of K");
  const MonomialIdeal ideal = annihilator_generators(k, w);
  const std::vector<bool> agree = compare_annihilators(k, w, d);
  r.body["generators"] = ideal.is_unit() ? json("unit ideal") : faces_json(ideal.generators());
  json rows = json::array();
  for (std::size_t i = 0; i < agree.size(); ++i) rows.push_back({{"degree", i}, {"agree", agree[i]}});
  r.body["degrees"] = rows;
  r.conclusions.push_back({"generated ideal equals the annihilator in degrees 0.." + std::to_string(d),
                           std::all_of(agree.begin(), agree.end(), [](bool b) { return b; })});
  r.confidence = "exact up to degree " + std::to_string(d);
  return r;
}

struct TorArgs {
  std::string complex, matrix, k1, k2, z;
};

Report tor(const TorArgs& a, const Options& o) {
  Report r;
  const int d = d_max_or(o, 10);
  const SubringSpec s(parse_matrix_file(a.matrix));
  r.body["matrix"] = matrix_json(s.matrix());

  if (a.complex.empty()) {
    if (a.k1.empty() || a.k2.empty()) throw InvalidArgument("tor needs --complex, or --k1 and --k2");
    const SumInputs in = load_sum(a.k1, a.k2, a.z);
    if (!checked_sum(in, r)) return r;
    const TorSumReport t = verify_tor_fiber_product(in.k1, in.k2, in.z, s, d);
    json rings = json::object();
    for (const auto& ring : t.rings) rings[ring.name] = tor_json(ring.tor);
    r.body["rings"] = rings;
    r.body["tor0_fiber_product"] = sequence_json(t.tor0_fiber_product);
    r.body["tor0_ideal"] = sequence_json(t.tor0_ideal);
    r.body["converse_fails"] = t.converse_fails();
    r.hypotheses.insert(r.hypotheses.end(), t.hypotheses.begin(), t.hypotheses.end());
    r.conclusions = t.conclusions;
    r.consistency = t.consistency;
    r.confidence = t.confidence;
    for (const auto& ring : t.rings)
      if (!ring.tor.vanishes(1))
        r.findings.push_back("Tor_1 of Z[" + ring.name + "] is nonzero, first in degree " +
                             std::to_string(*ring.tor.tor[1].first_nonzero_degree()));
    return r;
  }

  const SimplicialComplex k = parse_complex_file(a.complex);
  const int p = o.pmax.value_or(s.n());
  if (p > s.n()) throw InvalidArgument("--pmax exceeds the number of linear forms");
  const TorResult t = koszul_tor(k, s, p, d);
  r.body["complex"] = complex_json(k);
  r.body["tor"] = tor_json(t);
  r.hypotheses.push_back({"linear forms are a linear system of parameters", t.lsop});
  if (p >= 1) {
    r.conclusions.push_back({"Tor_1 vanishes in degrees 0.." + std::to_string(d), t.vanishes(1)});
    if (!t.vanishes(1)) {
      const int deg = *t.tor[1].first_nonzero_degree();
      r.findings.push_back("Tor_1 is nonzero, first in degree " + std::to_string(deg) + ": " +
                           t.tor[1].at(deg).to_string());
    }
  }
  r.consistency.push_back({"Euler characteristic matches the Hilbert series", t.euler_ok()});
  r.consistency.push_back({"higher Tor vanishes wherever Tor_1 does", t.higher_vanishing_consistent()});
  r.confidence = t.confidence();
  return r;
}

Report gorenstein(const TorArgs& a, const Options& o) {
  Report r;
  const Field f = Field::parse(o.field);
  r.body["field"] = f.to_string();
  if (!a.complex.empty()) {
    const SimplicialComplex k = parse_complex_file(a.complex);
    r.body["complex"] = complex_json(k);
    r.body["core"] = complex_json(core(k));
    r.body["cohen_macaulay"] = is_cohen_macaulay(k, f);
    r.body["reduced_betti_from_dim_-1"] = reduced_betti(k, f);
    r.conclusions.push_back({"Z[K] is Gorenstein over " + f.to_string(), is_gorenstein(k, f)});
    return r;
  }
  if (a.k1.empty() || a.k2.empty()) throw InvalidArgument("gorenstein needs --complex, or --k1 and --k2");
  const SumInputs in = load_sum(a.k1, a.k2, a.z);
  const auto k = checked_sum(in, r);
  if (!k) return r;
  const StrongSumVerdict strong = is_strong_connected_sum(in.k1, in.k2, in.z);
  r.hypotheses.push_back({"K1 Gorenstein", is_gorenstein(in.k1, f)});
  r.hypotheses.push_back({"K2 Gorenstein", is_gorenstein(in.k2, f)});
  r.hypotheses.push_back({"W = K1 ∩ K2 Cohen-Macaulay", is_cohen_macaulay(in.w, f)});
  r.hypotheses.push_back({"strong connected sum", strong.strong});
  if (!strong.strong) r.body["strong_failed_clause"] = strong.failed_clause;
  r.body["K"] = complex_json(*k);
  r.conclusions.push_back({"K1 #^Z K2 Gorenstein", is_gorenstein(*k, f)});
  return r;
}

void emit(const std::string& command, const Options& o, const json& params, const Report& r, int code,
          std::ostream& out) {
  json report = {{"schema", kReportSchema},
                 {"command", command},
                 {"status", code == kExitOk ? "ok" : "finding"},
                 {"exit_code", code},
                 {"params", params}};
  for (auto it = r.body.begin(); it != r.body.end(); ++it) report[it.key()] = it.value();
  report["verdict"] = {{"hypotheses", checks_json(r.hypotheses)},
                       {"conclusions", checks_json(r.conclusions)},
                       {"consistency", checks_json(r.consistency)},
                       {"confidence", r.confidence}};
  report["findings"] = r.findings;
  if (o.text)
    render_text(report, out, 0);
  else
    out << report.dump(2) << "\n";
}

void emit_error(const std::string& command, const Options& o, const std::string& message, std::ostream& out,
                std::ostream& err) {
  err << "connsum: " << message << "\n";
  json report = {{"schema", kReportSchema}, {"command", command}, {"status", "error"},
                 {"exit_code", kExitError}, {"error", message}};
  if (o.text)
    render_text(report, out, 0);
  else
    out << report.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Connected sums of simplicial complexes: constructions and verifiers.", "connsum"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--dmax", o.dmax, "Largest monomial degree (default 8, tor 10)")->check(CLI::Range(0, 40));
  app.add_option("--pmax", o.pmax, "Largest Tor index (default: number of linear forms)")->check(CLI::Range(0, 20));
  app.add_option("--field", o.field, "Coefficients for CM/Gorenstein checks: Q or Fp:<p>");
  app.add_option("--seed", o.seed, "Seed for randomized runs");
  auto* json_flag = app.add_flag("--json", "JSON report (default)");
  auto* text_flag = app.add_flag("--text", o.text, "Plain-text report");
  json_flag->excludes(text_flag);

  ComplexOpArgs cop;
  auto* c_op = app.add_subcommand("complex-op", "Apply a face-poset operation to a complex");
  c_op->add_option("--in", cop.in, "Complex file")->required()->check(CLI::ExistingFile);
  c_op->add_option("--op", cop.op, "Operation")
      ->required()
      ->check(CLI::IsMember({"describe", "closure", "open", "star", "deletion", "link", "induced", "union",
                             "intersection", "difference", "core", "strong-z", "minimal-nonfaces", "hilbert",
                             "homology", "relabel"}));
  c_op->add_option("--other", cop.other, "Second complex (union, intersection, difference, strong-z: W)")
      ->check(CLI::ExistingFile);
  c_op->add_option("--faces", cop.faces, "Face list such as \"{1,2} {3}\"");
  c_op->add_option("--perm", cop.perm, "Relabeling: images of 1..m, space separated");
  c_op->add_option("--out", cop.out_path, "Write a complex result to this file");

  SumArgs sum;
  auto* c_sum = app.add_subcommand("sum-check", "Build K1 #^Z K2 and check strongness");
  c_sum->add_option("--k1", sum.k1)->required()->check(CLI::ExistingFile);
  c_sum->add_option("--k2", sum.k2)->required()->check(CLI::ExistingFile);
  c_sum->add_option("--z", sum.z, "Z as a face list (default W \\ closure(K1 \\ W))");
  c_sum->add_option("--expect", sum.expect, "Complex the sum must equal")->check(CLI::ExistingFile);
  c_sum->add_option("--out", sum.out_path, "Write the sum to this file");

  CutArgs cut_args;
  auto* c_cut = app.add_subcommand("polytope-cut", "Cut a polytope and verify both strong-sum theorems");
  c_cut->add_option("--in", cut_args.in, "Polytope file")->check(CLI::ExistingFile);
  c_cut->add_option("--cut", cut_args.cut, "Override the cut: \"γ1 ... γn | ξ\"");
  c_cut->add_option("--random", cut_args.random, "Run this many random generic cuts instead")->check(CLI::Range(0, 100000));
  c_cut->add_option("--dim", cut_args.dim, "Largest dimension in random mode (2 or 3)");
  c_cut->add_option("--max-facets", cut_args.max_facets, "Largest facet count in random mode");

  PairArgs pair;
  auto* c_sr = app.add_subcommand("sr-verify", "Per-degree exactness of the Stanley-Reisner sequences");
  c_sr->add_option("--k1", pair.k1)->required()->check(CLI::ExistingFile);
  c_sr->add_option("--k2", pair.k2)->required()->check(CLI::ExistingFile);
  c_sr->add_option("--z", pair.z, "Z as a face list (default W \\ closure(K1 \\ W))");
  c_sr->add_flag("--full", pair.full, "Assemble whole degree pieces instead of per-support blocks");

  std::string ann_k, ann_w;
  auto* c_ann = app.add_subcommand("annihilator", "Compare Ann(Z[W]) in Z[K] with its generated ideal");
  c_ann->add_option("--k", ann_k)->required()->check(CLI::ExistingFile);
  c_ann->add_option("--w", ann_w)->required()->check(CLI::ExistingFile);

  TorArgs tor_args;
  auto* c_tor = app.add_subcommand("tor", "Graded Tor over Z[u1..un] via the Koszul complex");
  c_tor->add_option("--complex", tor_args.complex)->check(CLI::ExistingFile);
  c_tor->add_option("--matrix", tor_args.matrix, "n x m integer matrix defining the u_i")
      ->required()
      ->check(CLI::ExistingFile);
  c_tor->add_option("--k1", tor_args.k1, "With --k2: check the Tor statements for K1 #^Z K2")->check(CLI::ExistingFile);
  c_tor->add_option("--k2", tor_args.k2)->check(CLI::ExistingFile);
  c_tor->add_option("--z", tor_args.z);

  TorArgs gor_args;
  auto* c_gor = app.add_subcommand("gorenstein", "Gorenstein test, or the Gorenstein statement for a strong sum");
  c_gor->add_option("--complex", gor_args.complex)->check(CLI::ExistingFile);
  c_gor->add_option("--k1", gor_args.k1)->check(CLI::ExistingFile);
  c_gor->add_option("--k2", gor_args.k2)->check(CLI::ExistingFile);
  c_gor->add_option("--z", gor_args.z);

  std::vector<std::string> argv_store{"connsum"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  json params = {{"dmax", o.dmax ? json(*o.dmax) : json(nullptr)},
                 {"pmax", o.pmax ? json(*o.pmax) : json(nullptr)},
                 {"field", o.field},
                 {"seed", o.seed}};
  json inputs = json::object();
  for (const CLI::Option* opt : app.get_subcommands().front()->get_options())
    if (opt->count() > 0 && !opt->get_lnames().empty() && opt->get_lnames().front() != "help")
      inputs[opt->get_lnames().front()] = opt->as<std::string>();
  params["inputs"] = inputs;

  try {
    Field::parse(o.field);
    Report r;
    if (c_op->parsed())
      r = complex_op(cop, o);
    else if (c_sum->parsed())
      r = sum_check(sum);
    else if (c_cut->parsed())
      r = polytope_cut(cut_args, o);
    else if (c_sr->parsed())
      r = sr_verify(pair, o);
    else if (c_ann->parsed())
      r = annihilator(ann_k, ann_w, o);
    else if (c_tor->parsed())
      r = tor(tor_args, o);
    else
      r = gorenstein(gor_args, o);
    const int code = r.is_finding() ? kExitFinding : kExitOk;
    emit(command, o, params, r, code, out);
    return code;
  } catch (const HypothesisError& e) {
    Report r;
    r.findings.push_back(e.what());
    emit(command, o, params, r, kExitFinding, out);
    return kExitFinding;
  } catch (const Error& e) {
    emit_error(command, o, e.what(), out, err);
    return kExitError;
  } catch (const std::exception& e) {
    emit_error(command, o, std::string("internal error: ") + e.what(), out, err);
    return kExitError;
  }
}

}  // namespace connsum::cli
