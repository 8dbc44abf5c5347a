#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "connsum/errors.hpp"
#include "connsum/homology_tor.hpp"
#include "connsum/io.hpp"
#include "connsum/polytope.hpp"
#include "connsum/simplicial_complex.hpp"
#include "connsum/stanley_reisner.hpp"

namespace py = pybind11;
using namespace connsum;

namespace {

// Faces cross the boundary as sorted lists of 1-based labels (any sequence is
// accepted on input); big integers as
// Python ints (via their decimal form, which is exact).

using PyFace = std::vector<int>;

Face to_face(const PyFace& v) { return Face::of(v); }
PyFace from_face(Face f) { return f.vertices(); }

std::vector<Face> to_faces(const std::vector<PyFace>& vs) {
  std::vector<Face> out;
  for (const auto& v : vs) out.push_back(to_face(v));
  return out;
}
std::vector<PyFace> from_faces(const std::vector<Face>& fs) {
  std::vector<PyFace> out;
  for (Face f : fs) out.push_back(from_face(f));
  return out;
}

py::int_ to_py(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.str().c_str(), nullptr, 10));
}
Integer from_py(const py::int_& x) { return Integer(py::str(static_cast<py::handle>(x)).cast<std::string>()); }

IntegerMatrix to_matrix(const std::vector<std::vector<py::int_>>& rows) {
  std::vector<std::vector<Integer>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (const auto& x : row) r.back().push_back(from_py(x));
  }
  if (r.empty()) throw InvalidArgument("matrix needs at least one row");
  for (const auto& row : r)
    if (row.size() != r.front().size()) throw InvalidArgument("ragged matrix");
  return IntegerMatrix::from_rows(r, r.front().size());
}
py::list from_matrix(const IntegerMatrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
    rows.append(row);
  }
  return rows;
}

FaceSubset subset(int m, const std::vector<PyFace>& z) { return make_face_subset_unchecked(m, to_faces(z)); }

py::dict graded_json(const GradedAbelianGroup& g) {
  py::dict d;
  for (const auto& [deg, a] : g.pieces()) {
    py::list torsion;
    for (const Integer& t : a.torsion) torsion.append(to_py(t));
    d[py::int_(deg)] = py::make_tuple(a.free_rank, torsion);
  }
  return d;
}

py::dict sequence_dict(const SequenceReport& s) {
  py::list rows;
  for (const DegreeReport& r : s.degrees) {
    py::dict row;
    row["degree"] = r.degree;
    row["injective"] = r.verdict.injective;
    row["exact_mid"] = r.verdict.exact_middle;
    row["surjective"] = r.verdict.surjective;
    row["ranks"] = py::make_tuple(r.rank_a, r.rank_b, r.rank_c);
    row["ok"] = r.ok();
    rows.append(row);
  }
  py::dict d;
  d["sequence"] = s.sequence;
  d["all_exact"] = s.all_exact();
  d["degrees"] = rows;
  return d;
}

py::list checks_list(const std::vector<NamedCheck>& cs) {
  py::list out;
  for (const auto& c : cs) out.append(py::make_tuple(c.name, c.holds));
  return out;
}

RationalPolytope make_polytope(int dim, const std::vector<std::pair<std::vector<py::int_>, py::int_>>& ineqs) {
  std::vector<Inequality> h;
  for (const auto& [normal, offset] : ineqs) {
    Inequality q;
    for (const auto& x : normal) q.normal.push_back(from_py(x));
    q.offset = from_py(offset);
    h.push_back(std::move(q));
  }
  return RationalPolytope(dim, h);
}

CutSpec make_cut(const std::vector<py::int_>& gamma, const py::int_& xi) {
  std::vector<Integer> g;
  for (const auto& x : gamma) g.push_back(from_py(x));
  return CutSpec(g, from_py(xi));
}

}  // namespace

PYBIND11_MODULE(_connsum, m) {
  m.doc() = "Connected sums of simplicial complexes, polytope cuts, Stanley-Reisner rings and Koszul Tor.";

  static py::exception<HypothesisError> hypothesis_error(m, "HypothesisError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const HypothesisError& e) {
      hypothesis_error(e.what());
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<SimplicialComplex>(m, "SimplicialComplex")
      .def(py::init([](int vertex_count, const std::vector<PyFace>& facets) {
             return SimplicialComplex::from_facets(vertex_count, to_faces(facets));
           }),
           py::arg("vertex_count"), py::arg("facets") = std::vector<PyFace>{})
      .def_property_readonly("vertex_count", &SimplicialComplex::vertex_count)
      .def_property_readonly("faces", [](const SimplicialComplex& k) { return from_faces(k.faces()); })
      .def_property_readonly("facets", [](const SimplicialComplex& k) { return from_faces(k.facets()); })
      .def_property_readonly("dimension", &SimplicialComplex::dimension)
      .def_property_readonly("f_vector", &SimplicialComplex::f_vector)
      .def_property_readonly("ghost_vertices", &SimplicialComplex::ghost_vertices)
      .def("is_pure", &SimplicialComplex::is_pure)
      .def("__contains__", [](const SimplicialComplex& k, const PyFace& f) { return k.contains(to_face(f)); })
      .def("__len__", &SimplicialComplex::face_count)
      .def("is_subcomplex_of", &SimplicialComplex::is_subcomplex_of)
      .def("with_vertex_count", &SimplicialComplex::with_vertex_count)
      .def(py::self == py::self)
      .def("__repr__", [](const SimplicialComplex& k) {
        return "SimplicialComplex(" + std::to_string(k.vertex_count()) + ", " + format_face_list(k.facets()) + ")";
      });

  m.def("parse_complex", &parse_complex, py::arg("text"));
  m.def("format_complex", &format_complex);
  m.def("read_complex", &parse_complex_file, py::arg("path"));
  m.def("read_matrix", [](const std::string& path) { return from_matrix(parse_matrix_file(path)); });
  m.def("parse_matrix", [](const std::string& text) { return from_matrix(parse_matrix(text)); });

  m.def("closure", [](int m_, const std::vector<PyFace>& z) { return closure(subset(m_, z)); }, py::arg("vertex_count"),
        py::arg("z"));
  m.def(
      "open_neighborhood",
      [](const SimplicialComplex& k, const std::vector<PyFace>& z) {
        return from_faces(open_neighborhood(k, FaceSubset::in(k, to_faces(z))).members());
      },
      py::arg("k"), py::arg("z"));
  m.def("star", [](const SimplicialComplex& k, const std::vector<PyFace>& z) { return star(k, subset(k.vertex_count(), z)); });
  m.def("deletion",
        [](const SimplicialComplex& k, const std::vector<PyFace>& z) { return deletion(k, subset(k.vertex_count(), z)); });
  m.def("union", &complex_union);
  m.def("intersection", &complex_intersection);
  m.def("face_difference",
        [](const SimplicialComplex& k, const SimplicialComplex& w) { return from_faces(face_difference(k, w).members()); });
  m.def(
      "connected_sum",
      [](const SimplicialComplex& k1, const SimplicialComplex& k2, const std::vector<PyFace>& z) {
        return connected_sum(k1, k2, subset(k1.vertex_count(), z));
      },
      py::arg("k1"), py::arg("k2"), py::arg("z"));
  m.def("strong_z", [](const SimplicialComplex& k, const SimplicialComplex& w) { return from_faces(strong_z(k, w).members()); });
  m.def("strong_z_by_closure", [](const SimplicialComplex& k, const SimplicialComplex& w) {
    return from_faces(strong_z_by_closure(k, w).members());
  });
  m.def("is_strong_connected_sum",
        [](const SimplicialComplex& k1, const SimplicialComplex& k2, const std::vector<PyFace>& z) {
          const StrongSumVerdict v = is_strong_connected_sum(k1, k2, subset(k1.vertex_count(), z));
          return py::make_tuple(v.strong, v.failed_clause);
        });
  m.def("link", [](const SimplicialComplex& k, const PyFace& sigma) { return link(k, to_face(sigma)); });
  m.def("core", &core);
  m.def("relabel", &relabel);

  // Stanley-Reisner
  m.def("minimal_nonfaces",
        [](const SimplicialComplex& k) { return from_faces(sr_presentation(k).minimal_nonfaces()); });
  m.def("hilbert_series", [](const SimplicialComplex& k) { return hilbert_series(k).to_string(); });
  m.def("hilbert_function", [](const SimplicialComplex& k, int d) { return to_py(hilbert_function(k, d)); });
  m.def("graded_basis", [](const SimplicialComplex& k, int d) { return graded_basis(k, d).monomials(); });
  m.def(
      "verify_fiber_product",
      [](const SimplicialComplex& k1, const SimplicialComplex& k2, int d_max) {
        return sequence_dict(verify_fiber_product(k1, k2, d_max));
      },
      py::arg("k1"), py::arg("k2"), py::arg("d_max") = 8);
  m.def(
      "verify_connected_sum_ring",
      [](const SimplicialComplex& k1, const SimplicialComplex& k2, const std::vector<PyFace>& z, int d_max) {
        return sequence_dict(verify_connected_sum_ring(k1, k2, subset(k1.vertex_count(), z), d_max));
      },
      py::arg("k1"), py::arg("k2"), py::arg("z"), py::arg("d_max") = 8);
  m.def("annihilator_generators", [](const SimplicialComplex& k, const SimplicialComplex& w) {
    return from_faces(annihilator_generators(k, w).generators());
  });
  m.def("compare_annihilators", &compare_annihilators, py::arg("k"), py::arg("w"), py::arg("d_max") = 8);

  // Homology and Tor
  m.def("simplicial_homology", [](const SimplicialComplex& k) { return graded_json(simplicial_homology(k)); });
  m.def(
      "reduced_betti", [](const SimplicialComplex& k, const std::string& f) { return reduced_betti(k, Field::parse(f)); },
      py::arg("k"), py::arg("field") = "Q");
  m.def(
      "is_cohen_macaulay",
      [](const SimplicialComplex& k, const std::string& f) { return is_cohen_macaulay(k, Field::parse(f)); },
      py::arg("k"), py::arg("field") = "Q");
  m.def(
      "is_gorenstein", [](const SimplicialComplex& k, const std::string& f) { return is_gorenstein(k, Field::parse(f)); },
      py::arg("k"), py::arg("field") = "Q");

  py::class_<TorResult>(m, "TorResult")
      .def_readonly("n", &TorResult::n)
      .def_readonly("p_max", &TorResult::p_max)
      .def_readonly("d_max", &TorResult::d_max)
      .def_readonly("lsop", &TorResult::lsop)
      .def_property_readonly("tor",
                             [](const TorResult& t) {
                               py::list out;
                               for (const auto& g : t.tor) out.append(graded_json(g));
                               return out;
                             })
      .def("euler_ok", &TorResult::euler_ok)
      .def("vanishes", &TorResult::vanishes)
      .def("higher_vanishing_consistent", &TorResult::higher_vanishing_consistent)
      .def("confidence", &TorResult::confidence);
  m.def(
      "koszul_tor",
      [](const SimplicialComplex& k, const std::vector<std::vector<py::int_>>& b, std::optional<int> p_max, int d_max) {
        const SubringSpec s(to_matrix(b));
        return koszul_tor(k, s, p_max.value_or(s.n()), d_max);
      },
      py::arg("k"), py::arg("matrix"), py::arg("p_max") = py::none(), py::arg("d_max") = 10);
  m.def(
      "verify_tor_fiber_product",
      [](const SimplicialComplex& k1, const SimplicialComplex& k2, const std::vector<PyFace>& z,
         const std::vector<std::vector<py::int_>>& b, int d_max) {
        const TorSumReport r =
            verify_tor_fiber_product(k1, k2, subset(k1.vertex_count(), z), SubringSpec(to_matrix(b)), d_max);
        py::dict d;
        py::dict rings;
        for (const auto& ring : r.rings) rings[py::str(ring.name)] = ring.tor;
        d["rings"] = rings;
        d["hypotheses"] = checks_list(r.hypotheses);
        d["conclusions"] = checks_list(r.conclusions);
        d["consistency"] = checks_list(r.consistency);
        d["confidence"] = r.confidence;
        return d;
      },
      py::arg("k1"), py::arg("k2"), py::arg("z"), py::arg("matrix"), py::arg("d_max") = 10);

  // Polytopes
  py::class_<RationalPolytope>(m, "Polytope")
      .def(py::init(&make_polytope), py::arg("dim"), py::arg("inequalities"))
      .def_property_readonly("dim", &RationalPolytope::dim)
      .def_property_readonly("vertices",
                             [](const RationalPolytope& p) {
                               py::object fraction = py::module_::import("fractions").attr("Fraction");
                               py::list out;
                               for (const auto& v : p.vertices()) {
                                 py::list pt;
                                 for (const Rational& x : v.point)
                                   pt.append(fraction(to_py(numerator(x)), to_py(denominator(x))));
                                 out.append(py::tuple(pt));
                               }
                               return out;
                             })
      .def("is_simple", [](const RationalPolytope& p) { return is_simple(p); })
      .def(
          "boundary_complex", [](const RationalPolytope& p, int m_) { return complex_of_polytope(p, m_); },
          py::arg("vertex_count") = 0);
  m.def("parse_polytope", [](const std::string& text) {
    const PolytopeSpec s = parse_polytope(text);
    py::dict d;
    d["polytope"] = s.polytope;
    py::list labels;
    for (const Integer& l : s.labels) labels.append(to_py(l));
    d["labels"] = labels;
    if (s.cut) {
      py::list gamma;
      for (const Integer& g : s.cut->gamma) gamma.append(to_py(g));
      d["cut"] = py::make_tuple(gamma, to_py(s.cut->xi));
    } else {
      d["cut"] = py::none();
    }
    return d;
  });
  m.def("is_generic_cut", [](const RationalPolytope& p, const std::vector<py::int_>& gamma, const py::int_& xi) {
    const GenericityCertificate c = is_generic_cut(p, make_cut(gamma, xi));
    return py::make_tuple(c.generic, c.reason);
  });
  m.def(
      "cut",
      [](const RationalPolytope& p, const std::vector<py::int_>& gamma, const py::int_& xi) {
        const CutResult r = cut(p, make_cut(gamma, xi));
        py::dict d;
        d["k_delta"] = r.k_delta;
        d["k_plus"] = r.k_plus;
        d["k_minus"] = r.k_minus;
        d["z_o"] = from_faces(r.z_o.members());
        d["z_plus"] = from_faces(r.z_plus.members());
        d["new_vertex"] = r.new_vertex;
        d["checks"] = checks_list(r.checks);
        return d;
      },
      py::arg("polytope"), py::arg("gamma"), py::arg("xi"));
  m.def("extended_matrix", [](const RationalPolytope& p, const std::vector<py::int_>& labels,
                              const std::vector<py::int_>& gamma, const py::int_& xi) {
    std::vector<Integer> l;
    for (const auto& x : labels) l.push_back(from_py(x));
    return from_matrix(extended_matrix(LabeledPolytope(p, l), make_cut(gamma, xi)));
  });
}
