#pragma once

// Text formats.
//
//   complex (.cx)   vertices: 5
//                   facets: {1,4} {4,3} {3,2} {2,1}
//   polytope (.poly) dim: 2
//                   ineq: 1 0 | 0 label 1      (⟨λ,x⟩ + η ≥ 0, label defaults to 1)
//                   cut: -1 1 | 1              (optional)
//   matrix (.mat)   one row of integers per line
//
// '#' starts a comment everywhere. In complex files the token "o" stands for
// the last vertex (the new facet of a cut).

#include <optional>
#include <string>
#include <vector>

#include "connsum/integer_matrix.hpp"
#include "connsum/polytope.hpp"
#include "connsum/simplicial_complex.hpp"

namespace connsum {

/// Reads a whole file; throws ParseError (line 0) when it cannot be opened.
std::string read_text_file(const std::string& path);

/// "{1,4} {4,3} {}" on vertex set 1..vertex_count. `line` is used in errors.
std::vector<Face> parse_face_list(const std::string& text, int vertex_count, int line = 0);
std::string format_face_list(const std::vector<Face>& faces);

SimplicialComplex parse_complex(const std::string& text);
SimplicialComplex parse_complex_file(const std::string& path);
/// Facet form; parse_complex(format_complex(k)) == k.
std::string format_complex(const SimplicialComplex& k);

struct PolytopeSpec {
  RationalPolytope polytope;
  std::vector<Integer> labels;  // one per inequality
  std::optional<CutSpec> cut;
};

PolytopeSpec parse_polytope(const std::string& text);
PolytopeSpec parse_polytope_file(const std::string& path);
std::string format_polytope(const PolytopeSpec& p);

/// "γ₁ … γₙ | ξ" as used on `cut:` lines and the CLI.
CutSpec parse_cut(const std::string& text, int dim, int line = 0);

IntegerMatrix parse_matrix(const std::string& text);
IntegerMatrix parse_matrix_file(const std::string& path);
std::string format_matrix(const IntegerMatrix& m);

}  // namespace connsum
