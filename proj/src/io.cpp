#include "connsum/io.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "connsum/errors.hpp"

namespace connsum {

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

/// Splits "key: value"; returns false for lines without a key.
bool key_value(const std::string& line, std::string& key, std::string& value) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) return false;
  key = trim(line.substr(0, colon));
  value = trim(line.substr(colon + 1));
  return true;
}

Integer parse_integer(const std::string& token, int line) {
  static const std::regex integer(R"([+-]?[0-9]+)");
  if (!std::regex_match(token, integer)) throw ParseError("expected an integer, got '" + token + "'", line);
  return Integer(token[0] == '+' ? token.substr(1) : token);
}

int parse_small(const std::string& token, int line, int lo, int hi, const std::string& what) {
  const Integer v = parse_integer(token, line);
  if (v < lo || v > hi)
    throw ParseError(what + " " + token + " outside " + std::to_string(lo) + ".." + std::to_string(hi), line);
  return static_cast<int>(v);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string join_integers(const std::vector<Integer>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Face> parse_face_list(const std::string& text, int vertex_count, int line) {
  std::vector<Face> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '{') throw ParseError("malformed face token near '" + text.substr(i, 8) + "'", line);
    const auto close = text.find('}', i);
    if (close == std::string::npos) throw ParseError("unterminated face '" + text.substr(i) + "'", line);
    const std::string body = text.substr(i + 1, close - i - 1);
    std::vector<int> vs;
    if (!trim(body).empty()) {
      std::istringstream parts(body);
      for (std::string item; std::getline(parts, item, ',');) {
        item = trim(item);
        if (vertex_count < 1) throw ParseError("face uses a vertex but the vertex set is empty", line);
        if (item == "o")
          vs.push_back(vertex_count);
        else
          vs.push_back(parse_small(item, line, 1, vertex_count, "vertex"));
      }
    }
    out.push_back(Face::of(vs));
    i = close + 1;
  }
  return out;
}

std::string format_face_list(const std::vector<Face>& faces) {
  std::string out;
  for (std::size_t i = 0; i < faces.size(); ++i) out += (i ? " " : "") + faces[i].to_string();
  return out;
}

SimplicialComplex parse_complex(const std::string& text) {
  std::optional<int> m;
  std::vector<std::pair<std::string, int>> facet_lines;
  int n = 0;
  for (const std::string& raw : lines_of(text)) {
    ++n;
    const std::string l = trim(strip_comment(raw));
    if (l.empty()) continue;
    std::string key, value;
    if (!key_value(l, key, value)) throw ParseError("expected 'key: value'", n);
    if (key == "vertices") {
      if (m) throw ParseError("duplicate 'vertices' line", n);
      m = parse_small(value, n, 0, kMaxVertices, "vertex count");
    } else if (key == "facets") {
      facet_lines.emplace_back(value, n);
    } else {
      throw ParseError("unknown key '" + key + "'", n);
    }
  }
  if (!m) throw ParseError("missing 'vertices' line", 0);
  std::vector<Face> gens;
  for (const auto& [value, line] : facet_lines)
    for (Face f : parse_face_list(value, *m, line)) gens.push_back(f);
  return SimplicialComplex::from_facets(*m, gens);
}

SimplicialComplex parse_complex_file(const std::string& path) { return parse_complex(read_text_file(path)); }

std::string format_complex(const SimplicialComplex& k) {
  std::vector<Face> facets = k.facets();
  std::string out = "vertices: " + std::to_string(k.vertex_count()) + "\nfacets: " + format_face_list(facets);
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out + "\n";
}

CutSpec parse_cut(const std::string& text, int dim, int line) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) throw ParseError("cut needs 'γ₁ … γₙ | ξ'", line);
  const auto gs = split_ws(text.substr(0, bar));
  const auto rest = split_ws(text.substr(bar + 1));
  if (static_cast<int>(gs.size()) != dim)
    throw ParseError("cut normal has " + std::to_string(gs.size()) + " entries, expected " + std::to_string(dim), line);
  if (rest.size() != 1) throw ParseError("cut needs exactly one offset after '|'", line);
  std::vector<Integer> gamma;
  for (const auto& t : gs) gamma.push_back(parse_integer(t, line));
  try {
    return CutSpec(gamma, parse_integer(rest[0], line));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), line);
  }
}

PolytopeSpec parse_polytope(const std::string& text) {
  std::optional<int> dim;
  std::vector<Inequality> ineqs;
  std::vector<Integer> labels;
  std::optional<std::pair<std::string, int>> cut_line;
  int n = 0, dim_line = 0;
  for (const std::string& raw : lines_of(text)) {
    ++n;
    const std::string l = trim(strip_comment(raw));
    if (l.empty()) continue;
    std::string key, value;
    if (!key_value(l, key, value)) throw ParseError("expected 'key: value'", n);
    if (key == "dim") {
      if (dim) throw ParseError("duplicate 'dim' line", n);
      dim = parse_small(value, n, 1, RationalPolytope::kMaxDim, "dimension");
      dim_line = n;
    } else if (key == "ineq") {
      if (!dim) throw ParseError("'ineq' before 'dim'", n);
      const auto bar = value.find('|');
      if (bar == std::string::npos) throw ParseError("inequality needs 'λ₁ … λₙ | η'", n);
      const auto lambda = split_ws(value.substr(0, bar));
      const auto rest = split_ws(value.substr(bar + 1));
      if (static_cast<int>(lambda.size()) != *dim)
        throw ParseError("normal has " + std::to_string(lambda.size()) + " entries, expected " + std::to_string(*dim),
                         n);
      Inequality q;
      for (const auto& t : lambda) q.normal.push_back(parse_integer(t, n));
      if (rest.empty()) throw ParseError("missing offset after '|'", n);
      q.offset = parse_integer(rest[0], n);
      Integer label = 1;
      if (rest.size() == 3 && rest[1] == "label") {
        label = parse_integer(rest[2], n);
        if (label <= 0) throw ParseError("labels must be positive", n);
      } else if (rest.size() != 1) {
        throw ParseError("trailing tokens after offset (expected 'label b')", n);
      }
      ineqs.push_back(std::move(q));
      labels.push_back(label);
    } else if (key == "cut") {
      if (cut_line) throw ParseError("duplicate 'cut' line", n);
      cut_line = std::make_pair(value, n);
    } else {
      throw ParseError("unknown key '" + key + "'", n);
    }
  }
  if (!dim) throw ParseError("missing 'dim' line", 0);
  std::optional<RationalPolytope> p;
  try {
    p.emplace(*dim, ineqs);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), dim_line);
  }
  PolytopeSpec spec{*p, labels, std::nullopt};
  if (cut_line) spec.cut = parse_cut(cut_line->first, *dim, cut_line->second);
  return spec;
}

PolytopeSpec parse_polytope_file(const std::string& path) { return parse_polytope(read_text_file(path)); }

std::string format_polytope(const PolytopeSpec& p) {
  std::ostringstream out;
  out << "dim: " << p.polytope.dim() << "\n";
  for (std::size_t i = 0; i < p.polytope.inequalities().size(); ++i) {
    const Inequality& q = p.polytope.inequalities()[i];
    out << "ineq: " << join_integers(q.normal) << " | " << q.offset;
    if (i < p.labels.size() && p.labels[i] != 1) out << " label " << p.labels[i];
    out << "\n";
  }
  if (p.cut) out << "cut: " << join_integers(p.cut->gamma) << " | " << p.cut->xi << "\n";
  return out.str();
}

IntegerMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Integer>> rows;
  int n = 0;
  for (const std::string& raw : lines_of(text)) {
    ++n;
    const auto tokens = split_ws(strip_comment(raw));
    if (tokens.empty()) continue;
    std::vector<Integer> row;
    for (const auto& t : tokens) row.push_back(parse_integer(t, n));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(rows.front().size()),
                       n);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix file has no rows", 0);
  return IntegerMatrix::from_rows(rows, rows.front().size());
}

IntegerMatrix parse_matrix_file(const std::string& path) { return parse_matrix(read_text_file(path)); }

std::string format_matrix(const IntegerMatrix& m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << "\n";
  }
  return out.str();
}

}  // namespace connsum
