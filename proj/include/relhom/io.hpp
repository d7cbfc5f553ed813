#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "relhom/decompose.hpp"
#include "relhom/complex.hpp"

namespace relhom {

namespace io {

constexpr const char* kCacheVersion = "relhom-cache v1";

[[noreturn]] inline void parse_fail(const std::filesystem::path& file, std::size_t line,
                                    const std::string& msg) {
  fail(Error::Kind::Parse, file.string() + ":" + std::to_string(line) + ": " + msg);
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

/// Lines of a file with numbering, comments (#) and blanks stripped.
struct Line {
  std::size_t number;
  std::string text;
};

inline std::vector<Line> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(Error::Kind::Parse, "cannot open " + file.string());
  std::vector<Line> lines;
  std::string raw;
  std::size_t num = 0;
  while (std::getline(in, raw)) {
    ++num;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string t = trim(raw);
    if (!t.empty()) lines.push_back({num, t});
  }
  return lines;
}

inline long long parse_int(const std::string& tok, const std::filesystem::path& file,
                           std::size_t line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) parse_fail(file, line, "bad integer '" + tok + "'");
    return v;
  } catch (const std::exception&) {
    parse_fail(file, line, "bad integer '" + tok + "'");
  }
}

/// Matrix literal [[1,2],[3,4]]; [] is the empty matrix.
inline Matrix parse_matrix(const std::string& text, std::uint32_t p, std::size_t rows,
                           std::size_t cols, const std::filesystem::path& file, std::size_t line) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    parse_fail(file, line, "matrix literal must be bracketed");
  std::string body = s.substr(1, s.size() - 2);
  std::vector<std::vector<long long>> data;
  if (!body.empty()) {
    if (body.front() != '[' || body.back() != ']')
      parse_fail(file, line, "matrix rows must be bracketed");
    std::string rows_body = body.substr(1, body.size() - 2);
    std::vector<std::string> row_texts;
    std::string acc;
    for (std::size_t i = 0; i < rows_body.size();) {
      if (i + 2 < rows_body.size() && rows_body[i] == ']' && rows_body[i + 1] == ',' &&
          rows_body[i + 2] == '[') {
        row_texts.push_back(acc);
        acc.clear();
        i += 3;
      } else {
        acc.push_back(rows_body[i]);
        ++i;
      }
    }
    row_texts.push_back(acc);
    for (const std::string& row : row_texts) {
      std::vector<long long> entries;
      if (!trim(row).empty()) {
        for (const auto& tok : split(row, ',')) entries.push_back(parse_int(trim(tok), file, line));
      }
      data.push_back(std::move(entries));
    }
  }
  if (data.size() != rows) parse_fail(file, line, "expected " + std::to_string(rows) + " rows");
  for (const auto& r : data)
    if (r.size() != cols) parse_fail(file, line, "expected " + std::to_string(cols) + " columns");
  Matrix m(p, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      long long v = data[r][c] % static_cast<long long>(p);
      if (v < 0) v += p;
      m.at(r, c) = static_cast<fel>(v);
    }
  return m;
}

inline std::string matrix_literal(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      os << m.at(r, c);
      if (c + 1 < m.cols()) os << ",";
    }
    os << "]";
    if (r + 1 < m.rows()) os << ",";
  }
  os << "]";
  return os.str();
}

/// Relation text: terms like 2*a.b joined by + or -.
inline RelationSpec parse_relation_text(const std::string& text, const std::filesystem::path& file,
                                        std::size_t line) {
  RelationSpec spec;
  std::vector<std::string> toks;
  for (const auto& t : split(text, ' '))
    if (!trim(t).empty()) toks.push_back(trim(t));
  long long sign = 1;
  bool expect_term = true;
  for (const auto& tok : toks) {
    if (tok == "+") {
      if (expect_term) parse_fail(file, line, "dangling '+' in relation");
      sign = 1;
      expect_term = true;
      continue;
    }
    if (tok == "-") {
      if (expect_term) parse_fail(file, line, "dangling '-' in relation");
      sign = -1;
      expect_term = true;
      continue;
    }
    if (!expect_term) parse_fail(file, line, "missing operator before '" + tok + "'");
    RelationTermSpec term;
    std::string path_part = tok;
    std::size_t star = tok.find('*');
    if (star != std::string::npos) {
      term.coeff = parse_int(tok.substr(0, star), file, line);
      path_part = tok.substr(star + 1);
    } else {
      term.coeff = 1;
    }
    term.coeff *= sign;
    for (const auto& lab : split(path_part, '.')) {
      if (trim(lab).empty()) parse_fail(file, line, "empty arrow label in path");
      term.arrow_labels.push_back(trim(lab));
    }
    spec.terms.push_back(std::move(term));
    expect_term = false;
    sign = 1;
  }
  if (spec.terms.empty() || expect_term) parse_fail(file, line, "relation has no terms");
  return spec;
}

/// Loader with per-path instance caching, so every reference to one
/// algebra file yields the same shared object.
class Loader {
 public:
  AlgebraPtr load_algebra(const std::filesystem::path& file) {
    std::filesystem::path canon = std::filesystem::weakly_canonical(file);
    auto it = algebras_.find(canon.string());
    if (it != algebras_.end()) return it->second;
    AlgebraPtr alg = parse_algebra_file(canon);
    algebras_.emplace(canon.string(), alg);
    return alg;
  }

  RepPtr load_module(const std::filesystem::path& file) {
    std::filesystem::path canon = std::filesystem::weakly_canonical(file);
    auto it = modules_.find(canon.string());
    if (it != modules_.end()) return it->second;
    RepPtr rep = parse_module_file(canon);
    modules_.emplace(canon.string(), rep);
    return rep;
  }

  ModuleMorphism load_morphism(const std::filesystem::path& file) {
    std::filesystem::path canon = std::filesystem::weakly_canonical(file);
    auto lines = read_lines(canon);
    RepPtr src, tgt;
    std::map<std::string, std::pair<std::size_t, std::string>> matrices;
    for (const auto& [num, text] : lines) {
      std::istringstream is(text);
      std::string key;
      is >> key;
      if (key == "source" || key == "target") {
        std::string rest = trim(text.substr(key.size()));
        RepPtr rep = load_module(canon.parent_path() / rest);
        (key == "source" ? src : tgt) = rep;
      } else if (key == "matrix") {
        std::string rest = trim(text.substr(key.size()));
        std::size_t eq = rest.find('=');
        if (eq == std::string::npos) parse_fail(canon, num, "matrix line needs '='");
        std::string label = trim(rest.substr(0, eq));
        matrices[label] = {num, trim(rest.substr(eq + 1))};
      } else {
        parse_fail(canon, num, "unknown morphism directive '" + key + "'");
      }
    }
    if (!src || !tgt) fail(Error::Kind::Parse, canon.string() + ": morphism needs source and target");
    if (!same_algebra(*src->algebra(), *tgt->algebra()))
      fail(Error::Kind::AlgebraMismatch, canon.string() + ": endpoints over different algebras");
    const AlgebraPtr& alg = src->algebra();
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < alg->num_vertices(); ++v) {
      const std::string& label = alg->quiver().vertices[v];
      auto it = matrices.find(label);
      if (it == matrices.end()) {
        maps.emplace_back(alg->p(), tgt->dim(v), src->dim(v));
      } else {
        maps.push_back(
            parse_matrix(it->second.second, alg->p(), tgt->dim(v), src->dim(v), canon, it->second.first));
      }
    }
    ModuleMorphism f(src, tgt, maps);
    try {
      f.validate();
    } catch (const Error& e) {
      fail(Error::Kind::InvariantViolation, canon.string() + ": " + e.what());
    }
    return f;
  }

  ShortSequence load_sequence(const std::filesystem::path& file) {
    std::filesystem::path canon = std::filesystem::weakly_canonical(file);
    auto lines = read_lines(canon);
    std::optional<ModuleMorphism> inj, surj;
    for (const auto& [num, text] : lines) {
      std::istringstream is(text);
      std::string key;
      is >> key;
      std::string rest = trim(text.substr(key.size()));
      if (key == "inj") {
        inj = load_morphism(canon.parent_path() / rest);
      } else if (key == "surj") {
        surj = load_morphism(canon.parent_path() / rest);
      } else {
        parse_fail(canon, num, "unknown sequence directive '" + key + "'");
      }
    }
    if (!inj || !surj) fail(Error::Kind::Parse, canon.string() + ": sequence needs inj and surj");
    ShortSequence seq{*inj, *surj};
    seq.validate();
    return seq;
  }

  BoundedComplex load_complex(const std::filesystem::path& file) {
    std::filesystem::path canon = std::filesystem::weakly_canonical(file);
    auto lines = read_lines(canon);
    std::map<int, RepPtr> terms;
    std::map<int, ModuleMorphism> diffs;
    for (const auto& [num, text] : lines) {
      std::istringstream is(text);
      std::string key;
      is >> key;
      std::string rest = trim(text.substr(key.size()));
      std::size_t eq = rest.find('=');
      if (eq == std::string::npos) parse_fail(canon, num, "expected '<degree> = <path>'");
      int deg = static_cast<int>(parse_int(trim(rest.substr(0, eq)), canon, num));
      std::string path = trim(rest.substr(eq + 1));
      if (key == "term") {
        terms[deg] = load_module(canon.parent_path() / path);
      } else if (key == "diff") {
        diffs.emplace(deg, load_morphism(canon.parent_path() / path));
      } else {
        parse_fail(canon, num, "unknown complex directive '" + key + "'");
      }
    }
    if (terms.empty()) fail(Error::Kind::Parse, canon.string() + ": complex has no terms");
    const AlgebraPtr& alg = terms.begin()->second->algebra();
    int lo = terms.begin()->first;
    int hi = terms.rbegin()->first;
    std::vector<RepPtr> term_list;
    for (int i = lo; i <= hi; ++i) {
      auto it = terms.find(i);
      term_list.push_back(it == terms.end() ? zero_rep(alg) : it->second);
    }
    std::vector<ModuleMorphism> diff_list;
    for (int i = lo; i < hi; ++i) {
      auto it = diffs.find(i);
      if (it != diffs.end()) {
        diff_list.push_back(it->second);
      } else {
        diff_list.push_back(zero_morphism(term_list[static_cast<std::size_t>(i - lo)],
                                          term_list[static_cast<std::size_t>(i - lo + 1)]));
      }
    }
    BoundedComplex x(alg, lo, std::move(term_list), std::move(diff_list));
    try {
      x.validate();
    } catch (const Error& e) {
      fail(Error::Kind::InvariantViolation, canon.string() + ": " + e.what());
    }
    return x;
  }

  /// Gluing file: left/right algebra references plus connectors.
  TriangularGluing load_gluing(const std::filesystem::path& file) {
    std::filesystem::path canon = std::filesystem::weakly_canonical(file);
    auto lines = read_lines(canon);
    TriangularGluing g;
    for (const auto& [num, text] : lines) {
      std::istringstream is(text);
      std::string key;
      is >> key;
      std::string rest = trim(text.substr(key.size()));
      if (key == "glue") continue;  // optional marker
      if (key == "left") {
        g.left = load_algebra(canon.parent_path() / rest);
      } else if (key == "right") {
        g.right = load_algebra(canon.parent_path() / rest);
      } else if (key == "connect") {
        // connect <label>: <right-vertex> -> <left-vertex>
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos) parse_fail(canon, num, "connect needs '<label>:'");
        std::string label = trim(rest.substr(0, colon));
        std::string arrow = trim(rest.substr(colon + 1));
        std::size_t arr = arrow.find("->");
        if (arr == std::string::npos) parse_fail(canon, num, "connect needs '->'");
        g.connectors.push_back(
            {label, trim(arrow.substr(0, arr)), trim(arrow.substr(arr + 2))});
      } else if (key == "relation") {
        g.extra_relations.push_back(parse_relation_text(rest, canon, num));
      } else {
        parse_fail(canon, num, "unknown gluing directive '" + key + "'");
      }
    }
    if (!g.left || !g.right) fail(Error::Kind::Parse, canon.string() + ": gluing needs left and right");
    return g;
  }

 private:
  AlgebraPtr parse_algebra_file(const std::filesystem::path& file) {
    auto lines = read_lines(file);
    Quiver q;
    std::vector<RelationSpec> relations;
    std::optional<std::uint32_t> p;
    std::size_t nilbound = 0;
    for (const auto& [num, text] : lines) {
      std::istringstream is(text);
      std::string key;
      is >> key;
      std::string rest = trim(text.substr(key.size()));
      if (key == "field") {
        if (rest.rfind("p=", 0) != 0) parse_fail(file, num, "field line must read 'field p=<prime>'");
        p = static_cast<std::uint32_t>(parse_int(rest.substr(2), file, num));
      } else if (key == "vertex") {
        if (rest.empty()) parse_fail(file, num, "vertex needs a label");
        q.vertices.push_back(rest);
      } else if (key == "arrow") {
        // arrow <label>: <src> -> <tgt>
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos) parse_fail(file, num, "arrow needs '<label>:'");
        std::string label = trim(rest.substr(0, colon));
        std::string ends = trim(rest.substr(colon + 1));
        std::size_t arr = ends.find("->");
        if (arr == std::string::npos) parse_fail(file, num, "arrow needs '->'");
        std::string src = trim(ends.substr(0, arr));
        std::string tgt = trim(ends.substr(arr + 2));
        std::size_t si = q.vertices.size(), ti = q.vertices.size();
        for (std::size_t v = 0; v < q.vertices.size(); ++v) {
          if (q.vertices[v] == src) si = v;
          if (q.vertices[v] == tgt) ti = v;
        }
        if (si == q.vertices.size()) parse_fail(file, num, "unknown source vertex '" + src + "'");
        if (ti == q.vertices.size()) parse_fail(file, num, "unknown target vertex '" + tgt + "'");
        q.arrows.push_back({label, si, ti});
      } else if (key == "relation") {
        relations.push_back(parse_relation_text(rest, file, num));
      } else if (key == "nilbound") {
        nilbound = static_cast<std::size_t>(parse_int(rest, file, num));
      } else {
        parse_fail(file, num, "unknown algebra directive '" + key + "'");
      }
    }
    if (!p) fail(Error::Kind::Parse, file.string() + ": missing field line");
    if (nilbound == 0) fail(Error::Kind::Parse, file.string() + ": missing nilbound line");
    return build_algebra(q, relations, {*p}, nilbound);
  }

  RepPtr parse_module_file(const std::filesystem::path& file) {
    auto lines = read_lines(file);
    AlgebraPtr alg;
    std::map<std::string, std::size_t> dims;
    std::vector<std::tuple<std::string, std::size_t, std::string>> map_lines;
    for (const auto& [num, text] : lines) {
      std::istringstream is(text);
      std::string key;
      is >> key;
      std::string rest = trim(text.substr(key.size()));
      if (key == "algebra") {
        alg = load_algebra(file.parent_path() / rest);
      } else if (key == "dim") {
        std::size_t eq = rest.find('=');
        if (eq == std::string::npos) parse_fail(file, num, "dim line needs '='");
        long long v = parse_int(trim(rest.substr(eq + 1)), file, num);
        if (v < 0) parse_fail(file, num, "negative dimension");
        dims[trim(rest.substr(0, eq))] = static_cast<std::size_t>(v);
      } else if (key == "map") {
        std::size_t eq = rest.find('=');
        if (eq == std::string::npos) parse_fail(file, num, "map line needs '='");
        map_lines.emplace_back(trim(rest.substr(0, eq)), num, trim(rest.substr(eq + 1)));
      } else {
        parse_fail(file, num, "unknown module directive '" + key + "'");
      }
    }
    if (!alg) fail(Error::Kind::Parse, file.string() + ": module needs an algebra line");
    std::vector<std::size_t> dim_vec(alg->num_vertices(), 0);
    for (const auto& [label, d] : dims) {
      bool found = false;
      for (std::size_t v = 0; v < alg->num_vertices(); ++v)
        if (alg->quiver().vertices[v] == label) {
          dim_vec[v] = d;
          found = true;
        }
      if (!found) fail(Error::Kind::Parse, file.string() + ": unknown vertex '" + label + "'");
    }
    std::vector<Matrix> maps;
    for (const auto& a : alg->quiver().arrows)
      maps.emplace_back(alg->p(), dim_vec[a.tgt], dim_vec[a.src]);
    for (const auto& [label, num, text] : map_lines) {
      bool found = false;
      for (std::size_t a = 0; a < alg->quiver().arrows.size(); ++a) {
        if (alg->quiver().arrows[a].label == label) {
          const Arrow& ar = alg->quiver().arrows[a];
          maps[a] = parse_matrix(text, alg->p(), dim_vec[ar.tgt], dim_vec[ar.src], file, num);
          found = true;
        }
      }
      if (!found) parse_fail(file, num, "unknown arrow label '" + label + "'");
    }
    auto rep = std::make_shared<Representation>(alg, dim_vec, maps);
    try {
      rep->validate();
    } catch (const Error& e) {
      fail(Error::Kind::InvariantViolation, file.string() + ": " + e.what());
    }
    return rep;
  }

  std::map<std::string, AlgebraPtr> algebras_;
  std::map<std::string, RepPtr> modules_;
};

// ---------------------------------------------------------------------------
// Inventory cache: versioned, self-describing text records keyed by the
// algebra content hash and the dimension bound. Stale entries are never
// served.

inline std::string hash_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, const Algebra& alg,
                                        std::size_t d) {
  return dir / (hash_hex(alg.content_hash()) + "_d" + std::to_string(d) + ".inv");
}

inline void cache_store(const std::filesystem::path& dir, const Inventory& inv) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::filesystem::path file = cache_file(dir, *inv.algebra, inv.dim_bound);
  std::ofstream out(file);
  if (!out) return;  // caching is best-effort
  out << kCacheVersion << "\n";
  out << "algebra-hash " << hash_hex(inv.algebra->content_hash()) << "\n";
  out << "dim-bound " << inv.dim_bound << "\n";
  out << "complete " << (inv.complete ? 1 : 0) << "\n";
  out << "certificate " << inv.certificate << "\n";
  for (const auto& note : inv.notes) out << "note " << note << "\n";
  for (std::size_t i = 0; i < inv.modules.size(); ++i) {
    out << "module " << inv.names[i] << "\n";
    out << "dims";
    for (std::size_t v : inv.modules[i]->dims()) out << " " << v;
    out << "\n";
    for (std::size_t a = 0; a < inv.algebra->quiver().arrows.size(); ++a)
      out << "map " << inv.algebra->quiver().arrows[a].label << " "
          << matrix_literal(inv.modules[i]->arrow_map(a)) << "\n";
  }
}

inline std::optional<Inventory> cache_load(const std::filesystem::path& dir, const AlgebraPtr& alg,
                                           std::size_t d) {
  std::filesystem::path file = cache_file(dir, *alg, d);
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != kCacheVersion) return std::nullopt;

  Inventory inv;
  inv.algebra = alg;
  inv.dim_bound = d;
  std::string cur_name;
  std::vector<std::size_t> cur_dims;
  std::vector<Matrix> cur_maps;
  bool in_module = false;

  auto flush = [&]() {
    if (!in_module) return true;
    if (cur_maps.size() != alg->quiver().arrows.size()) return false;
    auto rep = std::make_shared<Representation>(alg, cur_dims, cur_maps);
    rep->validate();
    inv.modules.push_back(std::move(rep));
    inv.names.push_back(cur_name);
    cur_maps.clear();
    return true;
  };

  while (std::getline(in, line)) {
    std::istringstream is(line);
    std::string key;
    is >> key;
    if (key == "algebra-hash") {
      std::string h;
      is >> h;
      if (h != hash_hex(alg->content_hash())) return std::nullopt;  // stale
    } else if (key == "dim-bound") {
      std::size_t dd = 0;
      is >> dd;
      if (dd != d) return std::nullopt;
    } else if (key == "complete") {
      int c = 0;
      is >> c;
      inv.complete = c != 0;
    } else if (key == "certificate") {
      std::string rest;
      std::getline(is, rest);
      inv.certificate = trim(rest);
    } else if (key == "note") {
      std::string rest;
      std::getline(is, rest);
      inv.notes.push_back(trim(rest));
    } else if (key == "module") {
      if (!flush()) return std::nullopt;
      in_module = true;
      std::string rest;
      std::getline(is, rest);
      cur_name = trim(rest);
      cur_dims.assign(alg->num_vertices(), 0);
    } else if (key == "dims") {
      for (std::size_t v = 0; v < alg->num_vertices(); ++v) is >> cur_dims[v];
    } else if (key == "map") {
      std::string label, literal;
      is >> label;
      std::getline(is, literal);
      std::size_t idx = alg->quiver().arrow_index(label);
      const Arrow& ar = alg->quiver().arrows[idx];
      if (cur_maps.size() != idx) return std::nullopt;  // maps must arrive in arrow order
      cur_maps.push_back(
          parse_matrix(trim(literal), alg->p(), cur_dims[ar.tgt], cur_dims[ar.src], file, 0));
    } else {
      return std::nullopt;
    }
  }
  if (!flush()) return std::nullopt;
  return inv;
}

}  // namespace io

}  // namespace relhom
