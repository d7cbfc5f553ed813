#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relhom/matrix.hpp"

namespace relhom {

struct Arrow {
  std::string label;
  std::size_t src = 0;
  std::size_t tgt = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  std::size_t vertex_index(const std::string& label) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == label) return i;
    fail(Error::Kind::Parse, "unknown vertex '" + label + "'");
  }

  std::size_t arrow_index(const std::string& label) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].label == label) return i;
    fail(Error::Kind::Parse, "unknown arrow '" + label + "'");
  }

  void validate() const {
    std::set<std::string> labels;
    for (const auto& v : vertices) {
      if (v.empty()) fail(Error::Kind::Parse, "empty vertex label");
      if (!labels.insert(v).second) fail(Error::Kind::Parse, "duplicate vertex label '" + v + "'");
    }
    for (const auto& a : arrows) {
      if (a.label.empty()) fail(Error::Kind::Parse, "empty arrow label");
      if (!labels.insert(a.label).second)
        fail(Error::Kind::Parse, "duplicate label '" + a.label + "'");
      if (a.src >= vertices.size() || a.tgt >= vertices.size())
        fail(Error::Kind::Parse, "arrow '" + a.label + "' has undeclared endpoint");
    }
  }

  Quiver reversed() const {
    Quiver q;
    q.vertices = vertices;
    for (const auto& a : arrows) q.arrows.push_back({a.label, a.tgt, a.src});
    return q;
  }
};

/// One relation term: coefficient times a composable arrow sequence,
/// written in diagram order (first arrow applied first).
struct RelationTermSpec {
  long long coeff = 1;
  std::vector<std::string> arrow_labels;
};

struct RelationSpec {
  std::vector<RelationTermSpec> terms;
};

/// A path in the quiver, arrows in diagram order. Trivial paths have an
/// empty arrow list and source == target.
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const { return arrows.size(); }
};

struct ResolvedTerm {
  fel coeff = 1;
  std::vector<std::size_t> arrows;  // arrow indices, diagram order
  std::size_t source = 0;
  std::size_t target = 0;
};

struct ResolvedRelation {
  std::vector<ResolvedTerm> terms;
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t min_length = 0;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

AlgebraPtr build_algebra(const Quiver& quiver, const std::vector<RelationSpec>& relations,
                         FieldSpec field, std::size_t nilbound);

/// A finite-dimensional bound quiver algebra kQ/I with a computed path
/// basis and normal forms for degree-bounded products.
///
/// Composition convention: the path "a.b" means a followed by b, and acts
/// on a left module as M_b * M_a (column vectors).
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  const Quiver& quiver() const { return quiver_; }
  std::uint32_t p() const { return field_.p; }
  const FieldSpec& field() const { return field_; }
  std::size_t nilbound() const { return nilbound_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t num_vertices() const { return quiver_.vertices.size(); }

  const std::vector<Path>& basis() const { return basis_; }
  const std::vector<ResolvedRelation>& relations() const { return relations_; }
  const std::vector<RelationSpec>& relation_specs() const { return relation_specs_; }

  /// Right multiplication by arrow a on the path basis: column q holds the
  /// normal form of (basis path q) . a, zero when not composable.
  const Matrix& right_mult(std::size_t arrow) const { return right_mult_[arrow]; }

  const std::vector<std::size_t>& basis_from(std::size_t v) const { return basis_from_[v]; }

  std::vector<std::size_t> basis_from_to(std::size_t v, std::size_t w) const {
    std::vector<std::size_t> out;
    for (std::size_t i : basis_from_[v])
      if (basis_[i].target == w) out.push_back(i);
    return out;
  }

  /// Jacobson radical basis: all basis paths of length >= 1 (valid because
  /// the ideal is admissible).
  std::vector<std::size_t> radical_basis() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].length() >= 1) out.push_back(i);
    return out;
  }

  bool is_hereditary() const { return relations_.empty(); }

  /// Canonical content string; two algebras with equal signatures are the
  /// same presentation. Used for structural identity and cache keys.
  const std::string& signature() const { return signature_; }

  std::uint64_t content_hash() const { return content_hash_; }

  AlgebraPtr opposite() const {
    std::call_once(opp_once_, [this] {
      Quiver rq = quiver_.reversed();
      std::vector<RelationSpec> rr;
      for (const auto& rel : relation_specs_) {
        RelationSpec spec;
        for (const auto& t : rel.terms) {
          RelationTermSpec rt;
          rt.coeff = t.coeff;
          rt.arrow_labels.assign(t.arrow_labels.rbegin(), t.arrow_labels.rend());
          spec.terms.push_back(std::move(rt));
        }
        rr.push_back(std::move(spec));
      }
      opposite_ = build_algebra(rq, rr, field_, nilbound_);
    });
    return opposite_;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "algebra over F_" << field_.p << ", " << quiver_.vertices.size() << " vertices, "
       << quiver_.arrows.size() << " arrows, " << relations_.size() << " relations, dim "
       << dim() << ", nilbound " << nilbound_;
    return os.str();
  }

 private:
  friend AlgebraPtr build_algebra(const Quiver&, const std::vector<RelationSpec>&, FieldSpec,
                                  std::size_t);

  Quiver quiver_;
  FieldSpec field_;
  std::size_t nilbound_ = 2;
  std::vector<Path> basis_;
  std::vector<ResolvedRelation> relations_;
  std::vector<RelationSpec> relation_specs_;
  std::vector<Matrix> right_mult_;
  std::vector<std::vector<std::size_t>> basis_from_;
  std::string signature_;
  std::uint64_t content_hash_ = 0;

  mutable std::once_flag opp_once_;
  mutable AlgebraPtr opposite_;
};

inline bool same_algebra(const Algebra& a, const Algebra& b) {
  return &a == &b || a.signature() == b.signature();
}

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline ResolvedRelation resolve_relation(const Quiver& q, const RelationSpec& spec,
                                         std::uint32_t p) {
  ResolvedRelation rel;
  for (const auto& term : spec.terms) {
    long long c = term.coeff % static_cast<long long>(p);
    if (c < 0) c += p;
    ResolvedTerm t;
    t.coeff = static_cast<fel>(c);
    if (term.arrow_labels.size() < 2)
      fail(Error::Kind::InvalidRelation, "relation term shorter than two arrows (ideal must be admissible)");
    for (const auto& lab : term.arrow_labels) t.arrows.push_back(q.arrow_index(lab));
    t.source = q.arrows[t.arrows.front()].src;
    t.target = q.arrows[t.arrows.back()].tgt;
    for (std::size_t i = 0; i + 1 < t.arrows.size(); ++i) {
      if (q.arrows[t.arrows[i]].tgt != q.arrows[t.arrows[i + 1]].src)
        fail(Error::Kind::InvalidRelation, "relation path is not composable");
    }
    if (t.coeff == 0) continue;  // vanishing coefficient: drop the term
    rel.terms.push_back(std::move(t));
  }
  if (rel.terms.empty())
    fail(Error::Kind::InvalidRelation, "relation has no nonzero terms");
  rel.source = rel.terms.front().source;
  rel.target = rel.terms.front().target;
  rel.min_length = rel.terms.front().arrows.size();
  for (const auto& t : rel.terms) {
    if (t.source != rel.source || t.target != rel.target)
      fail(Error::Kind::InvalidRelation, "relation terms are not parallel paths");
    rel.min_length = std::min(rel.min_length, t.arrows.size());
  }
  return rel;
}

}  // namespace detail

/// Builds kQ/I by enumerating all paths of length <= nilbound and reducing
/// the degree-truncated span of the relation ideal by linear algebra.
/// Fails with NotFiniteDimensional when the nilbound-length paths are not
/// all inside the ideal span (raise the nilbound, or the ideal is not
/// admissible).
inline AlgebraPtr build_algebra(const Quiver& quiver, const std::vector<RelationSpec>& relations,
                                FieldSpec field, std::size_t nilbound) {
  field.validate();
  quiver.validate();
  if (nilbound < 2) fail(Error::Kind::Parse, "nilbound must be at least 2");
  const std::uint32_t p = field.p;

  auto alg = std::make_shared<Algebra>();
  alg->quiver_ = quiver;
  alg->field_ = field;
  alg->nilbound_ = nilbound;
  alg->relation_specs_ = relations;
  for (const auto& spec : relations)
    alg->relations_.push_back(detail::resolve_relation(quiver, spec, p));

  // All paths of length <= nilbound, ordered by (length, generation order).
  constexpr std::size_t kPathCap = 200000;
  std::vector<Path> paths;
  std::vector<std::size_t> level_begin;  // index of first path of each length
  for (std::size_t v = 0; v < quiver.vertices.size(); ++v)
    paths.push_back(Path{v, v, {}});
  level_begin.push_back(0);
  std::size_t prev_begin = 0;
  for (std::size_t len = 1; len <= nilbound; ++len) {
    level_begin.push_back(paths.size());
    std::size_t prev_end = level_begin[len];
    for (std::size_t i = prev_begin; i < prev_end; ++i) {
      for (std::size_t a = 0; a < quiver.arrows.size(); ++a) {
        if (quiver.arrows[a].src != paths[i].target) continue;
        Path ext = paths[i];
        ext.arrows.push_back(a);
        ext.target = quiver.arrows[a].tgt;
        paths.push_back(std::move(ext));
        if (paths.size() > kPathCap)
          fail(Error::Kind::NotFiniteDimensional,
               "path enumeration exceeded " + std::to_string(kPathCap) +
                   " paths; the algebra is probably not finite-dimensional at this nilbound");
      }
    }
    prev_begin = prev_end;
  }
  level_begin.push_back(paths.size());
  const std::size_t n_all = paths.size();
  const std::size_t top_begin = level_begin[nilbound];

  // Index lookup: path -> position, via canonical key (source + arrows).
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> path_index;
  for (std::size_t i = 0; i < n_all; ++i)
    path_index[{paths[i].source, paths[i].arrows}] = i;

  // Degree-truncated span of the two-sided ideal: rows u . r . w for all
  // enveloping path pairs that keep at least the shortest term within the
  // bound. Components of length > nilbound are dropped (they are zero in
  // the truncated algebra).
  std::vector<std::vector<long long>> ideal_rows;
  for (const auto& rel : alg->relations_) {
    for (std::size_t u = 0; u < n_all; ++u) {
      if (paths[u].target != rel.source) continue;
      if (paths[u].length() + rel.min_length > nilbound) continue;
      for (std::size_t w = 0; w < n_all; ++w) {
        if (paths[w].source != rel.target) continue;
        if (paths[u].length() + rel.min_length + paths[w].length() > nilbound) continue;
        std::vector<long long> row(n_all, 0);
        bool nontrivial = false;
        for (const auto& term : rel.terms) {
          std::size_t total = paths[u].length() + term.arrows.size() + paths[w].length();
          if (total > nilbound) continue;
          std::vector<std::size_t> seq = paths[u].arrows;
          seq.insert(seq.end(), term.arrows.begin(), term.arrows.end());
          seq.insert(seq.end(), paths[w].arrows.begin(), paths[w].arrows.end());
          auto it = path_index.find({paths[u].source, seq});
          require_internal(it != path_index.end(), "composed relation path missing from enumeration");
          row[it->second] += term.coeff;
          nontrivial = true;
        }
        if (nontrivial) ideal_rows.push_back(std::move(row));
      }
    }
  }

  Matrix ideal = Matrix::from_rows(p, ideal_rows);
  if (ideal_rows.empty()) ideal = Matrix(p, 0, n_all);

  // Finite-dimensionality certificate: every path of full nilbound length
  // must already lie in the ideal span.
  {
    std::size_t base_rank = rank(ideal);
    Matrix units(p, n_all - top_begin, n_all);
    for (std::size_t i = top_begin; i < n_all; ++i) units.at(i - top_begin, i) = 1;
    if (rank(ideal.vstack(units)) != base_rank)
      fail(Error::Kind::NotFiniteDimensional,
           "paths of length " + std::to_string(nilbound) +
               " are not all contained in the relation ideal; raise the nilbound or check admissibility");
  }

  // Project the ideal span onto paths of length < nilbound and reduce.
  // Non-pivot columns become the path basis; pivot columns get normal
  // forms from their reduced rows.
  Matrix proj(p, ideal.rows(), top_begin);
  for (std::size_t i = 0; i < ideal.rows(); ++i)
    for (std::size_t j = 0; j < top_begin; ++j) proj.at(i, j) = ideal.at(i, j);
  RrefResult red = rref(proj);

  std::vector<bool> is_pivot(top_begin, false);
  for (std::size_t c : red.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> basis_pos;           // path id -> basis index (or npos)
  const std::size_t npos = static_cast<std::size_t>(-1);
  basis_pos.assign(n_all, npos);
  for (std::size_t j = 0; j < top_begin; ++j) {
    if (!is_pivot[j]) {
      basis_pos[j] = alg->basis_.size();
      alg->basis_.push_back(paths[j]);
    }
  }
  const std::size_t dim = alg->basis_.size();

  if (p <= dim)
    fail(Error::Kind::FieldTooSmall, "field size p=" + std::to_string(p) +
                                         " must exceed the algebra dimension " + std::to_string(dim));

  // Normal form of every enumerated path as a basis combination.
  std::vector<std::vector<fel>> nf(n_all, std::vector<fel>(dim, 0));
  for (std::size_t j = 0; j < top_begin; ++j) {
    if (!is_pivot[j]) {
      nf[j][basis_pos[j]] = 1;
    }
  }
  for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
    std::size_t pc = red.pivot_cols[r];
    for (std::size_t j = 0; j < top_begin; ++j) {
      if (is_pivot[j] || red.reduced.at(r, j) == 0) continue;
      nf[pc][basis_pos[j]] = fneg(red.reduced.at(r, j), p);
    }
  }
  // Paths of full length reduce to zero (already certified in the ideal).

  // Right multiplication tables on the basis.
  alg->right_mult_.assign(quiver.arrows.size(), Matrix(p, dim, dim));
  for (std::size_t a = 0; a < quiver.arrows.size(); ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      const Path& q = alg->basis_[b];
      if (q.target != quiver.arrows[a].src) continue;
      std::vector<std::size_t> seq = q.arrows;
      seq.push_back(a);
      auto it = path_index.find({q.source, seq});
      require_internal(it != path_index.end(), "basis-times-arrow path missing from enumeration");
      for (std::size_t i = 0; i < dim; ++i) alg->right_mult_[a].at(i, b) = nf[it->second][i];
    }
  }

  alg->basis_from_.assign(quiver.vertices.size(), {});
  for (std::size_t b = 0; b < dim; ++b) alg->basis_from_[alg->basis_[b].source].push_back(b);

  // Consistency: every relation must reduce to zero after left-composing
  // with any basis path (right multiples are then zero by construction).
  for (const auto& rel : alg->relations_) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (alg->basis_[b].target != rel.source) continue;
      std::vector<fel> acc(dim, 0);
      for (const auto& term : rel.terms) {
        // nf(basis_b . term) via the multiplication tables.
        std::vector<fel> cur(dim, 0);
        cur[b] = 1;
        for (std::size_t a : term.arrows) {
          std::vector<fel> next(dim, 0);
          for (std::size_t i = 0; i < dim; ++i) {
            if (!cur[i]) continue;
            for (std::size_t k = 0; k < dim; ++k) {
              fel m = alg->right_mult_[a].at(k, i);
              if (m) next[k] = fadd(next[k], fmul(cur[i], m, p), p);
            }
          }
          cur = std::move(next);
        }
        for (std::size_t i = 0; i < dim; ++i)
          acc[i] = fadd(acc[i], fmul(term.coeff, cur[i], p), p);
      }
      for (fel v : acc)
        require_internal(v == 0, "relation does not vanish in the regular representation");
    }
  }

  // Canonical signature for structural identity and cache keys.
  {
    std::ostringstream os;
    os << "p=" << p << ";L=" << nilbound << ";V=";
    for (const auto& v : quiver.vertices) os << v << ",";
    os << ";A=";
    for (const auto& a : quiver.arrows)
      os << a.label << ":" << a.src << ">" << a.tgt << ",";
    os << ";R=";
    for (const auto& rel : alg->relations_) {
      for (const auto& t : rel.terms) {
        os << t.coeff << "*";
        for (std::size_t a : t.arrows) os << a << ".";
        os << "+";
      }
      os << "|";
    }
    alg->signature_ = os.str();
    alg->content_hash_ = detail::fnv1a(alg->signature_);
  }

  return alg;
}

/// Triangular gluing data: connecting arrows run from vertices of the
/// right algebra T to vertices of the left algebra S only, so no path
/// returns from the S part to the T part.
struct TriangularGluing {
  AlgebraPtr left;   // S
  AlgebraPtr right;  // T
  struct Connector {
    std::string label;
    std::string right_vertex;  // in T
    std::string left_vertex;   // in S
  };
  std::vector<Connector> connectors;
  std::vector<RelationSpec> extra_relations;
};

inline AlgebraPtr glue_triangular(const TriangularGluing& g) {
  require_internal(g.left && g.right, "gluing needs two algebras");
  if (g.left->p() != g.right->p())
    fail(Error::Kind::AlgebraMismatch, "gluing requires both algebras over the same field");

  Quiver q;
  std::set<std::string> labels;
  auto add_vertex = [&](const std::string& v) {
    if (!labels.insert(v).second)
      fail(Error::Kind::Parse, "gluing label collision on '" + v + "'");
    q.vertices.push_back(v);
  };
  for (const auto& v : g.left->quiver().vertices) add_vertex(v);
  for (const auto& v : g.right->quiver().vertices) add_vertex(v);

  auto add_arrows = [&](const Algebra& a) {
    for (const auto& ar : a.quiver().arrows) {
      if (!labels.insert(ar.label).second)
        fail(Error::Kind::Parse, "gluing label collision on '" + ar.label + "'");
      q.arrows.push_back({ar.label, q.vertex_index(a.quiver().vertices[ar.src]),
                          q.vertex_index(a.quiver().vertices[ar.tgt])});
    }
  };
  add_arrows(*g.left);
  add_arrows(*g.right);

  std::set<std::string> left_vertices(g.left->quiver().vertices.begin(),
                                      g.left->quiver().vertices.end());
  std::set<std::string> right_vertices(g.right->quiver().vertices.begin(),
                                       g.right->quiver().vertices.end());
  for (const auto& c : g.connectors) {
    if (!right_vertices.count(c.right_vertex) || !left_vertices.count(c.left_vertex))
      fail(Error::Kind::CycleCreatingGluing,
           "connecting arrow '" + c.label + "' must run from a right-algebra vertex to a left-algebra vertex");
    if (!labels.insert(c.label).second)
      fail(Error::Kind::Parse, "gluing label collision on '" + c.label + "'");
    q.arrows.push_back({c.label, q.vertex_index(c.right_vertex), q.vertex_index(c.left_vertex)});
  }

  std::vector<RelationSpec> rels = g.left->relation_specs();
  rels.insert(rels.end(), g.right->relation_specs().begin(), g.right->relation_specs().end());
  rels.insert(rels.end(), g.extra_relations.begin(), g.extra_relations.end());

  AlgebraPtr glued =
      build_algebra(q, rels, g.left->field(), g.left->nilbound() + g.right->nilbound());

  // Corner sanity: the S and T parts sit inside as idempotent corners.
  std::size_t left_paths = 0, right_paths = 0;
  for (const auto& path : glued->basis()) {
    const std::string& sv = glued->quiver().vertices[path.source];
    const std::string& tv = glued->quiver().vertices[path.target];
    if (left_vertices.count(sv) && left_vertices.count(tv)) ++left_paths;
    if (right_vertices.count(sv) && right_vertices.count(tv)) ++right_paths;
    if (right_vertices.count(sv) && left_vertices.count(tv) && g.connectors.empty())
      fail(Error::Kind::InvariantViolation, "unexpected cross path in a disconnected gluing");
    if (left_vertices.count(sv) && right_vertices.count(tv))
      fail(Error::Kind::InvariantViolation, "gluing produced a path from the S part back to the T part");
  }
  if (left_paths != g.left->dim() || right_paths != g.right->dim())
    fail(Error::Kind::InvariantViolation,
         "gluing relations disturbed the corner algebras (corner dimensions changed)");
  return glued;
}

// ---------------------------------------------------------------------------
// Dynkin recognition on the underlying graph, for completeness certificates.

/// ADE classification of the underlying undirected simple graph. Returns
/// the component type list ("A3", "D4", ...) or nullopt when some component
/// is not simply-laced ADE (multi-edges and loops disqualify).
inline std::optional<std::vector<std::string>> dynkin_components(const Quiver& q) {
  const std::size_t n = q.vertices.size();
  std::vector<std::set<std::size_t>> adj(n);
  std::size_t edge_count = 0;
  for (const auto& a : q.arrows) {
    if (a.src == a.tgt) return std::nullopt;  // loop
    if (adj[a.src].count(a.tgt)) return std::nullopt;  // multi-edge
    adj[a.src].insert(a.tgt);
    adj[a.tgt].insert(a.src);
    ++edge_count;
  }
  (void)edge_count;

  std::vector<int> comp(n, -1);
  std::vector<std::string> types;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<std::size_t> stack{start}, members;
    comp[start] = static_cast<int>(types.size());
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::size_t w : adj[v])
        if (comp[w] < 0) {
          comp[w] = comp[v];
          stack.push_back(w);
        }
    }
    std::size_t edges = 0;
    for (std::size_t v : members) edges += adj[v].size();
    edges /= 2;
    if (edges + 1 != members.size()) return std::nullopt;  // not a tree
    std::vector<std::size_t> deg3;
    for (std::size_t v : members) {
      if (adj[v].size() > 3) return std::nullopt;
      if (adj[v].size() == 3) deg3.push_back(v);
    }
    if (deg3.size() > 1) return std::nullopt;
    if (deg3.empty()) {
      types.push_back("A" + std::to_string(members.size()));
      continue;
    }
    // One branch vertex: walk the three arms.
    std::size_t center = deg3.front();
    std::vector<std::size_t> arms;
    for (std::size_t nb : adj[center]) {
      std::size_t len = 1, prev = center, cur = nb;
      while (adj[cur].size() == 2) {
        std::size_t nxt = *adj[cur].begin() == prev ? *adj[cur].rbegin() : *adj[cur].begin();
        prev = cur;
        cur = nxt;
        ++len;
      }
      if (adj[cur].size() == 3) return std::nullopt;  // second branch point on the arm
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    const std::size_t a1 = arms[0], a2 = arms[1], a3 = arms[2];
    if (a1 == 1 && a2 == 1)
      types.push_back("D" + std::to_string(a3 + 3));
    else if (a1 == 1 && a2 == 2 && a3 >= 2 && a3 <= 4)
      types.push_back("E" + std::to_string(a3 + 4));
    else
      return std::nullopt;
  }
  std::sort(types.begin(), types.end());
  return types;
}

/// Tits quadratic form of the quiver on a dimension vector.
inline long long tits_form(const Quiver& q, const std::vector<int>& x) {
  long long val = 0;
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    val += static_cast<long long>(x[v]) * x[v];
  for (const auto& a : q.arrows) val -= static_cast<long long>(x[a.src]) * x[a.tgt];
  return val;
}

/// Positive roots of a Dynkin quiver: nonzero nonnegative vectors with
/// Tits form 1, enumerated inside the per-type coordinate box. Sorted by
/// (total, lexicographic).
inline std::vector<std::vector<int>> positive_roots(const Quiver& q) {
  auto types = dynkin_components(q);
  require_internal(types.has_value(), "positive_roots needs a Dynkin quiver");
  int bound = 1;
  for (const auto& t : *types) {
    if (t[0] == 'D') bound = std::max(bound, 2);
    if (t == "E6") bound = std::max(bound, 3);
    if (t == "E7") bound = std::max(bound, 4);
    if (t == "E8") bound = std::max(bound, 6);
  }
  std::vector<std::vector<int>> roots;
  std::vector<int> x(q.vertices.size(), 0);
  // Odometer over the box [0,bound]^n.
  while (true) {
    bool nonzero = false;
    for (int v : x) nonzero |= v != 0;
    if (nonzero && tits_form(q, x) == 1) roots.push_back(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == bound) x[i++] = 0;
    if (i == x.size()) break;
    ++x[i];
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    int ta = 0, tb = 0;
    for (int v : a) ta += v;
    for (int v : b) tb += v;
    if (ta != tb) return ta < tb;
    return a < b;
  });
  return roots;
}

}  // namespace relhom
