#pragma once

#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relhom/quiver.hpp"

namespace relhom {

class Representation;
using RepPtr = std::shared_ptr<const Representation>;

/// A finite-dimensional left module presented as a quiver representation:
/// one space per vertex, one matrix per arrow (target dim x source dim).
class Representation {
 public:
  Representation(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Matrix> arrow_maps)
      : algebra_(std::move(algebra)), dims_(std::move(dims)), arrow_maps_(std::move(arrow_maps)) {}

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_[v]; }
  const Matrix& arrow_map(std::size_t a) const { return arrow_maps_[a]; }
  std::uint32_t p() const { return algebra_->p(); }

  std::size_t total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }
  bool is_zero() const { return total_dim() == 0; }

  /// Action of a composable arrow sequence (diagram order): the first
  /// arrow acts first, so the matrix is the reversed product.
  Matrix path_action(const std::vector<std::size_t>& arrows, std::size_t source_vertex) const {
    Matrix act = Matrix::identity(p(), dims_[source_vertex]);
    for (std::size_t a : arrows) act = arrow_maps_[a] * act;
    return act;
  }

  /// Checks shapes and that every algebra relation evaluates to zero.
  void validate() const {
    require_internal(dims_.size() == algebra_->num_vertices(), "dim vector length mismatch");
    require_internal(arrow_maps_.size() == algebra_->quiver().arrows.size(), "arrow map count mismatch");
    for (std::size_t a = 0; a < arrow_maps_.size(); ++a) {
      const Arrow& ar = algebra_->quiver().arrows[a];
      if (arrow_maps_[a].rows() != dims_[ar.tgt] || arrow_maps_[a].cols() != dims_[ar.src] ||
          arrow_maps_[a].mod() != p())
        fail(Error::Kind::InvariantViolation, "arrow map '" + ar.label + "' has wrong shape or field");
    }
    for (const auto& rel : algebra_->relations()) {
      Matrix acc(p(), dims_[rel.target], dims_[rel.source]);
      for (const auto& term : rel.terms)
        acc = acc + path_action(term.arrows, rel.source).scaled(term.coeff);
      if (!acc.is_zero())
        fail(Error::Kind::InvariantViolation, "module does not satisfy an algebra relation");
    }
  }

  bool operator==(const Representation& o) const {
    return same_algebra(*algebra_, *o.algebra_) && dims_ == o.dims_ && arrow_maps_ == o.arrow_maps_;
  }

  std::string dim_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t v = 0; v < dims_.size(); ++v) {
      os << dims_[v];
      if (v + 1 < dims_.size()) os << ",";
    }
    os << ")";
    return os.str();
  }

 private:
  AlgebraPtr algebra_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> arrow_maps_;
};

inline RepPtr make_rep(AlgebraPtr algebra, std::vector<std::size_t> dims,
                       std::vector<Matrix> arrow_maps) {
  auto rep = std::make_shared<Representation>(std::move(algebra), std::move(dims),
                                              std::move(arrow_maps));
  rep->validate();
  return rep;
}

inline RepPtr zero_rep(const AlgebraPtr& algebra) {
  std::vector<std::size_t> dims(algebra->num_vertices(), 0);
  std::vector<Matrix> maps;
  for (const auto& a : algebra->quiver().arrows)
    maps.emplace_back(algebra->p(), dims[a.tgt], dims[a.src]);
  return make_rep(algebra, dims, maps);
}

/// Simple module S(v): one-dimensional at v, all arrows act by zero.
inline RepPtr simple_rep(const AlgebraPtr& algebra, std::size_t v) {
  std::vector<std::size_t> dims(algebra->num_vertices(), 0);
  dims[v] = 1;
  std::vector<Matrix> maps;
  for (const auto& a : algebra->quiver().arrows)
    maps.emplace_back(algebra->p(), dims[a.tgt], dims[a.src]);
  return make_rep(algebra, dims, maps);
}

/// Indecomposable projective P(v): basis paths starting at v, arrows act
/// by right path composition in the algebra.
inline RepPtr projective_rep(const AlgebraPtr& algebra, std::size_t v) {
  const std::uint32_t p = algebra->p();
  std::vector<std::vector<std::size_t>> fibre(algebra->num_vertices());
  for (std::size_t w = 0; w < algebra->num_vertices(); ++w)
    fibre[w] = algebra->basis_from_to(v, w);
  std::vector<std::size_t> dims(algebra->num_vertices());
  for (std::size_t w = 0; w < dims.size(); ++w) dims[w] = fibre[w].size();
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < algebra->quiver().arrows.size(); ++a) {
    const Arrow& ar = algebra->quiver().arrows[a];
    Matrix m(p, dims[ar.tgt], dims[ar.src]);
    const Matrix& rm = algebra->right_mult(a);
    for (std::size_t c = 0; c < fibre[ar.src].size(); ++c)
      for (std::size_t r = 0; r < fibre[ar.tgt].size(); ++r)
        m.at(r, c) = rm.at(fibre[ar.tgt][r], fibre[ar.src][c]);
    maps.push_back(std::move(m));
  }
  return make_rep(algebra, dims, maps);
}

/// Dual module over the opposite algebra: same dimension vector, arrow
/// maps transposed along the reversed arrows.
inline RepPtr dual_rep(const RepPtr& m) {
  AlgebraPtr opp = m->algebra()->opposite();
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < m->algebra()->quiver().arrows.size(); ++a)
    maps.push_back(m->arrow_map(a).transpose());
  return make_rep(opp, m->dims(), maps);
}

/// Injective envelope building block I(v) = D(P_op(v)).
inline RepPtr injective_rep(const AlgebraPtr& algebra, std::size_t v) {
  return dual_rep(projective_rep(algebra->opposite(), v));
}

// ---------------------------------------------------------------------------

class ModuleMorphism {
 public:
  ModuleMorphism(RepPtr source, RepPtr target, std::vector<Matrix> vertex_maps)
      : source_(std::move(source)), target_(std::move(target)), maps_(std::move(vertex_maps)) {}

  const RepPtr& source() const { return source_; }
  const RepPtr& target() const { return target_; }
  const Matrix& vertex_map(std::size_t v) const { return maps_[v]; }
  std::uint32_t p() const { return source_->p(); }

  void validate() const {
    if (!same_algebra(*source_->algebra(), *target_->algebra()))
      fail(Error::Kind::AlgebraMismatch, "morphism endpoints live over different algebras");
    require_internal(maps_.size() == source_->dims().size(), "vertex map count mismatch");
    for (std::size_t v = 0; v < maps_.size(); ++v)
      require_internal(maps_[v].rows() == target_->dim(v) && maps_[v].cols() == source_->dim(v) &&
                           maps_[v].mod() == p(),
                       "vertex map shape mismatch");
    const Quiver& q = source_->algebra()->quiver();
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      const Arrow& ar = q.arrows[a];
      Matrix lhs = target_->arrow_map(a) * maps_[ar.src];
      Matrix rhs = maps_[ar.tgt] * source_->arrow_map(a);
      if (!(lhs == rhs))
        fail(Error::Kind::InvariantViolation,
             "vertex maps do not commute with arrow '" + ar.label + "'");
    }
  }

  bool is_zero() const {
    for (const auto& m : maps_)
      if (!m.is_zero()) return false;
    return true;
  }

  bool is_injective() const {
    for (std::size_t v = 0; v < maps_.size(); ++v)
      if (rank(maps_[v]) != source_->dim(v)) return false;
    return true;
  }

  bool is_surjective() const {
    for (std::size_t v = 0; v < maps_.size(); ++v)
      if (rank(maps_[v]) != target_->dim(v)) return false;
    return true;
  }

  bool is_iso() const {
    for (std::size_t v = 0; v < maps_.size(); ++v) {
      if (source_->dim(v) != target_->dim(v)) return false;
      if (rank(maps_[v]) != source_->dim(v)) return false;
    }
    return true;
  }

  ModuleMorphism operator+(const ModuleMorphism& o) const {
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < maps_.size(); ++v) maps.push_back(maps_[v] + o.maps_[v]);
    return ModuleMorphism(source_, target_, std::move(maps));
  }

  ModuleMorphism scaled(fel c) const {
    std::vector<Matrix> maps;
    for (const auto& m : maps_) maps.push_back(m.scaled(c));
    return ModuleMorphism(source_, target_, std::move(maps));
  }

 private:
  RepPtr source_;
  RepPtr target_;
  std::vector<Matrix> maps_;
};

inline ModuleMorphism identity_morphism(const RepPtr& m) {
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < m->dims().size(); ++v)
    maps.push_back(Matrix::identity(m->p(), m->dim(v)));
  return ModuleMorphism(m, m, std::move(maps));
}

inline ModuleMorphism zero_morphism(const RepPtr& src, const RepPtr& tgt) {
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < src->dims().size(); ++v)
    maps.emplace_back(src->p(), tgt->dim(v), src->dim(v));
  return ModuleMorphism(src, tgt, std::move(maps));
}

/// g after f.
inline ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  require_internal(*f.target() == *g.source(), "composition endpoint mismatch");
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < f.source()->dims().size(); ++v)
    maps.push_back(g.vertex_map(v) * f.vertex_map(v));
  return ModuleMorphism(f.source(), g.target(), std::move(maps));
}

// ---------------------------------------------------------------------------
// Hom spaces as explicit solution spaces of the commuting conditions.

namespace detail {

inline std::vector<std::size_t> hom_offsets(const Representation& m, const Representation& n) {
  std::vector<std::size_t> off(m.dims().size() + 1, 0);
  for (std::size_t v = 0; v < m.dims().size(); ++v)
    off[v + 1] = off[v] + n.dim(v) * m.dim(v);
  return off;
}

}  // namespace detail

inline Matrix morphism_to_flat(const ModuleMorphism& f) {
  auto off = detail::hom_offsets(*f.source(), *f.target());
  Matrix flat(f.p(), off.back(), 1);
  for (std::size_t v = 0; v < f.source()->dims().size(); ++v) {
    const Matrix& m = f.vertex_map(v);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        flat.at(off[v] + r * m.cols() + c, 0) = m.at(r, c);
  }
  return flat;
}

inline ModuleMorphism morphism_from_flat(const RepPtr& src, const RepPtr& tgt, const Matrix& flat,
                                         std::size_t col) {
  auto off = detail::hom_offsets(*src, *tgt);
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < src->dims().size(); ++v) {
    Matrix m(src->p(), tgt->dim(v), src->dim(v));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = flat.at(off[v] + r * m.cols() + c, col);
    maps.push_back(std::move(m));
  }
  return ModuleMorphism(src, tgt, std::move(maps));
}

/// A basis of Hom(M, N), with flat coordinates for downstream linear
/// algebra on induced maps.
struct HomSpace {
  RepPtr source;
  RepPtr target;
  std::vector<ModuleMorphism> basis;
  Matrix flat;  // columns are flattened basis morphisms

  std::size_t dim() const { return basis.size(); }

  Matrix coords(const ModuleMorphism& f) const {
    auto x = solve(flat, morphism_to_flat(f));
    require_internal(x.has_value(), "morphism does not lie in its Hom space");
    return *x;
  }

  ModuleMorphism from_coords(const Matrix& coeffs, std::size_t col = 0) const {
    ModuleMorphism f = zero_morphism(source, target);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      fel c = coeffs.at(i, col);
      if (c) f = f + basis[i].scaled(c);
    }
    return f;
  }
};

inline HomSpace hom_space(const RepPtr& m, const RepPtr& n) {
  if (!same_algebra(*m->algebra(), *n->algebra()))
    fail(Error::Kind::AlgebraMismatch, "Hom requires modules over the same algebra");
  const std::uint32_t p = m->p();
  auto off = detail::hom_offsets(*m, *n);
  const std::size_t unknowns = off.back();
  const Quiver& q = m->algebra()->quiver();

  std::size_t eq_count = 0;
  for (const auto& a : q.arrows) eq_count += n->dim(a.tgt) * m->dim(a.src);
  Matrix c(p, eq_count, unknowns);
  std::size_t row = 0;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    const Matrix& na = n->arrow_map(a);
    const Matrix& ma = m->arrow_map(a);
    // N_a phi_src - phi_tgt M_a = 0, entrywise.
    for (std::size_t r = 0; r < n->dim(ar.tgt); ++r) {
      for (std::size_t s = 0; s < m->dim(ar.src); ++s) {
        for (std::size_t k = 0; k < n->dim(ar.src); ++k)
          c.at(row, off[ar.src] + k * m->dim(ar.src) + s) = na.at(r, k);
        for (std::size_t k = 0; k < m->dim(ar.tgt); ++k) {
          std::size_t idx = off[ar.tgt] + r * m->dim(ar.tgt) + k;
          c.at(row, idx) = fsub(c.at(row, idx), ma.at(k, s), p);
        }
        ++row;
      }
    }
  }

  HomSpace hs;
  hs.source = m;
  hs.target = n;
  Matrix kb = kernel_basis(c);
  hs.flat = kb;
  for (std::size_t j = 0; j < kb.cols(); ++j) {
    ModuleMorphism f = morphism_from_flat(m, n, kb, j);
    f.validate();
    hs.basis.push_back(std::move(f));
  }
  return hs;
}

inline std::size_t hom_dim(const RepPtr& m, const RepPtr& n) { return hom_space(m, n).dim(); }

/// Matrix of "compose with g on the left": Hom(T,B) -> Hom(T,C) in the
/// given bases, for g: B -> C.
inline Matrix post_compose_matrix(const HomSpace& hom_tb, const HomSpace& hom_tc,
                                  const ModuleMorphism& g) {
  Matrix out(g.p(), hom_tc.dim(), hom_tb.dim());
  for (std::size_t j = 0; j < hom_tb.dim(); ++j) {
    Matrix col = hom_tc.coords(compose(g, hom_tb.basis[j]));
    for (std::size_t i = 0; i < hom_tc.dim(); ++i) out.at(i, j) = col.at(i, 0);
  }
  return out;
}

/// Matrix of "compose with f on the right": Hom(B,T) -> Hom(A,T), for
/// f: A -> B.
inline Matrix pre_compose_matrix(const HomSpace& hom_bt, const HomSpace& hom_at,
                                 const ModuleMorphism& f) {
  Matrix out(f.p(), hom_at.dim(), hom_bt.dim());
  for (std::size_t j = 0; j < hom_bt.dim(); ++j) {
    Matrix col = hom_at.coords(compose(hom_bt.basis[j], f));
    for (std::size_t i = 0; i < hom_at.dim(); ++i) out.at(i, j) = col.at(i, 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sub- and quotient representations.

struct SubRep {
  RepPtr rep;
  ModuleMorphism inclusion;
};

struct QuotRep {
  RepPtr rep;
  ModuleMorphism projection;
};

/// Subrepresentation spanned by the given per-vertex column spaces. The
/// spans must be arrow-stable; violations raise InternalInconsistency.
inline SubRep sub_rep_from_basis(const RepPtr& m, const std::vector<Matrix>& vertex_bases) {
  std::vector<std::size_t> dims(m->dims().size());
  for (std::size_t v = 0; v < dims.size(); ++v) {
    require_internal(rank(vertex_bases[v]) == vertex_bases[v].cols(), "subspace basis is dependent");
    dims[v] = vertex_bases[v].cols();
  }
  const Quiver& q = m->algebra()->quiver();
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    Matrix pushed = m->arrow_map(a) * vertex_bases[ar.src];
    auto x = solve(vertex_bases[ar.tgt], pushed);
    require_internal(x.has_value(), "subspace is not arrow-stable");
    maps.push_back(*x);
  }
  RepPtr sub = make_rep(m->algebra(), dims, maps);
  ModuleMorphism incl(sub, m, vertex_bases);
  incl.validate();
  return {sub, incl};
}

/// Extends the span of `chosen` to a full basis by standard vectors, in
/// index order. Returns the complement columns.
inline Matrix complement_columns(const Matrix& chosen, std::size_t ambient) {
  const std::uint32_t p = chosen.mod();
  Matrix acc = chosen;
  Matrix comp(p, ambient, 0);
  for (std::size_t e = 0; e < ambient; ++e) {
    Matrix unit(p, ambient, 1);
    unit.at(e, 0) = 1;
    if (!in_column_span(acc, unit)) {
      acc = acc.hstack(unit);
      comp = comp.hstack(unit);
    }
  }
  return comp;
}

/// Quotient of m by the column span of the given per-vertex matrices.
inline QuotRep quotient_by_subspace(const RepPtr& m, const std::vector<Matrix>& spans) {
  const std::uint32_t p = m->p();
  const Quiver& q = m->algebra()->quiver();
  std::vector<Matrix> bases, comps, projs;
  for (std::size_t v = 0; v < m->dims().size(); ++v) {
    Matrix b = image_basis(spans[v]);
    Matrix e = complement_columns(b, m->dim(v));
    Matrix full = b.hstack(e);
    // Coordinates in the [basis | complement] frame; quotient coordinates
    // are the complement block.
    auto coords = solve(full, Matrix::identity(p, m->dim(v)));
    require_internal(coords.has_value(), "basis extension failed");
    Matrix proj(p, e.cols(), m->dim(v));
    for (std::size_t r = 0; r < e.cols(); ++r)
      for (std::size_t c = 0; c < m->dim(v); ++c) proj.at(r, c) = coords->at(b.cols() + r, c);
    bases.push_back(std::move(b));
    comps.push_back(std::move(e));
    projs.push_back(std::move(proj));
  }
  std::vector<std::size_t> dims(m->dims().size());
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = comps[v].cols();
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    maps.push_back(projs[ar.tgt] * (m->arrow_map(a) * comps[ar.src]));
  }
  RepPtr quot = make_rep(m->algebra(), dims, maps);
  ModuleMorphism proj(m, quot, projs);
  proj.validate();
  return {quot, proj};
}

inline SubRep kernel_rep(const ModuleMorphism& f) {
  std::vector<Matrix> bases;
  for (std::size_t v = 0; v < f.source()->dims().size(); ++v)
    bases.push_back(kernel_basis(f.vertex_map(v)));
  return sub_rep_from_basis(f.source(), bases);
}

inline SubRep image_rep(const ModuleMorphism& f) {
  std::vector<Matrix> bases;
  for (std::size_t v = 0; v < f.target()->dims().size(); ++v)
    bases.push_back(image_basis(f.vertex_map(v)));
  return sub_rep_from_basis(f.target(), bases);
}

inline QuotRep cokernel_rep(const ModuleMorphism& f) {
  std::vector<Matrix> spans;
  for (std::size_t v = 0; v < f.target()->dims().size(); ++v) spans.push_back(f.vertex_map(v));
  return quotient_by_subspace(f.target(), spans);
}

// ---------------------------------------------------------------------------

struct DirectSum {
  RepPtr rep;
  std::vector<ModuleMorphism> inclusions;
  std::vector<ModuleMorphism> projections;
};

inline DirectSum direct_sum(const AlgebraPtr& algebra, const std::vector<RepPtr>& parts) {
  const std::uint32_t p = algebra->p();
  std::vector<std::size_t> dims(algebra->num_vertices(), 0);
  std::vector<std::vector<std::size_t>> offsets(parts.size(),
                                                std::vector<std::size_t>(algebra->num_vertices()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    require_internal(same_algebra(*parts[i]->algebra(), *algebra), "direct sum across algebras");
    for (std::size_t v = 0; v < dims.size(); ++v) {
      offsets[i][v] = dims[v];
      dims[v] += parts[i]->dim(v);
    }
  }
  const Quiver& q = algebra->quiver();
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    Matrix m(p, dims[ar.tgt], dims[ar.src]);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Matrix& pm = parts[i]->arrow_map(a);
      for (std::size_t r = 0; r < pm.rows(); ++r)
        for (std::size_t c = 0; c < pm.cols(); ++c)
          m.at(offsets[i][ar.tgt] + r, offsets[i][ar.src] + c) = pm.at(r, c);
    }
    maps.push_back(std::move(m));
  }
  DirectSum out;
  out.rep = make_rep(algebra, dims, maps);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<Matrix> incl, proj;
    for (std::size_t v = 0; v < dims.size(); ++v) {
      Matrix mi(p, dims[v], parts[i]->dim(v));
      Matrix mp(p, parts[i]->dim(v), dims[v]);
      for (std::size_t k = 0; k < parts[i]->dim(v); ++k) {
        mi.at(offsets[i][v] + k, k) = 1;
        mp.at(k, offsets[i][v] + k) = 1;
      }
      incl.push_back(std::move(mi));
      proj.push_back(std::move(mp));
    }
    out.inclusions.emplace_back(parts[i], out.rep, std::move(incl));
    out.projections.emplace_back(out.rep, parts[i], std::move(proj));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Radical, top and projective cover.

/// Per-vertex basis of rad M = (arrow ideal) . M.
inline std::vector<Matrix> radical_subspace(const RepPtr& m) {
  const Quiver& q = m->algebra()->quiver();
  std::vector<Matrix> spans;
  for (std::size_t v = 0; v < m->dims().size(); ++v) {
    Matrix acc(m->p(), m->dim(v), 0);
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].tgt == v) acc = acc.hstack(m->arrow_map(a));
    spans.push_back(image_basis(acc));
  }
  return spans;
}

struct CoverResult {
  RepPtr cover;                                       // P = sum P(v)^{m_v}
  ModuleMorphism map;                                 // P -> M, surjective, kernel in rad P
  std::vector<std::pair<std::size_t, std::size_t>> summands;  // (vertex, multiplicity)
  std::vector<std::size_t> top_dims;
};

/// Projective cover via the top: one P(v) copy per generator of M/rad M.
inline CoverResult top_and_cover(const RepPtr& m) {
  if (m->is_zero()) fail(Error::Kind::ZeroModule, "zero module has no projective cover");
  const std::uint32_t p = m->p();
  const AlgebraPtr& alg = m->algebra();
  std::vector<Matrix> rad = radical_subspace(m);

  std::vector<Matrix> generators;  // complement columns at each vertex
  std::vector<std::size_t> top_dims;
  for (std::size_t v = 0; v < m->dims().size(); ++v) {
    Matrix e = complement_columns(rad[v], m->dim(v));
    generators.push_back(e);
    top_dims.push_back(e.cols());
  }

  std::vector<RepPtr> parts;
  std::vector<std::pair<std::size_t, std::size_t>> summands;
  std::vector<std::pair<std::size_t, std::size_t>> gen_of_part;  // (vertex, generator col)
  for (std::size_t v = 0; v < top_dims.size(); ++v) {
    if (top_dims[v] == 0) continue;
    summands.push_back({v, top_dims[v]});
    for (std::size_t c = 0; c < top_dims[v]; ++c) {
      parts.push_back(projective_rep(alg, v));
      gen_of_part.push_back({v, c});
    }
  }

  DirectSum ds = parts.empty() ? DirectSum{zero_rep(alg), {}, {}} : direct_sum(alg, parts);
  // Cover map: on the P(v) copy with generator g, a basis path q: v -> w
  // goes to (action of q on M)(g).
  std::vector<Matrix> cover_maps;
  for (std::size_t w = 0; w < m->dims().size(); ++w)
    cover_maps.emplace_back(p, m->dim(w), ds.rep->dim(w));
  for (std::size_t part = 0; part < parts.size(); ++part) {
    auto [v, gcol] = gen_of_part[part];
    Matrix g = generators[v].column(gcol);
    for (std::size_t w = 0; w < m->dims().size(); ++w) {
      auto fibre = alg->basis_from_to(v, w);
      const Matrix& incl = ds.inclusions[part].vertex_map(w);
      for (std::size_t k = 0; k < fibre.size(); ++k) {
        const Path& path = alg->basis()[fibre[k]];
        Matrix val = m->path_action(path.arrows, v) * g;
        // The inclusion columns are unit vectors; locate the global index.
        std::size_t global = 0;
        bool found = false;
        for (std::size_t r2 = 0; r2 < incl.rows(); ++r2)
          if (incl.at(r2, k)) {
            global = r2;
            found = true;
            break;
          }
        require_internal(found, "direct sum inclusion column missing");
        for (std::size_t r = 0; r < m->dim(w); ++r) cover_maps[w].at(r, global) = val.at(r, 0);
      }
    }
  }
  ModuleMorphism cover(ds.rep, m, cover_maps);
  cover.validate();
  require_internal(cover.is_surjective(), "projective cover failed to be surjective");
  // Minimality: source and target have the same top.
  {
    std::vector<Matrix> rad_p = radical_subspace(ds.rep);
    for (std::size_t v = 0; v < top_dims.size(); ++v)
      require_internal(ds.rep->dim(v) - rank(rad_p[v]) == top_dims[v],
                       "projective cover is not minimal");
  }
  return {ds.rep, cover, summands, top_dims};
}

// ---------------------------------------------------------------------------

/// A composable pair A -> B -> C claimed to be a short exact sequence.
struct ShortSequence {
  ModuleMorphism inj;   // A -> B
  ModuleMorphism surj;  // B -> C

  const RepPtr& sub() const { return inj.source(); }
  const RepPtr& mid() const { return inj.target(); }
  const RepPtr& quot() const { return surj.target(); }

  void validate() const {
    inj.validate();
    surj.validate();
    if (!(*inj.target() == *surj.source()))
      fail(Error::Kind::NotExact, "sequence maps do not compose");
    if (!inj.is_injective()) fail(Error::Kind::NotExact, "first map is not injective");
    if (!surj.is_surjective()) fail(Error::Kind::NotExact, "second map is not surjective");
    if (!compose(surj, inj).is_zero()) fail(Error::Kind::NotExact, "composite is nonzero");
    for (std::size_t v = 0; v < sub()->dims().size(); ++v)
      if (sub()->dim(v) + quot()->dim(v) != mid()->dim(v))
        fail(Error::Kind::NotExact, "dimension count rules out exactness at the middle");
  }
};

}  // namespace relhom
