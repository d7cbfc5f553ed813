#pragma once

#include <utility>
#include <vector>

#include "relhom/rep.hpp"

namespace relhom {

/// Projective presentation 0 -> K -> P0 -> M -> 0 built from the minimal
/// cover. The zero module gets the all-zero presentation.
struct Presentation {
  RepPtr module;
  RepPtr p0;
  ModuleMorphism cover;  // P0 ->> M
  RepPtr k;
  ModuleMorphism incl;   // K -> P0
};

inline Presentation present(const RepPtr& m) {
  if (m->is_zero()) {
    RepPtr z = zero_rep(m->algebra());
    return {m, z, zero_morphism(z, m), z, zero_morphism(z, z)};
  }
  CoverResult cover = top_and_cover(m);
  SubRep k = kernel_rep(cover.map);
  return {m, cover.cover, cover.map, k.rep, k.inclusion};
}

/// Ext^1(C, A) realized as coker(Hom(P0, A) -> Hom(K, A)) for a fixed
/// presentation of C. Basis representatives are unit columns in the
/// Hom(K, A) coordinate system.
struct Ext1Space {
  const Presentation* pres = nullptr;  // presentation of C (borrowed)
  RepPtr a;
  HomSpace hom_k_a;
  HomSpace hom_p0_a;
  Matrix restrict_mat;  // image of the pre-composition Hom(P0,A) -> Hom(K,A)
  Matrix image_cols;
  Matrix rep_cols;

  std::size_t dim() const { return rep_cols.cols(); }

  /// Hom(K, A) element representing the class with the given coordinates.
  ModuleMorphism class_rep(const Matrix& coords, std::size_t col = 0) const {
    Matrix kc = rep_cols * coords.column(col);
    return hom_k_a.from_coords(kc);
  }

  /// Coordinates of the class of psi: K -> A in the chosen basis.
  Matrix class_of(const ModuleMorphism& psi) const {
    Matrix c = hom_k_a.coords(psi);
    if (dim() == 0) return Matrix(c.mod(), 0, 1);
    Matrix frame = image_cols.hstack(rep_cols);
    auto x = solve(frame, c);
    require_internal(x.has_value(), "extension class outside its Ext space");
    Matrix out(c.mod(), dim(), 1);
    for (std::size_t i = 0; i < dim(); ++i) out.at(i, 0) = x->at(image_cols.cols() + i, 0);
    return out;
  }
};

inline Ext1Space ext1_space(const Presentation& pres, const RepPtr& a) {
  Ext1Space e;
  e.pres = &pres;
  e.a = a;
  e.hom_k_a = hom_space(pres.k, a);
  e.hom_p0_a = hom_space(pres.p0, a);
  e.restrict_mat = pre_compose_matrix(e.hom_p0_a, e.hom_k_a, pres.incl);
  e.image_cols = image_basis(e.restrict_mat);
  e.rep_cols = complement_columns(e.image_cols, e.hom_k_a.dim());
  return e;
}

inline std::size_t ext1_dim(const RepPtr& c, const RepPtr& a) {
  Presentation pres = present(c);
  return ext1_space(pres, a).dim();
}

/// Middle term of the extension of Q = sum of parts by S determined by
/// syzygy maps psi_i: K_i -> S, via the pushout (P + S)/graph.
struct RealizedExtension {
  ShortSequence seq;  // 0 -> S -> B -> Q -> 0
};

inline RealizedExtension realize_extension(const AlgebraPtr& algebra,
                                           const std::vector<Presentation>& parts,
                                           const RepPtr& s,
                                           const std::vector<ModuleMorphism>& psis) {
  require_internal(parts.size() == psis.size(), "one syzygy map per summand required");
  std::vector<RepPtr> qs, ps, ks;
  for (const auto& part : parts) {
    qs.push_back(part.module);
    ps.push_back(part.p0);
    ks.push_back(part.k);
  }
  DirectSum q = direct_sum(algebra, qs);
  DirectSum p = direct_sum(algebra, ps);
  DirectSum k = direct_sum(algebra, ks);

  ModuleMorphism cover_q = zero_morphism(p.rep, q.rep);
  ModuleMorphism incl_k = zero_morphism(k.rep, p.rep);
  ModuleMorphism psi = zero_morphism(k.rep, s);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    cover_q = cover_q + compose(q.inclusions[i], compose(parts[i].cover, p.projections[i]));
    incl_k = incl_k + compose(p.inclusions[i], compose(parts[i].incl, k.projections[i]));
    psi = psi + compose(psis[i], k.projections[i]);
  }

  DirectSum ps_sum = direct_sum(algebra, {p.rep, s});
  // j(k) = (incl k, -psi k); B = coker j.
  ModuleMorphism j = compose(ps_sum.inclusions[0], incl_k) +
                     compose(ps_sum.inclusions[1], psi).scaled(algebra->p() - 1);
  QuotRep b = cokernel_rep(j);

  ModuleMorphism inj = compose(b.projection, ps_sum.inclusions[1]);
  require_internal(inj.is_injective(), "extension pushout failed to embed the fibre");

  // The map B -> Q induced by (cover, 0): solve beta . pi = [cover_q, 0].
  ModuleMorphism gamma = compose(cover_q, ps_sum.projections[0]);
  std::vector<Matrix> surj_maps;
  for (std::size_t v = 0; v < q.rep->dims().size(); ++v) {
    Matrix pt = b.projection.vertex_map(v).transpose();
    Matrix gt = gamma.vertex_map(v).transpose();
    auto x = solve(pt, gt);
    require_internal(x.has_value(), "extension quotient map not defined on the cokernel");
    surj_maps.push_back(x->transpose());
  }
  ModuleMorphism surj(b.rep, q.rep, surj_maps);
  surj.validate();

  RealizedExtension out{{inj, surj}};
  out.seq.validate();
  return out;
}

/// Class of a validated short exact sequence 0 -> A -> B -> C -> 0 in the
/// Ext space for (C, A): lift the cover of C through B and read off the
/// induced syzygy map.
inline Matrix sequence_class(const Ext1Space& e, const ShortSequence& seq) {
  const Presentation& pres = *e.pres;
  HomSpace hs_p0_b = hom_space(pres.p0, seq.mid());
  HomSpace hs_p0_c = hom_space(pres.p0, seq.quot());
  Matrix post = post_compose_matrix(hs_p0_b, hs_p0_c, seq.surj);
  auto lam_coords = solve(post, hs_p0_c.coords(pres.cover));
  require_internal(lam_coords.has_value(), "projective lift through the sequence failed");
  ModuleMorphism lam = hs_p0_b.from_coords(*lam_coords);
  ModuleMorphism lam_k = compose(lam, pres.incl);
  // lam_k lands inside the image of inj; pull back through it.
  std::vector<Matrix> psi_maps;
  for (std::size_t v = 0; v < pres.k->dims().size(); ++v) {
    auto x = solve(seq.inj.vertex_map(v), lam_k.vertex_map(v));
    require_internal(x.has_value(), "syzygy image escapes the sequence fibre");
    psi_maps.push_back(*x);
  }
  ModuleMorphism psi(pres.k, e.a, psi_maps);
  psi.validate();
  return e.class_of(psi);
}

/// The A-independent part of pulling back extensions along f: T -> C:
/// lift f through the covers and restrict to syzygies.
inline ModuleMorphism syzygy_lift(const Presentation& pres_t, const Presentation& pres_c,
                                  const ModuleMorphism& f) {
  HomSpace hs_q_p = hom_space(pres_t.p0, pres_c.p0);
  HomSpace hs_q_c = hom_space(pres_t.p0, pres_c.module);
  Matrix post = post_compose_matrix(hs_q_p, hs_q_c, pres_c.cover);
  auto lift_coords = solve(post, hs_q_c.coords(compose(f, pres_t.cover)));
  require_internal(lift_coords.has_value(), "cover lift failed (target cover not surjective?)");
  ModuleMorphism fhat = hs_q_p.from_coords(*lift_coords);
  ModuleMorphism fk = compose(fhat, pres_t.incl);
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < pres_t.k->dims().size(); ++v) {
    auto x = solve(pres_c.incl.vertex_map(v), fk.vertex_map(v));
    require_internal(x.has_value(), "syzygy lift escapes the target syzygy");
    maps.push_back(*x);
  }
  ModuleMorphism out(pres_t.k, pres_c.k, maps);
  out.validate();
  return out;
}

/// Matrix of the pullback Ext^1(C, A) -> Ext^1(T, A) along f: T -> C, in
/// the chosen bases, given the syzygy lift of f.
inline Matrix ext1_pullback(const Ext1Space& ec, const Ext1Space& et,
                            const ModuleMorphism& syz_lift_f) {
  Matrix out(ec.rep_cols.mod(), et.dim(), ec.dim());
  for (std::size_t j = 0; j < ec.dim(); ++j) {
    Matrix unit(out.mod(), ec.dim(), 1);
    unit.at(j, 0) = 1;
    ModuleMorphism psi = ec.class_rep(unit);
    Matrix cls = et.class_of(compose(psi, syz_lift_f));
    for (std::size_t i = 0; i < et.dim(); ++i) out.at(i, j) = cls.at(i, 0);
  }
  return out;
}

}  // namespace relhom
