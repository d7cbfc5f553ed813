#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relhom/relative.hpp"

namespace relhom {

/// Extended integer for inf/sup values of complexes.
struct ExtInt {
  enum class Kind { NegInf, Fin, PosInf };
  Kind kind = Kind::Fin;
  long long v = 0;

  static ExtInt neg_inf() { return {Kind::NegInf, 0}; }
  static ExtInt pos_inf() { return {Kind::PosInf, 0}; }
  static ExtInt fin(long long x) { return {Kind::Fin, x}; }

  bool operator==(const ExtInt& o) const {
    return kind == o.kind && (kind != Kind::Fin || v == o.v);
  }

  std::string token() const {
    switch (kind) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      case Kind::Fin: return std::to_string(v);
    }
    return "?";
  }
};

/// Cochain complex of representations with explicit bounded support
/// [lo, hi]; differentials d^i: X^i -> X^{i+1}.
class BoundedComplex {
 public:
  BoundedComplex(AlgebraPtr algebra, int lo, std::vector<RepPtr> terms,
                 std::vector<ModuleMorphism> diffs)
      : algebra_(std::move(algebra)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {}

  static BoundedComplex zero(const AlgebraPtr& algebra) { return {algebra, 0, {}, {}}; }

  static BoundedComplex stalk(const RepPtr& m, int degree) {
    return {m->algebra(), degree, {m}, {}};
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  bool is_zero_complex() const { return terms_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }

  RepPtr term(int i) const {
    if (i < lo() || i > hi()) return zero_rep(algebra_);
    return terms_[static_cast<std::size_t>(i - lo())];
  }

  ModuleMorphism diff(int i) const {
    if (i >= lo() && i < hi()) return diffs_[static_cast<std::size_t>(i - lo())];
    return zero_morphism(term(i), term(i + 1));
  }

  void validate() const {
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
      diffs_[k].validate();
      require_internal(*diffs_[k].source() == *terms_[k] && *diffs_[k].target() == *terms_[k + 1],
                       "differential endpoints disagree with the terms");
    }
    for (int i = lo(); i + 1 < hi(); ++i)
      if (!compose(diff(i + 1), diff(i)).is_zero())
        fail(Error::Kind::InvariantViolation,
             "d^2 is nonzero at degree " + std::to_string(i));
  }

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& t : terms_) s += t->total_dim();
    return s;
  }

  /// Shift: (X[k])^i = X^{i+k} with differential scaled by (-1)^k.
  BoundedComplex shift(int k) const {
    if (is_zero_complex()) return *this;
    std::vector<ModuleMorphism> d;
    for (const auto& dm : diffs_) d.push_back((k % 2 == 0) ? dm : dm.scaled(algebra_->p() - 1));
    return {algebra_, lo_ - k, terms_, std::move(d)};
  }

  /// Brutal truncation keeping degrees >= k.
  BoundedComplex truncate_above(int k) const {
    if (is_zero_complex() || k <= lo()) return *this;
    if (k > hi()) return zero(algebra_);
    std::vector<RepPtr> terms(terms_.begin() + (k - lo()), terms_.end());
    std::vector<ModuleMorphism> diffs(diffs_.begin() + (k - lo()), diffs_.end());
    return {algebra_, k, std::move(terms), std::move(diffs)};
  }

 private:
  AlgebraPtr algebra_;
  int lo_;
  std::vector<RepPtr> terms_;
  std::vector<ModuleMorphism> diffs_;
};

struct ChainMap {
  const BoundedComplex* source = nullptr;  // borrowed views
  const BoundedComplex* target = nullptr;
  std::map<int, ModuleMorphism> comps;

  ModuleMorphism comp(int i) const {
    auto it = comps.find(i);
    if (it != comps.end()) return it->second;
    return zero_morphism(source->term(i), target->term(i));
  }

  void validate() const {
    for (const auto& [i, f] : comps) {
      f.validate();
      require_internal(*f.source() == *source->term(i) && *f.target() == *target->term(i),
                       "chain map component endpoints mismatch");
    }
    int lo = std::min(source->lo(), target->lo()) - 1;
    int hi = std::max(source->hi(), target->hi());
    for (int i = lo; i <= hi; ++i) {
      ModuleMorphism lhs = compose(target->diff(i), comp(i));
      ModuleMorphism rhs = compose(comp(i + 1), source->diff(i));
      for (std::size_t v = 0; v < source->algebra()->num_vertices(); ++v)
        require_internal(lhs.vertex_map(v) == rhs.vertex_map(v),
                         "chain map does not commute with differentials");
    }
  }
};

/// Owning variant used where the underlying complexes must outlive the map.
struct OwnedChainMap {
  std::shared_ptr<BoundedComplex> source;
  std::shared_ptr<BoundedComplex> target;
  std::map<int, ModuleMorphism> comps;

  ChainMap view() const { return {source.get(), target.get(), comps}; }
};

/// Mapping cone with the convention d(x, y) = (-d x, f(x) + d y), where
/// cone^i = X^{i+1} + Y^i.
inline BoundedComplex cone(const ChainMap& f) {
  const BoundedComplex& x = *f.source;
  const BoundedComplex& y = *f.target;
  const AlgebraPtr& alg = x.algebra();
  int lo = std::min(x.lo() - 1, y.lo());
  int hi = std::max(x.hi() - 1, y.hi());
  if (x.is_zero_complex() && y.is_zero_complex()) return BoundedComplex::zero(alg);
  if (x.is_zero_complex()) {
    lo = y.lo();
    hi = y.hi();
  } else if (y.is_zero_complex()) {
    lo = x.lo() - 1;
    hi = x.hi() - 1;
  }

  std::vector<RepPtr> terms;
  std::vector<DirectSum> sums;
  for (int i = lo; i <= hi; ++i) {
    DirectSum ds = direct_sum(alg, {x.term(i + 1), y.term(i)});
    terms.push_back(ds.rep);
    sums.push_back(std::move(ds));
  }
  std::vector<ModuleMorphism> diffs;
  const std::uint32_t p = alg->p();
  for (int i = lo; i < hi; ++i) {
    const DirectSum& from = sums[static_cast<std::size_t>(i - lo)];
    const DirectSum& to = sums[static_cast<std::size_t>(i + 1 - lo)];
    ModuleMorphism d =
        compose(to.inclusions[0], compose(x.diff(i + 1), from.projections[0])).scaled(p - 1) +
        compose(to.inclusions[1], compose(f.comp(i + 1), from.projections[0])) +
        compose(to.inclusions[1], compose(y.diff(i), from.projections[1]));
    diffs.push_back(std::move(d));
  }
  BoundedComplex c(alg, lo, std::move(terms), std::move(diffs));
  c.validate();
  return c;
}

/// Contractibility: solvability of d h + h d = id with module-morphism
/// unknowns h^i: X^i -> X^{i-1}, one joint linear system in Hom
/// coordinates.
inline bool is_contractible(const BoundedComplex& x) {
  if (x.is_zero_complex()) return true;
  const std::uint32_t p = x.algebra()->p();

  std::vector<int> degrees;  // degrees carrying an unknown h^i
  std::vector<HomSpace> hspaces;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (int i = x.lo() + 1; i <= x.hi(); ++i) {
    degrees.push_back(i);
    hspaces.push_back(hom_space(x.term(i), x.term(i - 1)));
    offset.push_back(total);
    total += hspaces.back().dim();
  }
  auto unknown_index = [&](int deg) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < degrees.size(); ++k)
      if (degrees[k] == deg) return k;
    return std::nullopt;
  };

  std::size_t eq_total = 0;
  std::vector<HomSpace> eq_spaces;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    eq_spaces.push_back(hom_space(x.term(i), x.term(i)));
    eq_total += eq_spaces.back().dim();
  }

  Matrix sys(p, eq_total, total);
  Matrix rhs(p, eq_total, 1);
  std::size_t row = 0;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    const HomSpace& end_i = eq_spaces[static_cast<std::size_t>(i - x.lo())];
    // d^{i-1} h^i contribution.
    if (auto k = unknown_index(i)) {
      Matrix m = post_compose_matrix(hspaces[*k], end_i, x.diff(i - 1));
      for (std::size_t r = 0; r < end_i.dim(); ++r)
        for (std::size_t c = 0; c < hspaces[*k].dim(); ++c) sys.at(row + r, offset[*k] + c) = m.at(r, c);
    }
    // h^{i+1} d^i contribution.
    if (auto k = unknown_index(i + 1)) {
      Matrix m = pre_compose_matrix(hspaces[*k], end_i, x.diff(i));
      for (std::size_t r = 0; r < end_i.dim(); ++r)
        for (std::size_t c = 0; c < hspaces[*k].dim(); ++c)
          sys.at(row + r, offset[*k] + c) = fadd(sys.at(row + r, offset[*k] + c), m.at(r, c), p);
    }
    Matrix idc = end_i.coords(identity_morphism(x.term(i)));
    for (std::size_t r = 0; r < end_i.dim(); ++r) rhs.at(row + r, 0) = idc.at(r, 0);
    row += end_i.dim();
  }
  return solve(sys, rhs).has_value();
}

// ---------------------------------------------------------------------------
// Degreewise n-exactness.

/// Result of inf_n / sup_n analysis over the support.
struct InfSup {
  ExtInt inf_n;
  ExtInt sup_n;
  bool decisive = true;
};

/// n-exactness at one degree: plain exactness there plus n-exactness of
/// 0 -> Ker d^i -> X^i -> Coker d^{i-1} -> 0.
inline Verdict is_n_exact_at(const BoundedComplex& x, int i, RelWorkbench& wb, Level n) {
  if (i < x.lo() || i > x.hi()) return Verdict::yes_v(wb.bounds());
  SubRep ker = kernel_rep(x.diff(i));
  // Plain exactness: ker d^i = im d^{i-1}, checked by dimensions given
  // that d d = 0.
  for (std::size_t v = 0; v < x.algebra()->num_vertices(); ++v) {
    std::size_t im = rank(x.diff(i - 1).vertex_map(v));
    if (ker.rep->dim(v) != im)
      return Verdict::no_v(wb.bounds(), "complex is not exact at degree " + std::to_string(i));
  }
  if (x.term(i)->is_zero()) return Verdict::yes_v(wb.bounds());
  QuotRep coker = cokernel_rep(x.diff(i - 1));
  if (ker.rep->is_zero() && coker.rep->is_zero()) return Verdict::yes_v(wb.bounds());
  ShortSequence seq{ker.inclusion, coker.projection};
  seq.validate();
  Verdict v = wb.is_n_exact(seq, n);
  if (v.no()) v.witness = "degree " + std::to_string(i) + ": " + v.witness;
  return v;
}

inline Verdict is_n_exact_complex(const BoundedComplex& x, RelWorkbench& wb, Level n) {
  bool unknown = false;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    Verdict v = is_n_exact_at(x, i, wb, n);
    if (v.no()) return v;
    if (!v.decisive()) unknown = true;
  }
  if (unknown)
    return Verdict::unknown_v(wb.bounds(), "no degree fails within bounds, but some verdicts are best-effort");
  return Verdict::yes_v(wb.bounds());
}

/// inf_n / sup_n over the support; a fully n-exact complex returns
/// (+inf, -inf) per the standard convention.
inline InfSup inf_sup_n(const BoundedComplex& x, RelWorkbench& wb, Level n) {
  InfSup out;
  std::optional<long long> first, last;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    Verdict v = is_n_exact_at(x, i, wb, n);
    if (v.no()) {
      if (!first) first = i;
      last = i;
    } else if (!v.decisive()) {
      out.decisive = false;
    }
  }
  if (first) {
    out.inf_n = ExtInt::fin(*first);
    out.sup_n = ExtInt::fin(*last);
  } else {
    out.inf_n = ExtInt::pos_inf();
    out.sup_n = ExtInt::neg_inf();
  }
  return out;
}

inline Verdict is_n_quasi_iso(const ChainMap& f, RelWorkbench& wb, Level n) {
  BoundedComplex c = cone(f);
  return is_n_exact_complex(c, wb, n);
}

// ---------------------------------------------------------------------------
// Relative resolutions of complexes.

struct ComplexResolution {
  std::shared_ptr<BoundedComplex> p;  // terms are n-projective
  std::shared_ptr<BoundedComplex> x;  // the resolved complex (copy)
  std::map<int, ModuleMorphism> map_comps;  // components of P -> X
  bool truncated = false;   // the resolution was cut at the depth bound
  bool unknown_gate = false;

  ChainMap map() const { return {p.get(), x.get(), map_comps}; }
};

namespace detail {

/// Chain map + homotopy lifting: given resolutions p_w: PW -> W and
/// p_z: PZ -> Z and a chain map w: W -> Z, finds sigma: PW -> PZ and
/// eps^i: PW^i -> Z^{i-1} solving, degreewise from the top,
///   d sigma = sigma d  and  p_z sigma - w p_w = d eps + eps d.
/// Returns nullopt at the first unsolvable degree (possible only under
/// truncation), reporting how far it got.
struct LiftResult {
  std::map<int, ModuleMorphism> sigma;
  std::map<int, ModuleMorphism> eps;
  std::optional<int> failed_at;
};

inline LiftResult lift_through_resolution(const BoundedComplex& pw, const ChainMap& p_w,
                                          const BoundedComplex& pz, const ChainMap& p_z,
                                          const ChainMap& w) {
  LiftResult out;
  const AlgebraPtr alg = pw.algebra();
  const std::uint32_t p = alg->p();
  const BoundedComplex& zc = *p_z.target;
  for (int i = pw.hi(); i >= pw.lo(); --i) {
    RepPtr src = pw.term(i);
    if (src->is_zero()) {
      out.sigma.emplace(i, zero_morphism(src, pz.term(i)));
      out.eps.emplace(i, zero_morphism(src, zc.term(i - 1)));
      continue;
    }
    HomSpace hs_sigma = hom_space(src, pz.term(i));
    HomSpace hs_eps = hom_space(src, zc.term(i - 1));
    // Equation blocks: chain-map condition in Hom(src, PZ^{i+1}), lifting
    // condition in Hom(src, Z^i).
    HomSpace eq1 = hom_space(src, pz.term(i + 1));
    HomSpace eq2 = hom_space(src, zc.term(i));
    std::size_t rows = eq1.dim() + eq2.dim();
    std::size_t cols = hs_sigma.dim() + hs_eps.dim();
    Matrix sys(p, rows, cols);
    Matrix rhs(p, rows, 1);
    if (eq1.dim() && hs_sigma.dim()) {
      Matrix m = post_compose_matrix(hs_sigma, eq1, pz.diff(i));
      for (std::size_t r = 0; r < eq1.dim(); ++r)
        for (std::size_t c = 0; c < hs_sigma.dim(); ++c) sys.at(r, c) = m.at(r, c);
    }
    if (eq1.dim()) {
      // rhs1 = sigma^{i+1} d_PW^i.
      auto it = out.sigma.find(i + 1);
      ModuleMorphism target_val =
          it == out.sigma.end() ? zero_morphism(src, pz.term(i + 1)) : compose(it->second, pw.diff(i));
      Matrix c1 = eq1.coords(target_val);
      for (std::size_t r = 0; r < eq1.dim(); ++r) rhs.at(r, 0) = c1.at(r, 0);
    }
    if (eq2.dim()) {
      if (hs_sigma.dim()) {
        Matrix m = post_compose_matrix(hs_sigma, eq2, p_z.comp(i));
        for (std::size_t r = 0; r < eq2.dim(); ++r)
          for (std::size_t c = 0; c < hs_sigma.dim(); ++c) sys.at(eq1.dim() + r, c) = m.at(r, c);
      }
      if (hs_eps.dim()) {
        Matrix m = post_compose_matrix(hs_eps, eq2, zc.diff(i - 1));
        for (std::size_t r = 0; r < eq2.dim(); ++r)
          for (std::size_t c = 0; c < hs_eps.dim(); ++c)
            sys.at(eq1.dim() + r, hs_sigma.dim() + c) = fneg(m.at(r, c), p);
      }
      // rhs2 = w p_w + eps^{i+1} d_PW^i.
      ModuleMorphism val = compose(w.comp(i), p_w.comp(i));
      auto it = out.eps.find(i + 1);
      if (it != out.eps.end()) val = val + compose(it->second, pw.diff(i));
      Matrix c2 = eq2.coords(val);
      for (std::size_t r = 0; r < eq2.dim(); ++r) rhs.at(eq1.dim() + r, 0) = c2.at(r, 0);
    }
    auto sol = solve(sys, rhs);
    if (!sol) {
      out.failed_at = i;
      return out;
    }
    Matrix sc(p, hs_sigma.dim(), 1), ec(p, hs_eps.dim(), 1);
    for (std::size_t k = 0; k < hs_sigma.dim(); ++k) sc.at(k, 0) = sol->at(k, 0);
    for (std::size_t k = 0; k < hs_eps.dim(); ++k) ec.at(k, 0) = sol->at(hs_sigma.dim() + k, 0);
    out.sigma.emplace(i, hs_sigma.from_coords(sc));
    out.eps.emplace(i, hs_eps.from_coords(ec));
  }
  return out;
}

}  // namespace detail

/// Resolution of a stalk: the module-level relative resolution laid out
/// as a complex ending at the stalk degree.
inline ComplexResolution stalk_resolution(const RepPtr& m, int degree, RelWorkbench& wb, Level n,
                                          std::size_t depth) {
  ComplexResolution out;
  out.x = std::make_shared<BoundedComplex>(BoundedComplex::stalk(m, degree));
  if (m->is_zero()) {
    out.p = std::make_shared<BoundedComplex>(BoundedComplex::zero(m->algebra()));
    return out;
  }
  const RelResolution& res = wb.n_resolution(m, n, depth);
  out.unknown_gate = res.unknown_gate;
  out.truncated = res.status != RelResolution::Status::Finite;
  // Terms X_0..X_l live in degrees degree, degree-1, ..., degree-l.
  std::vector<RepPtr> terms;
  std::vector<ModuleMorphism> diffs;
  const std::size_t len = res.terms.size();
  for (std::size_t j = len; j-- > 0;) terms.push_back(res.terms[j]);
  for (std::size_t j = len; j-- > 1;) diffs.push_back(res.maps[j]);
  int lo = degree - static_cast<int>(len) + 1;
  out.p = std::make_shared<BoundedComplex>(m->algebra(), lo, std::move(terms), std::move(diffs));
  out.p->validate();
  // Augmentation at the stalk degree; res.maps[0] is X_0 -> M, and for a
  // length-0 resolution the identity.
  out.map_comps.emplace(degree, res.maps[0]);
  return out;
}

/// Resolution of a bounded complex by induction on the brutal truncation:
/// resolve the bottom stalk and the rest, lift the attaching map through
/// the resolutions, and take the cone.
inline ComplexResolution complex_n_resolution(const BoundedComplex& x, RelWorkbench& wb, Level n,
                                              std::size_t depth) {
  if (x.is_zero_complex()) {
    ComplexResolution out;
    out.x = std::make_shared<BoundedComplex>(x);
    out.p = std::make_shared<BoundedComplex>(BoundedComplex::zero(x.algebra()));
    return out;
  }
  if (x.lo() == x.hi()) return stalk_resolution(x.term(x.lo()), x.lo(), wb, n, depth);

  // Split: Z = degrees >= lo+1, W = stalk X^lo shifted to degree lo+1,
  // attaching map w = d^lo; then X = cone(w) on the nose.
  BoundedComplex z = x.truncate_above(x.lo() + 1);
  ComplexResolution rz = complex_n_resolution(z, wb, n, depth);
  BoundedComplex wstalk = BoundedComplex::stalk(x.term(x.lo()), x.lo() + 1);
  ComplexResolution rw = stalk_resolution(x.term(x.lo()), x.lo() + 1, wb, n, depth);

  ChainMap wmap{&wstalk, rz.x.get(), {}};
  wmap.comps.emplace(x.lo() + 1, x.diff(x.lo()));

  detail::LiftResult lift = detail::lift_through_resolution(*rw.p, rw.map(), *rz.p, rz.map(), wmap);
  ComplexResolution out;
  out.x = std::make_shared<BoundedComplex>(x);
  out.truncated = rz.truncated || rw.truncated;
  out.unknown_gate = rz.unknown_gate || rw.unknown_gate;

  std::shared_ptr<BoundedComplex> pw = rw.p;
  if (lift.failed_at) {
    // Possible only under truncation: cut the offending tail and retry.
    require_internal(out.truncated, "resolution lift failed on an untruncated input");
    pw = std::make_shared<BoundedComplex>(pw->truncate_above(*lift.failed_at + 1));
    lift = detail::lift_through_resolution(*pw, rw.map(), *rz.p, rz.map(), wmap);
    require_internal(!lift.failed_at, "resolution lift failed after truncation");
  }

  // P = cone(sigma: PW -> PZ); map to X = cone(w) is
  // (x, z) -> (p_w x, p_z z + eps x).
  ChainMap sigma{pw.get(), rz.p.get(), lift.sigma};
  sigma.validate();
  BoundedComplex pcone = cone(sigma);
  out.p = std::make_shared<BoundedComplex>(std::move(pcone));

  const AlgebraPtr& alg = x.algebra();
  for (int i = out.p->lo(); i <= out.p->hi(); ++i) {
    // cone(sigma)^i = PW^{i+1} + PZ^i; X^i = cone(w)^i = W-part + Z-part.
    RepPtr src = out.p->term(i);
    DirectSum ds = direct_sum(alg, {pw->term(i + 1), rz.p->term(i)});
    require_internal(*ds.rep == *src, "cone decomposition drifted");
    ModuleMorphism to_x = zero_morphism(src, out.x->term(i));
    // W-part of X^i sits at degree lo only (as X itself).
    ModuleMorphism pw_comp = rw.map().comp(i + 1);  // PW^{i+1} -> W^{i+1}
    if (i == x.lo()) {
      // X^{lo} is the W-stalk value.
      to_x = to_x + compose(pw_comp, ds.projections[0]);
    }
    ModuleMorphism pz_comp = rz.map().comp(i);  // PZ^i -> Z^i
    if (!rz.x->term(i)->is_zero()) {
      to_x = to_x + compose(pz_comp, ds.projections[1]);
      auto it = lift.eps.find(i + 1);
      if (it != lift.eps.end()) to_x = to_x + compose(it->second, ds.projections[0]);
    }
    out.map_comps.emplace(i, to_x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relative invariants of complexes.

/// dim n-Ext^i(X, N) for a module N: H^i Hom(P, N) with P a relative
/// resolution of the complex X. Takes the precomputed resolution so
/// callers can loop over (i, N) without rebuilding it.
inline DimVerdict complex_n_ext_from(const ComplexResolution& res, const RepPtr& nmod, long long i,
                                     RelWorkbench& wb, Level n) {
  const BoundedComplex& pc = *res.p;
  // Hom(P, N)^i = Hom(P^{-i}, N); differential precomposes with d_P.
  HomSpace hi = hom_space(pc.term(static_cast<int>(-i)), nmod);
  std::size_t ker_dim = hi.dim();
  {
    HomSpace hnext = hom_space(pc.term(static_cast<int>(-i - 1)), nmod);
    if (hnext.dim() && hi.dim()) {
      Matrix d_out = pre_compose_matrix(hi, hnext, pc.diff(static_cast<int>(-i - 1)));
      ker_dim = kernel_basis(d_out).cols();
    }
  }
  std::size_t im_dim = 0;
  {
    HomSpace hprev = hom_space(pc.term(static_cast<int>(-i + 1)), nmod);
    if (hprev.dim() && hi.dim()) {
      Matrix d_in = pre_compose_matrix(hprev, hi, pc.diff(static_cast<int>(-i)));
      im_dim = rank(d_in);
    }
  }
  require_internal(ker_dim >= im_dim, "complex Ext rank arithmetic went negative");
  DimVerdict out = DimVerdict::finite(static_cast<long long>(ker_dim - im_dim));
  out.bounds = wb.bounds();
  const TestClass& tc = wb.test_class(n);
  out.decisive = tc.complete && !res.unknown_gate;
  // Truncation only matters when the window reaches the cut.
  if (res.truncated && -i - 1 <= pc.lo()) out.decisive = false;
  if (!out.decisive) out.caveats.push_back("qualified by best-effort class or truncated resolution");
  return out;
}

inline DimVerdict complex_n_ext(const BoundedComplex& x, const RepPtr& nmod, long long i,
                                RelWorkbench& wb, Level n, std::size_t depth) {
  ComplexResolution res = complex_n_resolution(x, wb, n, depth);
  return complex_n_ext_from(res, nmod, i, wb, n);
}

/// dim n-Ext^i(N, X) for a module N and complex X: H^i of the total Hom
/// complex Hom(P_N, X).
inline DimVerdict complex_n_ext_into(const RepPtr& nmod, const BoundedComplex& x, long long i,
                                     RelWorkbench& wb, Level n) {
  if (x.is_zero_complex() || nmod->is_zero()) {
    DimVerdict z = DimVerdict::finite(0);
    z.bounds = wb.bounds();
    return z;
  }
  // Required resolution depth: Hom(P^{-j}, X^{i+j-ish}) over the window.
  std::size_t depth = static_cast<std::size_t>(
      std::max<long long>(4, i + 2 + 1 - std::min<long long>(0, x.lo())));
  const RelResolution& res = wb.n_resolution(nmod, n, depth + static_cast<std::size_t>(std::max(0, x.hi() - x.lo())) + 2);
  // P_N lives in degrees -l..0; build Tot^k = sum_j Hom(P^{-j}, X^{k-j}).
  const std::uint32_t p = x.algebra()->p();
  auto pterm = [&](std::size_t j) -> RepPtr {
    if (j < res.terms.size()) return res.terms[j];
    return zero_rep(x.algebra());
  };
  auto pdiff = [&](std::size_t j) -> std::optional<ModuleMorphism> {
    // P^{-(j+1)} -> P^{-j} is maps[j+1].
    if (j + 1 < res.maps.size()) return res.maps[j + 1];
    return std::nullopt;
  };

  struct Block {
    std::size_t j;          // resolution index
    int xd;                 // X degree = k - (-j) => xd = k + j
    HomSpace hs;
    std::size_t off;
  };
  auto build_layer = [&](long long k) {
    std::vector<Block> blocks;
    std::size_t total = 0;
    for (int xd = x.lo(); xd <= x.hi(); ++xd) {
      // Degree-k piece Hom(P^j, X^{j+k}) with P^j = terms[-j]: jj = k - xd.
      long long jj = k - static_cast<long long>(xd);
      if (jj < 0) continue;
      std::size_t j = static_cast<std::size_t>(jj);
      HomSpace hs = hom_space(pterm(j), x.term(xd));
      if (hs.dim() == 0) continue;
      blocks.push_back({j, xd, std::move(hs), total});
      total += blocks.back().hs.dim();
    }
    return std::make_pair(blocks, total);
  };

  // Total differential D(phi)_j = d_X phi_j + (-1)^{k+1} phi_{j+1} d_P.
  auto diff_matrix = [&](const std::vector<Block>& from, std::size_t from_total,
                         const std::vector<Block>& to, std::size_t to_total, long long k) {
    Matrix d(p, to_total, from_total);
    for (const auto& fb : from) {
      // d_X component: Hom(P^{-j}, X^xd) -> Hom(P^{-j}, X^{xd+1}).
      for (const auto& tb : to) {
        if (tb.j == fb.j && tb.xd == fb.xd + 1) {
          Matrix m = post_compose_matrix(fb.hs, tb.hs, x.diff(fb.xd));
          for (std::size_t r = 0; r < tb.hs.dim(); ++r)
            for (std::size_t c = 0; c < fb.hs.dim(); ++c) d.at(tb.off + r, fb.off + c) = m.at(r, c);
        }
        // phi_{j+1} d_P: Hom(P^{-j}, X^xd) -> Hom(P^{-(j+1)}, X^xd) wait:
        // precomposition lowers complex degree of P by one, raising j.
        if (tb.xd == fb.xd && tb.j == fb.j + 1) {
          auto dm = pdiff(fb.j);
          if (dm) {
            Matrix m = pre_compose_matrix(fb.hs, tb.hs, *dm);
            fel sgn = ((k % 2 + 2) % 2 == 0) ? p - 1 : 1;  // (-1)^{k+1}
            for (std::size_t r = 0; r < tb.hs.dim(); ++r)
              for (std::size_t c = 0; c < fb.hs.dim(); ++c)
                d.at(tb.off + r, fb.off + c) =
                    fadd(d.at(tb.off + r, fb.off + c), fmul(sgn, m.at(r, c), p), p);
          }
        }
      }
    }
    return d;
  };

  auto [bi, ti] = build_layer(i);
  auto [bnext, tnext] = build_layer(i + 1);
  auto [bprev, tprev] = build_layer(i - 1);
  Matrix d_out = diff_matrix(bi, ti, bnext, tnext, i);
  Matrix d_in = diff_matrix(bprev, tprev, bi, ti, i - 1);
  // Sanity: D^2 = 0 on the layer we use.
  if (ti && tprev && tnext) {
    Matrix dd = d_out * d_in;
    require_internal(dd.is_zero(), "total Hom complex differential fails d^2 = 0");
  }
  std::size_t ker_dim = ti ? kernel_basis(d_out).cols() : 0;
  std::size_t im_dim = tprev ? rank(d_in) : 0;
  require_internal(ker_dim >= im_dim, "total Hom rank arithmetic went negative");
  DimVerdict out = DimVerdict::finite(static_cast<long long>(ker_dim - im_dim));
  out.bounds = wb.bounds();
  const TestClass& tc = wb.test_class(n);
  out.decisive = tc.complete && !res.unknown_gate;
  if (!out.decisive) out.caveats.push_back("qualified by a best-effort class");
  return out;
}

/// n-projective dimension of a complex by the cokernel criterion: the
/// least m with inf_n X >= -m whose resolution cokernel at degree -m is
/// n-projective.
inline DimVerdict complex_n_pd(const BoundedComplex& x, RelWorkbench& wb, Level n,
                               std::size_t depth) {
  InfSup is = inf_sup_n(x, wb, n);
  if (is.inf_n.kind == ExtInt::Kind::PosInf) {
    DimVerdict v = DimVerdict::minus_infinite();
    v.bounds = wb.bounds();
    v.decisive = is.decisive;
    return v;
  }
  ComplexResolution res = complex_n_resolution(x, wb, n, depth);
  const BoundedComplex& pc = *res.p;
  long long m_min = -is.inf_n.v;
  bool qualified = false;
  for (long long m = m_min; m <= m_min + static_cast<long long>(depth); ++m) {
    // Coker(d^{-m-1}: P^{-m-1} -> P^{-m}); zero outside the support.
    int deg = static_cast<int>(-m);
    Verdict v;
    if (deg > pc.hi() || deg < pc.lo()) {
      v = Verdict::yes_v(wb.bounds());  // zero cokernel is projective
    } else {
      QuotRep coker = cokernel_rep(pc.diff(deg - 1));
      v = wb.is_n_projective(coker.rep, n);
    }
    if (v.yes()) {
      DimVerdict out = DimVerdict::finite(m);
      out.bounds = wb.bounds();
      out.decisive = is.decisive && !qualified && !res.unknown_gate && !(res.truncated && deg - 1 <= pc.lo());
      if (!out.decisive) out.caveats.push_back("qualified by best-effort data");
      return out;
    }
    if (!v.decisive()) qualified = true;
    if (res.truncated && deg - 1 <= pc.lo()) {
      DimVerdict out = DimVerdict::at_least(m);
      out.bounds = wb.bounds();
      out.caveats.push_back("resolution truncated before the criterion stabilized");
      return out;
    }
  }
  DimVerdict out = DimVerdict::at_least(m_min + static_cast<long long>(depth) + 1);
  out.bounds = wb.bounds();
  return out;
}

/// n-projective dimension by the vanishing criterion: the least m with
/// inf_n X >= -m and n-Ext^{m+1}(X, N) = 0 for every inventory module N.
inline DimVerdict complex_n_pd_vanishing(const BoundedComplex& x, RelWorkbench& wb, Level n,
                                         std::size_t depth) {
  InfSup is = inf_sup_n(x, wb, n);
  if (is.inf_n.kind == ExtInt::Kind::PosInf) {
    DimVerdict v = DimVerdict::minus_infinite();
    v.bounds = wb.bounds();
    v.decisive = is.decisive;
    return v;
  }
  const Inventory& inv = wb.inventory();
  ComplexResolution res = complex_n_resolution(x, wb, n, depth);
  long long m_min = -is.inf_n.v;
  bool qualified = !is.decisive;
  for (long long m = m_min; m <= m_min + static_cast<long long>(depth); ++m) {
    bool vanish = true;
    for (std::size_t k = 0; k < inv.modules.size() && vanish; ++k) {
      DimVerdict e = complex_n_ext_from(res, inv.modules[k], m + 1, wb, n);
      if (!e.decisive) qualified = true;
      if (e.value != 0) vanish = false;
    }
    if (vanish) {
      DimVerdict out = DimVerdict::finite(m);
      out.bounds = wb.bounds();
      out.decisive = !qualified && inv.complete;
      if (!out.decisive) out.caveats.push_back("qualified by best-effort data");
      return out;
    }
  }
  DimVerdict out = DimVerdict::at_least(m_min + static_cast<long long>(depth) + 1);
  out.bounds = wb.bounds();
  return out;
}

/// n-injective dimension of a complex: the least m with sup_n X <= m and
/// n-Ext^{m+1}(N, X) = 0 for every inventory N.
inline DimVerdict complex_n_id(const BoundedComplex& x, RelWorkbench& wb, Level n,
                               std::size_t depth) {
  InfSup is = inf_sup_n(x, wb, n);
  if (is.sup_n.kind == ExtInt::Kind::NegInf) {
    DimVerdict v = DimVerdict::minus_infinite();
    v.bounds = wb.bounds();
    v.decisive = is.decisive;
    return v;
  }
  const Inventory& inv = wb.inventory();
  long long m_min = is.sup_n.v;
  bool qualified = !is.decisive;
  for (long long m = m_min; m <= m_min + static_cast<long long>(depth); ++m) {
    bool vanish = true;
    for (std::size_t k = 0; k < inv.modules.size() && vanish; ++k) {
      DimVerdict e = complex_n_ext_into(inv.modules[k], x, m + 1, wb, n);
      if (!e.decisive) qualified = true;
      if (e.value != 0) vanish = false;
    }
    if (vanish) {
      DimVerdict out = DimVerdict::finite(m);
      out.bounds = wb.bounds();
      out.decisive = !qualified && inv.complete;
      if (!out.decisive) out.caveats.push_back("qualified by best-effort data");
      return out;
    }
  }
  DimVerdict out = DimVerdict::at_least(m_min + static_cast<long long>(depth) + 1);
  out.bounds = wb.bounds();
  return out;
}

}  // namespace relhom
