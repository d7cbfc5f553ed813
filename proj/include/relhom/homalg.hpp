#pragma once

#include <string>
#include <vector>

#include "relhom/decompose.hpp"

namespace relhom {

struct Bounds {
  std::size_t dim_bound = 0;
  std::size_t cutoff = 0;

  std::string to_string() const {
    return "d:" + std::to_string(dim_bound) + ",B:" + std::to_string(cutoff);
  }
};

/// Dimension-valued answer to a semi-decidable question. AtLeast verdicts
/// are never decisive; Finite verdicts may be qualified when they only
/// quantify over a best-effort inventory.
struct DimVerdict {
  enum class Kind { Finite, Infinite, AtLeast, MinusInfinite };
  Kind kind = Kind::Finite;
  long long value = 0;
  bool decisive = true;
  Bounds bounds;
  std::vector<std::string> caveats;
  std::string witness;

  static DimVerdict finite(long long v) { return {Kind::Finite, v, true, {}, {}, {}}; }
  static DimVerdict infinite() { return {Kind::Infinite, 0, true, {}, {}, {}}; }
  static DimVerdict at_least(long long v) { return {Kind::AtLeast, v, false, {}, {}, {}}; }
  static DimVerdict minus_infinite() { return {Kind::MinusInfinite, 0, true, {}, {}, {}}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_infinite() const { return kind == Kind::Infinite; }

  std::string token() const {
    switch (kind) {
      case Kind::Finite: return "finite:" + std::to_string(value);
      case Kind::Infinite: return "infinite";
      case Kind::AtLeast: return "atleast:" + std::to_string(value);
      case Kind::MinusInfinite: return "minus-infinite";
    }
    return "?";
  }
};

/// Minimal projective resolution data. Terms P_0, P_1, ... with maps
/// P_0 -> M and P_{i+1} -> P_i; syzygies[i] is the kernel after step i.
struct ResolutionReport {
  enum class Status { Finite, InfiniteDetected, CutoffReached };
  Status status = Status::CutoffReached;
  std::size_t length = 0;  // projective dimension when Finite
  RepPtr module;
  std::vector<RepPtr> terms;
  std::vector<ModuleMorphism> maps;
  std::vector<RepPtr> syzygies;
  std::size_t period_start = 0, period_end = 0;  // InfiniteDetected evidence
};

/// Iterated minimal covers. Infinite projective dimension is detected by
/// syzygy repetition, which is sound for minimal resolutions.
inline ResolutionReport min_proj_resolution(const RepPtr& m, std::size_t cutoff) {
  ResolutionReport rep;
  rep.module = m;
  if (m->is_zero()) {
    rep.status = ResolutionReport::Status::Finite;
    rep.length = 0;
    return rep;
  }
  std::vector<RepPtr> seen{m};
  RepPtr cur = m;
  std::optional<ModuleMorphism> last_incl;
  for (std::size_t step = 0; step <= cutoff; ++step) {
    Presentation pres = present(cur);
    rep.terms.push_back(pres.p0);
    if (step == 0) {
      rep.maps.push_back(pres.cover);
    } else {
      rep.maps.push_back(compose(*last_incl, pres.cover));
    }
    last_incl = pres.incl;
    rep.syzygies.push_back(pres.k);
    if (pres.k->is_zero()) {
      rep.status = ResolutionReport::Status::Finite;
      rep.length = step;
      return rep;
    }
    if (rep.status != ResolutionReport::Status::InfiniteDetected) {
      for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i]->dims() == pres.k->dims() && is_isomorphic(seen[i], pres.k)) {
          rep.status = ResolutionReport::Status::InfiniteDetected;
          rep.period_start = i;
          rep.period_end = seen.size();
          break;
        }
      }
    }
    seen.push_back(pres.k);
    cur = pres.k;
  }
  if (rep.status != ResolutionReport::Status::InfiniteDetected)
    rep.status = ResolutionReport::Status::CutoffReached;
  return rep;
}

inline DimVerdict pd(const RepPtr& m, std::size_t cutoff) {
  if (m->is_zero()) return DimVerdict::minus_infinite();
  ResolutionReport rep = min_proj_resolution(m, cutoff);
  DimVerdict v;
  switch (rep.status) {
    case ResolutionReport::Status::Finite:
      v = DimVerdict::finite(static_cast<long long>(rep.length));
      break;
    case ResolutionReport::Status::InfiniteDetected:
      v = DimVerdict::infinite();
      v.witness = "syzygy " + std::to_string(rep.period_end) + " repeats syzygy " +
                  std::to_string(rep.period_start);
      break;
    case ResolutionReport::Status::CutoffReached:
      v = DimVerdict::at_least(static_cast<long long>(cutoff) + 1);
      break;
  }
  v.bounds.cutoff = cutoff;
  return v;
}

/// dim Ext^i(M, N) by rank arithmetic on Hom(resolution, N). The
/// resolution is extended to depth i+1, which always exists.
inline std::size_t ext_dim(const RepPtr& m, const RepPtr& n, std::size_t i,
                           std::size_t cutoff = 0) {
  if (m->is_zero() || n->is_zero()) return 0;
  ResolutionReport rep = min_proj_resolution(m, std::max(cutoff, i + 1));
  auto term = [&](std::size_t k) -> RepPtr {
    if (k < rep.terms.size()) return rep.terms[k];
    return zero_rep(m->algebra());
  };
  HomSpace hi = hom_space(term(i), n);
  std::size_t ker_dim;
  if (i + 1 < rep.terms.size()) {
    HomSpace hi1 = hom_space(term(i + 1), n);
    Matrix d_out = pre_compose_matrix(hi, hi1, rep.maps[i + 1]);
    ker_dim = kernel_basis(d_out).cols();
  } else {
    ker_dim = hi.dim();
  }
  std::size_t im_dim = 0;
  if (i > 0 && i - 1 < rep.terms.size() && i < rep.terms.size()) {
    HomSpace him1 = hom_space(term(i - 1), n);
    Matrix d_in = pre_compose_matrix(him1, hi, rep.maps[i]);
    im_dim = rank(d_in);
  }
  require_internal(ker_dim >= im_dim, "Ext rank arithmetic went negative");
  return ker_dim - im_dim;
}

/// Global dimension: the supremum of pd over the simple modules (for a
/// finite-dimensional algebra the global dimension is attained there).
inline DimVerdict gldim(const AlgebraPtr& algebra, std::size_t cutoff) {
  DimVerdict out = DimVerdict::finite(0);
  long long best = 0;
  bool any_atleast = false;
  long long atleast_bound = 0;
  for (std::size_t v = 0; v < algebra->num_vertices(); ++v) {
    DimVerdict pv = pd(simple_rep(algebra, v), cutoff);
    if (pv.is_infinite()) {
      DimVerdict r = DimVerdict::infinite();
      r.witness = "simple S(" + algebra->quiver().vertices[v] + ") has infinite projective dimension";
      r.bounds.cutoff = cutoff;
      return r;
    }
    if (pv.kind == DimVerdict::Kind::AtLeast) {
      any_atleast = true;
      atleast_bound = std::max(atleast_bound, pv.value);
    } else {
      best = std::max(best, pv.value);
    }
  }
  if (any_atleast) {
    out = DimVerdict::at_least(std::max(best, atleast_bound));
  } else {
    out = DimVerdict::finite(best);
  }
  out.bounds.cutoff = cutoff;
  return out;
}

/// Little finitistic dimension over the bounded inventory: the sup of the
/// finite projective dimensions. Exact when the enumeration is complete
/// and every member got a decisive pd verdict.
inline DimVerdict fpd(const Inventory& inv, std::size_t cutoff) {
  long long best = 0;
  bool all_decisive = true;
  std::string arg;
  for (std::size_t i = 0; i < inv.modules.size(); ++i) {
    DimVerdict pv = pd(inv.modules[i], cutoff);
    if (pv.kind == DimVerdict::Kind::AtLeast) {
      all_decisive = false;  // might be finite and large
      continue;
    }
    if (pv.is_finite() && pv.value > best) {
      best = pv.value;
      arg = inv.names[i];
    }
  }
  DimVerdict out = DimVerdict::finite(best);
  out.witness = arg.empty() ? "" : ("attained at " + arg);
  out.decisive = all_decisive && inv.complete;
  if (!inv.complete)
    out.caveats.push_back("inventory is best-effort; modules beyond the bound could raise the value");
  if (!all_decisive)
    out.caveats.push_back("some inventory modules have undecided projective dimension");
  out.bounds = {inv.dim_bound, cutoff};
  return out;
}

/// Injective dimension through the opposite algebra: id M = pd of the
/// dual module.
inline DimVerdict injdim(const RepPtr& m, std::size_t cutoff) {
  return pd(dual_rep(m), cutoff);
}

}  // namespace relhom
