#include <catch2/catch_amalgamated.hpp>

#include "relhom/rep.hpp"

using namespace relhom;

namespace {

AlgebraPtr a2() {
  Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}};
  return build_algebra(q, {}, {5}, 2);
}

AlgebraPtr kronecker() {
  Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
  return build_algebra(q, {}, {5}, 2);
}

AlgebraPtr dualnum() {
  Quiver q;
  q.vertices = {"v"};
  q.arrows = {{"x", 0, 0}};
  return build_algebra(q, {RelationSpec{{{1, {"x", "x"}}}}}, {5}, 2);
}

AlgebraPtr semisimple2() {
  Quiver q;
  q.vertices = {"1", "2"};
  return build_algebra(q, {}, {5}, 2);
}

/// Independent oracle: counts all commuting vertex-map tuples by直接
/// enumeration and returns log_p of the count. Only usable when the total
/// number of matrix entries is small.
std::size_t brute_hom_dim(const RepPtr& m, const RepPtr& n) {
  const std::uint32_t p = m->p();
  std::vector<std::size_t> shape;  // entries per vertex map
  std::size_t total = 0;
  for (std::size_t v = 0; v < m->dims().size(); ++v) {
    shape.push_back(n->dim(v) * m->dim(v));
    total += shape.back();
  }
  REQUIRE(total <= 8);  // 5^8 is still fine
  std::vector<fel> entries(total, 0);
  std::size_t count = 0;
  const Quiver& q = m->algebra()->quiver();
  while (true) {
    // Build vertex maps from entries.
    std::vector<Matrix> maps;
    std::size_t off = 0;
    for (std::size_t v = 0; v < m->dims().size(); ++v) {
      Matrix mv(p, n->dim(v), m->dim(v));
      for (std::size_t r = 0; r < mv.rows(); ++r)
        for (std::size_t c = 0; c < mv.cols(); ++c) mv.at(r, c) = entries[off + r * mv.cols() + c];
      off += shape[v];
      maps.push_back(std::move(mv));
    }
    bool ok = true;
    for (std::size_t a = 0; a < q.arrows.size() && ok; ++a) {
      const Arrow& ar = q.arrows[a];
      ok = (n->arrow_map(a) * maps[ar.src]) == (maps[ar.tgt] * m->arrow_map(a));
    }
    if (ok) ++count;
    std::size_t i = 0;
    while (i < total && entries[i] == p - 1) entries[i++] = 0;
    if (i == total) break;
    ++entries[i];
  }
  std::size_t d = 0;
  std::size_t power = 1;
  while (power < count) {
    power *= p;
    ++d;
  }
  REQUIRE(power == count);  // count must be a p-power
  return d;
}

}  // namespace

TEST_CASE("projectives over A2 and friends") {
  auto A = a2();
  auto p1 = projective_rep(A, 0);
  auto p2 = projective_rep(A, 1);
  CHECK(p1->dims() == std::vector<std::size_t>{1, 1});
  CHECK(p2->dims() == std::vector<std::size_t>{0, 1});

  auto S = semisimple2();
  CHECK(*projective_rep(S, 0) == *simple_rep(S, 0));
  CHECK(*projective_rep(S, 1) == *simple_rep(S, 1));

  auto D = dualnum();
  CHECK(projective_rep(D, 0)->total_dim() == 2);
}

TEST_CASE("hom dimensions match the brute-force oracle") {
  auto A = a2();
  auto s1 = simple_rep(A, 0);
  auto s2 = simple_rep(A, 1);
  auto p1 = projective_rep(A, 0);
  auto p2 = projective_rep(A, 1);

  CHECK(hom_dim(s1, s1) == 1);
  CHECK(hom_dim(p1, s2) == 0);
  CHECK(hom_dim(p2, s2) == 1);

  // Cross-check every small pair against the enumeration oracle.
  std::vector<RepPtr> mods{s1, s2, p1, p2};
  for (const auto& m : mods)
    for (const auto& n : mods) CHECK(hom_dim(m, n) == brute_hom_dim(m, n));
}

TEST_CASE("hom spaces produce valid, independent morphisms") {
  auto A = kronecker();
  auto p1 = projective_rep(A, 0);  // dims (1,2)
  auto p2 = projective_rep(A, 1);  // the simple S2
  // Hom(P(2), P(1)) is the vertex-2 fibre of P(1), which is 2-dimensional.
  HomSpace hs = hom_space(p2, p1);
  CHECK(hs.dim() == 2);
  for (const auto& f : hs.basis) f.validate();
  CHECK(hs.dim() == brute_hom_dim(p2, p1));
  CHECK(hom_dim(p1, simple_rep(A, 1)) == 0);  // Hom(P(1), S2) = (S2)_1 = 0
  // Round trip through coordinates.
  ModuleMorphism f = hs.basis[0] + hs.basis[1].scaled(3);
  Matrix c = hs.coords(f);
  ModuleMorphism g = hs.from_coords(c);
  for (std::size_t v = 0; v < 2; ++v) CHECK(f.vertex_map(v) == g.vertex_map(v));
}

TEST_CASE("hom across algebras is rejected") {
  auto A = a2();
  auto K = kronecker();
  CHECK_THROWS_AS(hom_space(simple_rep(A, 0), simple_rep(K, 0)), Error);
}

TEST_CASE("kernel, image, cokernel of the A2 cover map") {
  auto A = a2();
  auto s1 = simple_rep(A, 0);
  CoverResult cover = top_and_cover(s1);
  CHECK(cover.cover->dims() == std::vector<std::size_t>{1, 1});  // P(1)
  CHECK(cover.map.is_surjective());

  SubRep k = kernel_rep(cover.map);
  CHECK(k.rep->dims() == std::vector<std::size_t>{0, 1});  // S2 = P(2)
  k.inclusion.validate();
  SubRep im = image_rep(cover.map);
  CHECK(*im.rep == *s1);

  QuotRep c = cokernel_rep(k.inclusion);
  CHECK(c.rep->dims() == std::vector<std::size_t>{1, 0});  // S1
  c.projection.validate();
}

TEST_CASE("covers of projectives are isomorphisms") {
  auto A = a2();
  for (std::size_t v = 0; v < 2; ++v) {
    auto P = projective_rep(A, v);
    CoverResult cover = top_and_cover(P);
    CHECK(cover.map.is_iso());
  }
}

TEST_CASE("cover of the simple over the dual numbers") {
  auto D = dualnum();
  auto k = simple_rep(D, 0);
  CoverResult cover = top_and_cover(k);
  CHECK(cover.cover->total_dim() == 2);
  SubRep ker = kernel_rep(cover.map);
  CHECK(ker.rep->total_dim() == 1);  // syzygy of k is k again
  CHECK_THROWS_AS(top_and_cover(zero_rep(D)), Error);
}

TEST_CASE("duality transposes and is involutive") {
  auto A = a2();
  auto s1 = simple_rep(A, 0);
  auto d = dual_rep(s1);
  CHECK(d->dims() == s1->dims());
  CHECK(same_algebra(*d->algebra(), *A->opposite()));

  auto p1 = projective_rep(A, 0);
  auto i = dual_rep(p1);  // injective over the opposite
  CHECK(i->dims() == std::vector<std::size_t>{1, 1});

  auto dd = dual_rep(d);
  CHECK(*dd == *s1);

  // Duality preserves Hom dimensions (contravariantly).
  auto s2 = simple_rep(A, 1);
  CHECK(hom_dim(s1, p1) == hom_dim(dual_rep(p1), dual_rep(s1)));
  CHECK(hom_dim(s2, p1) == hom_dim(dual_rep(p1), dual_rep(s2)));
}

TEST_CASE("injective modules of A2") {
  auto A = a2();
  CHECK(injective_rep(A, 0)->dims() == std::vector<std::size_t>{1, 0});  // I(1) = S1
  CHECK(injective_rep(A, 1)->dims() == std::vector<std::size_t>{1, 1});  // I(2) = P(1)
}

TEST_CASE("direct sums carry working inclusions and projections") {
  auto A = a2();
  auto s1 = simple_rep(A, 0);
  auto p1 = projective_rep(A, 0);
  DirectSum ds = direct_sum(A, {s1, p1, s1});
  CHECK(ds.rep->total_dim() == 4);
  for (std::size_t i = 0; i < 3; ++i) {
    ds.inclusions[i].validate();
    ds.projections[i].validate();
    CHECK(compose(ds.projections[i], ds.inclusions[i]).is_iso());
  }
  CHECK(compose(ds.projections[0], ds.inclusions[1]).is_zero());
}

TEST_CASE("short sequence validation") {
  auto A = a2();
  auto s1 = simple_rep(A, 0);
  auto s2 = simple_rep(A, 1);
  auto p1 = projective_rep(A, 0);

  // 0 -> S2 -> P(1) -> S1 -> 0.
  std::vector<Matrix> inj_maps{Matrix(5, 1, 0), Matrix::identity(5, 1)};
  ModuleMorphism inj(s2, p1, inj_maps);
  std::vector<Matrix> surj_maps{Matrix::identity(5, 1), Matrix(5, 0, 1)};
  ModuleMorphism surj(p1, s1, surj_maps);
  ShortSequence seq{inj, surj};
  seq.validate();

  // Wrong ordering is not exact.
  ShortSequence bad{zero_morphism(s1, p1), surj};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("radical of modules") {
  auto A = a2();
  auto p1 = projective_rep(A, 0);
  auto rad = radical_subspace(p1);
  CHECK(rad[0].cols() == 0);
  CHECK(rad[1].cols() == 1);

  auto D = dualnum();
  auto P = projective_rep(D, 0);
  CHECK(radical_subspace(P)[0].cols() == 1);
}
