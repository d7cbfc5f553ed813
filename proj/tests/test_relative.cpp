#include <catch2/catch_amalgamated.hpp>

#include "relhom/relative.hpp"

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

ShortSequence a2_nonsplit_sequence(const AlgebraPtr& A) {
  auto s1 = simple_rep(A, 0);
  auto s2 = simple_rep(A, 1);
  auto p1 = projective_rep(A, 0);
  ModuleMorphism inj(s2, p1, {Matrix(5, 1, 0), Matrix::identity(5, 1)});
  ModuleMorphism surj(p1, s1, {Matrix::identity(5, 1), Matrix(5, 0, 1)});
  ShortSequence seq{inj, surj};
  seq.validate();
  return seq;
}

}  // namespace

TEST_CASE("test classes over A2") {
  RelWorkbench wb(a2(), 2, 8);
  const TestClass& c0 = wb.test_class(Level(0));
  CHECK(c0.members.size() == 2);  // P(1), P(2)
  CHECK(c0.complete);

  const TestClass& c1 = wb.test_class(Level(1));
  CHECK(c1.members.size() == 3);  // hereditary: everything has pd <= 1
  CHECK(c1.complete);

  const TestClass& cinf = wb.test_class(std::nullopt);
  CHECK(cinf.members.size() == 3);
  CHECK(cinf.complete);
}

TEST_CASE("test class of the dual numbers is the projective alone") {
  RelWorkbench wb(dualnum(), 4, 8);
  for (Level n : {Level(1), Level(2), Level(std::nullopt)}) {
    const TestClass& tc = wb.test_class(n);
    CHECK(tc.members.size() == 1);
    CHECK(tc.complete);
    CHECK(tc.members[0]->total_dim() == 2);
  }
}

TEST_CASE("split sequences are n-exact for every level") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  DirectSum ds = direct_sum(A, {simple_rep(A, 1), simple_rep(A, 0)});
  ShortSequence split{ds.inclusions[0], ds.projections[1]};
  split.validate();
  for (Level n : {Level(0), Level(1), Level(2), Level(std::nullopt)})
    CHECK(wb.is_n_exact(split, n).yes());
}

TEST_CASE("the nonsplit A2 sequence is 0-exact but not 1-exact") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  ShortSequence seq = a2_nonsplit_sequence(A);

  CHECK(wb.is_n_exact(seq, Level(0)).yes());

  Verdict v = wb.is_n_exact(seq, Level(1));
  REQUIRE(v.no());
  REQUIRE(v.witness_module);
  REQUIRE(v.witness_map);
  // The witness map genuinely fails to lift through the epimorphism.
  HomSpace htb = hom_space(v.witness_module, seq.mid());
  HomSpace htc = hom_space(v.witness_module, seq.quot());
  Matrix post = post_compose_matrix(htb, htc, seq.surj);
  CHECK_FALSE(solve(post, htc.coords(*v.witness_map)).has_value());
}

TEST_CASE("non-exact input raises NotExact") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  auto s1 = simple_rep(A, 0);
  auto p1 = projective_rep(A, 0);
  ShortSequence bad{zero_morphism(s1, p1), ModuleMorphism(p1, s1, {Matrix::identity(5, 1), Matrix(5, 0, 1)})};
  CHECK_THROWS_AS(wb.is_n_exact(bad, Level(0)), Error);
}

TEST_CASE("n-exact subspaces over A2") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  auto s1 = simple_rep(A, 0);
  auto s2 = simple_rep(A, 1);

  // At n = 0 every exact sequence is admissible: the subspace is all of Ext^1.
  const ExtSubspace& full = wb.n_exact_subspace(s1, s2, Level(0));
  CHECK(full.dim() == 1);
  CHECK(full.space->dim() == 1);

  // At n = 1 the nonsplit class fails lifting against S1.
  const ExtSubspace& cut = wb.n_exact_subspace(s1, s2, Level(1));
  CHECK(cut.dim() == 0);

  // Monotone: the subspace shrinks as the class grows with n.
  auto inv = wb.inventory();
  for (const auto& c : inv.modules)
    for (const auto& a : inv.modules) {
      std::size_t d0 = wb.n_exact_subspace(c, a, Level(0)).dim();
      std::size_t d1 = wb.n_exact_subspace(c, a, Level(1)).dim();
      std::size_t d2 = wb.n_exact_subspace(c, a, Level(2)).dim();
      CHECK(d0 >= d1);
      CHECK(d1 >= d2);
    }
}

TEST_CASE("projectives and class members are n-projective") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  for (Level n : {Level(0), Level(1), Level(2), Level(std::nullopt)}) {
    for (std::size_t v = 0; v < 2; ++v)
      CHECK(wb.is_n_projective(projective_rep(A, v), n).yes());
    for (const auto& t : wb.test_class(n).members) CHECK(wb.is_n_projective(t, n).yes());
  }
  // S1 is 1-projective over A2 (finite-type hereditary).
  CHECK(wb.is_n_projective(simple_rep(A, 0), Level(1)).yes());
  // But S1 is not projective.
  Verdict v = wb.is_n_projective(simple_rep(A, 0), Level(0));
  REQUIRE(v.no());
  REQUIRE(v.witness_seq);
  v.witness_seq->validate();
}

TEST_CASE("the dual-number simple is not n-projective and has infinite n-pd") {
  auto D = dualnum();
  RelWorkbench wb(D, 4, 8);
  auto k = simple_rep(D, 0);
  for (Level n : {Level(0), Level(1), Level(2), Level(std::nullopt)}) {
    Verdict v = wb.is_n_projective(k, n);
    REQUIRE(v.no());
    if (v.witness_seq) {
      v.witness_seq->validate();
      // The witness is n-exact (or at least 0-exact) and does not split.
      CHECK(wb.is_n_exact(*v.witness_seq, n).yes());
    }
    DimVerdict pdv = wb.n_pd(k, n);
    CHECK(pdv.token() == "infinite");
  }
  CHECK(wb.n_pd(projective_rep(D, 0), Level(1)).token() == "finite:0");
}

TEST_CASE("precover of a class member splits") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  auto s1 = simple_rep(A, 0);
  Precover pc = wb.n_precover(s1, Level(1));
  CHECK(pc.map.is_surjective());
  // A section exists: the identity factors through the precover.
  HomSpace hs = hom_space(s1, pc.map.source());
  HomSpace he = hom_space(s1, s1);
  Matrix post = post_compose_matrix(hs, he, pc.map);
  CHECK(solve(post, he.coords(identity_morphism(s1))).has_value());
}

TEST_CASE("precover at n = 0 behaves like a projective cover") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  auto s1 = simple_rep(A, 0);
  Precover pc = wb.n_precover(s1, Level(0));
  CHECK(pc.map.is_surjective());
  // Image of the cover map equals M and every part is projective.
  for (const auto& [name, count] : pc.shape) {
    bool projective_part = name.rfind("P(", 0) == 0 || name == "proj-cover";
    CHECK(projective_part);
  }
}

TEST_CASE("relative resolutions over A2") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  auto inv = wb.inventory();

  // Every module is 1-projective over a finite-type hereditary algebra:
  // resolutions have length zero.
  for (const auto& m : inv.modules) {
    const RelResolution& r = wb.n_resolution(m, Level(1));
    CHECK(r.status == RelResolution::Status::Finite);
    CHECK(r.length == 0);
  }
  // At n = 0, relative pd equals classical pd.
  for (const auto& m : inv.modules) {
    DimVerdict rel = wb.n_pd(m, Level(0));
    DimVerdict cls = pd(m, 8);
    CHECK(rel.token() == cls.token());
  }
}

TEST_CASE("n_ext degeneracies and the subspace oracle") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  auto inv = wb.inventory();

  for (const auto& m : inv.modules)
    for (const auto& n : inv.modules) {
      // n-Ext^0 is Hom.
      CHECK(wb.n_ext(m, n, 0, Level(1)).value ==
            static_cast<long long>(hom_dim(m, n)));
      // n = 0 reproduces classical Ext.
      for (std::size_t i = 0; i <= 2; ++i)
        CHECK(wb.n_ext(m, n, i, Level(0)).value ==
              static_cast<long long>(ext_dim(m, n, i)));
      // Independent routes to relative Ext^1.
      for (Level lv : {Level(0), Level(1), Level(2), Level(std::nullopt)})
        CHECK(wb.n_ext(m, n, 1, lv).value ==
              static_cast<long long>(wb.n_exact_subspace(m, n, lv).dim()));
    }
}

TEST_CASE("Prop-3.4-style sandwich over A2") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  auto inv = wb.inventory();
  for (Level n : {Level(0), Level(1), Level(2)}) {
    for (const auto& m : inv.modules) {
      DimVerdict rel = wb.n_pd(m, n);
      DimVerdict cls = pd(m, 8);
      REQUIRE(rel.is_finite());
      REQUIRE(cls.is_finite());
      CHECK(rel.value <= cls.value);
      CHECK(cls.value <= rel.value + static_cast<long long>(*n));
    }
  }
}

TEST_CASE("n_id degenerates to classical id at n = 0") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  CHECK(wb.n_id(simple_rep(A, 1), Level(0)).token() == "finite:1");
  CHECK(wb.n_id(simple_rep(A, 0), Level(0)).token() == "finite:0");
  CHECK(wb.n_id(projective_rep(A, 0), Level(0)).token() == "finite:0");
  // 1-gldim(A2) = 0 forces 1-id = 0 everywhere.
  for (const auto& m : wb.inventory().modules)
    CHECK(wb.n_id(m, Level(1)).token() == "finite:0");
}

TEST_CASE("fd_n_gldim values") {
  {
    RelWorkbench wb(a2(), 2, 8);
    CHECK(wb.fd_n_gldim(Level(0)).token() == "finite:1");
    DimVerdict v1 = wb.fd_n_gldim(Level(1));
    CHECK(v1.token() == "finite:0");
    CHECK(v1.decisive);
    CHECK(wb.fd_n_gldim(std::nullopt).token() == "finite:0");
  }
  {
    RelWorkbench wb(dualnum(), 4, 8);
    CHECK(wb.fd_n_gldim(Level(0)).token() == "infinite");
    CHECK(wb.fd_n_gldim(Level(1)).token() == "infinite");
    CHECK(wb.fd_n_gldim(Level(2)).token() == "infinite");
  }
  {
    RelWorkbench wb(kronecker(), 2, 8);
    DimVerdict v = wb.fd_n_gldim(Level(1));
    CHECK(v.token() == "finite:0");
    bool has_divergence = false;
    for (const auto& c : v.caveats) has_divergence |= c.find("DIVERGENCE") != std::string::npos;
    CHECK(has_divergence);  // infinite representation type must be flagged
    CHECK(wb.fd_n_gldim(Level(0)).token() == "finite:1");
  }
}

TEST_CASE("finitistic-dimension coincidence verifier") {
  {
    RelWorkbench wb(a2(), 2, 8);
    auto rep1 = wb.verify_fpd_theorem(1);  // fPD(A2) = 1 <= 1
    CHECK(rep1.fpd_verdict.token() == "finite:1");
    CHECK(rep1.classes_agree);
    CHECK(rep1.subspaces_agree);
    CHECK(rep1.consistent);
    CHECK_FALSE(rep1.advisory);

    auto rep0 = wb.verify_fpd_theorem(0);  // fPD = 1 > 0: classes must differ
    bool agree_everywhere = rep0.classes_agree && rep0.subspaces_agree;
    CHECK_FALSE(agree_everywhere);
    CHECK(rep0.consistent);
  }
  {
    RelWorkbench wb(dualnum(), 4, 8);
    for (std::size_t n : {0u, 1u, 2u}) {
      auto rep = wb.verify_fpd_theorem(n);  // fPD = 0: all classes equal projectives
      CHECK(rep.fpd_verdict.token() == "finite:0");
      CHECK(rep.classes_agree);
      CHECK(rep.subspaces_agree);
      CHECK(rep.consistent);
    }
  }
}
