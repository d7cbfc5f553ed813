#include <catch2/catch_amalgamated.hpp>

#include "relhom/singularity.hpp"

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

AlgebraPtr point(std::uint32_t p, const std::string& label) {
  Quiver q;
  q.vertices = {label};
  return build_algebra(q, {}, {p}, 2);
}

}  // namespace

TEST_CASE("vanishing verdicts across the catalog") {
  for (std::size_t n = 0; n <= 2; ++n) {
    {
      RelWorkbench wb(a2(), 2, 8);
      SingularityReport rep = n_singularity_vanishes(wb, Level(n));
      CHECK(rep.vanishing.yes());
      CHECK_FALSE(rep.witnesses.empty());
      for (const auto& w : rep.witnesses) CHECK(w.verified);
    }
    {
      RelWorkbench wb(semisimple2(), 2, 8);
      SingularityReport rep = n_singularity_vanishes(wb, Level(n));
      CHECK(rep.vanishing.yes());
      for (const auto& w : rep.witnesses) {
        CHECK(w.verified);
        CHECK(w.length == 0);  // semisimple: every module is projective
      }
    }
    {
      RelWorkbench wb(dualnum(), 4, 8);
      SingularityReport rep = n_singularity_vanishes(wb, Level(n));
      REQUIRE(rep.vanishing.no());
      CHECK(rep.vanishing.witness.find("S(") != std::string::npos);  // simple obstruction
    }
  }
}

TEST_CASE("vanishing for Kronecker is decided by the finite global dimension") {
  RelWorkbench wb(kronecker(), 2, 8);
  for (std::size_t n = 0; n <= 2; ++n) {
    SingularityReport rep = n_singularity_vanishes(wb, Level(n));
    CHECK(rep.vanishing.yes());
    CHECK(rep.gldim_verdict.token() == "finite:1");
  }
}

TEST_CASE("vanishing at level infinity") {
  {
    RelWorkbench wb(a2(), 2, 8);
    SingularityReport rep = n_singularity_vanishes(wb, std::nullopt);
    CHECK(rep.vanishing.yes());
  }
  {
    RelWorkbench wb(dualnum(), 4, 8);
    SingularityReport rep = n_singularity_vanishes(wb, std::nullopt);
    CHECK(rep.vanishing.no());
  }
}

TEST_CASE("kernel closure of the n-projectives") {
  {
    // Hereditary at n = 0: kernels of epis between projectives are
    // projective.
    RelWorkbench wb(a2(), 2, 8);
    Verdict v = check_kernel_closure(wb, Level(0));
    CHECK(v.yes());
  }
  {
    RelWorkbench wb(semisimple2(), 2, 8);
    for (std::size_t n = 0; n <= 1; ++n) CHECK(check_kernel_closure(wb, Level(n)).yes());
  }
  {
    // Best-effort inventories only ever yield advisory answers.
    RelWorkbench wb(kronecker(), 2, 8);
    Verdict v = check_kernel_closure(wb, Level(1));
    CHECK_FALSE(v.no());
    CHECK_FALSE(v.yes());
  }
  {
    // A2 at n = 1: every module is 1-projective, and kernels of epis stay
    // in the class.
    RelWorkbench wb(a2(), 2, 8);
    Verdict v = check_kernel_closure(wb, Level(1));
    CHECK(v.yes());
  }
}

TEST_CASE("recollement corollary on standard gluings") {
  auto pt5a = point(5, "s");
  auto pt5b = point(5, "t");

  {
    // point + point -> A2: all three finite.
    TriangularGluing g{pt5a, pt5b, {{"c", "t", "s"}}, {}};
    RecollementReport rep = recollement_corollary_check(g, Level(0), 3, 8);
    CHECK(rep.decisive);
    CHECK(rep.consistent);
    CHECK(rep.sanity_ok);
  }
  {
    // dual numbers + point, no connectors: product algebra, infinite side.
    TriangularGluing g{dualnum(), point(5, "w"), {}, {}};
    RecollementReport rep = recollement_corollary_check(g, Level(1), 3, 8);
    CHECK(rep.decisive);
    CHECK(rep.consistent);
    CHECK(rep.glued.is_infinite());
  }
  {
    // A2 + point -> A3 over p = 7.
    Quiver a2q;
    a2q.vertices = {"1", "2"};
    a2q.arrows = {{"a", 0, 1}};
    auto A2 = build_algebra(a2q, {}, {7}, 2);
    TriangularGluing g{A2, point(7, "0"), {{"c", "0", "1"}}, {}};
    RecollementReport rep = recollement_corollary_check(g, Level(1), 3, 8);
    CHECK(rep.decisive);
    CHECK(rep.consistent);
    CHECK(rep.glued.is_finite());
  }
}
