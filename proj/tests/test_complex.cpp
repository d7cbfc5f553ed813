#include <catch2/catch_amalgamated.hpp>

#include "relhom/complex.hpp"

using namespace relhom;

namespace {

AlgebraPtr a2() {
  Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}};
  return build_algebra(q, {}, {5}, 2);
}

/// The nonsplit exact complex 0 -> S2 -> P(1) -> S1 -> 0 in degrees
/// [-1, 1].
BoundedComplex a2_exact_complex(const AlgebraPtr& A) {
  auto s1 = simple_rep(A, 0);
  auto s2 = simple_rep(A, 1);
  auto p1 = projective_rep(A, 0);
  ModuleMorphism inj(s2, p1, {Matrix(5, 1, 0), Matrix::identity(5, 1)});
  ModuleMorphism surj(p1, s1, {Matrix::identity(5, 1), Matrix(5, 0, 1)});
  BoundedComplex x(A, -1, {s2, p1, s1}, {inj, surj});
  x.validate();
  return x;
}

/// The projective resolution [S2 -> P(1)] of S1 in degrees [-1, 0].
BoundedComplex a2_resolution_complex(const AlgebraPtr& A) {
  auto s2 = simple_rep(A, 1);
  auto p1 = projective_rep(A, 0);
  ModuleMorphism inj(s2, p1, {Matrix(5, 1, 0), Matrix::identity(5, 1)});
  BoundedComplex x(A, -1, {s2, p1}, {inj});
  x.validate();
  return x;
}

}  // namespace

TEST_CASE("cone of the identity is contractible") {
  auto A = a2();
  BoundedComplex x = a2_exact_complex(A);
  ChainMap id{&x, &x, {}};
  for (int i = x.lo(); i <= x.hi(); ++i) id.comps.emplace(i, identity_morphism(x.term(i)));
  id.validate();
  BoundedComplex c = cone(id);
  CHECK(is_contractible(c));
}

TEST_CASE("cone over the zero complex is the shift") {
  auto A = a2();
  BoundedComplex x = a2_exact_complex(A);
  BoundedComplex zero = BoundedComplex::zero(A);
  ChainMap to_zero{&x, &zero, {}};
  BoundedComplex c = cone(to_zero);
  BoundedComplex shifted = x.shift(1);
  CHECK(c.lo() == shifted.lo());
  CHECK(c.hi() == shifted.hi());
  for (int i = c.lo(); i <= c.hi(); ++i)
    CHECK(c.term(i)->total_dim() == shifted.term(i)->total_dim());
}

TEST_CASE("cone of a projective inclusion has simple homology") {
  auto A = a2();
  auto p1 = projective_rep(A, 0);
  auto p2 = projective_rep(A, 1);
  // P(2) -> P(1): the inclusion of the radical.
  HomSpace hs = hom_space(p2, p1);
  REQUIRE(hs.dim() == 1);
  BoundedComplex x = BoundedComplex::stalk(p2, 0);
  BoundedComplex y = BoundedComplex::stalk(p1, 0);
  ChainMap f{&x, &y, {}};
  f.comps.emplace(0, hs.basis[0]);
  BoundedComplex c = cone(f);
  // Homology: at degree -1 the kernel of P(2) -> P(1) is zero; at degree
  // 0 the cokernel is S1.
  SubRep ker = kernel_rep(c.diff(-1));
  CHECK(ker.rep->is_zero());
  QuotRep cok = cokernel_rep(c.diff(-1));
  CHECK(cok.rep->dims() == std::vector<std::size_t>{1, 0});
}

TEST_CASE("contractibility verdicts") {
  auto A = a2();
  CHECK(is_contractible(BoundedComplex::zero(A)));

  auto m = projective_rep(A, 0);
  BoundedComplex idc(A, 0, {m, m}, {identity_morphism(m)});
  idc.validate();
  CHECK(is_contractible(idc));

  CHECK_FALSE(is_contractible(a2_exact_complex(A)));  // exact but nonsplit
  CHECK_FALSE(is_contractible(BoundedComplex::stalk(m, 0)));
}

TEST_CASE("n-exactness of complexes") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  BoundedComplex x = a2_exact_complex(A);

  CHECK(is_n_exact_complex(x, wb, Level(0)).yes());  // exact complexes are 0-exact
  Verdict v1 = is_n_exact_complex(x, wb, Level(1));
  CHECK(v1.no());  // the middle degree is the nonsplit sequence

  auto m = projective_rep(A, 0);
  BoundedComplex idc(A, 0, {m, m}, {identity_morphism(m)});
  for (Level n : {Level(0), Level(1), Level(std::nullopt)})
    CHECK(is_n_exact_complex(idc, wb, n).yes());

  // A stalk is nowhere exact at its degree.
  BoundedComplex stalk = BoundedComplex::stalk(simple_rep(A, 0), 0);
  CHECK(is_n_exact_at(stalk, 0, wb, Level(0)).no());
}

TEST_CASE("inf_n and sup_n") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);

  BoundedComplex stalk = BoundedComplex::stalk(simple_rep(A, 0), 0);
  InfSup s = inf_sup_n(stalk, wb, Level(0));
  CHECK(s.inf_n == ExtInt::fin(0));
  CHECK(s.sup_n == ExtInt::fin(0));

  auto m = projective_rep(A, 0);
  BoundedComplex idc(A, 0, {m, m}, {identity_morphism(m)});
  InfSup c = inf_sup_n(idc, wb, Level(1));
  CHECK(c.inf_n == ExtInt::pos_inf());
  CHECK(c.sup_n == ExtInt::neg_inf());

  // The A2 exact complex has a single 1-failure at its middle degree.
  BoundedComplex x = a2_exact_complex(A);
  InfSup e1 = inf_sup_n(x, wb, Level(1));
  CHECK(e1.inf_n == ExtInt::fin(0));
  CHECK(e1.sup_n == ExtInt::fin(0));
  InfSup e0 = inf_sup_n(x, wb, Level(0));
  CHECK(e0.inf_n == ExtInt::pos_inf());

  // Shift convention: inf_n(X[k]) = inf_n(X) - k.
  BoundedComplex sh = stalk.shift(2);
  InfSup ss = inf_sup_n(sh, wb, Level(0));
  CHECK(ss.inf_n == ExtInt::fin(-2));
}

TEST_CASE("n-quasi-isomorphisms") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);

  // Identity is an n-quasi-iso for every n.
  BoundedComplex x = a2_resolution_complex(A);
  ChainMap id{&x, &x, {}};
  for (int i = x.lo(); i <= x.hi(); ++i) id.comps.emplace(i, identity_morphism(x.term(i)));
  for (Level n : {Level(0), Level(1), Level(std::nullopt)})
    CHECK(is_n_quasi_iso(id, wb, n).yes());

  // The resolution [S2 -> P(1)] -> S1 is a quasi-iso but not a
  // 1-quasi-iso: its cone is the nonsplit exact complex.
  BoundedComplex target = BoundedComplex::stalk(simple_rep(A, 0), 0);
  ChainMap f{&x, &target, {}};
  ModuleMorphism surj(projective_rep(A, 0), simple_rep(A, 0),
                      {Matrix::identity(5, 1), Matrix(5, 0, 1)});
  f.comps.emplace(0, surj);
  f.validate();
  CHECK(is_n_quasi_iso(f, wb, Level(0)).yes());
  CHECK(is_n_quasi_iso(f, wb, Level(1)).no());
}

TEST_CASE("stalk resolutions and the resolution chain map") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);

  // A class member resolves as itself.
  ComplexResolution r = stalk_resolution(simple_rep(A, 0), 0, wb, Level(1), 8);
  CHECK(r.p->lo() == 0);
  CHECK(r.p->hi() == 0);
  CHECK_FALSE(r.truncated);
  r.map().validate();
  CHECK(is_n_quasi_iso(r.map(), wb, Level(1)).yes());

  // At n = 0 the stalk resolution of S1 is its projective resolution.
  ComplexResolution r0 = stalk_resolution(simple_rep(A, 0), 0, wb, Level(0), 8);
  CHECK(r0.p->lo() == -1);
  CHECK(r0.p->hi() == 0);
  r0.map().validate();
  CHECK(is_n_quasi_iso(r0.map(), wb, Level(0)).yes());
}

TEST_CASE("complex resolutions of multi-term complexes") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  BoundedComplex x = a2_resolution_complex(A);

  for (Level n : {Level(0), Level(1)}) {
    ComplexResolution res = complex_n_resolution(x, wb, n, 8);
    res.p->validate();
    res.map().validate();
    CHECK_FALSE(res.truncated);
    CHECK(is_n_quasi_iso(res.map(), wb, n).yes());
  }
}

TEST_CASE("complex n-pd on stalks matches the module value") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  BoundedComplex stalk = BoundedComplex::stalk(simple_rep(A, 0), 0);

  DimVerdict v0 = complex_n_pd(stalk, wb, Level(0), 8);
  CHECK(v0.token() == "finite:1");  // pd S1 = 1
  DimVerdict v1 = complex_n_pd(stalk, wb, Level(1), 8);
  CHECK(v1.token() == "finite:0");  // S1 is 1-projective

  // Shift: pd goes up with the suspension.
  DimVerdict vs = complex_n_pd(stalk.shift(1), wb, Level(0), 8);
  CHECK(vs.token() == "finite:2");
  DimVerdict vm = complex_n_pd(stalk.shift(-1), wb, Level(0), 8);
  CHECK(vm.token() == "finite:0");

  // The two criteria agree.
  CHECK(complex_n_pd_vanishing(stalk, wb, Level(0), 8).token() == "finite:1");
  CHECK(complex_n_pd_vanishing(stalk, wb, Level(1), 8).token() == "finite:0");

  // Fully n-exact complexes have pd -infinity.
  auto m = projective_rep(A, 0);
  BoundedComplex idc(A, 0, {m, m}, {identity_morphism(m)});
  CHECK(complex_n_pd(idc, wb, Level(0), 8).token() == "minus-infinite");
}

TEST_CASE("complex n-ext against modules") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  auto s1 = simple_rep(A, 0);
  auto s2 = simple_rep(A, 1);
  BoundedComplex stalk = BoundedComplex::stalk(s1, 0);

  // Stalk values reproduce classical Ext at n = 0.
  for (long long i = 0; i <= 2; ++i) {
    DimVerdict e = complex_n_ext(stalk, s2, i, wb, Level(0), 8);
    CHECK(e.value == static_cast<long long>(ext_dim(s1, s2, static_cast<std::size_t>(i))));
  }

  // Ext into a complex: degenerate stalk case equals the module theory.
  for (long long i = 0; i <= 2; ++i) {
    DimVerdict e = complex_n_ext_into(s1, BoundedComplex::stalk(s2, 0), i, wb, Level(0));
    CHECK(e.value == static_cast<long long>(ext_dim(s1, s2, static_cast<std::size_t>(i))));
  }
}

TEST_CASE("complex n-id degenerates correctly on stalks") {
  auto A = a2();
  RelWorkbench wb(A, 2, 8);
  CHECK(complex_n_id(BoundedComplex::stalk(simple_rep(A, 1), 0), wb, Level(0), 8).token() ==
        "finite:1");
  CHECK(complex_n_id(BoundedComplex::stalk(simple_rep(A, 0), 0), wb, Level(0), 8).token() ==
        "finite:0");
  CHECK(complex_n_id(BoundedComplex::stalk(projective_rep(A, 0), 0), wb, Level(0), 8).token() ==
        "finite:0");
  // Shift moves it the other way.
  CHECK(complex_n_id(BoundedComplex::stalk(simple_rep(A, 1), 0).shift(1), wb, Level(0), 8).token() ==
        "finite:0");
}
