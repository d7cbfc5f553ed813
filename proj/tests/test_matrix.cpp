#include <catch2/catch_amalgamated.hpp>

#include "relhom/matrix.hpp"

using namespace relhom;

namespace {

Matrix random_matrix(detail::SplitMix& rng, std::uint32_t p, std::size_t r, std::size_t c) {
  Matrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng.below(p);
  return m;
}

}  // namespace

TEST_CASE("rref on identity and zero matrices") {
  Matrix id = Matrix::identity(5, 2);
  auto r = rref(id);
  CHECK(r.reduced == id);
  CHECK(r.rank == 2);

  Matrix z(5, 3, 4);
  auto rz = rref(z);
  CHECK(rz.reduced == z);
  CHECK(rz.rank == 0);
}

TEST_CASE("rref detects the dependent row [[1,2],[2,4]] mod 5") {
  Matrix m = Matrix::from_rows(5, {{1, 2}, {2, 4}});
  auto r = rref(m);
  CHECK(r.rank == 1);
  // By hand: row2 = 2*row1, so the reduced form is [[1,2],[0,0]].
  CHECK(r.reduced == Matrix::from_rows(5, {{1, 2}, {0, 0}}));
}

TEST_CASE("rref is idempotent") {
  detail::SplitMix rng(11);
  for (int t = 0; t < 30; ++t) {
    std::uint32_t p = (t % 2) ? 5 : 7;
    Matrix m = random_matrix(rng, p, 1 + rng.below(6), 1 + rng.below(6));
    Matrix once = rref(m).reduced;
    CHECK(rref(once).reduced == once);
  }
}

TEST_CASE("rank plus nullity equals column count") {
  detail::SplitMix rng(23);
  for (int t = 0; t < 40; ++t) {
    std::uint32_t p = (t % 2) ? 5 : 7;
    Matrix m = random_matrix(rng, p, rng.below(6), rng.below(6));
    Matrix k = kernel_basis(m);
    CHECK(rank(m) + k.cols() == m.cols());
    if (!k.empty_shape()) CHECK((m * k).is_zero());
    CHECK(rank(k) == k.cols());  // kernel basis is independent
  }
}

TEST_CASE("image basis consists of original columns and spans the image") {
  Matrix m = Matrix::from_rows(5, {{1, 2, 0}, {2, 4, 1}});
  Matrix im = image_basis(m);
  CHECK(im.cols() == rank(m));
  CHECK(im.cols() == 2);
  for (std::size_t j = 0; j < m.cols(); ++j) CHECK(in_column_span(im, m.column(j)));
}

TEST_CASE("solve returns a particular solution exactly when consistent") {
  detail::SplitMix rng(37);
  for (int t = 0; t < 50; ++t) {
    std::uint32_t p = 5;
    Matrix m = random_matrix(rng, p, rng.below(5), rng.below(5));
    Matrix b = random_matrix(rng, p, m.rows(), 1);
    auto x = solve(m, b);
    bool consistent = rank(m.hstack(b)) == rank(m);
    CHECK(x.has_value() == consistent);
    if (x) CHECK(m * *x == b);
  }
}

TEST_CASE("solve handles degenerate shapes") {
  Matrix m(5, 0, 3);
  Matrix b(5, 0, 1);
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  CHECK(x->rows() == 3);

  Matrix m2(5, 3, 0);
  Matrix b2(5, 3, 1);
  b2.at(1, 0) = 1;  // nonzero rhs cannot be hit by an empty matrix
  CHECK_FALSE(solve(m2, b2).has_value());
  Matrix zero_b(5, 3, 1);
  CHECK(solve(m2, zero_b).has_value());

  CHECK(kernel_basis(Matrix(5, 0, 4)).cols() == 4);
}

TEST_CASE("min_poly of identity, nilpotent and diagonal matrices") {
  // Identity over F_3: x - 1.
  CHECK(min_poly(Matrix::identity(3, 2)) == Poly{2, 1});
  // [[0,1],[0,0]]: squares to zero but is nonzero, so x^2.
  Matrix n = Matrix::from_rows(5, {{0, 1}, {0, 0}});
  CHECK((n * n).is_zero());
  CHECK(!n.is_zero());
  CHECK(min_poly(n) == Poly{0, 0, 1});
  // diag(1,2) over F_5: (x-1)(x-2) = x^2 - 3x + 2, witnessed on both
  // eigenvectors separately.
  Matrix d = Matrix::from_rows(5, {{1, 0}, {0, 2}});
  Poly f = min_poly(d);
  CHECK(f == Poly{2, 2, 1});
  CHECK(poly_eval(f, 1, 5) == 0);
  CHECK(poly_eval(f, 2, 5) == 0);
  CHECK(poly_apply(f, d).is_zero());
}

TEST_CASE("min_poly annihilates random matrices and divides x^n-ish bounds") {
  detail::SplitMix rng(91);
  for (int t = 0; t < 25; ++t) {
    std::uint32_t p = (t % 2) ? 5 : 7;
    std::size_t n = 1 + rng.below(5);
    Matrix m = random_matrix(rng, p, n, n);
    Poly f = min_poly(m);
    CHECK(poly_apply(f, m).is_zero());
    CHECK(f.back() == 1);
    CHECK(poly_deg(f) <= static_cast<int>(n));
  }
}

TEST_CASE("coprime_split separates distinct factors and rejects primary powers") {
  const std::uint32_t p = 5;
  auto mul = [&](const Poly& a, const Poly& b) { return poly_mul(a, b, p); };

  Poly x = poly_x();
  Poly xm1{4, 1};  // x - 1
  Poly xm2{3, 1};  // x - 2

  auto s = coprime_split(mul(x, xm1), p);
  REQUIRE(s.has_value());
  CHECK(poly_mul(s->first, s->second, p) == mul(x, xm1));
  CHECK(poly_deg(poly_gcd(s->first, s->second, p)) == 0);

  CHECK_FALSE(coprime_split(Poly{0, 0, 1}, p).has_value());    // x^2
  CHECK_FALSE(coprime_split(Poly{2, 0, 1}, p).has_value());    // x^2+2 irreducible mod 5
  Poly q1{2, 0, 1};                                            // x^2+2
  Poly q2{3, 0, 1};                                            // x^2+3, also irreducible
  CHECK_FALSE(coprime_split(mul(q1, q1), p).has_value());

  auto eq = coprime_split(mul(q1, q2), p);  // equal-degree split required
  REQUIRE(eq.has_value());
  CHECK(poly_mul(eq->first, eq->second, p) == mul(q1, q2));
  CHECK(poly_deg(poly_gcd(eq->first, eq->second, p)) == 0);
  CHECK(poly_deg(eq->first) >= 1);
  CHECK(poly_deg(eq->second) >= 1);

  auto mixed = coprime_split(mul(mul(x, x), mul(x, xm1)), p);  // x^3 (x-1)
  REQUIRE(mixed.has_value());
  CHECK(poly_mul(mixed->first, mixed->second, p) == mul(mul(x, x), mul(x, xm1)));

  // (x-1)^5: derivative vanishes mod 5, handled through the p-th root.
  Poly f5{1};
  for (int i = 0; i < 5; ++i) f5 = mul(f5, xm1);
  CHECK_FALSE(coprime_split(f5, p).has_value());
  // (x-1)^5 (x-2)^5 must still split.
  Poly g5{1};
  for (int i = 0; i < 5; ++i) g5 = mul(g5, xm2);
  auto ps = coprime_split(mul(f5, g5), p);
  REQUIRE(ps.has_value());
  CHECK(poly_mul(ps->first, ps->second, p) == mul(f5, g5));
  CHECK(poly_deg(poly_gcd(ps->first, ps->second, p)) == 0);
}

TEST_CASE("polynomial helpers behave") {
  const std::uint32_t p = 7;
  Poly a{1, 2, 3};
  Poly b{4, 1};
  Poly q = poly_div(a, b, p);
  Poly r = poly_mod(a, b, p);
  CHECK(poly_add(poly_mul(q, b, p), r, p) == a);
  CHECK(poly_deg(r) < poly_deg(b));
  CHECK(poly_gcd(poly_mul(a, b, p), b, p) == poly_monic(b, p));
  CHECK(poly_lcm(b, b, p) == poly_monic(b, p));
  CHECK(poly_to_string(Poly{2, 0, 1}) == "x^2 + 2");
}
