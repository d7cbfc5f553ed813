#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relhom/error.hpp"

namespace relhom {

/// Element of a prime field, stored reduced in [0, p).
using fel = std::uint32_t;

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The base field F_p. Every matrix carries its modulus, so FieldSpec is
/// mostly a validated wrapper used at construction boundaries.
struct FieldSpec {
  std::uint32_t p = 0;

  void validate() const {
    if (!is_prime_u32(p)) fail(Error::Kind::Parse, "field characteristic " + std::to_string(p) + " is not prime");
  }
};

inline fel fadd(fel a, fel b, std::uint32_t p) { return (a + b) % p; }
inline fel fsub(fel a, fel b, std::uint32_t p) { return (a + p - b % p) % p; }
inline fel fneg(fel a, std::uint32_t p) { return a % p == 0 ? 0 : p - a % p; }
inline fel fmul(fel a, fel b, std::uint32_t p) {
  return static_cast<fel>((static_cast<std::uint64_t>(a) * b) % p);
}

inline fel fpow(fel a, std::uint64_t e, std::uint32_t p) {
  fel r = 1 % p;
  fel base = a % p;
  while (e) {
    if (e & 1) r = fmul(r, base, p);
    base = fmul(base, base, p);
    e >>= 1;
  }
  return r;
}

inline fel finv(fel a, std::uint32_t p) {
  a %= p;
  if (a == 0) fail(Error::Kind::InternalInconsistency, "division by zero in F_p");
  return fpow(a, p - 2, p);  // p prime
}

/// Dense row-major matrix over F_p. Zero-by-n and n-by-zero shapes are
/// legal and show up constantly (zero modules, empty hom spaces).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::uint32_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::uint32_t p, std::size_t n) {
    Matrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
  }

  static Matrix from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    Matrix m(p, rows.size(), nc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require_internal(rows[i].size() == nc, "ragged row list");
      for (std::size_t j = 0; j < nc; ++j) {
        long long v = rows[i][j] % static_cast<long long>(p);
        if (v < 0) v += p;
        m.at(i, j) = static_cast<fel>(v);
      }
    }
    return m;
  }

  std::uint32_t mod() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty_shape() const { return rows_ == 0 || cols_ == 0; }

  fel& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  fel at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (fel v : data_)
      if (v) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix transpose() const {
    Matrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    require_internal(p_ == o.p_ && cols_ == o.rows_, "matrix product shape/field mismatch");
    Matrix r(p_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        fel a = at(i, k);
        if (!a) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          r.at(i, j) = fadd(r.at(i, j), fmul(a, o.at(k, j), p_), p_);
        }
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    require_internal(p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
    Matrix r(p_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = fadd(data_[i], o.data_[i], p_);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_internal(p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_, "matrix difference shape mismatch");
    Matrix r(p_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = fsub(data_[i], o.data_[i], p_);
    return r;
  }

  Matrix scaled(fel c) const {
    Matrix r(p_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = fmul(data_[i], c, p_);
    return r;
  }

  /// [this | o] side by side.
  Matrix hstack(const Matrix& o) const {
    require_internal(p_ == o.p_ && rows_ == o.rows_, "hstack row mismatch");
    Matrix r(p_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
  }

  Matrix vstack(const Matrix& o) const {
    require_internal(p_ == o.p_ && cols_ == o.cols_, "vstack column mismatch");
    Matrix r(p_, rows_ + o.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
  }

  Matrix column(std::size_t j) const {
    Matrix c(p_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
  }

  Matrix columns(const std::vector<std::size_t>& idx) const {
    Matrix c(p_, rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t i = 0; i < rows_; ++i) c.at(i, j) = at(i, idx[j]);
    return c;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        os << at(i, j);
        if (j + 1 < cols_) os << ",";
      }
      os << "]";
      if (i + 1 < rows_) os << ",";
    }
    os << "]";
    return os.str();
  }

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<fel> data_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

/// Reduced row echelon form with deterministic pivoting: columns are
/// scanned left to right, the pivot row is the first row with a nonzero
/// entry. Outputs are therefore byte-stable across runs.
inline RrefResult rref(const Matrix& m) {
  RrefResult res;
  res.reduced = m;
  Matrix& a = res.reduced;
  const std::uint32_t p = m.mod();
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
    fel inv = finv(a.at(row, col), p);
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(row, j) = fmul(a.at(row, j), inv, p);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      fel f = a.at(r, col);
      if (!f) continue;
      for (std::size_t j = 0; j < a.cols(); ++j)
        a.at(r, j) = fsub(a.at(r, j), fmul(f, a.at(row, j), p), p);
    }
    res.pivot_cols.push_back(col);
    ++row;
  }
  res.rank = res.pivot_cols.size();
  return res;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// Columns form a basis of the null space {v : m v = 0}.
inline Matrix kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  const std::uint32_t p = m.mod();
  std::vector<std::size_t> free_cols;
  {
    std::size_t pi = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (pi < r.pivot_cols.size() && r.pivot_cols[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
  }
  Matrix k(p, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t fc = free_cols[j];
    k.at(fc, j) = 1 % p;
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
      k.at(r.pivot_cols[i], j) = fneg(r.reduced.at(i, fc), p);
  }
  return k;
}

/// Columns form a basis of the column space; chosen as the pivot columns
/// of the input, so the basis consists of original columns.
inline Matrix image_basis(const Matrix& m) {
  RrefResult r = rref(m);
  return m.columns(r.pivot_cols);
}

/// One particular solution of m x = b (b may have several columns), or
/// nullopt when the system is inconsistent.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  require_internal(m.mod() == b.mod() && m.rows() == b.rows(), "solve shape mismatch");
  RrefResult r = rref(m.hstack(b));
  // Inconsistent iff some pivot lands in the appended block.
  for (std::size_t pc : r.pivot_cols)
    if (pc >= m.cols()) return std::nullopt;
  Matrix x(m.mod(), m.cols(), b.cols());
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.at(r.pivot_cols[i], j) = r.reduced.at(i, m.cols() + j);
  return x;
}

/// True iff the columns of v all lie in the column span of basis.
inline bool in_column_span(const Matrix& basis, const Matrix& v) {
  return solve(basis, v).has_value();
}

// ---------------------------------------------------------------------------
// Polynomials over F_p: coefficient vectors, low degree first, no trailing
// zeros ("normalized"); the zero polynomial is the empty vector.

using Poly = std::vector<fel>;

inline Poly poly_trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

inline int poly_deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly poly_x() { return Poly{0, 1}; }

inline Poly poly_scale(const Poly& f, fel c, std::uint32_t p) {
  Poly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = fmul(f[i], c, p);
  return poly_trim(r);
}

inline Poly poly_monic(const Poly& f, std::uint32_t p) {
  if (f.empty()) return f;
  return poly_scale(f, finv(f.back(), p), p);
}

inline Poly poly_add(const Poly& f, const Poly& g, std::uint32_t p) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = fadd(r[i], g[i], p);
  return poly_trim(r);
}

inline Poly poly_sub(const Poly& f, const Poly& g, std::uint32_t p) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = fsub(r[i], g[i], p);
  return poly_trim(r);
}

inline Poly poly_mul(const Poly& f, const Poly& g, std::uint32_t p) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i]) continue;
    for (std::size_t j = 0; j < g.size(); ++j)
      r[i + j] = fadd(r[i + j], fmul(f[i], g[j], p), p);
  }
  return poly_trim(r);
}

/// Remainder of f modulo g (g nonzero).
inline Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  require_internal(!g.empty(), "poly_mod by zero polynomial");
  f = poly_trim(std::move(f));
  fel lead_inv = finv(g.back(), p);
  while (f.size() >= g.size()) {
    fel c = fmul(f.back(), lead_inv, p);
    std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i)
      f[shift + i] = fsub(f[shift + i], fmul(c, g[i], p), p);
    f = poly_trim(std::move(f));
  }
  return f;
}

inline Poly poly_div(const Poly& f, const Poly& g, std::uint32_t p) {
  require_internal(!g.empty(), "poly_div by zero polynomial");
  Poly rem = poly_trim(f);
  if (rem.size() < g.size()) return {};
  Poly q(rem.size() - g.size() + 1, 0);
  fel lead_inv = finv(g.back(), p);
  while (rem.size() >= g.size() && !rem.empty()) {
    fel c = fmul(rem.back(), lead_inv, p);
    std::size_t shift = rem.size() - g.size();
    q[shift] = c;
    for (std::size_t i = 0; i < g.size(); ++i)
      rem[shift + i] = fsub(rem[shift + i], fmul(c, g[i], p), p);
    rem = poly_trim(std::move(rem));
  }
  return poly_trim(q);
}

inline Poly poly_gcd(Poly f, Poly g, std::uint32_t p) {
  f = poly_trim(std::move(f));
  g = poly_trim(std::move(g));
  while (!g.empty()) {
    Poly r = poly_mod(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  return poly_monic(f, p);
}

inline Poly poly_lcm(const Poly& f, const Poly& g, std::uint32_t p) {
  if (f.empty() || g.empty()) return {};
  Poly d = poly_gcd(f, g, p);
  return poly_monic(poly_mul(poly_div(f, d, p), g, p), p);
}

inline Poly poly_derivative(const Poly& f, std::uint32_t p) {
  if (f.size() <= 1) return {};
  Poly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = fmul(f[i], static_cast<fel>(i % p), p);
  return poly_trim(r);
}

inline fel poly_eval(const Poly& f, fel x, std::uint32_t p) {
  fel r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = fadd(fmul(r, x, p), f[i], p);
  return r;
}

inline Poly poly_pow_mod(const Poly& base, std::uint64_t e, const Poly& mod, std::uint32_t p) {
  Poly r{1 % p};
  Poly b = poly_mod(base, mod, p);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, b, p), mod, p);
    b = poly_mod(poly_mul(b, b, p), mod, p);
    e >>= 1;
  }
  return r;
}

inline std::string poly_to_string(const Poly& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (!f[i]) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || f[i] != 1) os << f[i];
    if (i >= 1) {
      if (f[i] != 1) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

/// Monic minimal polynomial of a square matrix: the lcm of the minimal
/// polynomials on the cyclic subspaces generated by the standard basis.
inline Poly min_poly(const Matrix& m) {
  require_internal(m.rows() == m.cols(), "min_poly needs a square matrix");
  const std::uint32_t p = m.mod();
  const std::size_t n = m.rows();
  if (n == 0) return Poly{1 % p};
  Poly f{1 % p};
  for (std::size_t seed = 0; seed < n; ++seed) {
    // Krylov iterates of e_seed, tracked as columns alongside their
    // coordinates, until the first linear dependence appears.
    Matrix iterates(p, n, 0);
    Matrix v(p, n, 1);
    v.at(seed, 0) = 1;
    Poly local;
    for (std::size_t step = 0; step <= n; ++step) {
      auto coords = solve(iterates, v);
      if (coords) {
        // m^step e = sum coords_i m^i e, so x^step - sum coords_i x^i kills e.
        Poly g(step + 1, 0);
        g[step] = 1;
        for (std::size_t i = 0; i < step; ++i) g[i] = fneg(coords->at(i, 0), p);
        local = g;
        break;
      }
      iterates = iterates.hstack(v);
      v = m * v;
    }
    require_internal(!local.empty(), "Krylov iteration failed to terminate");
    f = poly_lcm(f, local, p);
  }
  return f;
}

namespace detail {

/// Deterministic xorshift-style generator for the rare randomized
/// fallbacks; fixed seeds keep every output byte-stable.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint32_t below(std::uint32_t bound) { return static_cast<std::uint32_t>(next() % bound); }

 private:
  std::uint64_t state_;
};

inline Poly poly_pth_root(const Poly& f, std::uint32_t p) {
  // Over F_p, f(x) = g(x^p) implies f = (h(x))^p with h_i = f_{p i}.
  Poly h((f.size() + p - 1) / p, 0);
  for (std::size_t i = 0; i * p < f.size(); ++i) h[i] = f[i * p];
  return poly_trim(h);
}

inline Poly frobenius_pow(const Poly& g, std::size_t times, const Poly& mod, std::uint32_t p) {
  Poly r = poly_mod(g, mod, p);
  for (std::size_t i = 0; i < times; ++i) r = poly_pow_mod(r, p, mod, p);
  return r;
}

}  // namespace detail

/// Splits f into two coprime nonconstant monic factors when possible.
/// Returns nullopt iff f is (up to scalar) a power of one irreducible.
/// Stages: power of x, rational roots, squarefree parts, distinct-degree,
/// then equal-degree splitting via trace maps with a fixed-seed generator.
inline std::optional<std::pair<Poly, Poly>> coprime_split(const Poly& f_in, std::uint32_t p) {
  Poly f = poly_monic(poly_trim(f_in), p);
  if (poly_deg(f) < 2) return std::nullopt;

  // Factor out the power of x.
  std::size_t k = 0;
  while (k < f.size() && f[k] == 0) ++k;
  if (k > 0) {
    Poly rest(f.begin() + k, f.end());
    rest = poly_trim(rest);
    if (poly_deg(rest) >= 1) {
      Poly xk(k + 1, 0);
      xk[k] = 1;
      return std::make_pair(xk, rest);
    }
    return std::nullopt;  // f = x^k
  }

  // Rational root: split off (x - c)^mult.
  for (fel c = 0; c < p; ++c) {
    if (poly_eval(f, c, p) != 0) continue;
    Poly lin{fneg(c, p), 1};
    Poly g{1 % p};
    Poly rest = f;
    while (!rest.empty() && poly_eval(rest, c, p) == 0) {
      rest = poly_div(rest, lin, p);
      g = poly_mul(g, lin, p);
    }
    if (poly_deg(rest) >= 1) return std::make_pair(g, rest);
    break;  // f = (x-c)^deg
  }

  // Separate squarefree parts of distinct multiplicity.
  Poly d = poly_derivative(f, p);
  if (d.empty()) {
    // f = root(x)^p; a coprime split of the root lifts to one of f.
    Poly root = detail::poly_pth_root(f, p);
    auto sub = coprime_split(root, p);
    if (!sub) return std::nullopt;
    Poly g1{1 % p}, g2{1 % p};
    for (std::uint32_t i = 0; i < p; ++i) {
      g1 = poly_mul(g1, sub->first, p);
      g2 = poly_mul(g2, sub->second, p);
    }
    return std::make_pair(g1, g2);
  }
  Poly sf;  // squarefree polynomial with the same irreducible factors as f
  {
    Poly g = poly_gcd(f, d, p);
    if (poly_deg(g) >= 1) {
      // f = g * (f/g); they may share factors, so only usable when coprime.
      Poly q = poly_div(f, g, p);
      if (poly_deg(poly_gcd(g, q, p)) == 0) {
        return std::make_pair(g, q);
      }
    }
    sf = poly_div(f, g, p);
  }

  sf = poly_monic(sf, p);
  if (poly_deg(sf) < 1) return std::nullopt;

  auto lift_split = [&](const Poly& a) -> std::optional<std::pair<Poly, Poly>> {
    // a divides sf and is coprime to sf/a; lift multiplicities into f.
    Poly g{1 % p};
    Poly rest = f;
    while (true) {
      Poly common = poly_gcd(rest, a, p);
      if (poly_deg(common) < 1) break;
      g = poly_mul(g, common, p);
      rest = poly_div(rest, common, p);
    }
    g = poly_monic(g, p);
    rest = poly_monic(rest, p);
    if (poly_deg(g) >= 1 && poly_deg(rest) >= 1) return std::make_pair(g, rest);
    return std::nullopt;
  };

  // Distinct-degree: for the first e with gcd(sf, x^{p^e} - x) proper we
  // get a coprime split; if the gcd is everything, all factors have
  // degree exactly e.
  std::size_t sf_deg = static_cast<std::size_t>(poly_deg(sf));
  Poly w = poly_x();
  std::size_t equal_degree = 0;
  for (std::size_t e = 1; e <= sf_deg; ++e) {
    w = poly_pow_mod(w, p, sf, p);
    Poly g = poly_gcd(poly_sub(w, poly_x(), p), sf, p);
    if (poly_deg(g) >= 1 && static_cast<std::size_t>(poly_deg(g)) < sf_deg) return lift_split(g);
    if (static_cast<std::size_t>(poly_deg(g)) == sf_deg) {
      equal_degree = e;
      break;
    }
  }
  if (equal_degree == 0 || sf_deg == equal_degree) return std::nullopt;  // irreducible

  // Equal-degree (Cantor-Zassenhaus, trace-map variant for odd p).
  require_internal(p % 2 == 1, "equal-degree splitting requires odd characteristic");
  detail::SplitMix rng(0x9d5a1f2ce3b7c04dULL ^ (static_cast<std::uint64_t>(sf_deg) << 8) ^ p);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Poly r(sf_deg, 0);
    for (std::size_t i = 0; i < sf_deg; ++i) r[i] = static_cast<fel>(rng.below(p));
    r = poly_trim(r);
    if (poly_deg(r) < 1) continue;
    // Trace to the degree-e subfield, then a half-power test.
    Poly tr;
    Poly term = poly_mod(r, sf, p);
    tr = term;
    for (std::size_t i = 1; i < equal_degree; ++i) {
      term = detail::frobenius_pow(term, 1, sf, p);
      tr = poly_add(tr, term, p);
    }
    Poly h = poly_pow_mod(tr, (static_cast<std::uint64_t>(p) - 1) / 2, sf, p);
    Poly g = poly_gcd(poly_sub(h, Poly{1 % p}, p), sf, p);
    if (poly_deg(g) >= 1 && static_cast<std::size_t>(poly_deg(g)) < sf_deg) return lift_split(g);
    g = poly_gcd(tr, sf, p);
    if (poly_deg(g) >= 1 && static_cast<std::size_t>(poly_deg(g)) < sf_deg) return lift_split(g);
  }
  return std::nullopt;
}

/// Evaluates a polynomial at a square matrix.
inline Matrix poly_apply(const Poly& f, const Matrix& m) {
  require_internal(m.rows() == m.cols(), "poly_apply needs a square matrix");
  const std::uint32_t p = m.mod();
  Matrix r(p, m.rows(), m.rows());
  Matrix pw = Matrix::identity(p, m.rows());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i]) r = r + pw.scaled(f[i]);
    if (i + 1 < f.size()) pw = pw * m;
  }
  return r;
}

}  // namespace relhom
