#include "kz/intmat.hpp"

#include <algorithm>
#include <cstdlib>

namespace kz {

namespace {
using i128 = __int128;

constexpr i64 kMax = INT64_MAX;

i64 narrow(i128 v, const char* ctx) {
  if (v > i128(kMax) || v < -i128(kMax)) throw overflow_error(ctx);
  return i64(v);
}
}  // namespace

i64 checked_add(i64 a, i64 b) { return narrow(i128(a) + i128(b), "integer add overflow"); }
i64 checked_sub(i64 a, i64 b) { return narrow(i128(a) - i128(b), "integer sub overflow"); }
i64 checked_mul(i64 a, i64 b) { return narrow(i128(a) * i128(b), "integer mul overflow"); }

i64 gcd_i64(i64 a, i64 b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rat::Rat(i64 n, i64 d) {
  if (d == 0) throw std::invalid_argument("Rat: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i64 g = gcd_i64(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Rat Rat::add(Rat a, Rat b) {
  i64 g = gcd_i64(a.den, b.den);
  i64 bd = b.den / g;
  i64 n = checked_add(checked_mul(a.num, bd), checked_mul(b.num, a.den / g));
  return Rat(n, checked_mul(a.den, bd));
}
Rat Rat::sub(Rat a, Rat b) { return add(a, Rat(-b.num, b.den)); }
Rat Rat::mul(Rat a, Rat b) {
  i64 g1 = gcd_i64(a.num, b.den), g2 = gcd_i64(b.num, a.den);
  return Rat(checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1));
}
Rat Rat::div(Rat a, Rat b) {
  if (b.num == 0) throw std::invalid_argument("Rat: divide by zero");
  return mul(a, Rat(b.den, b.num));
}
std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::transpose() const {
  IMat t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IMat IMat::mul(const IMat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("IMat::mul shape");
  IMat p(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      i64 aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.c_; ++j) {
        if (o.at(k, j) == 0) continue;
        p.at(i, j) = checked_add(p.at(i, j), checked_mul(aik, o.at(k, j)));
      }
    }
  return p;
}

IMat IMat::add(const IMat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("IMat::add shape");
  IMat s(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) s.at(i, j) = checked_add(at(i, j), o.at(i, j));
  return s;
}

IMat IMat::sub(const IMat& o) const { return add(o.scaled(-1)); }

IMat IMat::scaled(i64 s) const {
  IMat m(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.at(i, j) = checked_mul(at(i, j), s);
  return m;
}

std::vector<i64> IMat::apply(const std::vector<i64>& x) const {
  if (int(x.size()) != c_) throw std::invalid_argument("IMat::apply shape");
  std::vector<i64> y(r_, 0);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (at(i, j) != 0) y[i] = checked_add(y[i], checked_mul(at(i, j), x[j]));
  return y;
}

IMat IMat::col(int j) const { return cols_range(j, j + 1); }

IMat IMat::cols_range(int j0, int j1) const {
  IMat m(r_, j1 - j0);
  for (int i = 0; i < r_; ++i)
    for (int j = j0; j < j1; ++j) m.at(i, j - j0) = at(i, j);
  return m;
}

bool IMat::is_zero() const {
  for (i64 v : a_)
    if (v != 0) return false;
  return true;
}

void IMat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < c_; ++k) std::swap(at(i, k), at(j, k));
}
void IMat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < r_; ++k) std::swap(at(k, i), at(k, j));
}
void IMat::row_axpy(int i, int j, i64 q) {
  if (q == 0) return;
  for (int k = 0; k < c_; ++k) at(i, k) = checked_sub(at(i, k), checked_mul(q, at(j, k)));
}
void IMat::col_axpy(int i, int j, i64 q) {
  if (q == 0) return;
  for (int k = 0; k < r_; ++k) at(k, i) = checked_sub(at(k, i), checked_mul(q, at(k, j)));
}
void IMat::negate_row(int i) {
  for (int k = 0; k < c_; ++k) at(i, k) = -at(i, k);
}
void IMat::negate_col(int j) {
  for (int k = 0; k < r_; ++k) at(k, j) = -at(k, j);
}

SmithResult smith_normal_form(const IMat& a) {
  const int m = a.rows(), n = a.cols();
  SmithResult res{IMat::identity(m), a, IMat::identity(n), 0};
  IMat& d = res.d;
  IMat& u = res.u;
  IMat& v = res.v;

  int t = 0;
  const int tmax = std::min(m, n);
  while (t < tmax) {
    bool done = false;
    bool any = false;
    while (!done) {
      // rescan for a minimal-magnitude nonzero pivot; keeps entry growth tame
      int pi = -1, pj = -1;
      i64 best = 0;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j) {
          i64 x = std::llabs(d.at(i, j));
          if (x != 0 && (pi < 0 || x < best)) {
            best = x;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) break;  // trailing block is zero
      any = true;
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool touched = false;
      for (int i = t + 1; i < m; ++i) {
        i64 q = d.at(i, t) / d.at(t, t);
        if (q != 0) {
          d.row_axpy(i, t, q);
          u.row_axpy(i, t, q);
        }
        if (d.at(i, t) != 0) touched = true;
      }
      for (int j = t + 1; j < n; ++j) {
        i64 q = d.at(t, j) / d.at(t, t);
        if (q != 0) {
          d.col_axpy(j, t, q);
          v.col_axpy(j, t, q);
        }
        if (d.at(t, j) != 0) touched = true;
      }
      if (touched) continue;  // remainders become the next, smaller pivot

      // row/col t are clean; enforce the divisibility chain
      done = true;
      for (int i = t + 1; i < m && done; ++i)
        for (int j = t + 1; j < n && done; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            d.row_axpy(t, i, -1);  // row t += row i
            u.row_axpy(t, i, -1);
            done = false;
          }
    }
    if (!any) break;
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
    ++t;
  }
  res.rank = t;
  return res;
}

IMat kernel_basis(const IMat& a) {
  SmithResult s = smith_normal_form(a);
  return s.v.cols_range(s.rank, a.cols());
}

namespace {

// Shared body for integer/rational solves via SNF.
template <typename Out, typename MakeEntry>
std::optional<std::vector<Out>> solve_impl(const IMat& a, const std::vector<i64>& b,
                                           MakeEntry make, bool require_integer) {
  if (int(b.size()) != a.rows()) throw std::invalid_argument("solve: shape");
  SmithResult s = smith_normal_form(a);
  std::vector<i64> ub = s.u.apply(b);
  const int n = a.cols();
  std::vector<Out> y(n, Out(0));
  for (int i = 0; i < s.rank; ++i) {
    i64 di = s.d.at(i, i);
    if (require_integer) {
      if (ub[i] % di != 0) return std::nullopt;
      y[i] = make(ub[i] / di, 1);
    } else {
      y[i] = make(ub[i], di);
    }
  }
  for (int i = s.rank; i < a.rows(); ++i)
    if (ub[i] != 0) return std::nullopt;
  // x = v y
  std::vector<Out> x(n, Out(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (s.v.at(i, j) == 0) continue;
      if constexpr (std::is_same_v<Out, Rat>) {
        x[i] = Rat::add(x[i], Rat::mul(Rat(s.v.at(i, j)), y[j]));
      } else {
        x[i] = checked_add(x[i], checked_mul(s.v.at(i, j), y[j]));
      }
    }
  return x;
}

}  // namespace

std::optional<std::vector<i64>> solve_integer(const IMat& a, const std::vector<i64>& b) {
  return solve_impl<i64>(a, b, [](i64 n, i64) { return n; }, true);
}

std::optional<std::vector<Rat>> solve_rational(const IMat& a, const std::vector<i64>& b) {
  return solve_impl<Rat>(a, b, [](i64 n, i64 d) { return Rat(n, d); }, false);
}

std::optional<IMat> solve_integer_mat(const IMat& a, const IMat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_integer_mat: shape");
  IMat x(a.cols(), b.cols());
  // one SNF, reused across columns
  SmithResult s = smith_normal_form(a);
  for (int c = 0; c < b.cols(); ++c) {
    std::vector<i64> bc(b.rows());
    for (int i = 0; i < b.rows(); ++i) bc[i] = b.at(i, c);
    std::vector<i64> ub = s.u.apply(bc);
    std::vector<i64> y(a.cols(), 0);
    for (int i = 0; i < s.rank; ++i) {
      if (ub[i] % s.d.at(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / s.d.at(i, i);
    }
    for (int i = s.rank; i < a.rows(); ++i)
      if (ub[i] != 0) return std::nullopt;
    std::vector<i64> xc = s.v.apply(y);
    for (int i = 0; i < a.cols(); ++i) x.at(i, c) = xc[i];
  }
  return x;
}

IMat inverse_unimodular(const IMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
  auto inv = solve_integer_mat(a, IMat::identity(a.rows()));
  if (!inv) throw std::invalid_argument("inverse: matrix is not unimodular");
  return *inv;
}

i64 det(const IMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det: not square");
  const int n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination in 128-bit intermediates
  std::vector<std::vector<i128>> m(n, std::vector<i128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j);
  i128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return narrow(sign * m[n - 1][n - 1], "det overflow");
}

}  // namespace kz
