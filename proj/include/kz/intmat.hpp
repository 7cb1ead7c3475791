// Exact integer matrices: Smith normal form with transforms, saturated
// kernels, integer/rational solves. Everything here is exact; arithmetic
// overflow throws instead of wrapping.

#ifndef KZ_INTMAT_HPP
#define KZ_INTMAT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kz {

using i64 = long long;

struct overflow_error : std::runtime_error {
  explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
i64 gcd_i64(i64 a, i64 b);

// Reduced fraction with exact arithmetic.
struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d);

  static Rat add(Rat a, Rat b);
  static Rat sub(Rat a, Rat b);
  static Rat mul(Rat a, Rat b);
  static Rat div(Rat a, Rat b);
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool is_integer() const { return den == 1; }
  double to_double() const { return double(num) / double(den); }
  std::string str() const;
};

class IMat {
 public:
  IMat() = default;
  IMat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols, 0) {}

  static IMat identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  i64& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
  i64 at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  IMat transpose() const;
  IMat mul(const IMat& o) const;
  IMat add(const IMat& o) const;
  IMat sub(const IMat& o) const;
  IMat scaled(i64 s) const;
  std::vector<i64> apply(const std::vector<i64>& x) const;  // this * x
  IMat col(int j) const;
  IMat cols_range(int j0, int j1) const;  // columns [j0, j1)
  bool is_zero() const;
  bool operator==(const IMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  // row i -= q * row j ; col analogue
  void row_axpy(int i, int j, i64 q);
  void col_axpy(int i, int j, i64 q);
  void negate_row(int i);
  void negate_col(int j);

 private:
  int r_ = 0, c_ = 0;
  std::vector<i64> a_;
};

// u * a * v = d with u, v unimodular and d diagonal, d[i] | d[i+1].
struct SmithResult {
  IMat u, d, v;
  int rank = 0;
};

SmithResult smith_normal_form(const IMat& a);

// Columns span the saturated lattice ker(a) ∩ Z^n (all integer kernel vectors).
IMat kernel_basis(const IMat& a);

// Solve a x = b over Z. Empty optional if no integer solution.
std::optional<std::vector<i64>> solve_integer(const IMat& a, const std::vector<i64>& b);

// Solve a x = b over Q. Empty optional if inconsistent.
std::optional<std::vector<Rat>> solve_rational(const IMat& a, const std::vector<i64>& b);

// Solve a X = B column-wise over Z; empty optional if any column fails.
std::optional<IMat> solve_integer_mat(const IMat& a, const IMat& b);

// Inverse of a square matrix with det = ±1.
IMat inverse_unimodular(const IMat& a);

i64 det(const IMat& a);  // Bareiss, exact

}  // namespace kz

#endif
