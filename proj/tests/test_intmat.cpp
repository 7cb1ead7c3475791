#include <random>

#include "doctest.h"
#include "kz/intmat.hpp"

using namespace kz;

namespace {
IMat from_rows(const std::vector<std::vector<i64>>& rows) {
  IMat m(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

// u*a*v == d checked in 128-bit arithmetic; transform entries can outgrow
// i64 products on dense random inputs even when the factorization is exact
bool uav_equals_d(const SmithResult& s, const IMat& a) {
  using w = __int128;
  int m = a.rows(), n = a.cols();
  std::vector<std::vector<w>> ua(m, std::vector<w>(n, 0));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < n; ++j) ua[i][j] += w(s.u.at(i, k)) * w(a.at(k, j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      w acc = 0;
      for (int k = 0; k < n; ++k) acc += ua[i][k] * w(s.v.at(k, j));
      if (acc != w(s.d.at(i, j))) return false;
    }
  return true;
}
}  // namespace

TEST_CASE("smith normal form: known invariants") {
  IMat a = from_rows({{2, 4}, {6, 8}});
  SmithResult s = smith_normal_form(a);
  CHECK(s.rank == 2);
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 4);
  CHECK(s.u.mul(a).mul(s.v) == s.d);
}

TEST_CASE("smith normal form: random transform identities") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 6), val(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    IMat a(dim(rng), dim(rng));
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) a.at(i, j) = val(rng);
    SmithResult s = smith_normal_form(a);
    CHECK(uav_equals_d(s, a));
    i64 du = det(s.u), dv = det(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (int t = 0; t + 1 < s.rank; ++t) CHECK(s.d.at(t + 1, t + 1) % s.d.at(t, t) == 0);
    for (int i = 0; i < s.d.rows(); ++i)
      for (int j = 0; j < s.d.cols(); ++j)
        if (i != j) CHECK(s.d.at(i, j) == 0);
  }
}

TEST_CASE("kernel basis is a saturated lattice") {
  IMat a = from_rows({{1, 2, 3}});
  IMat k = kernel_basis(a);
  CHECK(k.cols() == 2);
  CHECK(a.mul(k).is_zero());
  // saturation: elementary divisors of the kernel basis are all 1
  SmithResult s = smith_normal_form(k);
  for (int i = 0; i < s.rank; ++i) CHECK(s.d.at(i, i) == 1);
}

TEST_CASE("integer and rational solve") {
  IMat a = from_rows({{2, 0}, {0, 3}});
  auto x = solve_integer(a, {4, 9});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK(!solve_integer(a, {1, 0}).has_value());
  auto r = solve_rational(a, {1, 1});
  REQUIRE(r.has_value());
  CHECK((*r)[0] == Rat(1, 2));
  CHECK((*r)[1] == Rat(1, 3));
  // inconsistent overdetermined system
  IMat b = from_rows({{1}, {1}});
  CHECK(!solve_rational(b, {1, 2}).has_value());
}

TEST_CASE("unimodular inverse and determinant") {
  IMat a = from_rows({{2, 1}, {1, 1}});
  IMat ai = inverse_unimodular(a);
  CHECK(a.mul(ai) == IMat::identity(2));
  CHECK(det(a) == 1);
  CHECK(det(from_rows({{0, 2}, {3, 0}})) == -6);
  CHECK(det(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 0);
}

TEST_CASE("rational arithmetic normalizes") {
  Rat r(6, -4);
  CHECK(r.num == -3);
  CHECK(r.den == 2);
  CHECK(Rat::add(Rat(1, 6), Rat(1, 3)) == Rat(1, 2));
  CHECK(Rat::mul(Rat(2, 3), Rat(3, 2)) == Rat(1));
  CHECK(Rat(1, 2).str() == "1/2");
}

TEST_CASE("overflow is detected, not wrapped") {
  CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), overflow_error);
  CHECK(checked_mul(1 << 20, 1 << 20) == (i64(1) << 40));
}
