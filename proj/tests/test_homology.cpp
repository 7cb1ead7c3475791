#include "doctest.h"
#include "kz/cyclic_cover.hpp"
#include "kz/homology.hpp"

using namespace kz;

namespace {
Origami lshape3() {
  return Origami(Permutation::from_cycles(3, {{0, 1, 2}}), Permutation::from_cycles(3, {{0, 2}}));
}

// pairing matrix of the tautological pair in a model
IMat taut_pairing(const HomologyModel& m) {
  IMat p(2, 2);
  std::vector<std::vector<i64>> tv{m.taut_u(), m.taut_v()};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      i64 s = 0;
      for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j)
          s = checked_add(s, checked_mul(tv[a][i], checked_mul(m.intersection().at(i, j), tv[b][j])));
      p.at(a, b) = s;
    }
  return p;
}
}  // namespace

TEST_CASE("torus homology: rank 2, unimodular symplectic pairing") {
  Origami t(Permutation::identity(1), Permutation::identity(1));
  HomologyModel m(t);
  CHECK(m.rank() == 2);
  i64 d = det(m.intersection());
  CHECK((d == 1 || d == -1));
  // <u,v> = area = 1 on the torus
  IMat p = taut_pairing(m);
  CHECK(p.at(0, 0) == 0);
  CHECK(p.at(1, 1) == 0);
  CHECK(p.at(0, 1) == 1);
  CHECK(p.at(1, 0) == -1);
}

TEST_CASE("L-shape homology: rank 4 and |det J| = 1") {
  HomologyModel m(lshape3());
  CHECK(m.rank() == 4);
  i64 d = det(m.intersection());
  CHECK((d == 1 || d == -1));
  // <u,v> equals the number of squares
  CHECK(taut_pairing(m).at(0, 1) == 3);
}

TEST_CASE("explicit Smith oracle on the 3-square complex") {
  // hand-derived boundary data for h=(0 1 2), v=(0 2):
  // right neighbor of 0,1,2 is 1,2,0; top neighbor is 2,1,0.
  // triangles: T1_i = b_i + l_{h(i)} - d_i, T2_i = l_i + b_{v(i)} - d_i,
  // edges ordered b0 b1 b2 l0 l1 l2 d0 d1 d2.
  IMat d1(6, 9);
  int h[3] = {1, 2, 0}, v[3] = {2, 1, 0};
  for (int i = 0; i < 3; ++i) {
    d1.at(2 * i, i) += 1;
    d1.at(2 * i, 3 + h[i]) += 1;
    d1.at(2 * i, 6 + i) -= 1;
    d1.at(2 * i + 1, 3 + i) += 1;
    d1.at(2 * i + 1, v[i]) += 1;
    d1.at(2 * i + 1, 6 + i) -= 1;
  }
  // the L-shape complex has one vertex, so im(delta0) = 0 and
  // rank H^1 = dim ker(delta1)
  SmithResult s = smith_normal_form(d1);
  CHECK(9 - s.rank == 4);
}

TEST_CASE("M6(1,1,1,3) cover has H^1 of rank 8") {
  CoverResult c = build_cover(validate_spec(6, {1, 1, 1, 3}));
  HomologyModel m(c.origami);
  CHECK(m.rank() == 8);
}

TEST_CASE("coordinates invert the basis") {
  HomologyModel m(lshape3());
  for (int c = 0; c < m.rank(); ++c) {
    std::vector<i64> z(m.basis().rows());
    for (int e = 0; e < m.basis().rows(); ++e) z[e] = m.basis().at(e, c);
    std::vector<i64> co = m.coords(z);
    for (int a = 0; a < m.rank(); ++a) CHECK(co[a] == (a == c ? 1 : 0));
  }
}
