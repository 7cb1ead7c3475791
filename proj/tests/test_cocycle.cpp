#include <random>

#include "doctest.h"
#include "kz/cocycle.hpp"
#include "kz/cyclic_cover.hpp"

using namespace kz;

namespace {
Origami lshape3() {
  return Origami(Permutation::from_cycles(3, {{0, 1, 2}}), Permutation::from_cycles(3, {{0, 2}}));
}

struct Step {
  Origami o;
  HomologyModel m;
};

// product of cocycle matrices along a word (first generator acts first)
IMat word_product(const Origami& start, const std::vector<Gen>& word, IMat* sl2 = nullptr) {
  Step cur{start, HomologyModel(start)};
  IMat prod = IMat::identity(cur.m.rank());
  IMat a2 = IMat::identity(2);
  for (Gen g : word) {
    Origami nxt = apply_generator(cur.o, g);
    HomologyModel mn(nxt);
    IMat step = induced_cocycle_matrix(cur.o, cur.m, g, nxt, mn);
    prod = step.mul(prod);
    a2 = sl2_of(g).mul(a2);
    cur = Step{nxt, std::move(mn)};
  }
  if (sl2) *sl2 = a2;
  return prod;
}
}  // namespace

TEST_CASE("torus: T acts as [[1,1],[0,1]] on the tautological basis") {
  Origami t(Permutation::identity(1), Permutation::identity(1));
  HomologyModel m(t);
  IMat mt = induced_cocycle_matrix(t, m, Gen::T, t, m);
  IMat blk = taut_block(m, m, mt);
  CHECK(blk == sl2_of(Gen::T));
  // on the torus H^1 is the tautological plane, so the matrix itself is 2x2
  CHECK(mt.rows() == 2);
}

TEST_CASE("L-shape: all generators give exact symplectic 4x4 matrices") {
  Origami l = lshape3();
  HomologyModel m(l);
  for (Gen g : {Gen::T, Gen::Tinv, Gen::S}) {
    Origami l2 = apply_generator(l, g);
    HomologyModel m2(l2);
    IMat mg = induced_cocycle_matrix(l, m, g, l2, m2);  // asserts internally
    CHECK(mg.rows() == 4);
    CHECK(mg.transpose().mul(m2.intersection()).mul(mg) == m.intersection());
  }
}

TEST_CASE("EW origami: word products restrict to the SL(2,Z) product") {
  Origami ew = build_cover(validate_spec(4, {1, 1, 1, 1})).origami;
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(0, 2), len(1, 20);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Gen> word;
    for (int i = 0, L = len(rng); i < L; ++i) word.push_back(Gen(pick(rng)));
    IMat a2;
    IMat prod = word_product(ew, word, &a2);
    HomologyModel m0(ew);
    Origami end = ew;
    for (Gen g : word) end = apply_generator(end, g);
    HomologyModel mend(end);
    CHECK(taut_block(m0, mend, prod) == a2);
    CHECK(prod.transpose().mul(mend.intersection()).mul(prod) == m0.intersection());
  }
}

TEST_CASE("identity automorphism gives the identity matrix") {
  Origami l = lshape3();
  HomologyModel m(l);
  CHECK(automorphism_matrix(l, m, Permutation::identity(3)) == IMat::identity(4));
}

TEST_CASE("a non-automorphism is rejected") {
  Origami l = lshape3();
  HomologyModel m(l);
  CHECK_THROWS_AS(automorphism_matrix(l, m, Permutation::from_cycles(3, {{0, 1}})),
                  invalid_surface);
}

TEST_CASE("deck of M4(1,1,1,1): order four, trivial fixed subspace") {
  CoverResult c = build_cover(validate_spec(4, {1, 1, 1, 1}));
  HomologyModel m(c.origami);
  CHECK(classify_automorphism(c.origami, c.deck) == AutomorphismKind::AntiTranslation);
  IMat d = automorphism_matrix(c.origami, m, c.deck);
  IMat d2 = d.mul(d);
  IMat d4 = d2.mul(d2);
  CHECK(d4 == IMat::identity(m.rank()));
  CHECK(!(d2 == IMat::identity(m.rank())));
  // minimal-polynomial oracle: no eigenvalue-1 vectors at all
  CHECK(kernel_basis(d.sub(IMat::identity(m.rank()))).cols() == 0);
}

TEST_CASE("deck of M6(1,1,1,3): order six, cube nontrivial, -I on tautological plane") {
  CoverResult c = build_cover(validate_spec(6, {1, 1, 1, 3}));
  HomologyModel m(c.origami);
  IMat d = automorphism_matrix(c.origami, m, c.deck);
  IMat p = d;
  for (int k = 1; k < 6; ++k) p = p.mul(d);
  CHECK(p == IMat::identity(m.rank()));
  IMat d3 = d.mul(d).mul(d);
  CHECK(!(d3 == IMat::identity(m.rank())));
  CHECK(taut_block(m, m, d) == IMat::identity(2).scaled(-1));
  CHECK(kernel_basis(d.sub(IMat::identity(m.rank()))).cols() == 0);
}
