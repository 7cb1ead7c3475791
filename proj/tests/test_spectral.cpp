#include <random>

#include "doctest.h"
#include "kz/cocycle.hpp"
#include "kz/spectral.hpp"

using namespace kz;

TEST_CASE("t values are exact and in range") {
  CyclicCoverSpec m6 = validate_spec(6, {1, 1, 1, 3});
  CHECK(t_value(m6, 1) == 1);
  CHECK(t_value(m6, 5) == 3);
  CHECK(t_value(validate_spec(4, {1, 1, 1, 1}), 2) == 2);
  CHECK_THROWS_AS(t_value(m6, 0), std::invalid_argument);
  CHECK_THROWS_AS(t_value(m6, 6), std::invalid_argument);
}

TEST_CASE("holomorphic eigenspace dimensions") {
  EigenData m6 = eigenspace_dims(validate_spec(6, {1, 1, 1, 3}));
  CHECK(m6.dims_holo == std::vector<int>{2, 1, 1, 0, 0});
  EigenData m4 = eigenspace_dims(validate_spec(4, {1, 1, 1, 1}));
  CHECK(m4.dims_holo == std::vector<int>{2, 1, 0});
  CHECK(m4.genus == 3);
  EigenData m8 = eigenspace_dims(validate_spec(8, {1, 1, 3, 3}));
  CHECK(m8.dims_holo == std::vector<int>{2, 1, 2, 1, 0, 1, 0});
  CHECK(m8.genus == 7);
}

TEST_CASE("dimension sums match the genus for every spec with N <= 20") {
  for (int n = 2; n <= 20; n += 2)
    for (const CyclicCoverSpec& s : enumerate_orientable_specs(n)) {
      EigenData e = eigenspace_dims(s);  // throws on mismatch
      int sum = 0;
      for (int d : e.dims_holo) sum += d;
      CHECK(sum == e.genus);
    }
}

TEST_CASE("partition and exponent predictions") {
  EigenData m6 = partition_and_predictions(validate_spec(6, {1, 1, 1, 3}));
  CHECK(m6.i1 == std::vector<int>{3});
  CHECK(m6.predicted_positive_count == 1);

  EigenData m4 = partition_and_predictions(validate_spec(4, {1, 1, 1, 1}));
  CHECK(m4.i1 == std::vector<int>{2});
  CHECK(m4.predicted_positive_count == 1);

  EigenData m8 = partition_and_predictions(validate_spec(8, {1, 1, 3, 3}));
  CHECK(m8.i1 == std::vector<int>{2, 4});
  CHECK(m8.predicted_positive_count == 3);
  std::vector<Rat> want{Rat(1), Rat(1, 2), Rat(1, 2), Rat(0), Rat(0), Rat(0), Rat(0)};
  CHECK(m8.predicted_nonneg_spectrum() == want);
  // the tautological index always predicts the top exponent
  CHECK(m8.predicted_lambda.at(4) == Rat(1));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<i64>{1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<i64>{1, 0, 1});
  CHECK(cyclotomic_poly(6) == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic_poly(12) == std::vector<i64>{1, 0, -1, 0, 1});
}

namespace {
struct DeckData {
  CoverResult cover;
  HomologyModel model;
  IMat deck;
  DeckData(int n, std::array<int, 4> a)
      : cover(build_cover(validate_spec(n, a))),
        model(cover.origami),
        deck(automorphism_matrix(cover.origami, model, cover.deck)) {}
};

int rational_dim(const std::vector<RealBlock>& blocks, int divisor) {
  for (const auto& b : blocks)
    if (b.rational && b.divisor == divisor) return b.dim();
  return 0;
}
}  // namespace

TEST_CASE("real primary decomposition of M6(1,1,1,3)") {
  DeckData d(6, {1, 1, 1, 3});
  auto blocks = real_primary_decomposition(d.deck, 6);
  CHECK(rational_dim(blocks, 6) == 4);
  CHECK(rational_dim(blocks, 3) == 2);
  CHECK(rational_dim(blocks, 2) == 2);
  CHECK(rational_dim(blocks, 1) == 0);
  // projector-rank oracle against the Bouw dimensions:
  // dim(d) = Σ_{ord(k)=d} (t(k) + t(N-k) - 2)
  EigenData e = eigenspace_dims(d.cover.spec);
  for (int div : {2, 3, 6}) {
    int want = 0;
    for (int k = 1; k < 6; ++k)
      if (6 / std::gcd(6, k) == div) want += e.t[k - 1] + e.t[6 - k - 1] - 2;
    CHECK(rational_dim(blocks, div) == want);
  }
}

TEST_CASE("trivial deck on the torus gives a single block") {
  Origami t(Permutation::identity(1), Permutation::identity(1));
  HomologyModel m(t);
  auto blocks = real_primary_decomposition(IMat::identity(2), 1);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].dim() == 2);
  CHECK(blocks[0].divisor == 1);
}

TEST_CASE("primary decomposition rejects a wrong order") {
  DeckData d(6, {1, 1, 1, 3});
  CHECK_THROWS_AS(real_primary_decomposition(d.deck, 4), invalid_surface);
}

TEST_CASE("block dims for M8(1,1,3,3) and its character refinement") {
  DeckData d(8, {1, 1, 3, 3});
  auto blocks = real_primary_decomposition(d.deck, 8);
  CHECK(rational_dim(blocks, 8) == 8);
  CHECK(rational_dim(blocks, 4) == 4);
  CHECK(rational_dim(blocks, 2) == 2);
  int w1 = 0, w3 = 0;
  for (const auto& b : blocks) {
    if (b.label == "W1") w1 = b.dim();
    if (b.label == "W3") w3 = b.dim();
  }
  CHECK(w1 == 4);
  CHECK(w3 == 4);
}

TEST_CASE("block restriction: tautological plane gives back SL(2,Z) matrices") {
  DeckData d(6, {1, 1, 1, 3});
  // the divisor-2 block is exactly the tautological plane for cyclic covers
  auto blocks = real_primary_decomposition(d.deck, 6);
  const RealBlock* taut = nullptr;
  for (const auto& b : blocks)
    if (b.rational && b.divisor == 2) taut = &b;
  REQUIRE(taut);

  // restrict a loop word returning to the same canonical state: T then T^-1
  Origami o = d.cover.origami;
  HomologyModel mo(d.model);
  Origami o1 = apply_generator(o, Gen::T);
  HomologyModel m1(o1);
  IMat a = induced_cocycle_matrix(o, mo, Gen::T, o1, m1);
  Origami o2 = apply_generator(o1, Gen::Tinv);
  REQUIRE(o2 == o);
  IMat b = induced_cocycle_matrix(o1, m1, Gen::Tinv, o2, mo);
  IMat loop = b.mul(a);
  auto r = block_restrict({loop}, *taut);
  CHECK(r[0] == IMat::identity(2));
}

TEST_CASE("block restriction: d=6 block matrices commute with the restricted deck") {
  DeckData d(6, {1, 1, 1, 3});
  auto blocks = real_primary_decomposition(d.deck, 6);
  const RealBlock* b6 = nullptr;
  for (const auto& b : blocks)
    if (b.rational && b.divisor == 6) b6 = &b;
  REQUIRE(b6);
  REQUIRE(b6->dim() == 4);

  // loop word T^a (a = cycle length of T on the orbit state); find it
  Origami o = d.cover.origami;
  std::vector<IMat> steps;
  Origami cur = o;
  HomologyModel mcur(cur);
  IMat prod = IMat::identity(mcur.rank());
  for (int k = 0; k < 64; ++k) {
    Origami nxt = apply_generator(cur, Gen::T);
    HomologyModel mnxt(nxt);
    prod = induced_cocycle_matrix(cur, mcur, Gen::T, nxt, mnxt).mul(prod);
    cur = nxt;
    mcur = std::move(mnxt);
    if (cur == o) break;
  }
  REQUIRE(cur == o);
  auto restricted = block_restrict({prod, d.deck}, *b6);
  CHECK(restricted[0].mul(restricted[1]) == restricted[1].mul(restricted[0]));
}

TEST_CASE("restriction to a random non-invariant subspace fails") {
  DeckData d(6, {1, 1, 1, 3});
  RealBlock fake;
  fake.label = "fake";
  fake.rational = true;
  fake.basis = IMat(8, 2);
  fake.basis.at(0, 0) = 1;
  fake.basis.at(3, 0) = 2;
  fake.basis.at(1, 1) = 1;
  fake.basis.at(5, 1) = 7;
  CHECK_THROWS_WITH_AS(block_restrict({d.deck}, fake), "not an invariant subbundle",
                       invalid_surface);
}
