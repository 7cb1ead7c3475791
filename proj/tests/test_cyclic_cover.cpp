#include <set>

#include "doctest.h"
#include "kz/cyclic_cover.hpp"
#include "kz/homology.hpp"

using namespace kz;

TEST_CASE("spec validation") {
  CyclicCoverSpec s4 = validate_spec(4, {1, 1, 1, 1});
  CHECK(s4.orientable);
  CHECK(s4.str() == "M4(1,1,1,1)");
  CHECK(validate_spec(6, {1, 1, 1, 3}).orientable);
  CHECK(!validate_spec(3, {1, 1, 2, 2}).orientable);
  CHECK_THROWS_WITH_AS(validate_spec(4, {1, 1, 1, 2}),
                       "cyclic cover: sum a_i = 5 is not 0 mod N", invalid_surface);
  CHECK_THROWS_AS(validate_spec(6, {3, 3, 3, 3}), invalid_surface);  // gcd = 3
  CHECK_THROWS_AS(validate_spec(4, {0, 1, 1, 2}), invalid_surface);
  CHECK(parse_spec("M6(1,1,1,3)").has_value());
  CHECK(!parse_spec("M6(1,1,1)").has_value());
}

TEST_CASE("genus formula") {
  CHECK(genus_by_formula(validate_spec(4, {1, 1, 1, 1})) == 3);
  CHECK(genus_by_formula(validate_spec(6, {1, 1, 1, 3})) == 4);
  CHECK(genus_by_formula(validate_spec(8, {1, 1, 3, 3})) == 7);
  CHECK(genus_by_formula(validate_spec(2, {1, 1, 1, 1})) == 1);
}

TEST_CASE("build_cover: square counts, genus, strata") {
  CoverResult m4 = build_cover(validate_spec(4, {1, 1, 1, 1}));
  CHECK(m4.origami.squares() == 8);
  CHECK(m4.origami.genus() == 3);

  CoverResult m6 = build_cover(validate_spec(6, {1, 1, 1, 3}));
  CHECK(m6.origami.squares() == 12);
  CHECK(m6.origami.genus() == 4);
  CHECK(m6.origami.profile().zero_orders == std::vector<int>{2, 2, 2});

  CoverResult m2 = build_cover(validate_spec(2, {1, 1, 1, 1}));
  CHECK(m2.origami.squares() == 4);
  CHECK(m2.origami.genus() == 1);

  // homology rank cross-check for genus 7
  CoverResult m8 = build_cover(validate_spec(8, {1, 1, 3, 3}));
  CHECK(HomologyModel(m8.origami).rank() == 14);
}

TEST_CASE("non-orientable specs are rejected as quadratic") {
  CyclicCoverSpec q = validate_spec(3, {1, 1, 2, 2});
  CHECK_THROWS_WITH_AS(build_cover(q), "cyclic cover M3(1,1,2,2): quadratic, not Abelian",
                       invalid_surface);
}

TEST_CASE("deck transformation: exact anti-translation relations, order N") {
  for (int n : {4, 6, 8, 10, 12}) {
    for (const CyclicCoverSpec& s : enumerate_orientable_specs(n)) {
      CoverResult c = build_cover(s);
      const Permutation &h = c.origami.h(), &v = c.origami.v(), &d = c.deck;
      Permutation di = d.inverse();
      CHECK(d.compose(h).compose(di) == h.inverse());
      CHECK(d.compose(v).compose(di) == v.inverse());
      CHECK(d.order() == s.N);
      // quotient by the deck group: exactly the two pillowcase faces
      std::set<int> orbit_reps;
      std::vector<char> seen(2 * s.N, 0);
      for (int q = 0; q < 2 * s.N; ++q) {
        if (seen[q]) continue;
        orbit_reps.insert(q);
        int x = q;
        do {
          seen[x] = 1;
          x = d(x);
        } while (x != q);
      }
      CHECK(orbit_reps.size() == 2);
    }
  }
}

TEST_CASE("genus formula matches the built profile for all specs with N <= 12") {
  for (int n : {2, 4, 6, 8, 10, 12})
    for (const CyclicCoverSpec& s : enumerate_orientable_specs(n))
      CHECK(build_cover(s).origami.genus() == genus_by_formula(s));
}
