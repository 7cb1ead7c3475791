#include <set>

#include "doctest.h"
#include "kz/kontsevich.hpp"
#include "kz/locus_z.hpp"
#include "kz/oseledets.hpp"

using namespace kz;

namespace {
Origami lshape3() {
  return Origami(Permutation::from_cycles(3, {{0, 1, 2}}), Permutation::from_cycles(3, {{0, 2}}));
}

// all H(2) origamis with n squares, up to relabeling
std::vector<Origami> h2_origamis(int n, int limit) {
  std::vector<Origami> out;
  std::set<std::string> seen;
  std::vector<int> himg(n);
  std::iota(himg.begin(), himg.end(), 0);
  do {
    std::vector<int> vimg(n);
    std::iota(vimg.begin(), vimg.end(), 0);
    do {
      try {
        Origami o{Permutation(himg), Permutation(vimg)};
        if (o.profile().zero_orders == std::vector<int>{2} &&
            seen.insert(canonical_id(o)).second)
          out.push_back(canonical_form(o).origami);
      } catch (const invalid_surface&) {
      }
      if (int(out.size()) >= limit) return out;
    } while (std::next_permutation(vimg.begin(), vimg.end()));
  } while (std::next_permutation(himg.begin(), himg.end()));
  return out;
}
}  // namespace

TEST_CASE("refinement doubles the grid and keeps the surface") {
  Origami l = lshape3();
  Origami r = refine_origami(l);
  CHECK(r.squares() == 12);
  CHECK(r.profile() == l.profile());
}

TEST_CASE("hyperelliptic involution of the L-shape: six fixed points") {
  MarkedH2Origami m = hyperelliptic_involution(lshape3());
  CHECK(m.involution.order() == 2);
  CHECK(m.weierstrass.size() == 6);
  CHECK(classify_automorphism(m.base, m.involution) == AutomorphismKind::AntiTranslation);
}

TEST_CASE("torus input is rejected by stratum") {
  CHECK_THROWS_WITH_AS(hyperelliptic_involution(Origami(Permutation::identity(1),
                                                        Permutation::identity(1))),
                       "hyperelliptic_involution: base must lie in H(2)", invalid_surface);
}

TEST_CASE("every small H(2) origami carries exactly one involution") {
  for (int n : {3, 4, 5})
    for (const Origami& o : h2_origamis(n, 6)) {
      MarkedH2Origami m = hyperelliptic_involution(o);  // throws if not unique
      CHECK(m.weierstrass.size() == 6);
    }
}

TEST_CASE("triple covers branched at the Weierstrass points") {
  MarkedH2Origami m = hyperelliptic_involution(lshape3());
  std::vector<ZCandidate> cands = triple_cover_candidates(m);
  CHECK(cands.size() == 81);  // 3^4 gauge classes over a genus-two base
  for (const ZCandidate& c : cands) {
    CHECK(c.origami.squares() == 36);
    CHECK(c.origami.genus() == 10);
    CHECK(c.origami.profile().zero_orders == std::vector<int>{8, 2, 2, 2, 2, 2});
    CHECK(c.z3_deck.order() == 3);
    CHECK(classify_automorphism(c.origami, c.z3_deck) == AutomorphismKind::Translation);
  }
}

TEST_CASE("validation finds members with the Z/6 symmetry") {
  MarkedH2Origami m = hyperelliptic_involution(lshape3());
  std::vector<ZCandidate> cands = triple_cover_candidates(m);
  int accepted = 0, rejected_with_reason = 0;
  std::array<int, 3> dims{};
  for (const ZCandidate& c : cands) {
    ZValidation v = validate_z_member(m, c);
    if (v.accepted) {
      ++accepted;
      dims = v.block_dims;
      // the tiling-form block carries eigenvalue -1
      HomologyModel model(c.origami);
      IMat t = automorphism_matrix(c.origami, model, v.order6);
      CHECK(taut_block(model, model, t) == IMat::identity(2).scaled(-1));
    } else if (v.diagnostic == "no Z/6 symmetry") {
      ++rejected_with_reason;
    }
  }
  CHECK(accepted > 0);
  CHECK(rejected_with_reason > 0);
  CHECK(dims == std::array<int, 3>{8, 8, 4});
}

TEST_CASE("acceptance is a gauge-class invariant") {
  MarkedH2Origami m = hyperelliptic_involution(lshape3());
  std::vector<ZCandidate> cands = triple_cover_candidates(m);
  const int n = m.base.squares();
  // apply a nontrivial gauge to an accepted candidate; acceptance must persist
  auto first = std::find_if(cands.begin(), cands.end(), [&](const ZCandidate& c) {
    return validate_z_member(m, c).accepted;
  });
  REQUIRE(first != cands.end());
  ZCandidate g = *first;
  std::vector<int> gv(n, 0);
  gv[0] = 1;
  gv[n / 2] = 2;
  for (int s = 0; s < n; ++s) {
    g.rho_h[s] = ((g.rho_h[s] + gv[m.base.h()(s)] - gv[s]) % 3 + 3) % 3;
    g.rho_v[s] = ((g.rho_v[s] + gv[m.base.v()(s)] - gv[s]) % 3 + 3) % 3;
  }
  std::vector<int> h3(3 * n), v3(3 * n), deck(3 * n);
  for (int s = 0; s < n; ++s)
    for (int q = 0; q < 3; ++q) {
      h3[3 * s + q] = 3 * m.base.h()(s) + (q + g.rho_h[s]) % 3;
      v3[3 * s + q] = 3 * m.base.v()(s) + (q + g.rho_v[s]) % 3;
      deck[3 * s + q] = 3 * s + (q + 1) % 3;
    }
  g.origami = Origami(Permutation(h3), Permutation(v3));
  g.z3_deck = Permutation(deck);
  CHECK(validate_z_member(m, g).accepted);
}

TEST_CASE("member spectrum structure at moderate length") {
  auto member = build_z_member(lshape3());
  REQUIRE(member.has_value());
  const ZCandidate& c = member->first;
  OrbitAutomaton aut(c.origami);
  CHECK(aut.rank() == 20);

  // move the order-6 matrix to the canonical base state
  CanonicalForm cf = canonical_form(c.origami);
  Permutation t6 = cf.relabel.compose(member->second.order6).compose(cf.relabel.inverse());
  IMat m6 = automorphism_matrix(aut.state(0).origami, *aut.state(0).model, t6);
  auto bundles = build_block_bundles(aut, m6, 6);

  RunOptions opt;
  opt.steps = 120000;
  opt.seed = 5;
  LyapunovReport rep = run_oseledets(aut, opt, bundles);
  // W3 block (divisor 2): {1, 1/3}; W2 (divisor 3): {4/9, 4/9, 0, 0};
  // W1 (divisor 6): all zero — loose tolerances at this length
  const BlockExponents& w3 = rep.block("d=2");
  CHECK(std::abs(w3.exponents[0] - 1.0) < 0.03);
  CHECK(std::abs(w3.exponents[1] - 1.0 / 3) < 0.05);
  const BlockExponents& w2 = rep.block("d=3");
  CHECK(std::abs(w2.exponents[0] - 4.0 / 9) < 0.05);
  CHECK(std::abs(w2.exponents[1] - 4.0 / 9) < 0.05);
  CHECK(std::abs(w2.exponents[2]) < 0.03);
  const BlockExponents& w1 = rep.block("d=6");
  for (double e : w1.exponents) CHECK(std::abs(e) < 0.02);
}
