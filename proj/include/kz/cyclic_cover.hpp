// Square-tiled cyclic covers M_N(a1..a4) of the four-punctured sphere.
//
// The base pillowcase is the double of a square across its boundary; its
// four corners carry the branch data a1..a4 in the order BL, BR, TR, TL.
// The cover is tiled by 2N unit squares indexed by (halfplane ±, branch j).
// Crossing the base edge between corner m and corner m+1 moves branch j to
// j ± c_m with the cumulative shifts c_m = a1 + ... + a_m. Charts alternate
// orientation with the parity of j because the deck generator reverses the
// holonomy; all a_i odd (orientability) makes the gluings consistent.

#ifndef KZ_CYCLIC_COVER_HPP
#define KZ_CYCLIC_COVER_HPP

#include <array>
#include <optional>
#include <string>

#include "kz/origami.hpp"

namespace kz {

struct CyclicCoverSpec {
  int N = 0;
  std::array<int, 4> a{};
  bool orientable = false;  // N even and all a_i odd

  std::string str() const;  // "M{N}({a1},{a2},{a3},{a4})"
};

// throws invalid_surface naming the violated condition
CyclicCoverSpec validate_spec(int N, const std::array<int, 4>& a);
// parse "M6(1,1,1,3)"; empty optional if not of that shape
std::optional<CyclicCoverSpec> parse_spec(const std::string& text);

struct CoverResult {
  CyclicCoverSpec spec;
  Origami origami;       // 2N squares
  Permutation deck;      // sheet shift j -> j+1; an anti-translation
  // squares touching the fiber over corner m, for m = 0..3
  std::array<std::vector<int>, 4> branch_fibers;
};

// square index of (halfplane eps in {0=upper,1=lower}, branch j)
inline int cover_square(int N, int eps, int j) { return 2 * (((j % N) + N) % N) + eps; }

// requires an orientable spec; otherwise throws invalid_surface
// ("quadratic, not Abelian")
CoverResult build_cover(const CyclicCoverSpec& spec);

// g = 1 + N - (1/2)·Σ gcd(N, a_i)
int genus_by_formula(const CyclicCoverSpec& spec);

// all orientable sorted 4-tuples for a given N
std::vector<CyclicCoverSpec> enumerate_orientable_specs(int N);

}  // namespace kz

#endif
