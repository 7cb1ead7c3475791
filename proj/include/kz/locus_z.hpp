// Square-tiled members of the genus-10 locus in H(8,2^5): Z/3 covers of a
// genus-two origami branched at its six Weierstrass points, on the doubled
// grid. Candidates are the solutions of an F_3 edge-labeling system with unit
// defect at the Weierstrass vertices, enumerated modulo gauge; a candidate is
// accepted when the Z/3 deck combines with a lift of the hyperelliptic
// involution into an order-six anti-translation whose action on H¹ has the
// expected character-block dimensions (8, 8, 4).

#ifndef KZ_LOCUS_Z_HPP
#define KZ_LOCUS_Z_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kz/cocycle.hpp"
#include "kz/origami.hpp"

namespace kz {

struct WeierstrassPoint {
  enum Kind { Vertex, HorizontalEdgeMidpoint, VerticalEdgeMidpoint, SquareCenter } kind;
  int square;  // refined-grid square carrying the point (its BL vertex, edge, or center)
};

struct MarkedH2Origami {
  Origami base;         // the refined H(2) origami (4x the input squares)
  Origami original;     // the unrefined input
  Permutation involution;  // anti-translation of the refined grid, order 2
  std::vector<WeierstrassPoint> weierstrass;  // exactly six
};

// doubles the grid: each square becomes a 2x2 block
Origami refine_origami(const Origami& o);

// finds the unique order-two anti-translation with six fixed points;
// requires profile {2} and throws invalid_surface otherwise
MarkedH2Origami hyperelliptic_involution(const Origami& base);

struct ZCandidate {
  Origami origami;        // 12n squares for an n-square input
  Permutation z3_deck;    // sheet shift, a translation of order three
  // the F_3 cocycle: shift when crossing the right / top edge of each
  // refined base square
  std::vector<int> rho_h, rho_v;
};

// all candidates (one per gauge class, 81 for a genus-two base)
std::vector<ZCandidate> triple_cover_candidates(const MarkedH2Origami& marked);

struct ZValidation {
  bool accepted = false;
  std::string diagnostic;
  Permutation order6;     // the anti-translation lift, when accepted
  std::array<int, 3> block_dims{};  // real dimensions of the d=6, d=3, d=2 blocks
};

ZValidation validate_z_member(const MarkedH2Origami& marked, const ZCandidate& c);

// first accepted candidate of a base origami, if any
std::optional<std::pair<ZCandidate, ZValidation>> build_z_member(const Origami& base);

}  // namespace kz

#endif
