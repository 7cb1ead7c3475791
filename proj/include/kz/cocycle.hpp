// Exact integer matrices of the induced action on H¹ for SL(2,Z) generators,
// relabelings, and (anti-)translation automorphisms.
//
// Matrices map coordinates in the source H¹ basis to coordinates in the
// target basis; products along a word compose left-to-right in time, and the
// 2x2 block on the tautological pair reproduces the SL(2,Z) word product.

#ifndef KZ_COCYCLE_HPP
#define KZ_COCYCLE_HPP

#include <string>

#include "kz/homology.hpp"
#include "kz/intmat.hpp"
#include "kz/origami.hpp"

namespace kz {

struct CocycleMatrix {
  IMat m;
  std::string source, target;  // canonical ids
  std::string generator_label;
};

// 2x2 matrix of a generator acting on the plane (u,v)
IMat sl2_of(Gen g);

// Chain map C1(source) -> C1(target) as a (3n_t x 3n_s) integer matrix whose
// column e is the image chain of source edge e.
IMat chain_map_generator(const Origami& o, Gen g);
// target = relabeled source, new label of i is sigma(i)
IMat chain_map_relabel(const Origami& o, const Permutation& sigma);

// Matrix on H¹ induced by a chain map psi between complexes with prepared
// homology models. Exact; checks symplecticity against both intersection
// forms and throws std::logic_error on failure.
IMat induced_h1_matrix(const HomologyModel& src, const HomologyModel& dst, const IMat& psi);

// generator step o -> apply_generator(o, g); validates the tautological block
IMat induced_cocycle_matrix(const Origami& o, const HomologyModel& mo, Gen g,
                            const Origami& target, const HomologyModel& mtarget);

enum class AutomorphismKind { Translation, AntiTranslation };

// p must conjugate (h,v) to (h,v) [translation] or (h⁻¹,v⁻¹) [anti-
// translation, e.g. the deck map of a cyclic cover]; anything else throws
// invalid_surface("not an automorphism").
AutomorphismKind classify_automorphism(const Origami& o, const Permutation& p);
IMat automorphism_matrix(const Origami& o, const HomologyModel& mo, const Permutation& p);

// 2x2 tautological block of a cocycle matrix (exact; throws if the
// tautological plane is not preserved or the block is not integral)
IMat taut_block(const HomologyModel& src, const HomologyModel& dst, const IMat& m);

}  // namespace kz

#endif
