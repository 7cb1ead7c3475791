// Square-tiled translation surfaces given by a pair of permutations:
// square i has right neighbor h(i) and top neighbor v(i).

#ifndef KZ_ORIGAMI_HPP
#define KZ_ORIGAMI_HPP

#include <string>
#include <vector>

#include "kz/permutation.hpp"

namespace kz {

struct invalid_surface : std::runtime_error {
  explicit invalid_surface(const std::string& w) : std::runtime_error(w) {}
};

struct SingularityProfile {
  std::vector<int> zero_orders;  // descending, order-0 points dropped
  int genus = 1;
  bool operator==(const SingularityProfile& o) const {
    return zero_orders == o.zero_orders && genus == o.genus;
  }
};

enum class Gen { T, Tinv, S };
const char* gen_name(Gen g);

class Origami {
 public:
  Origami() = default;
  // throws invalid_surface on size mismatch or a non-transitive pair
  Origami(Permutation h, Permutation v);

  int squares() const { return n_; }
  const Permutation& h() const { return h_; }
  const Permutation& v() const { return v_; }
  const SingularityProfile& profile() const { return profile_; }
  int genus() const { return profile_.genus; }

  bool operator==(const Origami& o) const { return h_ == o.h_ && v_ == o.v_; }

 private:
  int n_ = 0;
  Permutation h_, v_;
  SingularityProfile profile_;
};

SingularityProfile singularity_profile(const Permutation& h, const Permutation& v);

// SL(2,Z) action on permutation pairs:
//   T:(h,v) -> (h, v∘h⁻¹)   T⁻¹:(h,v) -> (h, v∘h)   S:(h,v) -> (v⁻¹, h)
Origami apply_generator(const Origami& o, Gen g);

struct CanonicalForm {
  Origami origami;
  Permutation relabel;  // new label of square i is relabel(i)
};

// Lexicographically minimal breadth-first relabeling over all start squares;
// relabeling-invariant by construction.
CanonicalForm canonical_form(const Origami& o);

// lowercase-hex FNV-1a over the canonical (h,v) arrays; stable across runs
std::string canonical_id(const Origami& o);

// All square permutations p with p·h·p⁻¹ = h, p·v·p⁻¹ = v (translations) or
// = h⁻¹, v⁻¹ (anti-translations: square i maps onto p(i) rotated by π).
// Determined by the image of square 0; at most n of each kind.
std::vector<Permutation> find_translations(const Origami& o);
std::vector<Permutation> find_anti_translations(const Origami& o);

}  // namespace kz

#endif
