// The SL(2,Z) orbit of an origami as a finite automaton: states are
// canonical forms, transitions carry the exact cocycle matrices (and cached
// double copies for simulation).

#ifndef KZ_AUTOMATON_HPP
#define KZ_AUTOMATON_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "kz/cocycle.hpp"
#include "kz/homology.hpp"
#include "kz/origami.hpp"

namespace kz {

struct orbit_cap_exceeded : std::runtime_error {
  explicit orbit_cap_exceeded(const std::string& w) : std::runtime_error(w) {}
};

struct OrbitState {
  Origami origami;  // canonical form
  std::string id;
  std::unique_ptr<HomologyModel> model;
};

struct OrbitTransition {
  int target = -1;
  IMat m;              // exact integer cocycle matrix
  Eigen::MatrixXd mf;  // double copy
};

class OrbitAutomaton {
 public:
  // builds the full orbit; throws orbit_cap_exceeded beyond `cap` states
  OrbitAutomaton(const Origami& seed, int cap = 4096);

  int size() const { return int(states_.size()); }
  int base() const { return 0; }  // canonical form of the seed
  int rank() const { return states_[0].model->rank(); }
  const OrbitState& state(int i) const { return states_[i]; }
  const OrbitTransition& transition(int state, Gen g) const {
    return trans_[state][int(g)];
  }
  // the inverse of the S move (exact), needed by the geodesic coding
  const OrbitTransition& s_inverse(int state) const { return sinv_[state]; }
  const std::string& hash() const { return states_[0].id; }

  // exact product over a generator word starting at `from` (throws on
  // overflow for long words; meant for bounded-length exact checks)
  IMat word_matrix(int from, const std::vector<Gen>& word, int* end_state = nullptr) const;

 private:
  std::vector<OrbitState> states_;
  std::vector<std::array<OrbitTransition, 3>> trans_;
  std::vector<OrbitTransition> sinv_;
};

}  // namespace kz

#endif
