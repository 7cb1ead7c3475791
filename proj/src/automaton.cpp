#include "kz/automaton.hpp"

#include <deque>
#include <map>

namespace kz {

OrbitAutomaton::OrbitAutomaton(const Origami& seed, int cap) {
  CanonicalForm c0 = canonical_form(seed);
  std::map<std::string, int> index;

  auto add_state = [&](Origami o) {
    OrbitState s;
    s.id = canonical_id(o);
    s.origami = std::move(o);
    s.model = std::make_unique<HomologyModel>(s.origami);
    index[s.id] = int(states_.size());
    states_.push_back(std::move(s));
    trans_.emplace_back();
    if (int(states_.size()) > cap)
      throw orbit_cap_exceeded("orbit exceeds the configured cap of " + std::to_string(cap));
    return int(states_.size()) - 1;
  };

  add_state(c0.origami);
  std::deque<int> todo{0};
  while (!todo.empty()) {
    int si = todo.front();
    todo.pop_front();
    for (Gen g : {Gen::T, Gen::Tinv, Gen::S}) {
      // states_ may reallocate inside add_state; take what we need up front
      Origami cur = states_[si].origami;
      Origami nxt = apply_generator(cur, g);
      CanonicalForm cf = canonical_form(nxt);
      std::string id = canonical_id(cf.origami);
      auto it = index.find(id);
      int ti;
      if (it == index.end()) {
        ti = add_state(cf.origami);
        todo.push_back(ti);
      } else {
        ti = it->second;
      }
      // chain map: generator step, then the canonical relabeling
      IMat psi = chain_map_relabel(nxt, cf.relabel).mul(chain_map_generator(cur, g));
      IMat m = induced_h1_matrix(*states_[si].model, *states_[ti].model, psi);
      if (!(taut_block(*states_[si].model, *states_[ti].model, m) == sl2_of(g)))
        throw std::logic_error("orbit transition: tautological block mismatch");
      OrbitTransition tr;
      tr.target = ti;
      tr.mf.resize(m.rows(), m.cols());
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) tr.mf(i, j) = double(m.at(i, j));
      tr.m = std::move(m);
      trans_[si][int(g)] = std::move(tr);
    }
  }

  // invert the S move: S permutes the states, so every state has a unique
  // S-predecessor
  sinv_.resize(states_.size());
  for (int t = 0; t < int(states_.size()); ++t) {
    const OrbitTransition& fwd = trans_[t][int(Gen::S)];
    OrbitTransition& bwd = sinv_[fwd.target];
    bwd.target = t;
    bwd.m = inverse_unimodular(fwd.m);
    bwd.mf.resize(bwd.m.rows(), bwd.m.cols());
    for (int i = 0; i < bwd.m.rows(); ++i)
      for (int j = 0; j < bwd.m.cols(); ++j) bwd.mf(i, j) = double(bwd.m.at(i, j));
  }
}

IMat OrbitAutomaton::word_matrix(int from, const std::vector<Gen>& word, int* end_state) const {
  IMat prod = IMat::identity(rank());
  int s = from;
  for (Gen g : word) {
    const OrbitTransition& tr = transition(s, g);
    prod = tr.m.mul(prod);
    s = tr.target;
  }
  if (end_state) *end_state = s;
  return prod;
}

}  // namespace kz
