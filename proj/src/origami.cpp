#include "kz/origami.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>

namespace kz {

const char* gen_name(Gen g) {
  switch (g) {
    case Gen::T: return "T";
    case Gen::Tinv: return "T^-1";
    case Gen::S: return "S";
  }
  return "?";
}

SingularityProfile singularity_profile(const Permutation& h, const Permutation& v) {
  // One counterclockwise turn around the vertex at the bottom-left corner of
  // square t passes through squares t, h⁻¹(t), v⁻¹h⁻¹(t), hv⁻¹h⁻¹(t) and
  // arrives at w(t) = v·h·v⁻¹·h⁻¹(t). Cycles of w are the vertices; a cycle
  // of length L has cone angle 2πL.
  const int n = h.size();
  Permutation hi = h.inverse(), vi = v.inverse();
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = v(h(vi(hi(i))));
  Permutation wp{std::move(w)};

  SingularityProfile p;
  std::vector<char> seen(n, 0);
  int total = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = wp(j)) {
      seen[j] = 1;
      ++len;
    }
    if (len > 1) p.zero_orders.push_back(len - 1);
    total += len - 1;
  }
  if (total % 2 != 0) throw invalid_surface("inconsistent singularity data");
  p.genus = 1 + total / 2;
  std::sort(p.zero_orders.rbegin(), p.zero_orders.rend());
  return p;
}

Origami::Origami(Permutation h, Permutation v) : h_(std::move(h)), v_(std::move(v)) {
  if (h_.size() != v_.size()) throw invalid_surface("permutation size mismatch");
  if (h_.size() < 1) throw invalid_surface("empty surface");
  n_ = h_.size();
  // transitivity of <h,v>
  std::vector<char> vis(n_, 0);
  std::deque<int> q{0};
  vis[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (int t : {h_(s), v_(s), h_.inverse()(s), v_.inverse()(s)})
      if (!vis[t]) {
        vis[t] = 1;
        ++count;
        q.push_back(t);
      }
  }
  if (count != n_) throw invalid_surface("disconnected surface");
  profile_ = singularity_profile(h_, v_);
}

Origami apply_generator(const Origami& o, Gen g) {
  switch (g) {
    case Gen::T: return Origami(o.h(), o.v().compose(o.h().inverse()));
    case Gen::Tinv: return Origami(o.h(), o.v().compose(o.h()));
    case Gen::S: return Origami(o.v().inverse(), o.h());
  }
  throw std::logic_error("unreachable");
}

namespace {

// BFS relabeling started at s: squares are discovered along h, then v.
Permutation bfs_relabel(const Origami& o, int s) {
  const int n = o.squares();
  std::vector<int> label(n, -1);
  std::deque<int> q{s};
  label[s] = 0;
  int next = 1;
  while (!q.empty()) {
    int t = q.front();
    q.pop_front();
    for (int u : {o.h()(t), o.v()(t)})
      if (label[u] < 0) {
        label[u] = next++;
        q.push_back(u);
      }
  }
  // forward moves suffice: h,v have finite order, so the semigroup orbit is
  // the group orbit
  if (next != n) throw invalid_surface("disconnected surface");
  return Permutation(label);
}

std::pair<std::vector<int>, std::vector<int>> conjugated(const Origami& o, const Permutation& s) {
  Permutation h2 = s.compose(o.h()).compose(s.inverse());
  Permutation v2 = s.compose(o.v()).compose(s.inverse());
  return {h2.images(), v2.images()};
}

}  // namespace

CanonicalForm canonical_form(const Origami& o) {
  const int n = o.squares();
  Permutation best_sigma = bfs_relabel(o, 0);
  auto best = conjugated(o, best_sigma);
  for (int s = 1; s < n; ++s) {
    Permutation sigma = bfs_relabel(o, s);
    auto cand = conjugated(o, sigma);
    if (cand < best) {
      best = cand;
      best_sigma = sigma;
    }
  }
  return {Origami(Permutation(best.first), Permutation(best.second)), best_sigma};
}

namespace {

// propagate p(0) = q through p(h(i)) = h^{±}(p(i)), p(v(i)) = v^{±}(p(i))
std::vector<Permutation> find_centralizer_like(const Origami& o, bool invert) {
  const int n = o.squares();
  const Permutation& h = o.h();
  const Permutation& v = o.v();
  Permutation hh = invert ? h.inverse() : h;
  Permutation vv = invert ? v.inverse() : v;
  std::vector<Permutation> out;
  for (int q = 0; q < n; ++q) {
    std::vector<int> img(n, -1);
    img[0] = q;
    std::deque<int> todo{0};
    bool ok = true;
    while (ok && !todo.empty()) {
      int i = todo.front();
      todo.pop_front();
      int pairs[2][2] = {{h(i), hh(img[i])}, {v(i), vv(img[i])}};
      for (auto& pr : pairs) {
        if (img[pr[0]] < 0) {
          img[pr[0]] = pr[1];
          todo.push_back(pr[0]);
        } else if (img[pr[0]] != pr[1]) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    try {
      Permutation p(img);
      if (p.compose(h).compose(p.inverse()) == hh && p.compose(v).compose(p.inverse()) == vv)
        out.push_back(std::move(p));
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  return out;
}

}  // namespace

std::vector<Permutation> find_translations(const Origami& o) {
  return find_centralizer_like(o, false);
}

std::vector<Permutation> find_anti_translations(const Origami& o) {
  return find_centralizer_like(o, true);
}

std::string canonical_id(const Origami& o) {
  CanonicalForm cf = canonical_form(o);
  uint64_t hash = 1469598103934665603ull;  // FNV-1a 64
  auto eat = [&hash](uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      hash ^= (x >> (8 * b)) & 0xff;
      hash *= 1099511628211ull;
    }
  };
  eat(uint64_t(o.squares()));
  for (int x : cf.origami.h().images()) eat(uint64_t(x));
  for (int x : cf.origami.v().images()) eat(uint64_t(x));
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)hash);
  return std::string(buf);
}

}  // namespace kz
