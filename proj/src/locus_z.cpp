#include "kz/locus_z.hpp"

#include <deque>
#include <numeric>

#include "kz/spectral.hpp"

namespace kz {

namespace {

struct CornerOrbits {
  std::vector<int> vertex_of;  // 4*square + corner (BL,BR,TR,TL)
  int count = 0;
};

CornerOrbits corner_orbits(const Origami& o) {
  const int n = o.squares();
  std::vector<int> parent(4 * n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  enum { BL = 0, BR = 1, TR = 2, TL = 3 };
  for (int i = 0; i < n; ++i) {
    parent[find(4 * i + BR)] = find(4 * o.h()(i) + BL);
    parent[find(4 * i + TL)] = find(4 * o.v()(i) + BL);
    parent[find(4 * i + TR)] = find(4 * o.h()(i) + TL);
    parent[find(4 * i + TR)] = find(4 * o.v()(i) + BR);
  }
  CornerOrbits co;
  co.vertex_of.assign(4 * n, -1);
  std::vector<int> root_id(4 * n, -1);
  for (int c = 0; c < 4 * n; ++c) {
    int r = find(c);
    if (root_id[r] < 0) root_id[r] = co.count++;
    co.vertex_of[c] = root_id[r];
  }
  return co;
}

}  // namespace

Origami refine_origami(const Origami& o) {
  const int n = o.squares();
  auto id = [](int i, int qx, int qy) { return 4 * i + 2 * qy + qx; };
  std::vector<int> h(4 * n), v(4 * n);
  for (int i = 0; i < n; ++i)
    for (int qy = 0; qy < 2; ++qy)
      for (int qx = 0; qx < 2; ++qx) {
        h[id(i, qx, qy)] = qx == 0 ? id(i, 1, qy) : id(o.h()(i), 0, qy);
        v[id(i, qx, qy)] = qy == 0 ? id(i, qx, 1) : id(o.v()(i), qx, 0);
      }
  return Origami(Permutation(h), Permutation(v));
}

MarkedH2Origami hyperelliptic_involution(const Origami& base) {
  if (!(base.profile().zero_orders == std::vector<int>{2}))
    throw invalid_surface("hyperelliptic_involution: base must lie in H(2)");
  MarkedH2Origami m;
  m.original = base;
  m.base = refine_origami(base);
  const Origami& r = m.base;
  const int n = r.squares();
  CornerOrbits co = corner_orbits(r);
  enum { BL = 0, BR = 1, TR = 2, TL = 3 };

  std::vector<std::pair<Permutation, std::vector<WeierstrassPoint>>> found;
  for (const Permutation& p : find_anti_translations(r)) {
    if (!p.compose(p).is_identity()) continue;
    std::vector<WeierstrassPoint> fixed;
    for (int s = 0; s < n; ++s) {
      if (p(s) == s) fixed.push_back({WeierstrassPoint::SquareCenter, s});
      if (p(s) == r.h()(s)) fixed.push_back({WeierstrassPoint::VerticalEdgeMidpoint, s});
      if (p(s) == r.v()(s)) fixed.push_back({WeierstrassPoint::HorizontalEdgeMidpoint, s});
    }
    // fixed vertices: BL(s) maps to TR(p(s))
    std::vector<char> seen(co.count, 0);
    for (int s = 0; s < n; ++s) {
      int v0 = co.vertex_of[4 * s + BL];
      if (seen[v0]) continue;
      seen[v0] = 1;
      if (co.vertex_of[4 * p(s) + TR] == v0) fixed.push_back({WeierstrassPoint::Vertex, s});
    }
    if (fixed.size() == 6) found.emplace_back(p, std::move(fixed));
  }
  if (found.empty())
    throw invalid_surface("hyperelliptic_involution: not hyperelliptic-compatible");
  if (found.size() > 1)
    throw std::logic_error("hyperelliptic involution is not unique on this surface");
  m.involution = found[0].first;
  m.weierstrass = std::move(found[0].second);
  return m;
}

namespace {

// F_3 row reduction; returns rank, modifies rows in place, tracks the same
// operations on an attached right-hand side column per row
struct F3System {
  int cols;
  std::vector<std::vector<int8_t>> rows;
  std::vector<int> rhs;

  void add_row(std::vector<int8_t> r, int b) {
    rows.push_back(std::move(r));
    rhs.push_back(((b % 3) + 3) % 3);
  }

  // returns false if inconsistent; fills a particular solution and the kernel
  bool solve(std::vector<int>& particular, std::vector<std::vector<int>>& kernel) const {
    std::vector<std::vector<int8_t>> a = rows;
    std::vector<int> b = rhs;
    const int m = int(a.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < m; ++c) {
      int p = -1;
      for (int i = r; i < m; ++i)
        if (a[i][c] != 0) {
          p = i;
          break;
        }
      if (p < 0) continue;
      std::swap(a[r], a[p]);
      std::swap(b[r], b[p]);
      int inv = a[r][c] == 1 ? 1 : 2;  // inverse mod 3
      for (int j = 0; j < cols; ++j) a[r][j] = int8_t((a[r][j] * inv) % 3);
      b[r] = (b[r] * inv) % 3;
      for (int i = 0; i < m; ++i) {
        if (i == r || a[i][c] == 0) continue;
        int f = a[i][c];
        for (int j = 0; j < cols; ++j) a[i][j] = int8_t(((a[i][j] - f * a[r][j]) % 3 + 3) % 3);
        b[i] = ((b[i] - f * b[r]) % 3 + 3) % 3;
      }
      pivot_col.push_back(c);
      ++r;
    }
    for (int i = r; i < m; ++i)
      if (b[i] != 0) return false;
    particular.assign(cols, 0);
    for (int i = 0; i < r; ++i) particular[pivot_col[i]] = b[i];
    // kernel basis from the free columns
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    kernel.clear();
    for (int c = 0; c < cols; ++c) {
      if (is_pivot[c]) continue;
      std::vector<int> k(cols, 0);
      k[c] = 1;
      for (int i = 0; i < r; ++i) k[pivot_col[i]] = ((-a[i][c]) % 3 + 3) % 3;
      kernel.push_back(std::move(k));
    }
    return true;
  }
};

// reduce `vecs` modulo the span of `mods` over F_3, returning a basis of the
// quotient representatives
std::vector<std::vector<int>> quotient_basis(std::vector<std::vector<int>> vecs,
                                             std::vector<std::vector<int>> mods) {
  const int cols = int(vecs.empty() ? mods[0].size() : vecs[0].size());
  std::vector<std::vector<int>> basis;  // row-echelon span of mods
  std::vector<int> lead;
  auto reduce = [&](std::vector<int>& v) {
    for (size_t i = 0; i < basis.size(); ++i) {
      int f = v[lead[i]];
      if (f)
        for (int j = 0; j < cols; ++j) v[j] = ((v[j] - f * basis[i][j]) % 3 + 3) % 3;
    }
  };
  auto insert = [&](std::vector<int> v) -> bool {
    reduce(v);
    for (int j = 0; j < cols; ++j)
      if (v[j]) {
        int inv = v[j] == 1 ? 1 : 2;
        for (int& x : v) x = (x * inv) % 3;
        basis.push_back(v);
        lead.push_back(j);
        return true;
      }
    return false;
  };
  for (auto& mv : mods) insert(std::move(mv));
  std::vector<std::vector<int>> out;
  for (auto& v : vecs) {
    std::vector<int> copy = v;
    if (insert(std::move(v))) out.push_back(std::move(copy));
  }
  return out;
}

}  // namespace

std::vector<ZCandidate> triple_cover_candidates(const MarkedH2Origami& marked) {
  const Origami& r = marked.base;
  const int n = r.squares();
  CornerOrbits co = corner_orbits(r);
  enum { BL = 0, BR = 1, TR = 2, TL = 3 };

  std::vector<int> defect(co.count, 0);
  for (const WeierstrassPoint& w : marked.weierstrass) {
    if (w.kind != WeierstrassPoint::Vertex)
      throw std::logic_error("branch points must be vertices of the refined grid");
    defect[co.vertex_of[4 * w.square + BL]] = 1;
  }

  // unknowns: rho_h(s) at column s, rho_v(s) at column n + s
  F3System sys;
  sys.cols = 2 * n;
  Permutation hi = r.h().inverse(), vi = r.v().inverse();
  std::vector<char> visited(co.count, 0);
  for (int s0 = 0; s0 < n; ++s0) {
    int vx = co.vertex_of[4 * s0 + BL];
    if (visited[vx]) continue;
    visited[vx] = 1;
    std::vector<int8_t> row(2 * n, 0);
    // counterclockwise quarter-turn walk around the vertex at BL(s0)
    int t = s0;
    do {
      int t1 = hi(t);   // cross the left edge of t:    -rho_h(t1)
      int t2 = vi(t1);  // cross the bottom edge of t1: -rho_v(t2)
      int t3 = t2;      // cross the right edge of t2:  +rho_h(t2)
      int t4 = r.h()(t2);  // now at TL of t4
      row[t1] = int8_t(((row[t1] - 1) % 3 + 3) % 3);
      row[n + t2] = int8_t(((row[n + t2] - 1) % 3 + 3) % 3);
      row[t3] = int8_t((row[t3] + 1) % 3);
      row[n + t4] = int8_t((row[n + t4] + 1) % 3);
      t = r.v()(t4);  // cross the top edge of t4 and return to a BL corner
    } while (t != s0);
    sys.add_row(std::move(row), defect[vx]);
  }

  std::vector<int> particular;
  std::vector<std::vector<int>> kernel;
  if (!sys.solve(particular, kernel))
    throw std::logic_error("branched cocycle system has no solution");

  // gauge subspace: relabeling sheets square by square
  std::vector<std::vector<int>> gauge;
  for (int s = 0; s < n; ++s) {
    std::vector<int> gv(2 * n, 0);
    for (int t = 0; t < n; ++t) {
      if (r.h()(t) == s) gv[t] = (gv[t] + 1) % 3;
      if (t == s) gv[t] = ((gv[t] - 1) % 3 + 3) % 3;
      if (r.v()(t) == s) gv[n + t] = (gv[n + t] + 1) % 3;
      if (t == s) gv[n + t] = ((gv[n + t] - 1) % 3 + 3) % 3;
    }
    gauge.push_back(std::move(gv));
  }
  std::vector<std::vector<int>> reps = quotient_basis(std::move(kernel), std::move(gauge));

  std::vector<ZCandidate> out;
  long long total = 1;
  for (size_t i = 0; i < reps.size(); ++i) total *= 3;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    std::vector<int> rho = particular;
    for (size_t i = 0; i < reps.size(); ++i, c /= 3) {
      int d = int(c % 3);
      if (d)
        for (int j = 0; j < 2 * n; ++j) rho[j] = (rho[j] + d * reps[i][j]) % 3;
    }
    ZCandidate cand;
    cand.rho_h.assign(rho.begin(), rho.begin() + n);
    cand.rho_v.assign(rho.begin() + n, rho.end());
    std::vector<int> h3(3 * n), v3(3 * n), deck(3 * n);
    auto id3 = [](int s, int m) { return 3 * s + m; };
    for (int s = 0; s < n; ++s)
      for (int m = 0; m < 3; ++m) {
        h3[id3(s, m)] = id3(r.h()(s), (m + cand.rho_h[s]) % 3);
        v3[id3(s, m)] = id3(r.v()(s), (m + cand.rho_v[s]) % 3);
        deck[id3(s, m)] = id3(s, (m + 1) % 3);
      }
    cand.origami = Origami(Permutation(h3), Permutation(v3));
    cand.z3_deck = Permutation(deck);
    if (!(cand.origami.profile().zero_orders == std::vector<int>{8, 2, 2, 2, 2, 2}))
      throw std::logic_error("triple cover landed outside H(8,2^5)");
    out.push_back(std::move(cand));
  }
  return out;
}

ZValidation validate_z_member(const MarkedH2Origami& marked, const ZCandidate& c) {
  ZValidation val;
  const Origami& r = marked.base;
  const Permutation& psi = marked.involution;
  const int n = r.squares();
  Permutation hinv_psi = r.h().inverse().compose(psi);
  Permutation vinv_psi = r.v().inverse().compose(psi);

  // solve mu(H(s)) - mu(s) = -rho_h(s) - rho_h(H^{-1} psi(s)) and the
  // vertical analogue over F_3
  std::vector<int> mu(n, -1);
  mu[0] = 0;
  std::deque<int> todo{0};
  while (!todo.empty()) {
    int s = todo.front();
    todo.pop_front();
    struct Edge {
      int to;
      int delta;
    };
    Edge edges[2] = {
        {r.h()(s), ((-c.rho_h[s] - c.rho_h[hinv_psi(s)]) % 3 + 9) % 3},
        {r.v()(s), ((-c.rho_v[s] - c.rho_v[vinv_psi(s)]) % 3 + 9) % 3}};
    for (const Edge& e : edges) {
      int want = (mu[s] + e.delta) % 3;
      if (mu[e.to] < 0) {
        mu[e.to] = want;
        todo.push_back(e.to);
      } else if (mu[e.to] != want) {
        val.diagnostic = "no Z/6 symmetry";
        return val;
      }
    }
  }
  // U² = deck^{mu(s) + mu(psi(s))} must be a constant nonzero power; shift mu
  // by a constant to make it so
  int csq = (mu[0] + mu[psi(0)]) % 3;
  for (int s = 0; s < n; ++s)
    if ((mu[s] + mu[psi(s)]) % 3 != csq) {
      val.diagnostic = "involution lift does not square into the deck group";
      return val;
    }
  int shift = 0;
  while ((csq + 2 * shift) % 3 == 0) ++shift;
  for (int& x : mu) x = (x + shift) % 3;

  std::vector<int> u(3 * n);
  for (int s = 0; s < n; ++s)
    for (int m = 0; m < 3; ++m) u[3 * s + m] = 3 * psi(s) + (m + mu[s]) % 3;
  val.order6 = Permutation(u);
  if (val.order6.order() != 6) {
    val.diagnostic = "lift does not have order six";
    return val;
  }
  if (classify_automorphism(c.origami, val.order6) != AutomorphismKind::AntiTranslation) {
    val.diagnostic = "lift is not an anti-translation";
    return val;
  }

  HomologyModel model(c.origami);
  IMat m6 = automorphism_matrix(c.origami, model, val.order6);
  // exact order 6 on H¹
  IMat p = m6;
  for (int k = 2; k <= 6; ++k) {
    p = p.mul(m6);
    if (k < 6 && p == IMat::identity(model.rank())) {
      val.diagnostic = "T* has order below six";
      return val;
    }
  }
  if (!(p == IMat::identity(model.rank()))) {
    val.diagnostic = "T* does not have order six";
    return val;
  }

  auto blocks = real_primary_decomposition(m6, 6);
  std::array<int, 3> dims{0, 0, 0};
  for (const auto& b : blocks) {
    if (!b.rational) continue;
    if (b.divisor == 6) dims[0] = b.dim();
    if (b.divisor == 3) dims[1] = b.dim();
    if (b.divisor == 2) dims[2] = b.dim();
  }
  val.block_dims = dims;
  if (dims != std::array<int, 3>{8, 8, 4}) {
    val.diagnostic = "character block dimensions are not (8, 8, 4)";
    return val;
  }
  val.accepted = true;
  val.diagnostic = "accepted";
  return val;
}

std::optional<std::pair<ZCandidate, ZValidation>> build_z_member(const Origami& base) {
  MarkedH2Origami marked = hyperelliptic_involution(base);
  for (ZCandidate& cand : triple_cover_candidates(marked)) {
    ZValidation v = validate_z_member(marked, cand);
    if (v.accepted) return std::make_pair(std::move(cand), std::move(v));
  }
  return std::nullopt;
}

}  // namespace kz
