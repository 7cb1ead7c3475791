#include "kz/homology.hpp"

#include <numeric>

namespace kz {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

enum Corner { BL = 0, BR = 1, TR = 2, TL = 3 };

}  // namespace

i64 cup_pairing(const Origami& o, const std::vector<i64>& x, const std::vector<i64>& y) {
  const int n = o.squares();
  i64 s = 0;
  for (int i = 0; i < n; ++i) {
    s = checked_add(s, checked_mul(x[edge_b(n, i)], y[edge_l(n, o.h()(i))]));
    s = checked_sub(s, checked_mul(x[edge_l(n, i)], y[edge_b(n, o.v()(i))]));
  }
  return s;
}

HomologyModel::HomologyModel(const Origami& o) {
  const int n = o.squares();
  n_ = n;
  const Permutation& h = o.h();
  const Permutation& v = o.v();

  // vertices: orbits of corner identifications
  UnionFind uf(4 * n);
  for (int i = 0; i < n; ++i) {
    uf.unite(4 * i + BR, 4 * h(i) + BL);
    uf.unite(4 * i + TL, 4 * v(i) + BL);
    uf.unite(4 * i + TR, 4 * h(i) + TL);
    uf.unite(4 * i + TR, 4 * v(i) + BR);
  }
  vertex_of_.assign(4 * n, -1);
  int vcount = 0;
  std::vector<int> root_id(4 * n, -1);
  for (int c = 0; c < 4 * n; ++c) {
    int r = uf.find(c);
    if (root_id[r] < 0) root_id[r] = vcount++;
    vertex_of_[c] = root_id[r];
  }
  vertex_count_ = vcount;

  // delta0: C^0 -> C^1
  IMat d0(3 * n, vcount);
  auto set_edge = [&](int e, int tail, int head) {
    if (tail == head) return;
    d0.at(e, head) = checked_add(d0.at(e, head), 1);
    d0.at(e, tail) = checked_sub(d0.at(e, tail), 1);
  };
  for (int i = 0; i < n; ++i) {
    set_edge(edge_b(n, i), vertex_of_[4 * i + BL], vertex_of_[4 * i + BR]);
    set_edge(edge_l(n, i), vertex_of_[4 * i + BL], vertex_of_[4 * i + TL]);
    set_edge(edge_d(n, i), vertex_of_[4 * i + BL], vertex_of_[4 * i + TR]);
  }

  // delta1: C^1 -> C^2 over the 2n triangles
  IMat d1(2 * n, 3 * n);
  for (int i = 0; i < n; ++i) {
    d1.at(2 * i, edge_b(n, i)) += 1;  // T1_i
    d1.at(2 * i, edge_l(n, h(i))) += 1;
    d1.at(2 * i, edge_d(n, i)) -= 1;
    d1.at(2 * i + 1, edge_l(n, i)) += 1;  // T2_i
    d1.at(2 * i + 1, edge_b(n, v(i))) += 1;
    d1.at(2 * i + 1, edge_d(n, i)) -= 1;
  }

  kernel_ = kernel_basis(d1);  // 3n x k
  const int k = kernel_.cols();

  auto x = solve_integer_mat(kernel_, d0);
  if (!x) throw std::logic_error("coboundaries escape the cocycle lattice");
  SmithResult s = smith_normal_form(*x);
  quot_rel_ = s.rank;
  for (int i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) != 1) throw std::logic_error("torsion in H^1 of a surface");
  uprime_ = s.u;
  IMat uinv = inverse_unimodular(s.u);
  basis_ = kernel_.mul(uinv.cols_range(s.rank, k));
  rank_ = basis_.cols();
  if (rank_ != 2 * o.genus())
    throw std::logic_error("H^1 rank disagrees with the singularity profile");

  // intersection form on the basis
  j_ = IMat(rank_, rank_);
  std::vector<std::vector<i64>> cols(rank_, std::vector<i64>(3 * n));
  for (int c = 0; c < rank_; ++c)
    for (int e = 0; e < 3 * n; ++e) cols[c][e] = basis_.at(e, c);
  for (int a = 0; a < rank_; ++a)
    for (int b = 0; b < rank_; ++b) j_.at(a, b) = cup_pairing(o, cols[a], cols[b]);
  for (int a = 0; a < rank_; ++a)
    for (int b = 0; b < rank_; ++b)
      if (j_.at(a, b) != -j_.at(b, a)) throw std::logic_error("intersection form not skew");
  i64 dj = det(j_);
  if (dj != 1 && dj != -1) throw std::logic_error("intersection form not unimodular");

  // tautological classes [dx], [dy] as cochains
  std::vector<i64> tx(3 * n, 0), ty(3 * n, 0);
  for (int i = 0; i < n; ++i) {
    tx[edge_b(n, i)] = 1;
    tx[edge_d(n, i)] = 1;
    ty[edge_l(n, i)] = 1;
    ty[edge_d(n, i)] = 1;
  }
  std::vector<i64> mty(3 * n);
  for (int e = 0; e < 3 * n; ++e) mty[e] = -ty[e];
  taut_u_ = coords(mty);
  taut_v_ = coords(tx);
}

std::vector<i64> HomologyModel::coords(const std::vector<i64>& cocycle) const {
  auto c = solve_integer(kernel_, cocycle);
  if (!c) throw std::invalid_argument("not an integer cocycle");
  std::vector<i64> gamma = uprime_.apply(*c);
  return std::vector<i64>(gamma.begin() + quot_rel_, gamma.end());
}

}  // namespace kz
