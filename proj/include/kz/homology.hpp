// Integer cohomology of the square cell complex of an origami.
//
// Each square i is split into two ordered triangles
//   T1_i = [BL, BR, TR]   and   T2_i = [BL, TL, TR]
// over the 1-simplices b_i (bottom, rightward), l_i (left, upward) and the
// diagonal d_i (BL -> TR). The right edge of square i is l_{h(i)}, the top
// edge is b_{v(i)}. H¹(S,Z) is ker δ¹ / im δ⁰, computed by Smith reduction,
// and the intersection form is the cup product evaluated on the fundamental
// class Σ(T1_i - T2_i):
//   <x,y> = Σ_i  x(b_i)·y(l_{h(i)}) - x(l_i)·y(b_{v(i)}).

#ifndef KZ_HOMOLOGY_HPP
#define KZ_HOMOLOGY_HPP

#include <vector>

#include "kz/intmat.hpp"
#include "kz/origami.hpp"

namespace kz {

// Edge indexing of the complex of an n-square origami: b_i = i, l_i = n+i,
// d_i = 2n+i.
inline int edge_b(int n, int i) { return i; }
inline int edge_l(int n, int i) { return n + i; }
inline int edge_d(int n, int i) { return 2 * n + i; }

class HomologyModel {
 public:
  explicit HomologyModel(const Origami& o);

  int rank() const { return rank_; }             // 2g
  const IMat& basis() const { return basis_; }   // 3n x 2g integer cocycles
  const IMat& intersection() const { return j_; }  // 2g x 2g, skew, |det|=1
  // coordinates of the tautological pair (u,v) = (-[dy],[dx]); in this
  // ordered basis of the tautological plane the cocycle of a generator g
  // restricts to the SL(2,Z) matrix of g itself
  const std::vector<i64>& taut_u() const { return taut_u_; }
  const std::vector<i64>& taut_v() const { return taut_v_; }

  // coordinates of a closed integer cochain modulo coboundaries
  std::vector<i64> coords(const std::vector<i64>& cocycle) const;

  int vertex_count() const { return vertex_count_; }
  // vertex id of a corner, corner in {0=BL,1=BR,2=TR,3=TL}
  int vertex_of(int square, int corner) const { return vertex_of_[4 * square + corner]; }

 private:
  int n_ = 0, rank_ = 0, vertex_count_ = 0, quot_rel_ = 0;
  IMat basis_, j_;
  IMat kernel_;  // 3n x k
  IMat uprime_;  // k x k, Smith row transform of the coboundary image
  std::vector<i64> taut_u_, taut_v_;
  std::vector<int> vertex_of_;
};

// cup-product pairing of two integer cocycles (3n vectors)
i64 cup_pairing(const Origami& o, const std::vector<i64>& x, const std::vector<i64>& y);

}  // namespace kz

#endif
