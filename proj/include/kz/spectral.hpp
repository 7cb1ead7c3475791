// Deck-eigenspace analysis for square-tiled cyclic covers: the integers t(k),
// holomorphic eigenspace dimensions, the I0/I1 partition with exponent
// predictions, and the exact splitting of H¹ into invariant blocks (kernels
// of cyclotomic polynomials evaluated on the deck matrix, with a
// floating-point character refinement when several k share a divisor).

#ifndef KZ_SPECTRAL_HPP
#define KZ_SPECTRAL_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "kz/cyclic_cover.hpp"
#include "kz/intmat.hpp"

namespace kz {

// t(k) = Σ_i frac(k a_i / N), exact; lies in {1,2,3} for valid specs
int t_value(const CyclicCoverSpec& spec, int k);

struct EigenData {
  int N = 0;
  std::array<int, 4> a{};
  std::vector<int> t;          // t(1..N-1)
  std::vector<int> dims_holo;  // dim V_k^{1,0} = t(N-k) - 1, k = 1..N-1
  std::vector<int> i0, i1;     // partition of {1..N/2}
  int predicted_positive_count = 0;
  std::map<int, Rat> predicted_lambda;  // k in I1 -> exponent
  int genus = 0;

  // non-negative spectrum predicted by the partition, descending, g entries
  std::vector<Rat> predicted_nonneg_spectrum() const;
};

EigenData eigenspace_dims(const CyclicCoverSpec& spec);        // fills t, dims, genus
EigenData partition_and_predictions(const CyclicCoverSpec& spec);

// integer coefficients of the d-th cyclotomic polynomial
std::vector<i64> cyclotomic_poly(int d);

struct RealBlock {
  std::string label;
  int divisor = 0;   // cyclotomic divisor of the deck order
  int k = 0;         // character index for refined blocks, 0 otherwise
  bool rational = true;
  IMat basis;               // 2g x dim, saturated, rational blocks only
  Eigen::MatrixXd fbasis;   // 2g x dim orthonormal, refined blocks only
  int dim() const { return rational ? basis.cols() : int(fbasis.cols()); }
};

// Exact splitting of Z^{2g} into kernels of cyclotomic factors of the deck
// matrix. deck must have exact order N on H¹ or the call throws. When several
// k of the same multiplicative order occur, floating-point refinements
// (tolerance rank_tol on projector singular values) are appended after the
// rational block they refine.
std::vector<RealBlock> real_primary_decomposition(const IMat& deck, int N,
                                                  double rank_tol = 1e-9);

// Restrict matrices to an invariant block. Exact for rational blocks (throws
// invalid_surface("not an invariant subbundle") when some matrix does not
// preserve the lattice span); float blocks use a residual tolerance.
std::vector<IMat> block_restrict(const std::vector<IMat>& mats, const RealBlock& block);
std::vector<Eigen::MatrixXd> block_restrict_f(const std::vector<Eigen::MatrixXd>& mats,
                                              const RealBlock& block, double tol = 1e-8);

}  // namespace kz

#endif
