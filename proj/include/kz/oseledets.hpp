// Lyapunov exponents of the cocycle over an orbit automaton by the
// QR/Benettin scheme: exact integer step matrices applied to floating frames,
// re-orthonormalized every qr_interval steps, log |R_ii| accumulated per
// column. Exponents are reported as ratios to the accumulated growth of the
// top tautological direction, so the top exponent is 1 by normalization.
// Error bars are batch means over equal step ranges.

#ifndef KZ_OSELEDETS_HPP
#define KZ_OSELEDETS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "kz/automaton.hpp"
#include "kz/spectral.hpp"

namespace kz {

struct RunOptions {
  long long steps = 1000000;  // generator steps (each T or S application)
  uint64_t seed = 1;
  int qr_interval = 8;
  int batches = 20;
  long long trace_every = 0;  // 0 disables the running-estimate trace
  bool include_full = true;   // run the full 2g-dimensional bundle
};

// An invariant subbundle carried over the whole orbit: a basis per state and
// the step matrices restricted to it. Rational blocks are transported and
// restricted exactly over Z, so a simulated frame can never leak out of the
// subbundle; refined (floating) blocks are re-projected at every transition.
// step[state][m] with moves m: 0 = T, 1 = T⁻¹, 2 = S, 3 = S⁻¹.
struct BlockBundle {
  std::string label;
  bool rational = true;
  int dim = 0;
  std::vector<std::array<Eigen::MatrixXd, 4>> step;
};

// Bundles for every block of the primary decomposition of `base_deck` (an
// automorphism matrix at the base state of exact order N on H¹). The deck is
// transported exactly along the orbit; incoherent transport or a
// non-invariant block is a hard error.
std::vector<BlockBundle> build_block_bundles(const OrbitAutomaton& aut, const IMat& base_deck,
                                             int N, double rank_tol = 1e-9);

struct BlockExponents {
  std::string label;
  int dim = 0;
  std::vector<double> exponents;  // normalized, in column (descending) order
  std::vector<double> stderrs;    // one standard error from batch means
};

struct TracePoint {
  long long step;
  std::string block;
  int index;
  double value;
};

struct LyapunovReport {
  std::string automaton_hash;
  long long steps = 0;
  long long digits_used = 0;
  uint64_t seed = 0;
  int seeds_merged = 1;
  int qr_interval = 0;
  long long qr_reductions = 0;  // emergency re-orthonormalizations
  double normalizer = 0;        // accumulated log growth of the taut top
  std::vector<BlockExponents> blocks;  // "taut" first, then the requests
  std::vector<TracePoint> trace;

  const BlockExponents& block(const std::string& label) const;
  // spectrum symmetry defect max_i |λ_i + λ_{2g+1-i}| of a full block run
  double symmetry_defect(const std::string& label = "full") const;
};

// The "taut" block (always present in a report) is run as the exact 2x2
// SL(2,Z) cocycle; its top growth is the normalizer that pins λ₁ = 1.
LyapunovReport run_oseledets(const OrbitAutomaton& aut, const RunOptions& opt,
                             const std::vector<BlockBundle>& bundles = {});

// independent seeds, associative merge; parallel=false is the serial
// reference, results are bitwise identical either way
LyapunovReport run_multi_seed(const OrbitAutomaton& aut, const RunOptions& opt,
                              const std::vector<uint64_t>& seeds,
                              const std::vector<BlockBundle>& bundles = {},
                              bool parallel = true);
LyapunovReport merge_reports(const std::vector<LyapunovReport>& reports);

struct PairingEntry {
  int i = 0, j = 0;
  double exp_i = 0, exp_j = 0;  // forward exponents of the two directions
  double pairing = 0;           // |symplectic product|, unit-norm directions
  bool dual = false;            // exponents sum to zero within resolution
  bool resolved = true;
};

struct SubspaceCheckReport {
  std::vector<double> forward_exponents;
  std::vector<double> backward_exponents;
  std::vector<PairingEntry> pairs;   // forward-vs-backward table
  double max_nondual_pairing = 0;    // over resolved non-dual pairs
  double min_dual_pairing = 1e300;   // over resolved dual pairs
  int inconclusive_pairs = 0;
};

// forward run to the midpoint, backward run from the far end; symplectic
// pairings between the estimated expanding and contracting directions
SubspaceCheckReport oseledets_subspace_check(const OrbitAutomaton& aut, const RunOptions& opt);

}  // namespace kz

#endif
