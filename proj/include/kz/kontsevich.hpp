// Monte-Carlo check of the curvature formula for exponent sums: the average
// of tr H (and of its per-character-block partial traces) over hyperbolic
// samples of the branch configuration equals the sum of the non-negative
// Lyapunov exponents (resp. per-block sums).

#ifndef KZ_KONTSEVICH_HPP
#define KZ_KONTSEVICH_HPP

#include <map>

#include "kz/hodge_form.hpp"

namespace kz {

struct KontsevichReport {
  int samples = 0;
  uint64_t seed = 0;
  double mean_trace = 0;       // Monte-Carlo average of Σ Λ_i = tr H
  double stderr_trace = 0;
  double min_trace = 0, max_trace = 0;
  // per-block averages keyed by the unordered character pair {k, N-k}
  std::map<int, double> block_mean;    // key: min(k, N-k)
  std::map<int, double> block_stderr;
};

// tr H at one branch configuration, with the per-block split
struct TraceSample {
  double total = 0;
  std::map<int, double> per_block;
};
TraceSample curvature_trace(const CyclicCoverSpec& spec, const BranchConfiguration& config,
                            const HodgeOptions& opt);

KontsevichReport kontsevich_check(const CyclicCoverSpec& spec, int samples, uint64_t seed,
                                  const HodgeOptions& opt, bool parallel = true);

}  // namespace kz

#endif
