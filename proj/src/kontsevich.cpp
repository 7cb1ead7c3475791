#include "kz/kontsevich.hpp"

#include <cmath>

#include "kz/parallel.hpp"

namespace kz {

TraceSample curvature_trace(const CyclicCoverSpec& spec, const BranchConfiguration& config,
                            const HodgeOptions& opt) {
  EigenBasis basis = holomorphic_basis(spec.N, config);
  OmegaSpec omega = omega_for_cover(spec, basis);
  SecondFundamentalFormMatrix sf = second_fundamental_form(basis, omega, opt);
  TraceSample s;
  const int g = basis.genus;
  for (int i = 0; i < g; ++i) {
    double hii = sf.H(i, i).real();
    s.total += hii;
    int k = basis.forms[sf.frame.order[i]].k;
    s.per_block[std::min(k, spec.N - k)] += hii;
  }
  return s;
}

KontsevichReport kontsevich_check(const CyclicCoverSpec& spec, int samples, uint64_t seed,
                                  const HodgeOptions& opt, bool parallel) {
  if (samples < 2) throw std::invalid_argument("kontsevich_check: need at least two samples");
  KontsevichReport rep;
  rep.samples = samples;
  rep.seed = seed;

  // draw every point up front so the result is independent of scheduling
  Gamma2Sampler sampler(seed);
  std::vector<std::complex<double>> taus(samples);
  for (auto& t : taus) t = sampler.next();

  std::vector<TraceSample> slots(samples);
  parallel_for(samples, parallel, [&](int i) {
    slots[i] = curvature_trace(spec, teichmueller_point(spec, taus[i]), opt);
  });

  rep.min_trace = slots[0].total;
  rep.max_trace = slots[0].total;
  double mean = 0;
  for (const TraceSample& s : slots) {
    mean += s.total;
    rep.min_trace = std::min(rep.min_trace, s.total);
    rep.max_trace = std::max(rep.max_trace, s.total);
    for (const auto& [k, v] : s.per_block) rep.block_mean[k] += v;
  }
  mean /= samples;
  rep.mean_trace = mean;
  double var = 0;
  for (const TraceSample& s : slots) var += (s.total - mean) * (s.total - mean);
  rep.stderr_trace = std::sqrt(var / (samples - 1) / samples);
  for (auto& [k, v] : rep.block_mean) v /= samples;
  for (const auto& [k, m] : rep.block_mean) {
    double bv = 0;
    for (const TraceSample& s : slots) {
      auto it = s.per_block.find(k);
      double x = it == s.per_block.end() ? 0.0 : it->second;
      bv += (x - m) * (x - m);
    }
    rep.block_stderr[k] = std::sqrt(bv / (samples - 1) / samples);
  }
  return rep;
}

}  // namespace kz
