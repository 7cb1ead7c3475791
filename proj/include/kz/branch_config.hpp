// Branch-point configurations of the 4-punctured sphere parameterized by the
// upper half-plane via the modular lambda function (theta-constant series
// after reduction to the standard fundamental domain), plus an exact sampler
// for the hyperbolic area measure on a fundamental domain of the lambda
// group, used by the curvature-vs-exponents Monte-Carlo check.

#ifndef KZ_BRANCH_CONFIG_HPP
#define KZ_BRANCH_CONFIG_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "kz/cyclic_cover.hpp"

namespace kz {

// modular lambda with |error| < 1e-12 anywhere in the upper half-plane
std::complex<double> modular_lambda(std::complex<double> tau);

struct BranchConfiguration {
  // finite branch points and their monodromy exponents; one more exponent at
  // infinity
  std::vector<std::complex<double>> points;
  std::vector<int> exponents;
  int exponent_at_infinity = 0;
  std::complex<double> tau{0, 1};  // generator of the configuration, if any
};

// branch points {0, 1, lambda(tau)} with a_1, a_2, a_3 and a_4 at infinity;
// throws std::invalid_argument if tau is not in the upper half-plane
BranchConfiguration teichmueller_point(const CyclicCoverSpec& spec, std::complex<double> tau);

// reference all-finite configuration for a locus-Z member: points 0..5, all
// exponents 1, N = 6
BranchConfiguration locus_z_reference_configuration();

// Exact sampler for the normalized hyperbolic area measure on the fundamental
// domain {|Re| <= 1, |tau - 1/2| >= 1/2, |tau + 1/2| >= 1/2} of the lambda
// group. Samples landing deeper than `cusp_cap` into a cusp are pulled back
// to that height (the integrands of the Monte-Carlo checks converge
// exponentially fast along the cusps, so the bias is far below all stated
// tolerances).
class Gamma2Sampler {
 public:
  explicit Gamma2Sampler(uint64_t seed, double cusp_cap = 8.0)
      : rng_(seed), cap_(cusp_cap) {}
  std::complex<double> next();

 private:
  std::mt19937_64 rng_;
  double cap_;
};

}  // namespace kz

#endif
