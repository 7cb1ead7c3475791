// Holomorphic deck-eigenform bases of cyclic covers w^N = Π (z-z_i)^{a_i}.
// A basis form is z^m · Π (z-z_i)^{s_i} dz / w^k with s_i = floor(k a_i / N)
// and 0 <= m <= t(k) - 2; the count per denominator k is t(k) - 1, which the
// construction certifies against the exact divisor valuations.

#ifndef KZ_EIGENFORMS_HPP
#define KZ_EIGENFORMS_HPP

#include <vector>

#include "kz/branch_config.hpp"
#include "kz/intmat.hpp"

namespace kz {

struct EigenForm {
  int k = 0;  // w-denominator; deck pullback eigenvalue is zeta^{-k}
  int m = 0;  // monomial power
  std::vector<int> s;  // per finite branch point
  // valuation certificate: exact orders at the points over each finite
  // branch point and over infinity (all must be >= 0)
  std::vector<Rat> ord_finite;
  Rat ord_infinity;

  int eigenvalue_exponent(int n) const { return (n - k % n + n) % n; }  // zeta^{this}
};

struct EigenBasis {
  int N = 0;
  BranchConfiguration config;
  std::vector<EigenForm> forms;        // grouped by k ascending
  std::vector<int> t;                  // t(1..N-1) for this configuration
  int genus = 0;

  std::vector<int> forms_with_denominator(int k) const;
};

// throws std::logic_error if the valuation count disagrees with t(k)-1
EigenBasis holomorphic_basis(int N, const BranchConfiguration& config);

// t(k) for an arbitrary configuration: sum of fractional parts over all
// branch points including infinity
int t_of_config(int N, const BranchConfiguration& config, int k);

}  // namespace kz

#endif
