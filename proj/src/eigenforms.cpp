#include "kz/eigenforms.hpp"

#include <numeric>

namespace kz {

int t_of_config(int N, const BranchConfiguration& config, int k) {
  long long num = 0;
  for (int a : config.exponents) num += (i64(k) * a) % N;
  num += (i64(k) * config.exponent_at_infinity) % N;
  if (num % N != 0) throw std::logic_error("t(k) not an integer for this configuration");
  return int(num / N);
}

std::vector<int> EigenBasis::forms_with_denominator(int k) const {
  std::vector<int> out;
  for (size_t i = 0; i < forms.size(); ++i)
    if (forms[i].k == k) out.push_back(int(i));
  return out;
}

EigenBasis holomorphic_basis(int N, const BranchConfiguration& config) {
  EigenBasis basis;
  basis.N = N;
  basis.config = config;
  const int p = int(config.points.size());
  long long asum = config.exponent_at_infinity;
  for (int a : config.exponents) asum += a;
  if (asum % N != 0) throw std::invalid_argument("branch exponents must sum to 0 mod N");
  const long long sigma = asum / N;

  basis.t.resize(N - 1);
  basis.genus = 0;
  for (int k = 1; k < N; ++k) {
    int tk = t_of_config(N, config, k);
    basis.t[k - 1] = tk;
    const int count = tk - 1;
    if (count <= 0) continue;
    basis.genus += count;

    std::vector<int> s(p);
    for (int i = 0; i < p; ++i) s[i] = int((i64(k) * config.exponents[i]) / N);
    const bool zero_is_branch =
        std::any_of(config.points.begin(), config.points.end(),
                    [](const std::complex<double>& z) { return z == std::complex<double>(0, 0); });

    for (int m = 0; m < count; ++m) {
      EigenForm f;
      f.k = k;
      f.m = m;
      f.s = s;
      // exact orders: at the point(s) over z_i the local coordinate satisfies
      // z - z_i = t^{e_i} with e_i = N/gcd(N,a_i), and w = t^{a_i e_i / N}·unit
      long long degf = m;
      for (int i = 0; i < p; ++i) {
        degf += s[i];
        long long ei = N / std::gcd((long long)N, (long long)config.exponents[i]);
        long long local = s[i];
        if (zero_is_branch && config.points[i] == std::complex<double>(0, 0)) local += m;
        // ord = e_i (s_i [+ m at 0]) + (e_i - 1) - k a_i e_i / N
        Rat ord = Rat(checked_add(checked_mul(ei, local), ei - 1), 1);
        ord = Rat::sub(ord, Rat(checked_mul(checked_mul((i64)k, config.exponents[i]), ei), N));
        f.ord_finite.push_back(ord);
        if (ord.num < 0) throw std::logic_error("holomorphic basis: negative finite valuation");
      }
      {
        // over infinity: f ~ t^{-e·deg f}, dz ~ t^{-e-1} dt, and
        // w^{-k} ~ t^{e k sigma - e k a_inf / N}
        long long ainf = config.exponent_at_infinity;
        long long einf = ainf == 0 ? 1 : N / std::gcd((long long)N, ainf);
        Rat ord = Rat(checked_sub(checked_mul(einf, checked_sub(checked_mul((i64)k, sigma), degf)),
                                  einf + 1),
                      1);
        ord = Rat::sub(ord, Rat(checked_mul(checked_mul((i64)k, ainf), einf), N));
        f.ord_infinity = ord;
        if (ord.num < 0) throw std::logic_error("holomorphic basis: negative valuation at infinity");
      }
      basis.forms.push_back(std::move(f));
    }
  }
  // Riemann–Hurwitz over P^1: 2g - 2 = -2N + Σ_i (e_i - 1) N / e_i
  long long rh = -2 * N;
  for (int i = 0; i < p; ++i) rh += N - std::gcd((long long)N, (long long)config.exponents[i]);
  if (config.exponent_at_infinity != 0)
    rh += N - std::gcd((long long)N, (long long)config.exponent_at_infinity);
  if (int((rh + 2) / 2) != basis.genus)
    throw std::logic_error("holomorphic basis count disagrees with Riemann-Hurwitz");
  return basis;
}

}  // namespace kz
