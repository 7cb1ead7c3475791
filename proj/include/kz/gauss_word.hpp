// Discrete coding of random Teichmüller geodesics: continued-fraction digits
// drawn i.i.d. from the Gauss measure P(n) = log2(1 + 1/(n(n+2))). Digit
// pairs (a,b) expand to the alternating shear word T^a · (S T^{-b} S^{-1}),
// whose 2x2 products are the nonnegative continued-fraction matrices. (The
// one-sided word T^n·S contains the elliptic letter TS and measurably skews
// subdominant exponent ratios; the alternating form does not.)

#ifndef KZ_GAUSS_WORD_HPP
#define KZ_GAUSS_WORD_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kz {

inline constexpr const char* kWordConvention = "gauss-cf-alternating/mt19937_64/v1";

class GaussDigitSampler {
 public:
  explicit GaussDigitSampler(uint64_t seed) : rng_(seed) {}

  // P(n) = log2(1 + 1/(n(n+2))), n >= 1
  int next() {
    double u = double(rng_() >> 11) * 0x1.0p-53;
    // smallest n with CDF(n) = 1 + log2((n+1)/(n+2)) >= u
    double t = std::exp2(u - 1.0);  // in [1/2, 1)
    double raw = (2.0 * t - 1.0) / (1.0 - t);
    long long n = std::max(1ll, (long long)raw - 1);
    while (double(n + 1) < t * double(n + 2)) ++n;
    while (n > 1 && double(n) >= t * double(n + 1)) --n;
    return int(std::min(n, (long long)INT32_MAX));
  }

 private:
  std::mt19937_64 rng_;
};

struct GeodesicWord {
  std::vector<int> digits;
  uint64_t seed = 0;
  std::string convention = kWordConvention;
};

inline GeodesicWord sample_word(uint64_t seed, int length) {
  if (length < 1) throw std::invalid_argument("sample_word: length must be positive");
  GeodesicWord w;
  w.seed = seed;
  w.digits.reserve(length);
  GaussDigitSampler s(seed);
  for (int i = 0; i < length; ++i) w.digits.push_back(s.next());
  return w;
}

}  // namespace kz

#endif
