#include "kz/cyclic_cover.hpp"

#include <algorithm>
#include <numeric>

namespace kz {

std::string CyclicCoverSpec::str() const {
  std::string s = "M" + std::to_string(N) + "(";
  for (int i = 0; i < 4; ++i) s += std::to_string(a[i]) + (i < 3 ? "," : ")");
  return s;
}

CyclicCoverSpec validate_spec(int N, const std::array<int, 4>& a) {
  if (N < 2) throw invalid_surface("cyclic cover: N must be at least 2");
  long long sum = 0;
  int g = N;
  for (int ai : a) {
    if (ai <= 0 || ai > N)
      throw invalid_surface("cyclic cover: need 0 < a_i <= N, got a_i=" + std::to_string(ai));
    sum += ai;
    g = std::gcd(g, ai);
  }
  if (g != 1) throw invalid_surface("cyclic cover: gcd(N, a_1..a_4) = " + std::to_string(g) +
                                    ", must be 1");
  if (sum % N != 0)
    throw invalid_surface("cyclic cover: sum a_i = " + std::to_string(sum) + " is not 0 mod N");
  CyclicCoverSpec s;
  s.N = N;
  s.a = a;
  s.orientable = (N % 2 == 0) && std::all_of(a.begin(), a.end(), [](int x) { return x % 2 == 1; });
  return s;
}

std::optional<CyclicCoverSpec> parse_spec(const std::string& text) {
  int N = 0;
  std::array<int, 4> a{};
  char close = 0;
  if (sscanf(text.c_str(), "M%d(%d,%d,%d,%d%c", &N, &a[0], &a[1], &a[2], &a[3], &close) != 6 ||
      close != ')')
    return std::nullopt;
  return validate_spec(N, a);
}

int genus_by_formula(const CyclicCoverSpec& spec) {
  int s = 0;
  for (int ai : spec.a) s += std::gcd(spec.N, ai);
  return 1 + spec.N - s / 2;
}

CoverResult build_cover(const CyclicCoverSpec& spec) {
  if (!spec.orientable)
    throw invalid_surface("cyclic cover " + spec.str() + ": quadratic, not Abelian");
  const int N = spec.N;
  // cumulative corner shifts: c[m] = a_1 + ... + a_m (mod N); c[0] = 0
  std::array<int, 4> c{0, spec.a[0] % N, (spec.a[0] + spec.a[1]) % N,
                       (spec.a[0] + spec.a[1] + spec.a[2]) % N};

  std::vector<int> himg(2 * N), vimg(2 * N);
  auto sq = [N](int eps, int j) { return cover_square(N, eps, j); };
  for (int j = 0; j < N; ++j) {
    bool even = (j % 2 == 0);
    // upper square (+, j)
    himg[sq(0, j)] = even ? sq(1, j + c[2]) : sq(1, j);
    vimg[sq(0, j)] = even ? sq(1, j + c[3]) : sq(1, j + c[1]);
    // lower square (−, j)
    himg[sq(1, j)] = even ? sq(0, j) : sq(0, j - c[2]);
    vimg[sq(1, j)] = even ? sq(0, j - c[3]) : sq(0, j - c[1]);
  }
  CoverResult r;
  r.spec = spec;
  r.origami = Origami(Permutation(himg), Permutation(vimg));

  std::vector<int> deck(2 * N);
  for (int j = 0; j < N; ++j)
    for (int eps : {0, 1}) deck[sq(eps, j)] = sq(eps, j + 1);
  r.deck = Permutation(deck);

  // every square touches each of the four corner fibers once
  for (int m = 0; m < 4; ++m) {
    r.branch_fibers[m].resize(2 * N);
    std::iota(r.branch_fibers[m].begin(), r.branch_fibers[m].end(), 0);
  }

  if (r.origami.genus() != genus_by_formula(spec))
    throw std::logic_error("cover genus disagrees with the ramification formula");
  return r;
}

std::vector<CyclicCoverSpec> enumerate_orientable_specs(int N) {
  std::vector<CyclicCoverSpec> out;
  if (N % 2 != 0) return out;
  for (int a1 = 1; a1 <= N; a1 += 2)
    for (int a2 = a1; a2 <= N; a2 += 2)
      for (int a3 = a2; a3 <= N; a3 += 2)
        for (int a4 = a3; a4 <= N; a4 += 2) {
          if ((a1 + a2 + a3 + a4) % N != 0) continue;
          if (std::gcd(std::gcd(a1, a2), std::gcd(a3, std::gcd(a4, N))) != 1) continue;
          out.push_back(validate_spec(N, {a1, a2, a3, a4}));
        }
  return out;
}

}  // namespace kz
