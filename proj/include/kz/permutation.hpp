#ifndef KZ_PERMUTATION_HPP
#define KZ_PERMUTATION_HPP

#include <numeric>
#include <stdexcept>
#include <vector>

namespace kz {

// Permutation of {0,...,n-1} in one-line notation. (p*q)(i) = p(q(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int x : img_) {
      if (x < 0 || x >= int(img_.size()) || seen[x]) throw std::invalid_argument("not a permutation");
      seen[x] = 1;
    }
  }
  static Permutation identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
  }
  // cycles in disjoint-cycle notation; omitted points are fixed
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    auto p = identity(n);
    for (const auto& c : cycles)
      for (size_t i = 0; i < c.size(); ++i) p.img_[c[i]] = c[(i + 1) % c.size()];
    return Permutation(p.img_);  // revalidate
  }

  int size() const { return int(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const {
    std::vector<int> v(img_.size());
    for (int i = 0; i < size(); ++i) v[img_[i]] = i;
    return Permutation(std::move(v));
  }
  // (this ∘ q)(i) = this(q(i))
  Permutation compose(const Permutation& q) const {
    if (q.size() != size()) throw std::invalid_argument("compose: size mismatch");
    std::vector<int> v(img_.size());
    for (int i = 0; i < size(); ++i) v[i] = img_[q(i)];
    return Permutation(std::move(v));
  }
  bool commutes_with(const Permutation& q) const { return compose(q) == q.compose(*this); }
  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }
  long long order() const {
    long long ord = 1;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      long long len = 0;
      for (int j = i; !seen[j]; j = img_[j]) {
        seen[j] = 1;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }
  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

 private:
  std::vector<int> img_;
};

}  // namespace kz

#endif
