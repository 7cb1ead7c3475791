#include "kz/spectral.hpp"

#include <algorithm>
#include <complex>
#include <numeric>

namespace kz {

int t_value(const CyclicCoverSpec& spec, int k) {
  if (k < 1 || k >= spec.N) throw std::invalid_argument("t_value: k out of range");
  // Σ (k a_i mod N) / N, exact
  long long num = 0;
  for (int ai : spec.a) num += (i64(k) * ai) % spec.N;
  if (num % spec.N != 0) throw std::logic_error("t(k) not an integer; invalid spec");
  return int(num / spec.N);
}

EigenData eigenspace_dims(const CyclicCoverSpec& spec) {
  EigenData e;
  e.N = spec.N;
  e.a = spec.a;
  e.genus = genus_by_formula(spec);
  e.t.resize(spec.N - 1);
  e.dims_holo.resize(spec.N - 1);
  for (int k = 1; k < spec.N; ++k) e.t[k - 1] = t_value(spec, k);
  int sum = 0;
  for (int k = 1; k < spec.N; ++k) {
    e.dims_holo[k - 1] = e.t[spec.N - k - 1] - 1;
    sum += e.dims_holo[k - 1];
  }
  if (sum != e.genus) throw std::logic_error("eigenspace dimensions do not sum to the genus");
  return e;
}

EigenData partition_and_predictions(const CyclicCoverSpec& spec) {
  EigenData e = eigenspace_dims(spec);
  const int N = spec.N;
  auto dim = [&](int k) { return e.dims_holo[((k - 1) % (N - 1) + (N - 1)) % (N - 1)]; };
  for (int k = 1; k <= N / 2; ++k) {
    bool in_i1 = dim(k) == 1 && dim(N - k) == 1;
    (in_i1 ? e.i1 : e.i0).push_back(k);
  }
  e.predicted_positive_count = 0;
  for (int k = 1; k < N; ++k)
    if (dim(k) == 1 && dim(N - k) == 1) ++e.predicted_positive_count;
  auto rat_less = [](const Rat& x, const Rat& y) {
    return checked_mul(x.num, y.den) < checked_mul(y.num, x.den);
  };
  for (int k : e.i1) {
    // lambda_k = 2 min_j min( frac(k a_j / N), 1 - frac(k a_j / N) )
    Rat best(1);
    for (int aj : spec.a) {
      i64 f = (i64(k) * aj) % N;
      Rat m = rat_less(Rat(f, N), Rat(N - f, N)) ? Rat(f, N) : Rat(N - f, N);
      if (rat_less(m, best)) best = m;
    }
    e.predicted_lambda[k] = Rat(2 * best.num, best.den);
  }
  return e;
}

std::vector<Rat> EigenData::predicted_nonneg_spectrum() const {
  std::vector<Rat> s;
  for (int k : i1) {
    auto it = predicted_lambda.find(k);
    int mult = (2 * k == N) ? 1 : 2;
    for (int m = 0; m < mult; ++m) s.push_back(it->second);
  }
  while (int(s.size()) < genus) s.push_back(Rat(0));
  std::sort(s.begin(), s.end(), [](const Rat& x, const Rat& y) {
    return checked_mul(x.num, y.den) > checked_mul(y.num, x.den);
  });
  return s;
}

std::vector<i64> cyclotomic_poly(int d) {
  // divide x^d - 1 by all lower cyclotomic factors
  std::vector<i64> p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (int e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    std::vector<i64> q = cyclotomic_poly(e);
    // exact polynomial division p /= q
    std::vector<i64> r(p.size() - q.size() + 1, 0);
    std::vector<i64> w = p;
    for (int i = int(r.size()) - 1; i >= 0; --i) {
      i64 c = w[i + q.size() - 1] / q.back();
      r[i] = c;
      for (size_t j = 0; j < q.size(); ++j)
        w[i + j] = checked_sub(w[i + j], checked_mul(c, q[j]));
    }
    for (i64 x : w)
      if (x != 0) throw std::logic_error("cyclotomic division not exact");
    p = r;
  }
  return p;
}

namespace {

IMat poly_eval(const std::vector<i64>& coeff, const IMat& m) {
  const int n = m.rows();
  IMat acc(n, n);
  for (int i = int(coeff.size()) - 1; i >= 0; --i) {
    acc = acc.mul(m);
    for (int d = 0; d < n; ++d) acc.at(d, d) = checked_add(acc.at(d, d), coeff[i]);
  }
  return acc;
}

Eigen::MatrixXcd to_complex(const IMat& m) {
  Eigen::MatrixXcd c(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) c(i, j) = double(m.at(i, j));
  return c;
}

int matrix_order(const IMat& m, int cap) {
  IMat p = m;
  for (int k = 1; k <= cap; ++k) {
    if (p == IMat::identity(m.rows())) return k;
    p = p.mul(m);
  }
  return -1;
}

}  // namespace

std::vector<RealBlock> real_primary_decomposition(const IMat& deck, int N, double rank_tol) {
  if (deck.rows() != deck.cols()) throw std::invalid_argument("deck matrix not square");
  const int n = deck.rows();
  if (matrix_order(deck, N) != N)
    throw invalid_surface("deck matrix does not have exact order " + std::to_string(N));

  std::vector<RealBlock> out;
  int total = 0;
  for (int d = 1; d <= N; ++d) {
    if (N % d != 0) continue;
    IMat pd = poly_eval(cyclotomic_poly(d), deck);
    IMat ker = kernel_basis(pd);
    if (ker.cols() == 0) continue;
    RealBlock b;
    b.label = "d=" + std::to_string(d);
    b.divisor = d;
    b.rational = true;
    b.basis = ker;
    total += ker.cols();
    out.push_back(std::move(b));

    // character indices of this divisor: k in 1..N-1 with N/gcd(N,k) = d,
    // grouped into conjugate pairs {k, N-k}
    std::vector<int> ks;
    for (int k = 1; k < N; ++k)
      if (N / std::gcd(N, k) == d && 2 * k <= N) ks.push_back(k);
    if (ks.size() < 2) continue;

    // refinement: real form of the spectral projector onto V_k ⊕ V_{N-k}
    Eigen::MatrixXcd m = to_complex(deck);
    std::vector<int> present;  // eigenvalue exponents with nonzero eigenspace
    for (int j = 1; j < N; ++j) {
      std::complex<double> zj = std::polar(1.0, 2.0 * M_PI * j / N);
      Eigen::MatrixXcd a = m - zj * Eigen::MatrixXcd::Identity(n, n);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
      int rank = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > rank_tol * svd.singularValues()(0)) ++rank;
      if (rank < n) present.push_back(j);
    }
    for (int k : ks) {
      // P_k = Π_{j present, j≠k} (M - ζ^j)/(ζ^k - ζ^j); since M is real,
      // Re(P_k) has the same range as P_k + P_{N-k}
      Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(n, n);
      std::complex<double> zk = std::polar(1.0, 2.0 * M_PI * k / N);
      for (int j : present) {
        if (j == k) continue;
        std::complex<double> zj = std::polar(1.0, 2.0 * M_PI * j / N);
        proj = proj * (m - zj * Eigen::MatrixXcd::Identity(n, n)) / (zk - zj);
      }
      Eigen::MatrixXd q = proj.real();
      // orthonormal basis of the range
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(q, Eigen::ComputeThinU);
      int rank = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > rank_tol * svd.singularValues()(0)) ++rank;
      if (rank == 0) continue;
      RealBlock rb;
      rb.label = "W" + std::to_string(k);
      rb.divisor = d;
      rb.k = k;
      rb.rational = false;
      rb.fbasis = svd.matrixU().leftCols(rank);
      out.push_back(std::move(rb));
    }
  }
  if (total != n) throw std::logic_error("primary decomposition does not fill H^1");
  return out;
}

std::vector<IMat> block_restrict(const std::vector<IMat>& mats, const RealBlock& block) {
  if (!block.rational) throw std::invalid_argument("block_restrict: use block_restrict_f");
  std::vector<IMat> out;
  out.reserve(mats.size());
  for (const IMat& m : mats) {
    auto r = solve_integer_mat(block.basis, m.mul(block.basis));
    if (!r) throw invalid_surface("not an invariant subbundle");
    out.push_back(std::move(*r));
  }
  return out;
}

std::vector<Eigen::MatrixXd> block_restrict_f(const std::vector<Eigen::MatrixXd>& mats,
                                              const RealBlock& block, double tol) {
  Eigen::MatrixXd b;
  if (block.rational) {
    b.resize(block.basis.rows(), block.basis.cols());
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) b(i, j) = double(block.basis.at(i, j));
  } else {
    b = block.fbasis;
  }
  Eigen::MatrixXd pinv = (b.transpose() * b).ldlt().solve(b.transpose());
  std::vector<Eigen::MatrixXd> out;
  for (const auto& m : mats) {
    Eigen::MatrixXd mb = m * b;
    Eigen::MatrixXd r = pinv * mb;
    double resid = (mb - b * r).norm();
    if (resid > tol * std::max(1.0, mb.norm())) throw invalid_surface("not an invariant subbundle");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace kz
