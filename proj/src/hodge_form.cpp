#include "kz/hodge_form.hpp"

#include <numeric>

#include "kz/parallel.hpp"

namespace kz {

namespace {

// convolution of polynomial coefficient vectors
std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> c(a.size() + b.size() - 1, cplx(0, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<cplx> monomial(int m) {
  std::vector<cplx> c(m + 1, cplx(0, 0));
  c[m] = cplx(1, 0);
  return c;
}

}  // namespace

OmegaSpec omega_for_cover(const CyclicCoverSpec& spec, const EigenBasis& basis) {
  OmegaSpec w;
  w.k = spec.N / 2;
  std::vector<int> idx = basis.forms_with_denominator(w.k);
  if (idx.size() != 1)
    throw std::logic_error("orientable cover: the N/2 eigenspace should be a line");
  // the unique form is exactly u(z) dz / w^{N/2}
  w.coeff = {cplx(1, 0)};
  return w;
}

OmegaSpec omega_for_locus_z(const EigenBasis& basis) {
  OmegaSpec w;
  w.k = 3;
  std::vector<int> idx = basis.forms_with_denominator(3);
  if (idx.size() != 2) throw std::logic_error("locus Z: expected two forms with denominator w^3");
  // (z - z_1) dz / w^3 over monomials {1, z} with z_1 the first branch point
  cplx z1 = basis.config.points.at(0);
  w.coeff = {-z1, cplx(1, 0)};
  return w;
}

QuadratureResult hodge_pairing(const EigenBasis& basis, int i, int j, const HodgeOptions& opt) {
  const EigenForm& f = basis.forms[i];
  const EigenForm& g = basis.forms[j];
  if (f.k != g.k) throw std::invalid_argument("hodge_pairing: mixed characters vanish exactly");
  PlaneIntegrand F;
  const auto& pts = basis.config.points;
  for (size_t a = 0; a < pts.size(); ++a) {
    PlaneFactor fac;
    fac.point = pts[a];
    fac.m = f.s[a];
    fac.n = g.s[a];
    fac.w = -double(f.k) * basis.config.exponents[a] / basis.N;
    F.factors.push_back(fac);
  }
  F.pcoef = monomial(f.m);
  F.qcoef = monomial(g.m);
  QuadratureOptions qo;
  qo.tol = opt.tol;
  qo.refine = opt.refine;
  return integrate_plane(F, qo);
}

QuadratureResult b_pairing(const EigenBasis& basis, const OmegaSpec& omega, int i, int j,
                           const HodgeOptions& opt) {
  const EigenForm& f = basis.forms[i];
  const EigenForm& g = basis.forms[j];
  if ((f.k + g.k) % basis.N != 0)
    throw std::invalid_argument("b_pairing: characters do not cancel; entry vanishes exactly");
  // integrand f g conj(u)/u · Π |z-z_i|^{-a_i}, with ω = u dz / w^{N/2};
  // the ω-denominator N/2 is what makes the sheet sum single-valued
  const std::vector<int> omega_idx = basis.forms_with_denominator(omega.k);
  // u(z) as s-exponents (shared by the block) and a polynomial part
  const EigenForm& w0 = basis.forms[omega_idx.at(0)];
  std::vector<cplx> upoly(omega.coeff);

  PlaneIntegrand F;
  const auto& pts = basis.config.points;
  for (size_t a = 0; a < pts.size(); ++a) {
    PlaneFactor fac;
    fac.point = pts[a];
    fac.m = f.s[a] + g.s[a] - w0.s[a];
    fac.n = w0.s[a];
    fac.w = -0.5 * basis.config.exponents[a];
    F.factors.push_back(fac);
  }
  F.pcoef = poly_mul(monomial(f.m), monomial(g.m));
  F.qcoef = upoly;
  // dividing by the polynomial part of u: only a monomial or the constant 1
  // can be divided exactly; general u-polynomials go through the conjugate
  // trick below
  if (upoly.size() == 1) {
    for (cplx& c : F.pcoef) c /= upoly[0];
    F.qcoef = upoly;
  } else {
    // f g ū / u = f g ū... multiply numerator and denominator by ū:
    // ū/u = ū² / |u|²; |u(z)|² is not an algebraic factor unless u is a
    // product of linear factors over the branch points, which it is for every
    // supported ω (locus Z: u = z - z_1)
    if (!(upoly.size() == 2))
      throw std::invalid_argument("b_pairing: unsupported tiling-form numerator");
    // u = c (z - r): fold the root into the factor list
    cplx c = upoly[1];
    cplx root = -upoly[0] / upoly[1];
    bool merged = false;
    for (PlaneFactor& fac : F.factors)
      if (std::abs(fac.point - root) < 1e-14) {
        fac.m -= 1;
        fac.n += 1;
        merged = true;
        break;
      }
    if (!merged) {
      PlaneFactor fac;
      fac.point = root;
      fac.m = -1;
      fac.n = 1;
      fac.w = 0;
      F.factors.push_back(fac);
    }
    F.qcoef = {cplx(1, 0)};
    cplx scale = std::conj(c) / c;
    for (cplx& pc : F.pcoef) pc *= scale;
  }
  QuadratureOptions qo;
  qo.tol = opt.tol;
  qo.refine = opt.refine;
  return integrate_plane(F, qo);
}

namespace {

// Verification of a character-forced zero: the surface integral splits into a
// sheet sum Σ_s ζ^{(k1+k2)s} times a single-sheet integral. The sheet sum is
// evaluated in floating point and multiplied by a quadrature bound on the
// modulus of the single-sheet integrand, giving an honest numerical bound for
// the entry itself.
QuadratureResult b_forced_zero_bound(const EigenBasis& basis, const OmegaSpec& omega, int i,
                                     int j, const HodgeOptions& opt) {
  const EigenForm& f = basis.forms[i];
  const EigenForm& g = basis.forms[j];
  cplx charsum(0, 0);
  for (int s = 0; s < basis.N; ++s)
    charsum += std::polar(1.0, -2.0 * M_PI * s * double(f.k + g.k) / basis.N);
  charsum /= double(basis.N);

  // modulus of the single-sheet integrand: |f| |g| |w|^{-(k1+k2)}, and
  // |ū/u| = 1; the |w| power is R^{-(k1+k2)/N}
  PlaneIntegrand F;
  const auto& pts = basis.config.points;
  const double kk = double(f.k + g.k) / basis.N;
  for (size_t a = 0; a < pts.size(); ++a) {
    PlaneFactor fac;
    fac.point = pts[a];
    fac.w = 0.5 * (f.s[a] + g.s[a]) - 0.5 * kk * basis.config.exponents[a];
    F.factors.push_back(fac);
  }
  if (f.m + g.m > 0) {
    bool zero_pt = false;
    for (PlaneFactor& fac : F.factors)
      if (fac.point == cplx(0, 0)) {
        fac.w += 0.5 * (f.m + g.m);
        zero_pt = true;
      }
    if (!zero_pt) F.factors.push_back({cplx(0, 0), 0, 0, 0.5 * (f.m + g.m)});
  }
  QuadratureOptions qo;
  qo.tol = opt.tol;
  QuadratureResult r = integrate_plane(F, qo);
  r.value = std::abs(charsum) * std::abs(r.value);
  return r;
}

}  // namespace

HodgeFrame hodge_gram(const EigenBasis& basis, const OmegaSpec& omega, const HodgeOptions& opt) {
  HodgeFrame fr;
  fr.basis = basis;
  fr.omega_k = omega.k;
  const int g = basis.genus;

  // frame order: the ω-denominator block first, then the rest by ascending k
  std::vector<int> order = basis.forms_with_denominator(omega.k);
  for (int k = 1; k < basis.N; ++k) {
    if (k == omega.k) continue;
    for (int i : basis.forms_with_denominator(k)) order.push_back(i);
  }
  if (int(order.size()) != g) throw std::logic_error("frame size mismatch");
  fr.order = order;

  // raw Gram on the ordered forms, block diagonal over k
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(g, g);
  double err = 0;
  std::vector<std::pair<int, int>> jobs;
  for (int a = 0; a < g; ++a)
    for (int b = a; b < g; ++b)
      if (basis.forms[order[a]].k == basis.forms[order[b]].k) jobs.emplace_back(a, b);
  std::vector<QuadratureResult> slots(jobs.size());
  parallel_for(int(jobs.size()), true, [&](int t) {
    slots[t] = hodge_pairing(basis, order[jobs[t].first], order[jobs[t].second], opt);
  });
  for (size_t t = 0; t < jobs.size(); ++t) {
    auto [a, b] = jobs[t];
    gram(a, b) = slots[t].value;
    gram(b, a) = std::conj(slots[t].value);
    err = std::max(err, slots[t].error);
  }
  fr.gram_raw = gram;

  // rotate the ω block so its first vector is ω itself
  Eigen::MatrixXcd pre = Eigen::MatrixXcd::Identity(g, g);
  {
    const int d = int(basis.forms_with_denominator(omega.k).size());
    if (int(omega.coeff.size()) != d) throw std::invalid_argument("omega coefficients mismatch");
    Eigen::MatrixXcd blk = Eigen::MatrixXcd::Identity(d, d);
    int lead = 0;
    for (int i = 1; i < d; ++i)
      if (std::abs(omega.coeff[i]) > std::abs(omega.coeff[lead])) lead = i;
    for (int i = 0; i < d; ++i) blk(i, 0) = omega.coeff[i];
    // complete with unit vectors away from the leading coefficient
    int col = 1;
    for (int i = 0; i < d && col < d; ++i) {
      if (i == lead) continue;
      blk.col(col).setZero();
      blk(i, col) = cplx(1, 0);
      ++col;
    }
    pre.topLeftCorner(d, d) = blk;
  }
  Eigen::MatrixXcd gram_o = pre.adjoint() * gram * pre;
  fr.area = gram_o(0, 0).real();

  // blockwise Cholesky: frame = forms · pre · L^{-*} keeps ω first
  Eigen::LLT<Eigen::MatrixXcd> llt(gram_o);
  if (llt.info() != Eigen::Success) throw std::runtime_error("Gram matrix not positive definite");
  Eigen::MatrixXcd linv =
      llt.matrixL().solve(Eigen::MatrixXcd::Identity(g, g)).adjoint();
  fr.coeff = pre * linv;
  for (int a = 0; a < g; ++a)
    fr.char_exponent.push_back(basis.forms[order[a]].eigenvalue_exponent(basis.N));
  (void)err;
  return fr;
}

SecondFundamentalFormMatrix second_fundamental_form(const EigenBasis& basis,
                                                    const OmegaSpec& omega,
                                                    const HodgeOptions& opt) {
  SecondFundamentalFormMatrix out;
  out.frame = hodge_gram(basis, omega, opt);
  const int g = basis.genus;
  const auto& order = out.frame.order;

  Eigen::MatrixXcd braw = Eigen::MatrixXcd::Zero(g, g);
  double err = 0, forced = 0;
  std::vector<std::pair<int, int>> jobs;
  for (int a = 0; a < g; ++a)
    for (int b = a; b < g; ++b) {
      bool alive = (basis.forms[order[a]].k + basis.forms[order[b]].k) % basis.N == 0;
      if (alive || opt.quadrature_all_entries) jobs.emplace_back(a, b);
    }
  std::vector<QuadratureResult> slots(jobs.size());
  parallel_for(int(jobs.size()), true, [&](int t) {
    auto [a, b] = jobs[t];
    bool alive = (basis.forms[order[a]].k + basis.forms[order[b]].k) % basis.N == 0;
    if (!alive) {
      slots[t] = b_forced_zero_bound(basis, omega, order[a], order[b], opt);
    } else {
      slots[t] = b_pairing(basis, omega, order[a], order[b], opt);
    }
  });
  for (size_t t = 0; t < jobs.size(); ++t) {
    auto [a, b] = jobs[t];
    bool alive = (basis.forms[order[a]].k + basis.forms[order[b]].k) % basis.N == 0;
    if (alive) {
      braw(a, b) = slots[t].value;
      braw(b, a) = slots[t].value;
      err = std::max(err, slots[t].error);
    } else {
      forced = std::max(forced, std::abs(slots[t].value));
    }
  }
  out.max_forced_zero = forced;

  out.B = out.frame.coeff.transpose() * braw * out.frame.coeff;
  out.H = out.B * out.B.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.H);
  for (int i = g - 1; i >= 0; --i) out.lambda.push_back(std::max(0.0, es.eigenvalues()(i)));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.B, Eigen::ComputeFullV);
  for (int i = 0; i < g; ++i) out.takagi.push_back(svd.singularValues()(i));

  out.rank = 0;
  for (double s : out.takagi) {
    if (s > opt.rank_tol) ++out.rank;
    if (s > opt.rank_tol / 10 && s < opt.rank_tol * 10) out.rank_indeterminate = true;
  }
  out.annihilator = svd.matrixV().rightCols(g - out.rank);
  out.quadrature_error = err;
  return out;
}

ZeroPattern symmetry_zero_pattern(const std::vector<cplx>& u_frame, cplx u_omega, double tol) {
  const int g = int(u_frame.size());
  for (const cplx& u : u_frame)
    if (std::abs(std::abs(u) - 1.0) > tol)
      throw std::invalid_argument("symmetry_zero_pattern: eigenvalues must have unit modulus");
  if (std::abs(std::abs(u_omega) - 1.0) > tol)
    throw std::invalid_argument("symmetry_zero_pattern: eigenvalues must have unit modulus");
  ZeroPattern zp;
  zp.may_be_nonzero.assign(g, std::vector<bool>(g, false));
  cplx u2 = u_omega * u_omega;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      zp.may_be_nonzero[i][j] = std::abs(u_frame[i] * u_frame[j] - u2) <= tol;

  // rank bound per character classes: group indices by eigenvalue; a class
  // pairs only with the class making the product u²; a self-paired class of
  // size s contributes at most s, a cross pair (s1, s2) at most 2 min(s1,s2)
  std::vector<cplx> classes;
  std::vector<int> sizes;
  std::vector<int> cls(g, -1);
  for (int i = 0; i < g; ++i) {
    for (size_t c = 0; c < classes.size(); ++c)
      if (std::abs(u_frame[i] - classes[c]) <= tol) cls[i] = int(c);
    if (cls[i] < 0) {
      classes.push_back(u_frame[i]);
      sizes.push_back(0);
      cls[i] = int(classes.size()) - 1;
    }
    sizes[cls[i]]++;
  }
  std::vector<bool> used(classes.size(), false);
  int bound = 0;
  for (size_t c = 0; c < classes.size(); ++c) {
    if (used[c]) continue;
    // partner class with u_c * u_p = u²
    int partner = -1;
    for (size_t p = 0; p < classes.size(); ++p)
      if (std::abs(classes[c] * classes[p] - u2) <= tol) partner = int(p);
    if (partner < 0) {
      used[c] = true;
      continue;  // class annihilated entirely
    }
    if (partner == int(c)) {
      bound += sizes[c];
      used[c] = true;
    } else {
      bound += 2 * std::min(sizes[c], sizes[partner]);
      used[c] = used[partner] = true;
    }
  }
  zp.rank_bound = std::min(bound, g);
  return zp;
}

PhiValue phi_k(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& h, int k) {
  const int g = int(b.rows());
  if (k < 1 || k > g) throw std::invalid_argument("phi_k: k out of range");
  PhiValue v;
  for (int i = 0; i < k; ++i) v.by_definition += 2 * h(i, i).real();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) v.by_definition -= std::norm(b(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  for (int i = 0; i < g; ++i) v.by_eigenvalues += es.eigenvalues()(i);
  for (int i = k; i < g; ++i)
    for (int j = k; j < g; ++j) v.by_eigenvalues -= std::norm(b(i, j));
  return v;
}

HodgeStarOps hodge_star_ops(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& h) {
  const int g = int(b.rows());
  HodgeStarOps ops;
  ops.star = Eigen::MatrixXd::Zero(2 * g, 2 * g);
  ops.sympl = Eigen::MatrixXd::Zero(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    ops.star(g + i, i) = 1;   // * c_i = c_{g+i}
    ops.star(i, g + i) = -1;  // * * = -1
    ops.sympl(i, g + i) = 1;  // <c_i, * c_i> = 1
    ops.sympl(g + i, i) = -1;
  }
  // B^R(c,c') = conj(xi)^T B conj(xi'), H^R(c,c') = xi^* H xi', xi = x + i y
  ops.b_real.resize(2 * g, 2 * g);
  ops.h_real.resize(2 * g, 2 * g);
  const cplx I(0, 1);
  for (int p = 0; p < 2 * g; ++p)
    for (int q = 0; q < 2 * g; ++q) {
      cplx xb_p = p < g ? cplx(1, 0) : -I;  // conj of the xi coordinate
      cplx xb_q = q < g ? cplx(1, 0) : -I;
      cplx xh_p = p < g ? cplx(1, 0) : -I;  // conj(xi) for the sesquilinear slot
      cplx xh_q = q < g ? cplx(1, 0) : I;
      ops.b_real(p, q) = xb_p * xb_q * b(p % g, q % g);
      ops.h_real(p, q) = xh_p * xh_q * h(p % g, q % g);
    }
  return ops;
}

double laplacian_rhs(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& h,
                     const Eigen::VectorXd& c) {
  const int g = int(b.rows());
  if (c.size() != 2 * g) throw std::invalid_argument("laplacian_rhs: bad vector size");
  Eigen::VectorXcd xi(g);
  for (int i = 0; i < g; ++i) xi(i) = cplx(c(i), c(g + i));
  double n2 = xi.squaredNorm();
  if (!(n2 > 0)) throw std::invalid_argument("laplacian_rhs: zero vector");
  double hterm = (xi.adjoint() * h * xi)(0, 0).real();
  cplx bterm = (xi.conjugate().transpose() * b * xi.conjugate())(0, 0);
  return 4 * hterm / n2 - 2 * std::norm(bterm) / (n2 * n2);
}

}  // namespace kz
