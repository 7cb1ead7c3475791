#include "kz/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace kz {

namespace {

cplx ipow(cplx z, int e) {
  if (e == 0) return cplx(1, 0);
  bool neg = e < 0;
  unsigned long k = neg ? -(long)e : e;
  cplx acc(1, 0), base = z;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return neg ? cplx(1, 0) / acc : acc;
}

cplx poly_eval(const std::vector<cplx>& c, cplx z) {
  cplx acc(0, 0);
  for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

std::vector<cplx> poly_reverse(const std::vector<cplx>& c) {
  std::vector<cplx> r(c.rbegin(), c.rend());
  return r;
}

// bump: 1 for t <= lo, 0 for t >= hi, C^9 smoothstep between
constexpr double kBumpLo = 0.45, kBumpHi = 0.90;
double bump(double t) {
  if (t <= kBumpLo) return 1.0;
  if (t >= kBumpHi) return 0.0;
  return 1.0 - smoothstep9((t - kBumpLo) / (kBumpHi - kBumpLo));
}

}  // namespace

double smoothstep9(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  // s(t) = c ∫_0^t u^9 (1-u)^9 du, normalized so s(1) = 1
  static const double coeff[] = {
      // (-1)^k C(9,k) / (10 + k), k = 0..9
      1.0 / 10, -9.0 / 11, 36.0 / 12, -84.0 / 13, 126.0 / 14,
      -126.0 / 15, 84.0 / 16, -36.0 / 17, 9.0 / 18, -1.0 / 19};
  double sum1 = 0;
  for (int k = 9; k >= 0; --k) sum1 = sum1 + coeff[k];
  double acc = 0;
  for (int k = 9; k >= 0; --k) acc = acc * t + coeff[k];
  acc *= std::pow(t, 10);
  return acc / sum1;
}

cplx PlaneIntegrand::eval(cplx z) const {
  cplx a = poly_eval(pcoef, z);
  cplx b = poly_eval(qcoef, z);
  double logmod = 0;
  for (const PlaneFactor& f : factors) {
    cplx d = z - f.point;
    if (f.m) a *= ipow(d, f.m);
    if (f.n) b *= ipow(d, f.n);
    if (f.w != 0) logmod += f.w * std::log(std::norm(d));
  }
  return a * std::conj(b) * std::exp(logmod);
}

cplx PlaneIntegrand::eval_smooth_at(cplx z, int k) const {
  cplx a = poly_eval(pcoef, z);
  cplx b = poly_eval(qcoef, z);
  double logmod = 0;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (int(i) == k) continue;
    const PlaneFactor& f = factors[i];
    cplx d = z - f.point;
    if (f.m) a *= ipow(d, f.m);
    if (f.n) b *= ipow(d, f.n);
    if (f.w != 0) logmod += f.w * std::log(std::norm(d));
  }
  return a * std::conj(b) * std::exp(logmod);
}

double PlaneIntegrand::alpha(int k) const {
  return factors[k].m + factors[k].n + 2.0 * factors[k].w;
}

PlaneIntegrand invert_at_infinity(const PlaneIntegrand& f) {
  PlaneIntegrand g;
  int degp = int(f.pcoef.size()) - 1;
  int degq = int(f.qcoef.size()) - 1;
  // zeta-power at 0 collects all z-degrees plus the |zeta|^{-4} area factor
  PlaneFactor zero;
  zero.point = cplx(0, 0);
  zero.m = -degp;
  zero.n = -degq;
  zero.w = -2.0;
  cplx const_a(1, 0), const_b(1, 0);
  for (const PlaneFactor& fac : f.factors) {
    zero.m -= fac.m;
    zero.n -= fac.n;
    zero.w -= fac.w;
    if (fac.point == cplx(0, 0)) continue;  // folds entirely into the zeta power
    // (1/zeta - p)^m = (-p)^m (zeta - 1/p)^m zeta^{-m}
    PlaneFactor nf;
    nf.point = cplx(1, 0) / fac.point;
    nf.m = fac.m;
    nf.n = fac.n;
    nf.w = fac.w;
    const_a *= ipow(-fac.point, fac.m);
    const_b *= ipow(-fac.point, fac.n);
    if (fac.w != 0) {
      double s = fac.w * std::log(std::norm(fac.point));
      const_a *= std::exp(s);  // |p|^{2w} as a real constant
    }
    g.factors.push_back(nf);
  }
  // points with p = 0: ipow(1/zeta,m) = zeta^{-m}: already in `zero`, but we
  // must not subtract them twice -- handled above by the continue.
  g.factors.push_back(zero);
  g.pcoef = poly_reverse(f.pcoef);
  g.qcoef = poly_reverse(f.qcoef);
  for (cplx& c : g.pcoef) c *= const_a;
  for (cplx& c : g.qcoef) c *= const_b;
  return g;
}

namespace {

void gauss_legendre01(int q, std::vector<double>& x, std::vector<double>& w) {
  gauss_jacobi01(q, 0.0, x, w);
}

struct PatchRules {
  std::vector<double> r_nodes, r_weights;  // on [0, a] with the weight u^{alpha+1}
  std::vector<double> t_nodes, t_weights;  // transition band, plain GL
};

// integral of chi(r/radius) * F over the disk of `radius` about factor k
cplx disk_patch(const PlaneIntegrand& f, int k, double radius, int q, int kang,
                long long* evals) {
  const double al = f.alpha(k);
  if (!(al > -2.0)) throw std::invalid_argument("quadrature: non-integrable local exponent");
  const cplx c = f.factors[k].point;
  const int wind = f.winding(k);

  // plateau part [0, a*radius]: weight r^{alpha+1}, smooth factor evaluated
  std::vector<double> rn, rw;
  gauss_jacobi01(q, al + 1.0, rn, rw);
  const double ra = kBumpLo * radius;

  cplx total(0, 0);
  for (int j = 0; j < kang; ++j) {
    double th = 2.0 * M_PI * (j + 0.5) / kang;
    cplx dir = std::polar(1.0, th);
    cplx phase = std::polar(1.0, wind * th);
    cplx acc(0, 0);
    for (int i = 0; i < q; ++i) {
      double r = ra * rn[i];
      acc += rw[i] * f.eval_smooth_at(c + r * dir, k);
      ++*evals;
    }
    total += acc * phase;
  }
  total *= std::pow(ra, al + 2.0) * (2.0 * M_PI / kang);

  // transition band [a*radius, b*radius]: no singularity, full evaluation
  std::vector<double> tn, tw;
  gauss_legendre01(q, tn, tw);
  const double rb = kBumpHi * radius;
  cplx band(0, 0);
  for (int j = 0; j < kang; ++j) {
    double th = 2.0 * M_PI * (j + 0.5) / kang;
    cplx dir = std::polar(1.0, th);
    cplx acc(0, 0);
    for (int i = 0; i < q; ++i) {
      double r = ra + (rb - ra) * tn[i];
      acc += tw[i] * r * bump(r / radius) * f.eval(c + r * dir);
      ++*evals;
    }
    band += acc;
  }
  band *= (rb - ra) * (2.0 * M_PI / kang);
  return total + band;
}

struct MiddleRegion {
  const PlaneIntegrand* f;
  std::vector<double> radii;  // per factor; supports are pairwise disjoint
  double router;              // outer cutoff radius

  // 1 - Σ χ_i - χ_outer = bump(|z|/router) - Σ bump(|z-p_i|/r_i)
  cplx eval(cplx z, long long* evals) const {
    double s = bump(std::abs(z) / router);
    if (s == 0.0) return cplx(0, 0);
    for (size_t i = 0; i < f->factors.size(); ++i) {
      double t = std::abs(z - f->factors[i].point) / radii[i];
      if (t <= kBumpLo) return cplx(0, 0);  // inside a disk plateau
      s -= bump(t);
    }
    if (s == 0.0) return cplx(0, 0);
    ++*evals;
    return s * f->eval(z);
  }
};

struct PanelRule {
  std::vector<double> x, w;  // GL on [0,1]
};

cplx panel_gl(const MiddleRegion& m, double x0, double y0, double hx, double hy,
              const PanelRule& rule, long long* evals) {
  cplx acc(0, 0);
  for (size_t i = 0; i < rule.x.size(); ++i)
    for (size_t j = 0; j < rule.x.size(); ++j)
      acc += rule.w[i] * rule.w[j] * m.eval(cplx(x0 + hx * rule.x[i], y0 + hy * rule.x[j]), evals);
  return acc * hx * hy;
}

// worst-panel-first refinement until the summed two-level differences meet
// the tolerance; deterministic tie-breaking by panel position
struct Panel {
  double x0, y0, h;
  int depth;
  cplx fine;
  cplx kids[4];  // the four child estimates making up `fine`
  double diff;
  bool operator<(const Panel& o) const {
    if (diff != o.diff) return diff < o.diff;
    if (x0 != o.x0) return x0 < o.x0;
    if (y0 != o.y0) return y0 < o.y0;
    return h < o.h;
  }
};

Panel make_panel(const MiddleRegion& m, double x0, double y0, double h, int depth, cplx coarse,
                 const PanelRule& rule, long long* evals) {
  Panel p{x0, y0, h, depth, cplx(0, 0), {}, 0};
  double h2 = h / 2;
  p.kids[0] = panel_gl(m, x0, y0, h2, h2, rule, evals);
  p.kids[1] = panel_gl(m, x0 + h2, y0, h2, h2, rule, evals);
  p.kids[2] = panel_gl(m, x0, y0 + h2, h2, h2, rule, evals);
  p.kids[3] = panel_gl(m, x0 + h2, y0 + h2, h2, h2, rule, evals);
  for (auto& kv : p.kids) p.fine += kv;
  p.diff = std::abs(p.fine - coarse);
  if (!(p.diff == p.diff)) p.diff = 0;  // NaN guard: frozen, not refined
  // rounding floor: refining below this is noise
  if (p.diff <= 4e-16 * (1.0 + std::abs(p.fine)) || depth >= 40) p.diff = 0;
  return p;
}

void middle_adaptive(const MiddleRegion& m, double router, double tol, const PanelRule& rule,
                     cplx& sum, double& err, long long* evals, long long eval_budget) {
  std::priority_queue<Panel> heap;
  sum = cplx(0, 0);
  err = 0;
  double h = router;
  for (int qx = 0; qx < 2; ++qx)
    for (int qy = 0; qy < 2; ++qy) {
      cplx coarse = panel_gl(m, -router + qx * h, -router + qy * h, h, h, rule, evals);
      Panel p = make_panel(m, -router + qx * h, -router + qy * h, h, 0, coarse, rule, evals);
      sum += p.fine;
      err += p.diff;
      heap.push(p);
    }
  while (err > tol && !heap.empty() && *evals < eval_budget) {
    Panel p = heap.top();
    heap.pop();
    if (p.diff == 0) break;  // the worst panel is already at the floor
    sum -= p.fine;
    err -= p.diff;
    double h2 = p.h / 2;
    for (int k = 0; k < 4; ++k) {
      double cx = p.x0 + (k & 1) * h2, cy = p.y0 + (k >> 1) * h2;
      Panel c = make_panel(m, cx, cy, h2, p.depth + 1, p.kids[k], rule, evals);
      sum += c.fine;
      err += c.diff;
      heap.push(c);
    }
  }
}

cplx integrate_once(const PlaneIntegrand& f, const QuadratureOptions& opt, int q, int kang,
                    double* err_out, long long* evals) {
  const int npts = int(f.factors.size());
  double scale = 1.0;
  for (const PlaneFactor& fac : f.factors) scale = std::max(scale, std::abs(fac.point));
  const double router = 3.0 * scale + 1.0;

  // bump supports (0.9 * radius balls) must be pairwise disjoint and inside
  // the outer plateau |z| <= 0.45 * router
  std::vector<double> radii(npts);
  for (int i = 0; i < npts; ++i) {
    double d = (kBumpLo * router - std::abs(f.factors[i].point)) / kBumpHi;
    for (int j = 0; j < npts; ++j)
      if (j != i) d = std::min(d, 0.5 * std::abs(f.factors[i].point - f.factors[j].point));
    radii[i] = 0.999 * d;
  }

  cplx total(0, 0);
  for (int i = 0; i < npts; ++i) total += disk_patch(f, i, radii[i], q, kang, evals);

  // the patch at infinity in the chart zeta = 1/z: cutoff 1 - bump(|z|/router)
  // becomes 1 - bump(1/(|zeta| router)); its support is |zeta| <= 1/(a router)
  {
    PlaneIntegrand g = invert_at_infinity(f);
    int zk = -1;
    for (size_t i = 0; i < g.factors.size(); ++i)
      if (g.factors[i].point == cplx(0, 0)) zk = int(i);
    const double zr = 1.0 / (kBumpLo * router);
    const double al = g.alpha(zk);
    if (!(al > -2.0)) throw std::invalid_argument("quadrature: divergent tail at infinity");
    // radial rule on [0, zr] with weight rho^{al+1}; the cutoff equals 1 on
    // [0, 1/(b router)] and decays smoothly on the rest of the patch
    std::vector<double> rn, rw;
    gauss_jacobi01(q, al + 1.0, rn, rw);
    const int wind = g.winding(zk);
    cplx acc_all(0, 0);
    for (int j = 0; j < kang; ++j) {
      double th = 2.0 * M_PI * (j + 0.5) / kang;
      cplx dir = std::polar(1.0, th);
      cplx phase = std::polar(1.0, wind * th);
      cplx acc(0, 0);
      for (int i = 0; i < q; ++i) {
        double rho = zr * rn[i];
        double cut = 1.0 - bump(1.0 / (rho * router));
        if (cut != 0.0) {
          acc += rw[i] * cut * g.eval_smooth_at(rho * dir, zk);
          ++*evals;
        }
      }
      acc_all += acc * phase;
    }
    total += acc_all * std::pow(zr, al + 2.0) * (2.0 * M_PI / kang);
  }

  // smooth middle remainder over [-router, router]^2
  MiddleRegion mid{&f, radii, router};
  PanelRule rule;
  gauss_legendre01(8, rule.x, rule.w);
  cplx msum(0, 0);
  double merr = 0;
  middle_adaptive(mid, router, opt.tol / 4, rule, msum, merr, evals, *evals + 40000000ll);
  total += msum;
  *err_out = merr;
  return total;
}

}  // namespace

void gauss_jacobi01(int q, double beta, std::vector<double>& nodes, std::vector<double>& weights) {
  gauss_jacobi01_ab(q, 0.0, beta, nodes, weights);
}

void gauss_jacobi01_ab(int q, double alpha, double beta, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  // Golub–Welsch for the weight (1-x)^alpha (1+x)^beta on [-1,1], mapped to
  // u = (1+x)/2
  if (beta <= -1.0 || alpha <= -1.0)
    throw std::invalid_argument("gauss_jacobi01_ab: exponents must exceed -1");
  const double a = alpha, b = beta;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i < q; ++i) {
    double i1 = i + 1;
    double denom = (2 * i + a + b) * (2 * i + a + b + 2);
    double diag = denom != 0 ? (b * b - a * a) / denom : 0.0;
    if (i == 0 && a + b == 0) diag = (b - a) / 2.0;  // degenerate first term
    jac(i, i) = diag;
    if (i + 1 < q) {
      double num, den;
      if (i == 0) {
        num = 4 * (1 + a) * (1 + b);
        den = (2 + a + b) * (2 + a + b) * (3 + a + b);
      } else {
        num = 4 * i1 * (i1 + a) * (i1 + b) * (i1 + a + b);
        den = (2 * i1 + a + b) * (2 * i1 + a + b) * (2 * i1 + a + b + 1) * (2 * i1 + a + b - 1);
      }
      double off = std::sqrt(num / den);
      jac(i, i + 1) = off;
      jac(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  // zeroth moment of (1-x)^a (1+x)^b on [-1,1]
  double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                        std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  nodes.resize(q);
  weights.resize(q);
  for (int i = 0; i < q; ++i) {
    nodes[i] = (1.0 + es.eigenvalues()(i)) / 2.0;
    double v = es.eigenvectors()(0, i);
    // weight w.r.t. (1-u)^a u^b du on [0,1]
    weights[i] = mu0 * v * v / std::pow(2.0, a + b + 1.0);
  }
}

QuadratureResult integrate_plane(const PlaneIntegrand& f, const QuadratureOptions& opt) {
  QuadratureResult res;
  int q = opt.radial << opt.refine;
  int kang = opt.angular << opt.refine;
  double merr1 = 0, merr2 = 0;
  cplx v1 = integrate_once(f, opt, q, kang, &merr1, &res.evals);
  cplx v2 = integrate_once(f, opt, q + q / 2, kang + kang / 2, &merr2, &res.evals);
  res.value = v2;
  res.error = std::abs(v2 - v1) + merr2;
  return res;
}

}  // namespace kz
