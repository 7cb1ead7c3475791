#include "kz/rauch.hpp"

#include <numeric>

#include "kz/branch_config.hpp"
#include "kz/eigenforms.hpp"
#include "kz/homology.hpp"
#include "kz/quadrature.hpp"

namespace kz {

IMat symplectic_basis(const IMat& x) {
  const int n = x.rows();
  if (n % 2 != 0) throw std::invalid_argument("symplectic_basis: odd rank");
  // working basis columns of the ambient lattice
  std::vector<std::vector<i64>> basis;
  for (int i = 0; i < n; ++i) {
    std::vector<i64> e(n, 0);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  auto pair_with = [&](const std::vector<i64>& u, const std::vector<i64>& v) {
    i64 s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (x.at(i, j) != 0) s = checked_add(s, checked_mul(u[i], checked_mul(x.at(i, j), v[j])));
    return s;
  };
  std::vector<std::vector<i64>> as, bs;
  while (!basis.empty()) {
    std::vector<i64> v = basis.front();
    // find w in the current lattice with <v,w> = 1 via extended gcd on the
    // pairings; the form is unimodular so the gcd is 1 for primitive v
    std::vector<i64> pairings;
    for (const auto& u : basis) pairings.push_back(pair_with(v, u));
    std::vector<i64> w(n, 0);
    {
      i64 g = 0;
      std::vector<i64> coeff(basis.size(), 0);
      // iterative extended gcd over the pairing values
      for (size_t i = 0; i < basis.size(); ++i) {
        i64 p = pairings[i];
        if (p == 0) continue;
        if (g == 0) {
          g = std::llabs(p);
          coeff.assign(basis.size(), 0);
          coeff[i] = p > 0 ? 1 : -1;
          continue;
        }
        // g' = gcd(g, p) = s*g + t*p
        i64 a = g, b = std::llabs(p), s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (b) {
          i64 q = a / b;
          std::tie(a, b) = std::make_pair(b, a - q * b);
          std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
          std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
        }
        for (auto& c : coeff) c = checked_mul(c, s0);
        coeff[i] = checked_add(coeff[i], p > 0 ? t0 : -t0);
        g = a;
        if (g == 1) break;
      }
      if (g != 1) throw std::logic_error("symplectic_basis: form is not unimodular on v^perp");
      for (size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < n; ++j) w[j] = checked_add(w[j], checked_mul(coeff[i], basis[i][j]));
    }
    i64 check = pair_with(v, w);
    if (check != 1) throw std::logic_error("symplectic_basis: pairing normalization failed");
    // project the rest into the symplectic complement of (v, w)
    std::vector<std::vector<i64>> rest;
    for (const auto& u : basis) {
      i64 uv = pair_with(u, v), uw = pair_with(u, w);
      std::vector<i64> proj(n);
      for (int j = 0; j < n; ++j)
        proj[j] = checked_sub(checked_add(u[j], checked_mul(uv, w[j])), checked_mul(uw, v[j]));
      // deduplicate the zero vector and keep a spanning set
      bool zero = std::all_of(proj.begin(), proj.end(), [](i64 t) { return t == 0; });
      if (!zero) rest.push_back(std::move(proj));
    }
    // extract a lattice basis of the complement via column Smith reduction
    if (!rest.empty()) {
      IMat m(n, int(rest.size()));
      for (size_t c = 0; c < rest.size(); ++c)
        for (int r = 0; r < n; ++r) m.at(r, int(c)) = rest[c][r];
      SmithResult s = smith_normal_form(m.transpose());
      // rows of (U * Mᵀ) span the same lattice; take the first `rank` rows
      IMat um = s.u.mul(m.transpose());
      basis.clear();
      for (int r = 0; r < s.rank; ++r) {
        std::vector<i64> row(n);
        for (int j = 0; j < n; ++j) row[j] = um.at(r, j);
        basis.push_back(std::move(row));
      }
    } else {
      basis.clear();
    }
    as.push_back(std::move(v));
    bs.push_back(std::move(w));
  }
  IMat u(n, n);
  const int g = int(as.size());
  if (2 * g != n) throw std::logic_error("symplectic_basis: degenerate form");
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < n; ++j) {
      u.at(j, i) = as[i][j];
      u.at(j, g + i) = bs[i][j];
    }
  return u;
}

namespace {

using cd = std::complex<double>;

struct RauchGeometry {
  CyclicCoverSpec axis_spec;  // exponents in real-axis order
  CoverResult cover;
  EigenBasis basis;           // eigenforms for the axis-ordered configuration
  std::vector<double> zfin;   // 0, lambda, 1
};

RauchGeometry make_geometry(const CyclicCoverSpec& spec, double t) {
  RauchGeometry geo;
  cd lam = modular_lambda(cd(0, 1) * std::exp(2.0 * t));
  if (std::abs(lam.imag()) > 1e-10 || lam.real() <= 0 || lam.real() >= 1)
    throw std::runtime_error("rauch: branch points moved off the ordered real configuration");
  // axis order 0 < lambda < 1 < infinity carries (a1, a3, a2, a4)
  geo.axis_spec = validate_spec(spec.N, {spec.a[0], spec.a[2], spec.a[1], spec.a[3]});
  geo.cover = build_cover(geo.axis_spec);
  BranchConfiguration cfg;
  cfg.points = {cd(0, 0), lam, cd(1, 0)};
  cfg.exponents = {spec.a[0], spec.a[2], spec.a[1]};
  cfg.exponent_at_infinity = spec.a[3];
  geo.basis = holomorphic_basis(spec.N, cfg);
  geo.zfin = {0.0, lam.real(), 1.0};
  return geo;
}

// directed base-branch integral over segment m (increasing z) of
// f(z) w0(z)^{-k} dz, with w0 the limit from the upper half-plane
cd segment_integral(const RauchGeometry& geo, const EigenForm& f, int m) {
  const int N = geo.basis.N;
  const auto& a = geo.axis_spec.a;  // exponents at (0, lambda, 1), a[3] at infinity
  const std::vector<double>& z = geo.zfin;
  const int q = 48;

  // constant phase of w0^{-k} on the open segment: contributions i pi a_i for
  // points to the right
  double phase = 0;
  auto right_sum = [&](double x) {
    double s = 0;
    for (int i = 0; i < 3; ++i)
      if (z[i] > x) s += a[i];
    return s;
  };

  auto modulus = [&](double x, int skip1, int skip2) {
    // |f w0^{-k}| with the factors at skip1/skip2 removed
    double lg = 0;
    for (int i = 0; i < 3; ++i) {
      if (i == skip1 || i == skip2) continue;
      lg += (f.s[i] - double(f.k) * a[i] / N) * std::log(std::abs(x - z[i]));
    }
    double val = std::exp(lg);
    if (f.m > 0 && !(skip1 == 0 || skip2 == 0)) val *= std::pow(std::abs(x), f.m);
    // the monomial at a skipped endpoint 0 is part of the endpoint exponent
    return val;
  };
  auto endpoint_exp = [&](int i) {
    double e = f.s[i] - double(f.k) * a[i] / N;
    if (i == 0) e += f.m;  // z = 0 carries the monomial
    return e;
  };

  std::vector<double> un, uw;
  cd total(0, 0);
  if (m == 1 || m == 2) {  // finite segments [z_m-1?]: m=1: [z0,z1], m=2: [z1,z2]
    int il = m - 1, ir = m;
    double zl = z[il], zr = z[ir];
    phase = -M_PI * f.k / N * right_sum(0.5 * (zl + zr));
    double bl = endpoint_exp(il), br = endpoint_exp(ir);
    gauss_jacobi01_ab(q, br, bl, un, uw);
    double len = zr - zl;
    double acc = 0;
    for (int i = 0; i < q; ++i) {
      double x = zl + len * un[i];
      acc += uw[i] * modulus(x, il, ir);
    }
    total = acc * std::pow(len, bl + br + 1.0) * std::exp(cd(0, phase));
  } else if (m == 3) {  // [z2, +infinity), z = z2 + u/(1-u)
    phase = 0;  // no branch points to the right
    double bl = endpoint_exp(2);
    // decay exponent: f w0^{-k} ~ x^{E}, E = m + Σs - k(Σ a_fin)/N
    double e = f.m;
    for (int i = 0; i < 3; ++i) e += f.s[i] - double(f.k) * a[i] / N;
    double br = -e - 2.0;  // from dz = du/(1-u)^2
    if (!(br > -1.0)) throw std::logic_error("rauch: divergent tail on the right segment");
    gauss_jacobi01_ab(q, br, bl, un, uw);
    // g(u) = F(x(u)) (1-u)^{-2} / (u^{bl} (1-u)^{br}) is smooth on [0,1]
    double acc = 0;
    for (int i = 0; i < q; ++i) {
      double u = un[i];
      double x = z[2] + u / (1.0 - u);
      double lg = 0;
      for (int i2 = 0; i2 < 3; ++i2)
        lg += (f.s[i2] - double(f.k) * a[i2] / N) * std::log(std::abs(x - z[i2]));
      if (f.m > 0) lg += f.m * std::log(std::abs(x));
      lg -= bl * std::log(u);
      lg -= (br + 2.0) * std::log(1.0 - u);
      acc += uw[i] * std::exp(lg);
    }
    total = acc * std::exp(cd(0, phase));
  } else {  // m == 0: (-infinity, z0], z = z0 - u/(1-u), increasing direction
    phase = -M_PI * f.k / N * (a[0] + a[1] + a[2]);
    double bl = endpoint_exp(0);  // at z0, i.e. u -> 0
    double e = f.m;
    for (int i = 0; i < 3; ++i) e += f.s[i] - double(f.k) * a[i] / N;
    double br = -e - 2.0;
    if (!(br > -1.0)) throw std::logic_error("rauch: divergent tail on the left segment");
    gauss_jacobi01_ab(q, br, bl, un, uw);
    double acc = 0;
    for (int i = 0; i < q; ++i) {
      double u = un[i];
      double x = z[0] - u / (1.0 - u);
      double lg = 0;
      for (int i2 = 0; i2 < 3; ++i2)
        lg += (f.s[i2] - double(f.k) * a[i2] / N) * std::log(std::abs(x - z[i2]));
      if (f.m > 0) lg += f.m * std::log(std::abs(x));
      lg -= bl * std::log(u);
      lg -= (br + 2.0) * std::log(1.0 - u);
      acc += uw[i] * std::exp(lg);
    }
    // increasing z direction means integrating from -infinity to z0: the u
    // substitution runs the other way, so flip the sign
    total = -acc * std::exp(cd(0, phase));
  }
  return total;
}

// all four segment integrals for every basis form
std::vector<std::array<cd, 4>> all_segments(const RauchGeometry& geo) {
  std::vector<std::array<cd, 4>> s(geo.basis.forms.size());
  for (size_t f = 0; f < geo.basis.forms.size(); ++f)
    for (int m = 0; m < 4; ++m) s[f][m] = segment_integral(geo, geo.basis.forms[f], m);
  return s;
}

// period of form f over edge e of the cover complex
struct EdgePeriods {
  // per (form, edge) complex periods; edges indexed as in the homology model
  std::vector<std::vector<cd>> p;
};

EdgePeriods edge_periods(const RauchGeometry& geo) {
  const int N = geo.basis.N;
  const Origami& o = geo.cover.origami;
  const int n = o.squares();
  auto segs = all_segments(geo);
  const int nf = int(geo.basis.forms.size());

  // square (eps, j): id = 2j + eps; side tables by parity:
  // even +: bottom +S1, right +S2, top -S3, left -S0
  // odd  +: bottom +S3, right +S0, top -S1, left -S2
  auto plus_side = [&](int j, int side) -> std::pair<int, int> {
    // side: 0 bottom, 1 right, 2 top, 3 left; returns (segment, sign)
    static const int seg_even[4] = {1, 2, 3, 0};
    static const int sgn_even[4] = {+1, +1, -1, -1};
    static const int seg_odd[4] = {3, 0, 1, 2};
    static const int sgn_odd[4] = {+1, +1, -1, -1};
    if (j % 2 == 0) return {seg_even[side], sgn_even[side]};
    return {seg_odd[side], sgn_odd[side]};
  };

  EdgePeriods ep;
  ep.p.assign(nf, std::vector<cd>(3 * n, cd(0, 0)));
  Permutation vinv = o.v().inverse(), hinv = o.h().inverse();
  for (int q = 0; q < n; ++q) {
    int eps = q % 2, j = (q / 2) % N;
    // bottom edge b_q and left edge l_q as (plus square, side)
    int pb, sb, pl, sl;  // plus-square sheet and side
    if (eps == 0) {
      pb = j;
      sb = 0;
      pl = j;
      sl = 3;
    } else {
      int below = vinv(q);  // a plus square: its top edge is b_q
      if (below % 2 != 0) throw std::logic_error("rauch: cover parity structure broken");
      pb = (below / 2) % N;
      sb = 2;
      int leftn = hinv(q);  // a plus square: its right edge is l_q
      if (leftn % 2 != 0) throw std::logic_error("rauch: cover parity structure broken");
      pl = (leftn / 2) % N;
      sl = 1;
    }
    auto [mb, gb] = plus_side(pb, sb);
    auto [ml, gl] = plus_side(pl, sl);
    for (int f = 0; f < nf; ++f) {
      int k = geo.basis.forms[f].k;
      cd phb = std::polar(1.0, -2.0 * M_PI * pb * k / N);
      cd phl = std::polar(1.0, -2.0 * M_PI * pl * k / N);
      ep.p[f][edge_b(n, q)] = double(gb) * phb * segs[f][mb];
      ep.p[f][edge_l(n, q)] = double(gl) * phl * segs[f][ml];
    }
  }
  // diagonals by the triangle relation d_q = b_q + l_{h(q)}
  for (int q = 0; q < n; ++q)
    for (int f = 0; f < nf; ++f)
      ep.p[f][edge_d(n, q)] = ep.p[f][edge_b(n, q)] + ep.p[f][edge_l(n, o.h()(q))];
  return ep;
}

struct CycleData {
  IMat cycles;  // 3n x 2g integer chains
  IMat sympl;   // symplectic basis transform, 2g x 2g
};

CycleData homology_cycles(const Origami& o, const HomologyModel& model, int orientation) {
  const int n = o.squares();
  // H1 = ker(d0ᵀ) / im(d1ᵀ): reuse the cochain machinery transposed
  IMat d0t(model.vertex_count(), 3 * n);
  {
    // rebuild the boundary map; tail/head as in the cochain model
    for (int i = 0; i < n; ++i) {
      auto arc = [&](int e, int tail, int head) {
        if (tail == head) return;
        d0t.at(head, e) = checked_add(d0t.at(head, e), 1);
        d0t.at(tail, e) = checked_sub(d0t.at(tail, e), 1);
      };
      arc(edge_b(n, i), model.vertex_of(i, 0), model.vertex_of(i, 1));
      arc(edge_l(n, i), model.vertex_of(i, 0), model.vertex_of(i, 3));
      arc(edge_d(n, i), model.vertex_of(i, 0), model.vertex_of(i, 2));
    }
  }
  IMat zcycles = kernel_basis(d0t);  // 3n x k
  // quotient by boundaries of triangles: d1ᵀ columns
  IMat d1t(3 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    d1t.at(edge_b(n, i), 2 * i) += 1;
    d1t.at(edge_l(n, o.h()(i)), 2 * i) += 1;
    d1t.at(edge_d(n, i), 2 * i) -= 1;
    d1t.at(edge_l(n, i), 2 * i + 1) += 1;
    d1t.at(edge_b(n, o.v()(i)), 2 * i + 1) += 1;
    d1t.at(edge_d(n, i), 2 * i + 1) -= 1;
  }
  auto x = solve_integer_mat(zcycles, d1t);
  if (!x) throw std::logic_error("rauch: triangle boundaries escape the cycle lattice");
  SmithResult s = smith_normal_form(*x);
  IMat uinv = inverse_unimodular(s.u);
  IMat h1 = zcycles.mul(uinv.cols_range(s.rank, zcycles.cols()));
  if (h1.cols() != model.rank()) throw std::logic_error("rauch: H1 rank mismatch");

  // evaluation pairing of cocycle basis against cycles, then the intersection
  // form on H1 through Poincaré duality: X = -Eᵀ J^{-1} E
  IMat e = model.basis().transpose().mul(h1);
  IMat jinv = inverse_unimodular(model.intersection());
  IMat xmat = e.transpose().mul(jinv).mul(e).scaled(-orientation);
  IMat u = symplectic_basis(xmat);
  return {h1.mul(u), u};
}

}  // namespace

Eigen::MatrixXcd period_matrix(const CyclicCoverSpec& spec, double t, double* asym,
                               double* im_min) {
  RauchGeometry geo = make_geometry(spec, t);
  HomologyModel model(geo.cover.origami);
  const int g = geo.basis.genus;
  if (2 * g != model.rank()) throw std::logic_error("rauch: genus mismatch");

  EdgePeriods ep = edge_periods(geo);

  for (int orientation : {1, -1}) {
    CycleData cyc = homology_cycles(geo.cover.origami, model, orientation);
    // periods of every form over the canonical cycles
    Eigen::MatrixXcd pa(g, g), pb(g, g);
    for (int f = 0; f < g; ++f)
      for (int c = 0; c < g; ++c) {
        cd va(0, 0), vb(0, 0);
        for (int e = 0; e < cyc.cycles.rows(); ++e) {
          if (cyc.cycles.at(e, c) != 0) va += double(cyc.cycles.at(e, c)) * ep.p[f][e];
          if (cyc.cycles.at(e, g + c) != 0) vb += double(cyc.cycles.at(e, g + c)) * ep.p[f][e];
        }
        pa(f, c) = va;
        pb(f, c) = vb;
      }
    Eigen::MatrixXcd pi = pa.fullPivLu().solve(pb);
    double asymmetry = (pi - pi.transpose()).norm() / pi.norm();
    Eigen::MatrixXcd impi = (pi - pi.adjoint()) / cd(0, 2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(impi);
    double mineig = es.eigenvalues()(0);
    if (mineig > 0 || orientation == -1) {
      if (asym) *asym = asymmetry;
      if (im_min) *im_min = mineig;
      return pi;
    }
  }
  throw std::logic_error("rauch: no orientation yields a positive period matrix");
}

RauchReport rauch_check(const CyclicCoverSpec& spec, double dt, const HodgeOptions& opt) {
  RauchReport rep;
  rep.dt = dt;

  Eigen::MatrixXcd pi0 = period_matrix(spec, 0.0, &rep.pi_asymmetry, &rep.pi_im_min_eigenvalue);

  // B(theta_i, theta_j) with theta the a-period-dual basis at t = 0
  RauchGeometry geo = make_geometry(spec, 0.0);
  HomologyModel model(geo.cover.origami);
  const int g = geo.basis.genus;
  EdgePeriods ep = edge_periods(geo);
  CycleData cyc = homology_cycles(geo.cover.origami, model, 1);
  Eigen::MatrixXcd pa(g, g);
  bool flipped = false;
  {
    // replicate the orientation choice of period_matrix
    double mineig = rep.pi_im_min_eigenvalue;
    if (mineig <= 0) flipped = true;
  }
  if (flipped) cyc = homology_cycles(geo.cover.origami, model, -1);
  for (int f = 0; f < g; ++f)
    for (int c = 0; c < g; ++c) {
      cd va(0, 0);
      for (int e = 0; e < cyc.cycles.rows(); ++e)
        if (cyc.cycles.at(e, c) != 0) va += double(cyc.cycles.at(e, c)) * ep.p[f][e];
      pa(f, c) = va;
    }
  // theta_i = Σ_m cmat(i, m) φ_m needs C·Pa = I with Pa[m][i] = ∫_{a_i} φ_m
  Eigen::MatrixXcd cmat = pa.fullPivLu().solve(Eigen::MatrixXcd::Identity(g, g));

  Eigen::MatrixXcd braw = Eigen::MatrixXcd::Zero(g, g);
  OmegaSpec omega = omega_for_cover(geo.axis_spec, geo.basis);
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      if ((geo.basis.forms[i].k + geo.basis.forms[j].k) % spec.N != 0) continue;
      QuadratureResult r = b_pairing(geo.basis, omega, i, j, opt);
      // the surface integral is the sheet sum: N times the plane integral
      braw(i, j) = double(spec.N) * r.value;
      braw(j, i) = braw(i, j);
    }
  // B is invariant under real scaling of ω, so no area normalization enters
  Eigen::MatrixXcd btheta = cmat * braw * cmat.transpose();

  auto fd = [&](double h) {
    Eigen::MatrixXcd pp = period_matrix(spec, h);
    Eigen::MatrixXcd pm = period_matrix(spec, -h);
    return Eigen::MatrixXcd(((pp - pm) / (2.0 * h)).eval());
  };
  Eigen::MatrixXcd d1 = fd(dt), d2 = fd(dt / 2);
  double nb = btheta.norm();
  double ep1 = (d1 - btheta).norm() / nb, em1 = (d1 + btheta).norm() / nb;
  rep.time_sign = ep1 <= em1 ? 1 : -1;
  rep.rel_error = std::min(ep1, em1);
  rep.rel_error_half =
      (d2 - double(rep.time_sign) * btheta).norm() / nb;
  rep.convergence_order = std::log2(rep.rel_error / std::max(rep.rel_error_half, 1e-300));
  (void)pi0;
  return rep;
}

}  // namespace kz
