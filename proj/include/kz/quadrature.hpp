// Quadrature over the plane for integrands of the form
//
//   F(z) = A(z) · conj(B(z)) · Π_i |z - p_i|^{2 w_i},
//   A(z) = Π_i (z - p_i)^{m_i} · P(z),   B(z) = Π_i (z - p_i)^{n_i} · Q(z)
//
// with integer m_i, n_i (possibly negative), real w_i and polynomial P, Q.
// These are the Hodge-pairing and second-fundamental-form integrands of
// square-tiled cyclic covers in a plane chart.
//
// Decomposition: a polar patch around each p_i with Gauss–Jacobi radial rule
// matched to the algebraic exponent and a trapezoidal angular rule (the
// angular dependence is a winding phase times an analytic factor); a patch at
// infinity through the chart z -> 1/z, which transforms the integrand into
// the same algebraic class; and an adaptive tensor Gauss–Legendre quadtree on
// the remaining region, smoothed by a C⁹ polynomial partition of unity so no
// panel ever sees a discontinuity.

#ifndef KZ_QUADRATURE_HPP
#define KZ_QUADRATURE_HPP

#include <complex>
#include <vector>

namespace kz {

using cplx = std::complex<double>;

struct PlaneFactor {
  cplx point;
  int m = 0;      // analytic exponent
  int n = 0;      // anti-analytic exponent
  double w = 0;   // |z-p|^{2w}
};

struct PlaneIntegrand {
  std::vector<PlaneFactor> factors;      // distinct points
  std::vector<cplx> pcoef{cplx(1, 0)};   // P, ascending coefficients
  std::vector<cplx> qcoef{cplx(1, 0)};   // Q (conjugated in F), ascending

  cplx eval(cplx z) const;
  // F(z) with factor k's singular parts removed (used inside its patch)
  cplx eval_smooth_at(cplx z, int k) const;
  // radial exponent at factor k: m + n + 2w; integrability needs > -2
  double alpha(int k) const;
  int winding(int k) const { return factors[k].m - factors[k].n; }
};

// the same integral expressed in the chart zeta = 1/z (includes the
// |zeta|^{-4} area factor); exact transformation within the class
PlaneIntegrand invert_at_infinity(const PlaneIntegrand& f);

struct QuadratureOptions {
  double tol = 1e-9;       // absolute target per integral
  int radial = 48;         // base radial nodes per patch
  int angular = 64;        // base angular nodes per patch
  int max_depth = 42;      // quadtree depth cap
  int refine = 0;          // extra halvings for self-consistency checks
};

struct QuadratureResult {
  cplx value{0, 0};
  double error = 0;        // estimated absolute error
  long long evals = 0;
};

QuadratureResult integrate_plane(const PlaneIntegrand& f, const QuadratureOptions& opt = {});

// C⁹ polynomial step: 0 for t <= 0, 1 for t >= 1
double smoothstep9(double t);

// nodes/weights for ∫_0^1 u^beta f(u) du (beta > -1), Gauss–Jacobi
void gauss_jacobi01(int q, double beta, std::vector<double>& nodes,
                    std::vector<double>& weights);
// nodes/weights for ∫_0^1 (1-u)^alpha u^beta f(u) du (alpha, beta > -1)
void gauss_jacobi01_ab(int q, double alpha, double beta, std::vector<double>& nodes,
                       std::vector<double>& weights);

}  // namespace kz

#endif
