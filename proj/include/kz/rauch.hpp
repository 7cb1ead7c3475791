// Finite-difference check of the first variation of the period matrix along
// the geodesic family tau(t) = i e^{2t}, against the second fundamental form
// evaluated on the basis dual to a canonical homology basis. Experimental:
// the branch points stay real and ordered along this family, the cover's
// edges are lifts of the real segments between them, and periods are
// Gauss–Jacobi contour integrals with per-sheet root-of-unity phases.

#ifndef KZ_RAUCH_HPP
#define KZ_RAUCH_HPP

#include <Eigen/Dense>

#include "kz/cyclic_cover.hpp"
#include "kz/hodge_form.hpp"

namespace kz {

struct RauchReport {
  double dt = 0;
  double rel_error = 0;        // ‖dΠ/dt ∓ B(θ,θ)‖ / ‖B‖, best time orientation
  double rel_error_half = 0;   // same at dt/2
  double convergence_order = 0;
  int time_sign = 0;           // orientation matching the forward Teichmüller flow
  double pi_asymmetry = 0;     // ‖Π - Πᵀ‖ / ‖Π‖ at t = 0
  double pi_im_min_eigenvalue = 0;  // of Im Π at t = 0, after orientation fix
};

// exact symplectic basis of a unimodular skew integer form: U with
// Uᵀ X U = [[0, I], [-I, 0]]
IMat symplectic_basis(const IMat& x);

// period matrix of the cyclic cover at parameter t (tau = i e^{2t})
Eigen::MatrixXcd period_matrix(const CyclicCoverSpec& spec, double t, double* asym = nullptr,
                               double* im_min = nullptr);

RauchReport rauch_check(const CyclicCoverSpec& spec, double dt, const HodgeOptions& opt);

}  // namespace kz

#endif
