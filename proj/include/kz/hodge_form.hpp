// Numerical Hodge-bundle geometry of cyclic covers: the Hodge pairing by
// pushforward quadrature, an orthonormal eigenform frame led by the
// square-tiling form, the second fundamental form B with its curvature
// H = B·B*, eigenvalues, rank and annihilator, the character zero pattern,
// the two routes to Φ_k, and the Hodge star operators in the induced real
// frame.

#ifndef KZ_HODGE_FORM_HPP
#define KZ_HODGE_FORM_HPP

#include <Eigen/Dense>
#include <map>

#include "kz/eigenforms.hpp"
#include "kz/quadrature.hpp"

namespace kz {

struct HodgeOptions {
  double tol = 1e-9;          // absolute quadrature tolerance per entry
  double rank_tol = 1e-5;     // singular-value threshold on the unit-scaled B
  bool quadrature_all_entries = false;  // integrate character-forced zeros too
  int refine = 0;             // extra quadrature resolution
};

struct HodgeFrame {
  EigenBasis basis;
  std::vector<int> order;         // frame position -> index into basis.forms
  Eigen::MatrixXcd coeff;         // column j: frame vector j in basis-form coordinates
  std::vector<int> char_exponent; // deck eigenvalue exponent per frame vector
  double area = 0;                // ‖ω‖² before normalization
  int omega_k = 0;                // w-denominator of the tiling form
  Eigen::MatrixXcd gram_raw;      // pairing of the ordered basis forms
};

struct SecondFundamentalFormMatrix {
  HodgeFrame frame;
  Eigen::MatrixXcd B;             // complex symmetric, frame coordinates
  Eigen::MatrixXcd H;             // B · B*
  std::vector<double> lambda;     // eigenvalues of H, descending
  std::vector<double> takagi;     // singular values of B, descending
  int rank = 0;
  bool rank_indeterminate = false;
  Eigen::MatrixXcd annihilator;   // kernel frame of B (right singular vectors)
  double quadrature_error = 0;
  double max_forced_zero = 0;     // only meaningful with quadrature_all_entries
};

// the tiling differential: coefficients over the monomial forms of one
// w-denominator block
struct OmegaSpec {
  int k = 0;
  std::vector<cplx> coeff;
};

// u(z) = Π (z-z_i)^{(a_i-1)/2} dz / w^{N/2} for an orientable 4-point cover
OmegaSpec omega_for_cover(const CyclicCoverSpec& spec, const EigenBasis& basis);
// (z - z_1) dz / w^3 on a locus-Z configuration
OmegaSpec omega_for_locus_z(const EigenBasis& basis);

// Hodge Gram matrix of two forms with equal w-denominator (pushforward to the
// base plane); pairs with different denominators vanish by character
// orthogonality and are not integrated
QuadratureResult hodge_pairing(const EigenBasis& basis, int i, int j, const HodgeOptions& opt);

// B_ω(φ_i, φ_j); nonzero only when the denominators sum to 0 mod N
QuadratureResult b_pairing(const EigenBasis& basis, const OmegaSpec& omega, int i, int j,
                           const HodgeOptions& opt);

HodgeFrame hodge_gram(const EigenBasis& basis, const OmegaSpec& omega, const HodgeOptions& opt);

SecondFundamentalFormMatrix second_fundamental_form(const EigenBasis& basis,
                                                    const OmegaSpec& omega,
                                                    const HodgeOptions& opt);

// character zero pattern: entry (i,j) is forced to vanish unless
// u_i u_j = u², for unit-modulus automorphism eigenvalues; returns the mask
// of surviving entries and a rank bound from its bipartite structure
struct ZeroPattern {
  std::vector<std::vector<bool>> may_be_nonzero;
  int rank_bound = 0;
};
ZeroPattern symmetry_zero_pattern(const std::vector<cplx>& u_frame, cplx u_omega,
                                  double tol = 1e-9);

// Φ_k by its two formulas; both are returned so tests can compare them
struct PhiValue {
  double by_definition = 0;   // 2 Σ_{i<=k} H_ii - Σ_{i,j<=k} |B_ij|²
  double by_eigenvalues = 0;  // Σ Λ_i - Σ_{i,j>k} |B_ij|²
};
PhiValue phi_k(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& h, int k);

// matrices of * and of the symplectic form in the real frame
// {c_1..c_g, *c_1..*c_g} built from an orthonormal holomorphic frame, plus
// the induced complex-valued forms on real vectors
struct HodgeStarOps {
  Eigen::MatrixXd star;   // ** = -I exactly
  Eigen::MatrixXd sympl;  // <c,c'>; the Hodge product is <c, * c'>
  Eigen::MatrixXcd b_real, h_real;  // 2g x 2g matrices of B^R and H^R
};
HodgeStarOps hodge_star_ops(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& h);

// 4 H^R(c,c)/‖c‖² - 2 |B^R(c,c)|²/‖c‖⁴ for a real cohomology vector c given
// in the real frame coordinates (x over c_i, y over *c_i); always >= 0
double laplacian_rhs(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& h,
                     const Eigen::VectorXd& c);

}  // namespace kz

#endif
