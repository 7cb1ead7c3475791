#include <random>

#include "doctest.h"
#include "kz/hodge_form.hpp"

using namespace kz;

TEST_CASE("modular lambda: classical values and periodicity") {
  CHECK(std::abs(modular_lambda(cplx(0, 1)) - cplx(0.5, 0)) < 1e-12);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> ux(-0.9, 0.9), uy(0.2, 3.0);
  for (int t = 0; t < 25; ++t) {
    cplx tau(ux(rng), uy(rng));
    CHECK(std::abs(modular_lambda(tau + 2.0) - modular_lambda(tau)) < 1e-11);
    CHECK(std::abs(modular_lambda(-1.0 / tau) - (1.0 - modular_lambda(tau))) < 1e-11);
  }
  CHECK_THROWS_AS(modular_lambda(cplx(0, -1)), std::invalid_argument);
  // the degeneration along a geodesic family stays in (0,1) on the imaginary axis
  for (double t : {-0.4, -0.1, 0.0, 0.1, 0.4}) {
    cplx lam = modular_lambda(cplx(0, 1) * std::exp(2.0 * t));
    CHECK(std::abs(lam.imag()) < 1e-12);
    CHECK(lam.real() > 0);
    CHECK(lam.real() < 1);
  }
}

TEST_CASE("holomorphic bases match the eigenspace counts") {
  CyclicCoverSpec m6 = validate_spec(6, {1, 1, 1, 3});
  EigenBasis b6 = holomorphic_basis(6, teichmueller_point(m6, cplx(0, 1)));
  CHECK(b6.genus == 4);
  CHECK(b6.forms_with_denominator(5).size() == 2);
  CHECK(b6.forms_with_denominator(4).size() == 1);
  CHECK(b6.forms_with_denominator(3).size() == 1);
  CHECK(b6.forms_with_denominator(2).empty());
  // the tiling form has denominator N/2 and deck eigenvalue -1
  OmegaSpec w6 = omega_for_cover(m6, b6);
  CHECK(w6.k == 3);
  int idx = b6.forms_with_denominator(3)[0];
  CHECK(b6.forms[idx].eigenvalue_exponent(6) == 3);  // zeta^3 = -1

  CyclicCoverSpec m4 = validate_spec(4, {1, 1, 1, 1});
  EigenBasis b4 = holomorphic_basis(4, teichmueller_point(m4, cplx(0, 1)));
  CHECK(b4.genus == 3);
  CHECK(b4.forms_with_denominator(3).size() == 2);
  CHECK(b4.forms_with_denominator(2).size() == 1);

  EigenBasis bz = holomorphic_basis(6, locus_z_reference_configuration());
  CHECK(bz.genus == 10);
  for (int k = 2; k <= 5; ++k) CHECK(int(bz.forms_with_denominator(k).size()) == k - 1);
}

TEST_CASE("hodge gram: unit tiling form, positive definite blocks, mesh stability") {
  CyclicCoverSpec m6 = validate_spec(6, {1, 1, 1, 3});
  EigenBasis basis = holomorphic_basis(6, teichmueller_point(m6, cplx(0, 1)));
  OmegaSpec omega = omega_for_cover(m6, basis);
  HodgeOptions opt;
  opt.tol = 1e-9;
  HodgeFrame fr = hodge_gram(basis, omega, opt);
  CHECK(fr.area > 0);
  // frame is unitary in the raw Gram: coeff^* G coeff = I
  Eigen::MatrixXcd check = fr.coeff.adjoint() * fr.gram_raw * fr.coeff;
  CHECK((check - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-9);
  // Gram eigenvalues all positive, and stable under mesh refinement
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fr.gram_raw);
  for (int i = 0; i < 4; ++i) CHECK(es.eigenvalues()(i) > 0);
  HodgeOptions opt2 = opt;
  opt2.refine = 1;
  HodgeFrame fr2 = hodge_gram(basis, omega, opt2);
  CHECK((fr2.gram_raw - fr.gram_raw).norm() / fr.gram_raw.norm() < 1e-8);
}

TEST_CASE("second fundamental form of M6(1,1,1,3): rank one") {
  CyclicCoverSpec m6 = validate_spec(6, {1, 1, 1, 3});
  EigenBasis basis = holomorphic_basis(6, teichmueller_point(m6, cplx(0, 1)));
  OmegaSpec omega = omega_for_cover(m6, basis);
  HodgeOptions opt;
  opt.tol = 1e-9;
  SecondFundamentalFormMatrix sf = second_fundamental_form(basis, omega, opt);
  CHECK(std::abs(sf.B(0, 0) - cplx(1, 0)) < 1e-6);
  CHECK((sf.B - sf.B.transpose()).norm() < 1e-10);
  CHECK(sf.rank == 1);
  CHECK(!sf.rank_indeterminate);
  CHECK(sf.takagi[1] < 1e-6);
  CHECK(std::abs(sf.lambda[0] - 1.0) < 1e-6);
  CHECK(sf.lambda[1] < 1e-6);
  // eigenvalues of H are the squared Takagi values of B
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(sf.lambda[i] - sf.takagi[i] * sf.takagi[i]) < 1e-10);
  // first row of B is (1, 0, ..., 0)
  for (int j = 1; j < 4; ++j) CHECK(std::abs(sf.B(0, j)) < 1e-6);

  // verification mode: forced zeros hold numerically
  HodgeOptions optv = opt;
  optv.quadrature_all_entries = true;
  SecondFundamentalFormMatrix sfv = second_fundamental_form(basis, omega, optv);
  CHECK(sfv.max_forced_zero < 1e-8);
}

TEST_CASE("zero pattern: M6 eigenvalues force rank one") {
  // frame eigenvalues {zeta, zeta, zeta^2, zeta^3}, u = -1 (zeta = e^{i pi/3})
  std::vector<cplx> u;
  for (int e : {1, 1, 2, 3}) u.push_back(std::polar(1.0, M_PI * e / 3.0));
  ZeroPattern zp = symmetry_zero_pattern(u, cplx(-1, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(zp.may_be_nonzero[i][j] == (i == 3 && j == 3));
  CHECK(zp.rank_bound == 1);

  // trivial automorphism forces nothing
  std::vector<cplx> ones(4, cplx(1, 0));
  ZeroPattern zp1 = symmetry_zero_pattern(ones, cplx(1, 0));
  CHECK(zp1.rank_bound == 4);
  for (auto& row : zp1.may_be_nonzero)
    for (bool v : row) CHECK(v);

  // locus-Z character data: classes of sizes 1,2,3,4 with pairing (2,4),(3,3)
  std::vector<cplx> uz;
  for (int e : {4, 3, 3, 2, 2, 2, 1, 1, 1, 1}) uz.push_back(std::polar(1.0, M_PI * e / 3.0));
  ZeroPattern zpz = symmetry_zero_pattern(uz, cplx(-1, 0));
  CHECK(zpz.rank_bound == 4);

  CHECK_THROWS_AS(symmetry_zero_pattern({cplx(2, 0)}, cplx(1, 0)), std::invalid_argument);
}

TEST_CASE("phi_k: equality of routes, bounds, frame invariance") {
  std::mt19937 rng(9);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 50; ++trial) {
    int g = 2 + int(rng() % 5);
    // random symmetric B scaled to unit top singular value with a gap
    Eigen::MatrixXcd b(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = i; j < g; ++j) b(i, j) = b(j, i) = cplx(gauss(rng), gauss(rng));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    b /= svd.singularValues()(0);
    Eigen::MatrixXcd h = b * b.adjoint();
    for (int k = 1; k <= g; ++k) {
      PhiValue v = phi_k(b, h, k);
      CHECK(std::abs(v.by_definition - v.by_eigenvalues) < 1e-10);
      CHECK(std::abs(v.by_definition) <= std::min(2 * k, g) + 1e-9);
      if (k >= 2) CHECK(std::abs(v.by_definition) < std::min(2 * k, g));
    }
    // Phi_g is the trace of H regardless of the subspace
    PhiValue vg = phi_k(b, h, g);
    CHECK(std::abs(vg.by_definition - h.trace().real()) < 1e-10);

    // invariance: rotate the head by a real orthogonal k x k block and the
    // tail by a unitary one
    int k = 1 + int(rng() % g);
    Eigen::MatrixXd oh = Eigen::MatrixXd::Random(k, k);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr1(oh);
    Eigen::MatrixXd o = qr1.householderQ();
    Eigen::MatrixXcd ut = Eigen::MatrixXcd::Random(g - k, g - k);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr2(ut);
    Eigen::MatrixXcd u = qr2.householderQ();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g, g);
    m.topLeftCorner(k, k) = o.cast<cplx>();
    m.bottomRightCorner(g - k, g - k) = u;
    Eigen::MatrixXcd b2 = m.transpose() * b * m;
    Eigen::MatrixXcd h2 = m.adjoint() * h * m;
    PhiValue va = phi_k(b, h, k), vb = phi_k(b2, h2, k);
    CHECK(std::abs(va.by_definition - vb.by_definition) < 1e-10);
  }
}

TEST_CASE("hodge star operators and the laplacian right-hand side") {
  CyclicCoverSpec m6 = validate_spec(6, {1, 1, 1, 3});
  EigenBasis basis = holomorphic_basis(6, teichmueller_point(m6, cplx(0, 1)));
  OmegaSpec omega = omega_for_cover(m6, basis);
  HodgeOptions opt;
  SecondFundamentalFormMatrix sf = second_fundamental_form(basis, omega, opt);
  const int g = 4;
  HodgeStarOps ops = hodge_star_ops(sf.B, sf.H);
  CHECK((ops.star * ops.star + Eigen::MatrixXd::Identity(2 * g, 2 * g)).norm() == 0.0);
  // (c1, c2) = <c1, * c2> is the identity matrix in this frame
  Eigen::MatrixXd hodge_prod = ops.sympl * ops.star;
  CHECK((hodge_prod - Eigen::MatrixXd::Identity(2 * g, 2 * g)).norm() == 0.0);

  // c = [Re omega] gives 4 H(ω,ω) - 2 |B(ω,ω)|² = 2
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * g);
  c(0) = 1;
  CHECK(std::abs(laplacian_rhs(sf.B, sf.H, c) - 2.0) < 1e-5);

  // anything in the annihilator gives zero
  Eigen::VectorXd ann = Eigen::VectorXd::Zero(2 * g);
  ann(1) = 1;  // second frame vector: B row is zero for M6
  CHECK(std::abs(laplacian_rhs(sf.B, sf.H, ann)) < 1e-10);

  // fuzzed vectors: nonnegative
  std::mt19937 rng(31);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd v(2 * g);
    for (int i = 0; i < 2 * g; ++i) v(i) = gauss(rng);
    CHECK(laplacian_rhs(sf.B, sf.H, v) >= -1e-12);
  }
  CHECK_THROWS_AS(laplacian_rhs(sf.B, sf.H, Eigen::VectorXd::Zero(2 * g)),
                  std::invalid_argument);

  // Ann(B^R) is star-invariant: for M6 it is spanned by all real frame
  // vectors except [Re ω], [Im ω]
  for (int i : {1, 2, 3, 5, 6, 7}) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(2 * g);
    e(i) = 1;
    Eigen::VectorXd se = ops.star * e;
    // both e and *e pair to ~0 with every vector under B^R
    double worst = 0;
    for (int q = 0; q < 2 * g; ++q) {
      worst = std::max(worst, std::abs(ops.b_real(i, q)));
      for (int p = 0; p < 2 * g; ++p)
        worst = std::max(worst, std::abs(se(p)) * std::abs(ops.b_real(p, q)));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("M4(1,1,1,1) second fundamental form is rank one as well") {
  CyclicCoverSpec m4 = validate_spec(4, {1, 1, 1, 1});
  EigenBasis basis = holomorphic_basis(4, teichmueller_point(m4, cplx(0, 1)));
  OmegaSpec omega = omega_for_cover(m4, basis);
  HodgeOptions opt;
  SecondFundamentalFormMatrix sf = second_fundamental_form(basis, omega, opt);
  CHECK(sf.rank == 1);
  CHECK(std::abs(sf.lambda[0] - 1.0) < 1e-6);
  CHECK(sf.lambda[1] < 1e-8);
}
