#include "kz/branch_config.hpp"

#include <cmath>
#include <stdexcept>

namespace kz {

namespace {

using cd = std::complex<double>;

// Möbius map as a 2x2 complex matrix acting on lambda
struct Mob {
  cd a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};
  cd apply(cd z) const { return (a * z + b) / (c * z + d); }
  Mob compose(const Mob& o) const {  // this after o
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

// lambda(tau+1) = lambda/(lambda-1), lambda(-1/tau) = 1-lambda; both are
// involutions on lambda
const Mob kShift{cd(1, 0), cd(0, 0), cd(1, 0), cd(-1, 0)};   // z/(z-1)
const Mob kInvert{cd(-1, 0), cd(1, 0), cd(0, 0), cd(1, 0)};  // 1-z

}  // namespace

std::complex<double> modular_lambda(std::complex<double> tau) {
  if (!(tau.imag() > 0)) throw std::invalid_argument("modular_lambda: Im(tau) must be positive");
  // reduce to |Re| <= 1/2, |tau| >= 1 while tracking the action on lambda
  Mob back;  // lambda(tau) = back(lambda(tau_reduced))
  for (int guard = 0; guard < 512; ++guard) {
    double n = std::round(tau.real());
    if (n != 0) {
      tau -= n;
      // tau_red = tau - n, lambda(tau) = (shift^n)(lambda(tau_red));
      // the shift is an involution, so only the parity of n matters
      if (std::llround(n) % 2 != 0) back = back.compose(kShift);
    }
    if (std::norm(tau) >= 1.0 - 1e-15) break;
    tau = -1.0 / tau;
    back = back.compose(kInvert);
  }
  // theta-constant series at the reduced point, |q| <= e^{-pi sqrt(3)/2};
  // the terms are exp(i pi tau s) for rational s, so no branch choices arise
  cd th2(0, 0), th3(1, 0);
  const cd ipi_tau = cd(0, M_PI) * tau;
  for (int n = 0; n < 24; ++n) {
    th2 += std::exp(ipi_tau * ((n + 0.5) * (n + 0.5)));
    if (n >= 1) th3 += 2.0 * std::exp(ipi_tau * (double(n) * n));
  }
  th2 *= 2.0;
  cd ratio = th2 / th3;
  cd lam = ratio * ratio * ratio * ratio;
  return back.apply(lam);
}

BranchConfiguration teichmueller_point(const CyclicCoverSpec& spec, std::complex<double> tau) {
  cd lam = modular_lambda(tau);
  BranchConfiguration cfg;
  cfg.points = {cd(0, 0), cd(1, 0), lam};
  cfg.exponents = {spec.a[0], spec.a[1], spec.a[2]};
  cfg.exponent_at_infinity = spec.a[3];
  cfg.tau = tau;
  return cfg;
}

BranchConfiguration locus_z_reference_configuration() {
  BranchConfiguration cfg;
  for (int i = 0; i < 6; ++i) {
    cfg.points.push_back(cd(double(i), 0));
    cfg.exponents.push_back(1);
  }
  cfg.exponent_at_infinity = 0;
  return cfg;
}

std::complex<double> Gamma2Sampler::next() {
  auto uniform = [this] { return double(rng_() >> 11) * 0x1.0p-53; };
  // x = s(1/2 + sin(phi)/2) with phi uniform on (-pi/2, pi/2) and a fair side
  // s makes dx/y_min(x) uniform in phi; then y = y_min(x)/u with u uniform
  // samples dx dy / y^2 restricted to the domain above the two circles.
  double phi = (uniform() - 0.5) * M_PI;
  double side = uniform() < 0.5 ? -1.0 : 1.0;
  double x = side * 0.5 * (1.0 + std::sin(phi));
  double ymin = 0.5 * std::cos(phi);
  double u;
  do {
    u = uniform();
  } while (u == 0.0);
  cd tau(x, ymin / u);

  // pull cusp excursions back to height `cap_`: cusps sit at infinity, 0 and
  // ±1, uniformized by tau, -1/tau and 1/(1 ∓ tau)
  auto clamp_cusp = [&](auto to_cusp, auto from_cusp) {
    cd w = to_cusp(tau);
    if (w.imag() > cap_) tau = from_cusp(cd(w.real(), cap_));
  };
  clamp_cusp([](cd t) { return t; }, [](cd w) { return w; });
  clamp_cusp([](cd t) { return -1.0 / t; }, [](cd w) { return -1.0 / w; });
  clamp_cusp([](cd t) { return 1.0 / (1.0 - t); }, [](cd w) { return 1.0 - 1.0 / w; });
  clamp_cusp([](cd t) { return -1.0 / (1.0 + t); }, [](cd w) { return -1.0 / w - 1.0; });
  return tau;
}

}  // namespace kz
