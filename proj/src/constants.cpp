#include "stepwave/constants.hpp"

#include <cmath>

#include "stepwave/error.hpp"

namespace stepwave {

ParticleContext ParticleContext::from_mass(double mass) {
  return ParticleContext{mass, phi_factor(mass)};
}

double phi_factor(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw InvalidArgument("particle mass must be positive and finite");
  return std::sqrt(2.0 * mass) / kHbarC;
}

cplx wavevector(double energy, double potential, double phi) noexcept {
  // +0.0 imaginary part keeps std::sqrt on the upper half-plane branch.
  return phi * std::sqrt(cplx(energy - potential, 0.0));
}

cplx step_wavevector(double energy, double potential, double phi) noexcept {
  double gap = energy - potential;
  if (std::abs(gap) < kDegenerateGap) gap = kDegenerateGap;
  return phi * std::sqrt(cplx(gap, 0.0));
}

} // namespace stepwave
