#include "stepwave/recursion.hpp"

#include <atomic>
#include <cmath>

#include "stepwave/error.hpp"

namespace stepwave {

namespace {

constexpr double kSingularDenominator = 1e-300;
constexpr cplx kI{0.0, 1.0};

std::atomic<std::uint64_t> g_left_sweeps{0};

void require_finite(double energy) {
  if (!std::isfinite(energy)) throw NumericalError("energy is not finite", energy);
}

// One step of the reflection recursion shared by both sweep directions:
// `near` is the wavevector on the side being extended, `far` the one across
// the interface, `r_far` the reflection already accumulated beyond it and
// `width` the length of the near step. Returns {T, R}.
struct StepCoefficients {
  cplx t;
  cplx r;
};

inline StepCoefficients interface_step(cplx near, cplx far, cplx r_far, double width,
                                       double energy, std::size_t j) {
  const cplx den = (near - far) * r_far + (near + far);
  if (std::abs(den) < kSingularDenominator)
    throw NumericalError("vanishing recursion denominator", energy, j);
  const cplx phase = std::exp(kI * near * width);
  return {2.0 * near / den * phase, ((near + far) * r_far + (near - far)) / den * phase * phase};
}

} // namespace

std::vector<cplx> step_wavevectors(const DiscretizedPotential& dp, double energy, double phi) {
  std::vector<cplx> k(dp.u.size());
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = step_wavevector(energy, dp.u[j], phi);
  return k;
}

LeftSweep left_sweep(const DiscretizedPotential& dp, double energy, const ParticleContext& ctx) {
  require_finite(energy);
  g_left_sweeps.fetch_add(1, std::memory_order_relaxed);

  const std::size_t n = dp.steps();
  LeftSweep s;
  s.energy = energy;
  s.k = step_wavevectors(dp, energy, ctx.phi);
  s.R.assign(n + 2, cplx{});
  s.T.assign(n + 1, cplx{});
  s.A.assign(n + 1, cplx{});
  s.B.assign(n + 1, cplx{});

  for (std::size_t j = n; j >= 1; --j) {
    const auto c = interface_step(s.k[j - 1], s.k[j], s.R[j + 1], dp.dx[j - 1], energy, j);
    s.T[j] = c.t;
    s.R[j] = c.r;
  }

  s.A[0] = 1.0;
  for (std::size_t j = 1; j <= n; ++j) s.A[j] = s.A[j - 1] * s.T[j];
  for (std::size_t j = 0; j <= n; ++j) s.B[j] = s.A[j] * s.R[j + 1];
  return s;
}

RightSweep right_sweep(const DiscretizedPotential& dp, double energy, const ParticleContext& ctx) {
  require_finite(energy);

  const std::size_t n = dp.steps();
  RightSweep s;
  s.energy = energy;
  s.k = step_wavevectors(dp, energy, ctx.phi);
  s.Rbar.assign(n + 1, cplx{});
  s.Tbar.assign(n + 1, cplx{});
  s.C.assign(n + 2, cplx{});
  s.D.assign(n + 2, cplx{});

  for (std::size_t j = 1; j <= n; ++j) {
    const auto c = interface_step(s.k[j], s.k[j - 1], s.Rbar[j - 1], dp.dx[j], energy, j);
    s.Tbar[j] = c.t;
    s.Rbar[j] = c.r;
  }

  s.D[n + 1] = 1.0;
  for (std::size_t j = n; j >= 1; --j) s.D[j] = s.D[j + 1] * s.Tbar[j];
  for (std::size_t j = 1; j <= n + 1; ++j) s.C[j] = s.D[j] * s.Rbar[j - 1];
  return s;
}

ReflectionPair reflection_sweeps(const DiscretizedPotential& dp, double energy,
                                 const ParticleContext& ctx) {
  require_finite(energy);

  const std::size_t n = dp.steps();
  ReflectionPair p;
  p.energy = energy;
  p.k = step_wavevectors(dp, energy, ctx.phi);
  p.R.assign(n + 2, cplx{});
  p.Rbar.assign(n + 1, cplx{});
  for (std::size_t j = n; j >= 1; --j)
    p.R[j] = interface_step(p.k[j - 1], p.k[j], p.R[j + 1], dp.dx[j - 1], energy, j).r;
  for (std::size_t j = 1; j <= n; ++j)
    p.Rbar[j] = interface_step(p.k[j], p.k[j - 1], p.Rbar[j - 1], dp.dx[j], energy, j).r;
  return p;
}

StreamedTransmission streamed_transmission(const DiscretizedPotential& dp, double energy,
                                           const ParticleContext& ctx) {
  require_finite(energy);

  const std::size_t n = dp.steps();
  cplx k_far = step_wavevector(energy, dp.u[n], ctx.phi);
  const cplx k_last = k_far;
  cplx r = 0.0;
  cplx product = 1.0;
  for (std::size_t j = n; j >= 1; --j) {
    const cplx k_near = step_wavevector(energy, dp.u[j - 1], ctx.phi);
    const auto c = interface_step(k_near, k_far, r, dp.dx[j - 1], energy, j);
    product *= c.t;
    r = c.r;
    k_far = k_near;
  }
  return {product, r, k_far, k_last};
}

std::uint64_t left_sweep_count() noexcept {
  return g_left_sweeps.load(std::memory_order_relaxed);
}

} // namespace stepwave
