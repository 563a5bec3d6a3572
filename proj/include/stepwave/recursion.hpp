#ifndef STEPWAVE_RECURSION_HPP
#define STEPWAVE_RECURSION_HPP

#include <cstdint>
#include <vector>

#include "stepwave/constants.hpp"
#include "stepwave/potential.hpp"

namespace stepwave {

/// Stationary state for unit incidence from the left (x < x_0).
///
/// On step j the field is A[j] e^{ik_j(x-x_j)} + B[j] e^{-ik_j(x-x_j)}.
/// Index ranges follow the step numbering; unused slots hold zero:
///
///   k, A, B : j = 0..N          A[0] = 1, B[N] = 0
///   R       : j = 1..N+1        R[N+1] = 0, R[j] = B[j-1]/A[j-1]
///   T       : j = 1..N          A[j] = A[j-1] T[j]
struct LeftSweep {
  double energy = 0.0;
  std::vector<cplx> k;
  std::vector<cplx> R;
  std::vector<cplx> T;
  std::vector<cplx> A;
  std::vector<cplx> B;
};

/// Stationary state for unit incidence from the right (x > x_N).
///
/// On step j the field is C[j+1] e^{ik_j(x-x_{j+1})} + D[j+1] e^{-ik_j(x-x_{j+1})}.
///
///   k          : j = 0..N
///   Rbar       : j = 0..N       Rbar[0] = 0, Rbar[j] = C[j+1]/D[j+1]
///   Tbar       : j = 1..N       D[j] = D[j+1] Tbar[j]
///   C, D       : j = 1..N+1     C[1] = 0, D[N+1] = 1
struct RightSweep {
  double energy = 0.0;
  std::vector<cplx> k;
  std::vector<cplx> Rbar;
  std::vector<cplx> Tbar;
  std::vector<cplx> C;
  std::vector<cplx> D;
};

/// Wavevectors and both reflection arrays, without amplitudes.
struct ReflectionPair {
  double energy = 0.0;
  std::vector<cplx> k;     ///< j = 0..N
  std::vector<cplx> R;     ///< j = 1..N+1 (as in LeftSweep)
  std::vector<cplx> Rbar;  ///< j = 0..N (as in RightSweep)
};

/// Transmission amplitude product and reflection, with no arrays kept.
struct StreamedTransmission {
  cplx product;     ///< prod_{j=1..N} T_j = A_N / A_0
  cplx reflection;  ///< R_1 = B_0 / A_0
  cplx k_first;     ///< k_0
  cplx k_last;      ///< k_N
};

/// Step wavevectors k_j = phi sqrt(E - U_j), degenerate E = U_j nudged.
std::vector<cplx> step_wavevectors(const DiscretizedPotential& dp, double energy, double phi);

/// Right-to-left recursion for R_j, T_j followed by the forward amplitude
/// pass. Throws NumericalError naming the step if a denominator vanishes
/// (|den| < 1e-300) or the energy is not finite.
LeftSweep left_sweep(const DiscretizedPotential& dp, double energy, const ParticleContext& ctx);

/// Left-to-right recursion for Rbar_j, Tbar_j followed by the backward
/// amplitude pass.
RightSweep right_sweep(const DiscretizedPotential& dp, double energy, const ParticleContext& ctx);

/// Only the reflection recursions of both sweeps (what the mismatch
/// functional needs).
ReflectionPair reflection_sweeps(const DiscretizedPotential& dp, double energy,
                                 const ParticleContext& ctx);

/// O(1)-memory left recursion accumulating prod T_j.
StreamedTransmission streamed_transmission(const DiscretizedPotential& dp, double energy,
                                           const ParticleContext& ctx);

/// Number of left_sweep() calls made by this process so far.
std::uint64_t left_sweep_count() noexcept;

} // namespace stepwave

#endif
