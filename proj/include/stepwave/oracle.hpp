#ifndef STEPWAVE_ORACLE_HPP
#define STEPWAVE_ORACLE_HPP

#include <variant>
#include <vector>

#include "stepwave/constants.hpp"

// Closed-form reference results. Nothing here touches the recursion engine;
// tests compare the engine against these.
namespace stepwave::oracle {

struct StepRT {
  double reflection;    ///< |r|^2
  double transmission;  ///< transmitted current fraction
};

/// Potential step from U_left to U_right. For U_right < E < U_left... the
/// incident side must be propagating (E > U_left); E below U_right gives
/// total reflection. Throws InvalidArgument if E <= U_left.
StepRT analytic_step_RT(double energy, double u_left, double u_right, const ParticleContext& ctx);

/// Rectangular barrier of height v0 (negative for a well) and given width
/// with zero potential on both sides. E == v0 uses the limiting form
/// 1 / (1 + phi^2 width^2 v0 / 4). Throws InvalidArgument for E <= 0.
double analytic_square_barrier_T(double energy, double v0, double width, const ParticleContext& ctx);

struct WellLevel {
  double energy;  ///< eV, in (-depth, 0)
  bool even;
};

/// Bound states of U = -depth for |x| < half_width, 0 outside, from the
/// even (z tan z) and odd (-z cot z) matching conditions solved by
/// bisection to 1e-10 eV. Sorted by energy.
std::vector<WellLevel> finite_well_eigenvalues(double depth, double half_width,
                                               const ParticleContext& ctx);

struct Harmonic {
  double hbar_omega;  ///< eV
};

struct Rydberg {
  double mass = kElectronMass;  ///< eV
  double e2 = kCoulombE2;       ///< eV nm
};

using ReferenceKind = std::variant<Harmonic, Rydberg>;

/// Harmonic: hbar omega (n + 1/2), n >= 0. Rydberg: -Ry / n^2 with
/// Ry = m e2^2 / (2 (hbar c)^2), n >= 1. Throws InvalidArgument otherwise.
double reference_level(const ReferenceKind& kind, int n);
inline double reference_levels(const ReferenceKind& kind, int n) { return reference_level(kind, n); }

} // namespace stepwave::oracle

#endif
