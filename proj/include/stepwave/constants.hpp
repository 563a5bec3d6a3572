#ifndef STEPWAVE_CONSTANTS_HPP
#define STEPWAVE_CONSTANTS_HPP

#include <complex>
#include <numbers>

namespace stepwave {

using cplx = std::complex<double>;

// Unit system: energies in eV, lengths in nm, times in fs, masses as rest
// energies mc^2 in eV.
inline constexpr double kHbar = 0.6582119569;      // eV fs
inline constexpr double kHbarC = 197.3269804;      // eV nm
inline constexpr double kLightSpeed = 299.792458;  // nm/fs
inline constexpr double kPlanck = 2.0 * std::numbers::pi * kHbar; // eV fs
inline constexpr double kCoulombE2 = 1.44;         // e^2/(4 pi eps0), eV nm
inline constexpr double kElectronMass = 510998.95; // eV

/// Energies closer than this to a step value are treated as E - kDegenerateGap.
inline constexpr double kDegenerateGap = 1e-12;

/// Mass-dependent factors shared by every solver routine.
struct ParticleContext {
  double mass;   ///< rest energy mc^2, eV
  double phi;    ///< sqrt(2m)/hbar, eV^-1/2 nm^-1
  double hbar = kHbar;
  double hbar_c = kHbarC;
  double c = kLightSpeed;

  /// Throws InvalidArgument for mass <= 0.
  static ParticleContext from_mass(double mass);

  /// hbar*kappa/m in nm/fs.
  double group_velocity(double kappa) const noexcept {
    return hbar_c * c * kappa / mass;
  }
};

/// phi = sqrt(2 mc^2) / (hbar c). Throws InvalidArgument unless mass > 0.
double phi_factor(double mass);

/// Principal branch phi*sqrt(E-U): real positive above the step, positive
/// imaginary below it.
cplx wavevector(double energy, double potential, double phi) noexcept;

/// wavevector() with E == U nudged to E - U = kDegenerateGap, as used by
/// the sweeps so that no two adjacent wavevectors vanish together.
cplx step_wavevector(double energy, double potential, double phi) noexcept;

} // namespace stepwave

#endif
