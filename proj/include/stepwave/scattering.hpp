#ifndef STEPWAVE_SCATTERING_HPP
#define STEPWAVE_SCATTERING_HPP

#include <span>
#include <vector>

#include "stepwave/recursion.hpp"

namespace stepwave {

/// Transmission and reflection probabilities for left incidence.
struct Transmission {
  double T = 0.0;
  double R = 0.0;
  /// The exit side is classically forbidden; T is reported as 0.
  bool evanescent_exit = false;
};

struct TransmissionCurve {
  std::vector<double> E;
  std::vector<double> T;
  std::vector<double> R;
};

/// Sampled stationary (or time-dependent) field.
struct WaveField {
  std::vector<double> x;
  std::vector<cplx> psi;
  double E = 0.0;
};

enum class TransmissionMethod {
  amplitude,  ///< full left sweep, T from A_N/A_0
  product,    ///< streamed prod T_j, no coefficient arrays
};

/// R = |B_0/A_0|^2 and the current-normalized T = (Re k_N / Re k_0) |A_N/A_0|^2,
/// which is |A_N/A_0|^2 when both ends sit at the same potential. Throws
/// NumericalError when the incident side is evanescent.
Transmission transmission(const LeftSweep& sweep, const DiscretizedPotential& dp);

/// Same quantities from the streamed recursion.
Transmission transmission(const StreamedTransmission& streamed);

/// T(E) over a list of energies. Per-energy failures are rethrown as
/// NumericalError carrying the energy.
TransmissionCurve transmission_curve(const DiscretizedPotential& dp, std::span<const double> energies,
                                     const ParticleContext& ctx,
                                     TransmissionMethod method = TransmissionMethod::product,
                                     unsigned threads = 1);

/// Evaluates psi_j(x) = A_j e^{ik_j(x-x_j)} + B_j e^{-ik_j(x-x_j)} on the
/// step containing each sample. At the nodes this is A_j + B_j. Throws
/// InvalidArgument for samples outside [x_0, x_N].
WaveField sample_wavefunction(const LeftSweep& sweep, const DiscretizedPotential& dp,
                              std::span<const double> xs);

/// The grid nodes themselves.
inline WaveField sample_wavefunction(const LeftSweep& sweep, const DiscretizedPotential& dp) {
  return sample_wavefunction(sweep, dp, dp.x);
}

} // namespace stepwave

#endif
