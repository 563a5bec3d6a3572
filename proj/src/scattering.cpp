#include "stepwave/scattering.hpp"

#include <cmath>
#include <sstream>

#include "stepwave/error.hpp"
#include "stepwave/parallel.hpp"

namespace stepwave {

namespace {

constexpr cplx kI{0.0, 1.0};

Transmission from_amplitudes(cplx a_ratio, cplx b_ratio, cplx k_first, cplx k_last, double energy) {
  if (!(k_first.real() > 0.0))
    throw NumericalError("incident side is classically forbidden", energy);
  Transmission out;
  out.R = std::norm(b_ratio);
  if (k_last.real() > 0.0) {
    out.T = k_last.real() / k_first.real() * std::norm(a_ratio);
  } else {
    out.T = 0.0;
    out.evanescent_exit = true;
  }
  return out;
}

} // namespace

Transmission transmission(const LeftSweep& sweep, const DiscretizedPotential& dp) {
  const std::size_t n = dp.steps();
  return from_amplitudes(sweep.A[n] / sweep.A[0], sweep.B[0] / sweep.A[0], sweep.k[0], sweep.k[n],
                         sweep.energy);
}

Transmission transmission(const StreamedTransmission& streamed) {
  // The streamed form has no energy attached; k_0 = phi sqrt(E-U_0) can
  // only be evanescent if E < U_0, reported as a NaN energy here and
  // re-labelled by transmission_curve().
  return from_amplitudes(streamed.product, streamed.reflection, streamed.k_first, streamed.k_last,
                         std::nan(""));
}

TransmissionCurve transmission_curve(const DiscretizedPotential& dp, std::span<const double> energies,
                                     const ParticleContext& ctx, TransmissionMethod method,
                                     unsigned threads) {
  TransmissionCurve curve;
  curve.E.assign(energies.begin(), energies.end());
  curve.T.resize(energies.size());
  curve.R.resize(energies.size());

  parallel_for(energies.size(), threads, [&](std::size_t i) {
    const double e = energies[i];
    try {
      Transmission t = method == TransmissionMethod::product
                           ? transmission(streamed_transmission(dp, e, ctx))
                           : transmission(left_sweep(dp, e, ctx), dp);
      curve.T[i] = t.T;
      curve.R[i] = t.R;
    } catch (const NumericalError& err) {
      if (std::isnan(err.energy())) throw NumericalError("incident side is classically forbidden", e);
      throw;
    }
  });
  return curve;
}

WaveField sample_wavefunction(const LeftSweep& sweep, const DiscretizedPotential& dp,
                              std::span<const double> xs) {
  WaveField field;
  field.E = sweep.energy;
  field.x.assign(xs.begin(), xs.end());
  field.psi.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (!(x >= dp.x.front() && x <= dp.x.back())) {
      std::ostringstream os;
      os << "sample x = " << x << " nm lies outside the grid [" << dp.x.front() << ", "
         << dp.x.back() << "]";
      throw InvalidArgument(os.str());
    }
    const std::size_t j = dp.step_of(x);
    const cplx ikx = kI * sweep.k[j] * (x - dp.x[j]);
    field.psi[i] = sweep.A[j] * std::exp(ikx);
    if (sweep.B[j] != 0.0) field.psi[i] += sweep.B[j] * std::exp(-ikx);
  }
  return field;
}

} // namespace stepwave
