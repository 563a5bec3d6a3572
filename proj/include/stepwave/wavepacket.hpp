#ifndef STEPWAVE_WAVEPACKET_HPP
#define STEPWAVE_WAVEPACKET_HPP

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "stepwave/scattering.hpp"

namespace stepwave {

/// Packet width given directly in space.
struct SpatialWidth {
  double sigma_x;  ///< nm
};

/// Packet width given as the half-range of mode energies around E0;
/// sigma_k = phi dE / (7 sqrt(E0)).
struct EnergyHalfRange {
  double delta_e;  ///< eV
};

using PacketWidth = std::variant<SpatialWidth, EnergyHalfRange>;

/// Gaussian packet sampled on equally spaced wavevectors kappa0 +- 3.5 sigma_k.
struct WavePacket {
  std::vector<double> kappa;  ///< nm^-1
  double dkappa = 0.0;
  std::vector<double> c;      ///< real Gaussian weights, sum c^2 dkappa = 1
  std::vector<double> E;      ///< (kappa/phi)^2, eV
  double x0 = 0.0;            ///< initial centre, nm
  double sigma_x = 0.0;
  double sigma_k = 0.0;
  double kappa0 = 0.0;
  double t_max = 0.0;         ///< fs; h / (2 (E_last - E_second_last))
  double group_velocity = 0.0;  ///< nm/fs

  /// FWHM of |psi(x,0)|^2 = sigma_x sqrt(2 ln 4).
  double fwhm() const noexcept;
};

/// Throws InvalidArgument for E0 <= 0, fewer than 3 modes, a non-positive
/// width, or a wavevector range reaching zero.
WavePacket design_packet(double e0, PacketWidth width, std::size_t modes, double x0,
                         const ParticleContext& ctx);

/// Left-incidence coefficients of every packet mode on one grid.
struct ModeCache {
  std::vector<double> x;  ///< grid nodes
  std::vector<LeftSweep> modes;

  std::size_t size() const noexcept { return modes.size(); }
};

ModeCache precompute_modes(const DiscretizedPotential& dp, const WavePacket& packet,
                           const ParticleContext& ctx, unsigned threads = 1);

/// Reusable superposition at a fixed set of sample positions:
///
///     psi(x,t) = dkappa/sqrt(2 pi) sum_n c_n e^{-i kappa_n (x0 - x_ref)} psi_n(x) e^{-i E_n t / hbar}
///
/// with psi_n the stationary left-incidence mode (unit amplitude at the grid
/// origin x_ref). The phase factor moves the packet centre to x0, the dkappa
/// measure makes the discrete sum normalized.
class PacketEvolver {
public:
  PacketEvolver(const WavePacket& packet, const ModeCache& cache, std::span<const double> xs);

  WaveField at(double t) const;

  bool within_validity(double t) const noexcept { return t >= 0.0 && t <= t_max_; }

private:
  std::vector<double> x_;
  std::vector<double> energies_;
  std::vector<cplx> weighted_;  // modes x samples, row-major
  double t_max_;
};

/// One-off evolve(); throws InvalidArgument for samples outside the grid.
WaveField evolve(const WavePacket& packet, const ModeCache& cache, double t,
                 std::span<const double> xs);

/// Sum over samples in [a, b] of |psi|^2 times each sample's local spacing
/// (half the distance between its neighbours). Throws InvalidArgument if
/// a >= b or no sample falls in the range.
double region_probability(const WaveField& field, double a, double b);

struct LifetimeFit {
  double tau;        ///< fs; +infinity when P does not decay
  double r_squared;
  std::size_t points;
};

/// Least-squares line through (t, ln P) for t >= t_start; tau = -1/slope.
/// Throws InvalidArgument for fewer than 3 points, P <= 0, or all-equal t.
LifetimeFit fit_lifetime(std::span<const std::pair<double, double>> samples, double t_start);

} // namespace stepwave

#endif
