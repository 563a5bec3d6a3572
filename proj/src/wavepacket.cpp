#include "stepwave/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "stepwave/error.hpp"
#include "stepwave/parallel.hpp"

namespace stepwave {

namespace {

constexpr cplx kI{0.0, 1.0};

} // namespace

double WavePacket::fwhm() const noexcept { return sigma_x * std::sqrt(2.0 * std::log(4.0)); }

WavePacket design_packet(double e0, PacketWidth width, std::size_t modes, double x0,
                         const ParticleContext& ctx) {
  if (!(e0 > 0.0)) throw InvalidArgument("packet energy E0 must be positive");
  if (modes < 3) throw InvalidArgument("a packet needs at least 3 modes");

  WavePacket p;
  p.x0 = x0;
  p.kappa0 = ctx.phi * std::sqrt(e0);
  if (const auto* s = std::get_if<SpatialWidth>(&width)) {
    if (!(s->sigma_x > 0.0)) throw InvalidArgument("sigma_x must be positive");
    p.sigma_x = s->sigma_x;
    p.sigma_k = 1.0 / s->sigma_x;
  } else {
    const double de = std::get<EnergyHalfRange>(width).delta_e;
    if (!(de > 0.0)) throw InvalidArgument("energy half-range must be positive");
    p.sigma_k = ctx.phi * de / (7.0 * std::sqrt(e0));
    p.sigma_x = 1.0 / p.sigma_k;
  }

  const double lowest = p.kappa0 - 3.5 * p.sigma_k;
  if (!(lowest > 0.0)) {
    std::ostringstream os;
    os << "packet wavevector range reaches zero (kappa0 = " << p.kappa0
       << " nm^-1, sigma_k = " << p.sigma_k << " nm^-1)";
    throw InvalidArgument(os.str());
  }

  p.dkappa = 7.0 * p.sigma_k / static_cast<double>(modes - 1);
  p.kappa.resize(modes);
  p.c.resize(modes);
  p.E.resize(modes);
  const double amp = 1.0 / std::sqrt(p.sigma_k * std::sqrt(std::numbers::pi));
  double norm = 0.0;
  for (std::size_t n = 0; n < modes; ++n) {
    p.kappa[n] = lowest + static_cast<double>(n) * p.dkappa;
    const double u = (p.kappa[n] - p.kappa0) / p.sigma_k;
    p.c[n] = amp * std::exp(-0.5 * u * u);
    p.E[n] = (p.kappa[n] / ctx.phi) * (p.kappa[n] / ctx.phi);
    norm += p.c[n] * p.c[n] * p.dkappa;
  }
  const double renorm = 1.0 / std::sqrt(norm);
  for (double& c : p.c) c *= renorm;

  p.t_max = kPlanck / (2.0 * (p.E[modes - 1] - p.E[modes - 2]));
  p.group_velocity = ctx.group_velocity(p.kappa0);
  return p;
}

ModeCache precompute_modes(const DiscretizedPotential& dp, const WavePacket& packet,
                           const ParticleContext& ctx, unsigned threads) {
  ModeCache cache;
  cache.x = dp.x;
  cache.modes.resize(packet.E.size());
  parallel_for(packet.E.size(), threads,
               [&](std::size_t n) { cache.modes[n] = left_sweep(dp, packet.E[n], ctx); });
  return cache;
}

PacketEvolver::PacketEvolver(const WavePacket& packet, const ModeCache& cache,
                             std::span<const double> xs)
    : x_(xs.begin(), xs.end()), energies_(packet.E), t_max_(packet.t_max) {
  const std::vector<double>& grid = cache.x;
  std::vector<std::size_t> step(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= grid.front() && xs[i] <= grid.back())) {
      std::ostringstream os;
      os << "sample x = " << xs[i] << " nm lies outside the grid [" << grid.front() << ", "
         << grid.back() << "]";
      throw InvalidArgument(os.str());
    }
    auto it = std::upper_bound(grid.begin(), grid.end(), xs[i]);
    step[i] = xs[i] >= grid.back() ? grid.size() - 1
                                   : static_cast<std::size_t>(std::distance(grid.begin(), it)) - 1;
  }

  const std::size_t m = cache.size();
  weighted_.resize(m * xs.size());
  const double measure = packet.dkappa / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t n = 0; n < m; ++n) {
    const LeftSweep& mode = cache.modes[n];
    const cplx w = measure * packet.c[n] * std::exp(-kI * packet.kappa[n] * (packet.x0 - grid.front()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const std::size_t j = step[i];
      const cplx ikx = kI * mode.k[j] * (xs[i] - grid[j]);
      cplx v = mode.A[j] * std::exp(ikx);
      if (mode.B[j] != 0.0) v += mode.B[j] * std::exp(-ikx);
      weighted_[n * xs.size() + i] = w * v;
    }
  }
}

WaveField PacketEvolver::at(double t) const {
  WaveField field;
  field.x = x_;
  field.E = std::numeric_limits<double>::quiet_NaN();
  field.psi.assign(x_.size(), cplx{});
  const std::size_t samples = x_.size();
  for (std::size_t n = 0; n < energies_.size(); ++n) {
    const cplx phase = std::exp(-kI * energies_[n] * t / kHbar);
    const cplx* row = weighted_.data() + n * samples;
    for (std::size_t i = 0; i < samples; ++i) field.psi[i] += row[i] * phase;
  }
  return field;
}

WaveField evolve(const WavePacket& packet, const ModeCache& cache, double t,
                 std::span<const double> xs) {
  return PacketEvolver(packet, cache, xs).at(t);
}

double region_probability(const WaveField& field, double a, double b) {
  if (!(a < b)) throw InvalidArgument("region requires a < b");
  const std::size_t n = field.x.size();
  double p = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = field.x[i];
    if (x < a || x > b) continue;
    double width = 0.0;
    if (n > 1) {
      const double left = i > 0 ? field.x[i - 1] : x;
      const double right = i + 1 < n ? field.x[i + 1] : x;
      width = 0.5 * (right - left);
    }
    p += std::norm(field.psi[i]) * width;
    ++used;
  }
  if (used == 0) throw InvalidArgument("no samples inside the requested region");
  return p;
}

LifetimeFit fit_lifetime(std::span<const std::pair<double, double>> samples, double t_start) {
  std::vector<double> ts, ys;
  for (const auto& [t, prob] : samples) {
    if (t < t_start) continue;
    if (!(prob > 0.0)) throw InvalidArgument("lifetime fit needs strictly positive probabilities");
    ts.push_back(t);
    ys.push_back(std::log(prob));
  }
  if (ts.size() < 3) throw InvalidArgument("lifetime fit needs at least 3 samples after t_start");

  const double count = static_cast<double>(ts.size());
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    my += ys[i];
  }
  mt /= count;
  my /= count;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - mt) * (ts[i] - mt);
    sty += (ts[i] - mt) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(stt > 0.0)) throw InvalidArgument("lifetime fit needs distinct sample times");

  const double slope = sty / stt;
  const double intercept = my - slope * mt;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = ys[i] - (intercept + slope * ts[i]);
    ss_res += r * r;
  }
  LifetimeFit fit;
  fit.points = ts.size();
  fit.tau = slope < 0.0 ? -1.0 / slope : std::numeric_limits<double>::infinity();
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

} // namespace stepwave
