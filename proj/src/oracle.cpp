#include "stepwave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stepwave/error.hpp"

namespace stepwave::oracle {

StepRT analytic_step_RT(double energy, double u_left, double u_right, const ParticleContext& ctx) {
  if (!(energy > u_left)) throw InvalidArgument("step oracle needs a propagating incident side");
  if (!(energy > u_right)) return {1.0, 0.0};
  const double kl = ctx.phi * std::sqrt(energy - u_left);
  const double kr = ctx.phi * std::sqrt(energy - u_right);
  const double r = (kl - kr) / (kl + kr);
  return {r * r, 4.0 * kl * kr / ((kl + kr) * (kl + kr))};
}

double analytic_square_barrier_T(double energy, double v0, double width, const ParticleContext& ctx) {
  if (!(energy > 0.0)) throw InvalidArgument("square-barrier oracle needs E > 0");
  if (v0 == 0.0) return 1.0;
  const double gap = energy - v0;
  if (gap == 0.0) {
    const double q = ctx.phi * width;
    return 1.0 / (1.0 + q * q * v0 / 4.0);
  }
  const double lead = v0 * v0 / (4.0 * energy * std::abs(gap));
  if (gap < 0.0) {
    const double s = std::sinh(ctx.phi * std::sqrt(-gap) * width);
    return 1.0 / (1.0 + lead * s * s);
  }
  const double s = std::sin(ctx.phi * std::sqrt(gap) * width);
  return 1.0 / (1.0 + lead * s * s);
}

namespace {

// Bisection on [lo, hi] for a sign change of g, to |dz| small enough that
// the energy error is below 1e-10 eV.
template <typename G>
double bisect(G&& g, double lo, double hi, double z_tol) {
  double glo = g(lo);
  for (int it = 0; it < 200 && hi - lo > z_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

std::vector<WellLevel> finite_well_eigenvalues(double depth, double half_width,
                                               const ParticleContext& ctx) {
  if (!(depth > 0.0) || !(half_width > 0.0))
    throw InvalidArgument("finite-well oracle needs positive depth and width");

  const double scale = ctx.phi * half_width;     // z = scale sqrt(E + depth)
  const double z0 = scale * std::sqrt(depth);
  // E = z^2/scale^2 - depth, so dE = 2 z dz / scale^2.
  const double z_tol = 1e-11 * scale * scale / (2.0 * std::max(z0, 1.0));

  auto rest = [z0](double z) { return std::sqrt(std::max(0.0, z0 * z0 - z * z)); };
  // Pole-free forms of z tan z = rest and -z cot z = rest.
  auto even = [&](double z) { return z * std::sin(z) - rest(z) * std::cos(z); };
  auto odd = [&](double z) { return z * std::cos(z) + rest(z) * std::sin(z); };

  std::vector<WellLevel> levels;
  const double half_pi = 0.5 * std::numbers::pi;
  for (int branch = 0; branch * half_pi < z0; ++branch) {
    const double lo = branch * half_pi;
    const double hi = std::min((branch + 1) * half_pi, z0);
    const bool is_even = branch % 2 == 0;
    auto g = [&](double z) { return is_even ? even(z) : odd(z); };
    if ((g(lo) < 0.0) == (g(hi) < 0.0)) continue;
    const double z = bisect(g, lo, hi, z_tol);
    levels.push_back({z * z / (scale * scale) - depth, is_even});
  }
  std::sort(levels.begin(), levels.end(),
            [](const WellLevel& a, const WellLevel& b) { return a.energy < b.energy; });
  return levels;
}

double reference_level(const ReferenceKind& kind, int n) {
  if (const auto* h = std::get_if<Harmonic>(&kind)) {
    if (n < 0) throw InvalidArgument("harmonic levels start at n = 0");
    return h->hbar_omega * (n + 0.5);
  }
  const auto& ry = std::get<Rydberg>(kind);
  if (n < 1) throw InvalidArgument("Rydberg levels start at n = 1");
  const double rydberg = ry.mass * ry.e2 * ry.e2 / (2.0 * kHbarC * kHbarC);
  return -rydberg / (static_cast<double>(n) * n);
}

} // namespace stepwave::oracle
