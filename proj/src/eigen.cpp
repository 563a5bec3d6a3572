#include "stepwave/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stepwave/error.hpp"
#include "stepwave/golden.hpp"
#include "stepwave/parallel.hpp"

namespace stepwave {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

double median_of_finite(const std::vector<double>& values) {
  std::vector<double> finite;
  for (double v : values)
    if (std::isfinite(v)) finite.push_back(v);
  if (finite.empty()) return kInf;
  const std::size_t mid = finite.size() / 2;
  std::nth_element(finite.begin(), finite.begin() + static_cast<std::ptrdiff_t>(mid), finite.end());
  double m = finite[mid];
  if (finite.size() % 2 == 0) {
    const double lower = *std::max_element(finite.begin(), finite.begin() + static_cast<std::ptrdiff_t>(mid));
    m = 0.5 * (m + lower);
  }
  return m;
}

// Merges accepted minima closer than 2*tol unless the scan shows a clear
// barrier (some grid f at least 10x both residuals) between them.
std::vector<EigenCandidate> merge_close(std::vector<EigenCandidate> found, const MismatchCurve& curve,
                                        double tol) {
  std::sort(found.begin(), found.end(),
            [](const EigenCandidate& a, const EigenCandidate& b) { return a.energy < b.energy; });
  std::vector<EigenCandidate> out;
  for (const auto& cand : found) {
    if (!out.empty() && cand.energy - out.back().energy < 2.0 * tol) {
      const EigenCandidate& prev = out.back();
      const double wall = 10.0 * std::max(prev.residual, cand.residual);
      bool separated = false;
      for (std::size_t i = 0; i < curve.E.size(); ++i)
        if (curve.E[i] > prev.energy && curve.E[i] < cand.energy && curve.f[i] >= wall)
          separated = true;
      if (!separated) {
        if (cand.residual < prev.residual) out.back() = cand;
        continue;
      }
    }
    out.push_back(cand);
  }
  return out;
}

} // namespace

cplx Eigenpair::evaluate(double pos, std::size_t step) const {
  const cplx ikx = kI * k[step] * (pos - origin[step]);
  cplx v = 0.0;
  if (forward[step] != 0.0) v += forward[step] * std::exp(ikx);
  if (backward[step] != 0.0) v += backward[step] * std::exp(-ikx);
  return v;
}

cplx Eigenpair::derivative(double pos, std::size_t step) const {
  const cplx ikx = kI * k[step] * (pos - origin[step]);
  cplx v = 0.0;
  if (forward[step] != 0.0) v += forward[step] * std::exp(ikx);
  if (backward[step] != 0.0) v -= backward[step] * std::exp(-ikx);
  return kI * k[step] * v;
}

std::pair<std::size_t, std::size_t> node_range(const DiscretizedPotential& dp,
                                               const std::optional<Interval>& interval) {
  if (!interval) return {0, dp.steps()};
  auto lo = std::lower_bound(dp.x.begin(), dp.x.end(), interval->lower);
  auto hi = std::upper_bound(dp.x.begin(), dp.x.end(), interval->upper);
  const auto first = static_cast<std::size_t>(std::distance(dp.x.begin(), lo));
  const auto end = static_cast<std::size_t>(std::distance(dp.x.begin(), hi));
  if (end == 0 || first >= end) return {1, 0};  // empty
  return {first, end - 1};
}

std::pair<Interval, Interval> split_interval(const DiscretizedPotential& dp, double xb) {
  const std::size_t n = dp.steps();
  if (!(xb >= dp.x.front() && xb < dp.x.back()))
    throw InvalidArgument("split point must lie inside [x_0, x_N)");
  std::size_t b = dp.step_of(xb);
  b = std::min(b, n - 1);
  return {Interval{dp.x.front(), dp.x[b]}, Interval{dp.x[b + 1], dp.x.back()}};
}

double mismatch(const DiscretizedPotential& dp, double energy, const ParticleContext& ctx,
                const std::optional<Interval>& interval) {
  const auto [first, last] = node_range(dp, interval);
  bool any = false;
  for (std::size_t j = first; j <= last && j < dp.u.size(); ++j)
    if (dp.u[j] < energy) any = true;
  if (!any) return kInf;

  const ReflectionPair p = reflection_sweeps(dp, energy, ctx);
  double f = 0.0;
  for (std::size_t j = first; j <= last; ++j) {
    if (!(dp.u[j] < energy)) continue;
    f += std::abs(p.Rbar[j] * p.R[j + 1] - std::exp(2.0 * kI * p.k[j] * dp.dx[j]));
  }
  return f;
}

MismatchCurve mismatch_curve(const DiscretizedPotential& dp, std::span<const double> energies,
                             const ParticleContext& ctx, const std::optional<Interval>& interval,
                             unsigned threads) {
  MismatchCurve curve;
  curve.E.assign(energies.begin(), energies.end());
  curve.f.resize(energies.size());
  curve.interval = interval;
  parallel_for(energies.size(), threads,
               [&](std::size_t i) { curve.f[i] = mismatch(dp, energies[i], ctx, interval); });
  return curve;
}

std::vector<double> energy_grid(double emin, double emax, std::size_t n) {
  if (n < 2) throw InvalidArgument("an energy grid needs at least two points");
  std::vector<double> e(n);
  const double de = (emax - emin) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) e[i] = (i + 1 == n) ? emax : emin + static_cast<double>(i) * de;
  return e;
}

EigenScan scan_eigenvalues(const DiscretizedPotential& dp, double emin, double emax, std::size_t n,
                           const ParticleContext& ctx, const EigenSearchOptions& options) {
  if (!(emin < emax)) throw InvalidArgument("eigenvalue search requires Emin < Emax");
  if (n < 3) throw InvalidArgument("eigenvalue search requires at least 3 scan energies");

  EigenScan scan;
  const std::vector<double> energies = energy_grid(emin, emax, n);
  scan.curve = mismatch_curve(dp, energies, ctx, options.interval, options.threads);
  scan.median = median_of_finite(scan.curve.f);
  const double de = (emax - emin) / static_cast<double>(n - 1);
  scan.refine_tol = options.refine_tol > 0.0 ? options.refine_tol : de / 100.0;
  if (!std::isfinite(scan.median)) return scan;

  const auto& f = scan.curve.f;
  std::vector<std::size_t> dips;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // Both neighbours must be finite: the rise of f away from the bottom of
    // a well is not a dip.
    if (std::isfinite(f[i - 1]) && std::isfinite(f[i + 1]) && f[i] < f[i - 1] && f[i] < f[i + 1])
      dips.push_back(i);
  }

  std::vector<EigenCandidate> found(dips.size());
  parallel_for(dips.size(), options.threads, [&](std::size_t d) {
    const std::size_t i = dips[d];
    auto fn = [&](double e) { return mismatch(dp, e, ctx, options.interval); };
    const GoldenResult g = golden_section(fn, energies[i - 1], energies[i + 1], scan.refine_tol);
    if (g.fx <= f[i]) found[d] = {g.x, g.half_width, g.fx};
    else found[d] = {energies[i], g.half_width, f[i]};
  });

  std::vector<EigenCandidate> accepted;
  const double threshold = options.acceptance_ratio * scan.median;
  for (const auto& c : found)
    if (c.residual < threshold) accepted.push_back(c);
  scan.eigenvalues = merge_close(std::move(accepted), scan.curve, scan.refine_tol);
  return scan;
}

Eigenpair eigenfunction(const DiscretizedPotential& dp, double energy, const ParticleContext& ctx,
                        const EigenfunctionOptions& options) {
  const std::size_t n = dp.steps();
  const auto [first, last] = node_range(dp, options.interval);

  std::optional<std::size_t> lowest;
  for (std::size_t j = first; j <= last && j <= n; ++j)
    if (dp.u[j] < energy && (!lowest || dp.u[j] < dp.u[*lowest])) lowest = j;
  if (!lowest) throw NumericalError("no classically allowed step for this energy", energy);

  std::size_t h = options.match_index.value_or(*lowest);
  if (h > n) throw InvalidArgument("matching index outside the grid");
  h = std::clamp<std::size_t>(h, 1, n);

  const LeftSweep ls = left_sweep(dp, energy, ctx);
  const RightSweep rs = right_sweep(dp, energy, ctx);

  Eigenpair pair;
  pair.energy = energy;
  pair.match_index = h;
  pair.x = dp.x;
  pair.k = ls.k;
  pair.forward.assign(n + 1, cplx{});
  pair.backward.assign(n + 1, cplx{});
  pair.origin.assign(n + 1, 0.0);
  pair.psi.assign(n + 1, cplx{});

  // Right of the matching point: left-incidence solution with A_h = 1.
  cplx a = 1.0;
  for (std::size_t j = h; j <= n; ++j) {
    if (j > h) a *= ls.T[j];
    pair.forward[j] = a;
    pair.backward[j] = a * ls.R[j + 1];
    pair.origin[j] = dp.x[j];
    pair.psi[j] = pair.forward[j] + pair.backward[j];
  }

  // Left of it: right-incidence solution scaled so both agree at x_h.
  const cplx denom = 1.0 + rs.Rbar[h - 1];
  if (std::abs(denom) < 1e-300)
    throw NumericalError("matching relation is singular at this step", energy, h);
  cplx d = (1.0 + ls.R[h + 1]) / denom;  // D_h
  for (std::size_t j = h; j >= 1; --j) {
    if (j < h) d *= rs.Tbar[j];
    const cplx c = d * rs.Rbar[j - 1];  // C_j
    pair.forward[j - 1] = c;
    pair.backward[j - 1] = d;
    pair.origin[j - 1] = dp.x[j];
    if (j < h) pair.psi[j] = c + d;
  }
  pair.psi[0] = pair.backward[0] * std::exp(kI * pair.k[0] * dp.dx[0]);
  if (pair.forward[0] != 0.0) pair.psi[0] += pair.forward[0] * std::exp(-kI * pair.k[0] * dp.dx[0]);

  double s = 0.0;
  for (std::size_t j = 0; j <= n; ++j) s += std::norm(pair.psi[j]) * dp.dx[j];
  const double scale = 1.0 / std::sqrt(s);
  for (std::size_t j = 0; j <= n; ++j) {
    pair.psi[j] *= scale;
    pair.forward[j] *= scale;
    pair.backward[j] *= scale;
  }
  pair.norm_check = 0.0;
  for (std::size_t j = 0; j <= n; ++j) pair.norm_check += std::norm(pair.psi[j]) * dp.dx[j];

  pair.residual = mismatch(dp, energy, ctx, options.interval);
  return pair;
}

std::vector<double> real_profile(const Eigenpair& pair) {
  cplx sq = 0.0;
  for (const cplx& v : pair.psi) sq += v * v;
  const cplx rot = std::polar(1.0, -0.5 * std::arg(sq));
  std::vector<double> out(pair.psi.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (pair.psi[j] * rot).real();
  return out;
}

int count_nodes(const Eigenpair& pair, double rel_threshold) {
  const std::vector<double> re = real_profile(pair);
  double peak = 0.0;
  for (double v : re) peak = std::max(peak, std::abs(v));
  const double floor = rel_threshold * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : re) {
    if (std::abs(v) < floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

double parity(const Eigenpair& pair) {
  const std::size_t n = pair.psi.size();
  cplx mirror = 0.0, self = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    mirror += pair.psi[j] * pair.psi[n - 1 - j];
    self += pair.psi[j] * pair.psi[j];
  }
  return (mirror / self).real();
}

} // namespace stepwave
