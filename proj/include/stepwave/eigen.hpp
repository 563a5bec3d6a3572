#ifndef STEPWAVE_EIGEN_HPP
#define STEPWAVE_EIGEN_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stepwave/recursion.hpp"

namespace stepwave {

/// Closed range of node positions [lower, upper] in nm.
struct Interval {
  double lower;
  double upper;
};

struct MismatchCurve {
  std::vector<double> E;
  std::vector<double> f;  ///< +infinity where no step in range is allowed
  std::optional<Interval> interval;
};

struct EigenCandidate {
  double energy;
  double uncertainty;  ///< half the final refinement bracket
  double residual;     ///< mismatch at `energy`
};

struct EigenSearchOptions {
  std::optional<Interval> interval;
  /// Refinement bracket width; 0 selects dE/100 of the scan grid.
  double refine_tol = 0.0;
  /// A refined dip counts as f = 0 below this fraction of the scan median.
  double acceptance_ratio = 1e-3;
  unsigned threads = 1;
};

struct EigenScan {
  MismatchCurve curve;
  double median = 0.0;  ///< median of the finite f values
  double refine_tol = 0.0;
  std::vector<EigenCandidate> eigenvalues;  ///< accepted, sorted by energy
};

/// Bound-state wave function assembled from both sweeps.
///
/// On step j >= h it is the left-incidence form with origin x_j, on step
/// j < h the right-incidence form with origin x_{j+1}:
///
///     psi_j(x) = forward[j] e^{ik_j(x-origin[j])} + backward[j] e^{-ik_j(x-origin[j])}
///
/// The coefficients are normalized so that sum_j |psi(x_j)|^2 dx_j = 1.
struct Eigenpair {
  double energy = 0.0;
  double residual = 0.0;
  std::size_t match_index = 0;
  std::vector<double> x;
  std::vector<cplx> psi;  ///< normalized node values
  double norm_check = 0.0;

  std::vector<cplx> k;
  std::vector<cplx> forward;
  std::vector<cplx> backward;
  std::vector<double> origin;

  /// psi_j(x) using the formula of step j (x need not lie inside it).
  cplx evaluate(double pos, std::size_t step) const;
  /// d psi_j / dx.
  cplx derivative(double pos, std::size_t step) const;
};

/// Node index range covered by an interval (all nodes when absent).
std::pair<std::size_t, std::size_t> node_range(const DiscretizedPotential& dp,
                                               const std::optional<Interval>& interval);

/// Splits the grid at x_b: [x_0, x_b'] and [x_{b'+1}, x_N], where x_b' is
/// the last node at or below x_b.
std::pair<Interval, Interval> split_interval(const DiscretizedPotential& dp, double xb);

/// f(E) = sum_j |Rbar_j R_{j+1} - e^{2ik_j dx_j}| over steps with U_j < E
/// inside the interval; +infinity when there is none.
double mismatch(const DiscretizedPotential& dp, double energy, const ParticleContext& ctx,
                const std::optional<Interval>& interval = std::nullopt);

MismatchCurve mismatch_curve(const DiscretizedPotential& dp, std::span<const double> energies,
                             const ParticleContext& ctx,
                             const std::optional<Interval>& interval = std::nullopt,
                             unsigned threads = 1);

/// Equally spaced grid Emin..Emax with n points (both ends included).
std::vector<double> energy_grid(double emin, double emax, std::size_t n);

/// Scans f(E) on energy_grid(emin, emax, n), refines each interior local
/// minimum by golden section and keeps those below the acceptance
/// threshold. Throws InvalidArgument if emin >= emax or n < 3.
EigenScan scan_eigenvalues(const DiscretizedPotential& dp, double emin, double emax, std::size_t n,
                           const ParticleContext& ctx, const EigenSearchOptions& options = {});

inline std::vector<EigenCandidate> find_eigenvalues(const DiscretizedPotential& dp, double emin,
                                                    double emax, std::size_t n,
                                                    const ParticleContext& ctx,
                                                    const EigenSearchOptions& options = {}) {
  return scan_eigenvalues(dp, emin, emax, n, ctx, options).eigenvalues;
}

struct EigenfunctionOptions {
  std::optional<Interval> interval;
  /// Overrides the default matching step (lowest U_j among allowed steps).
  std::optional<std::size_t> match_index;
};

/// Matched, normalized eigenfunction at `energy`. The residual is reported
/// whether or not `energy` is a true eigenvalue. Throws NumericalError when
/// no step in the interval is classically allowed.
Eigenpair eigenfunction(const DiscretizedPotential& dp, double energy, const ParticleContext& ctx,
                        const EigenfunctionOptions& options = {});

/// Node values rotated by the global phase that makes them as real as
/// possible, real parts returned.
std::vector<double> real_profile(const Eigenpair& pair);

/// Sign changes of real_profile(), ignoring samples below
/// rel_threshold * max|psi|.
int count_nodes(const Eigenpair& pair, double rel_threshold = 1e-6);

/// sum psi_j psi_{N-j} / sum psi_j^2: +1 for even, -1 for odd states on a
/// grid symmetric about its midpoint.
double parity(const Eigenpair& pair);

} // namespace stepwave

#endif
