#ifndef STEPWAVE_GOLDEN_HPP
#define STEPWAVE_GOLDEN_HPP

#include <cmath>
#include <utility>

namespace stepwave {

struct GoldenResult {
  double x;           ///< best abscissa seen
  double fx;          ///< f(x)
  double half_width;  ///< half of the final bracket
  int evaluations;
};

/// Golden-section minimization of f on [a, b] until the bracket is no wider
/// than tol. Derivative-free, so cusp-shaped minima are fine; f must be
/// unimodal on the bracket for the result to be the true minimum.
template <typename Fn>
GoldenResult golden_section(Fn&& f, double a, double b, double tol) {
  if (b < a) std::swap(a, b);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
    ++evals;
    // Interior points collapse once the bracket reaches rounding level.
    if (!(c < d)) break;
  }
  const bool left = fc < fd;
  return {left ? c : d, left ? fc : fd, 0.5 * (b - a), evals};
}

} // namespace stepwave

#endif
