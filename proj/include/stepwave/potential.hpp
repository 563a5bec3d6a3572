#ifndef STEPWAVE_POTENTIAL_HPP
#define STEPWAVE_POTENTIAL_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stepwave/expr.hpp"

namespace stepwave {

using ParameterMap = std::map<std::string, double>;

/// One piece of a piecewise expression, valid on [lower, upper).
/// Infinite bounds are allowed.
struct ExpressionPiece {
  double lower;
  double upper;
  Expr expr;
};

struct TableSample {
  double x;
  double u;
};

/// Abstract potential energy U(x) in eV, x in nm.
///
/// Three sources: a named closed form, a list of expression pieces, or a
/// zero-order-hold table. Immutable and cheap to copy.
class PotentialSpec {
public:
  enum class Kind { builtin, expression, table };

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  /// Throws EvaluationError when x is outside the covered range.
  double operator()(double x) const { return eval_(x); }

  /// Known builtin names and their parameters:
  ///
  ///   lennard_jones        A, B, mass, J (default 0)
  ///   double_well          A_left, A_right, B, C, delta, alpha, a (default 0)
  ///   square_barrier       V0, width, center (default 0)
  ///   double_barrier_vwell height, barrier_width, well_width, depth, center (default 0)
  ///   coulomb_trunc        epsilon, e2 (default 1.44)
  ///
  /// Throws InvalidArgument for unknown names, missing or unknown parameters.
  static PotentialSpec builtin(const std::string& name, const ParameterMap& params);

  /// Pieces must be contiguous and non-overlapping, in any order.
  static PotentialSpec pieces(std::vector<ExpressionPiece> pieces);

  static PotentialSpec table(std::vector<TableSample> rows);

  static PotentialSpec constant(double value);

private:
  PotentialSpec(Kind kind, std::string name, std::function<double(double)> eval)
      : kind_(kind), name_(std::move(name)), eval_(std::move(eval)) {}

  Kind kind_;
  std::string name_;
  std::function<double(double)> eval_;
};

/// Names accepted by PotentialSpec::builtin().
std::vector<std::string> builtin_names();

/// The required and optional parameter names of a builtin.
std::pair<std::vector<std::string>, std::vector<std::string>>
builtin_parameters(const std::string& name);

inline PotentialSpec make_builtin(const std::string& name, const ParameterMap& params) {
  return PotentialSpec::builtin(name, params);
}

/// Zero-order hold: value of the last sample at or below x, clamped to the
/// end values outside the table. Needs >= 2 rows with strictly increasing x.
inline PotentialSpec load_table(std::vector<TableSample> rows) {
  return PotentialSpec::table(std::move(rows));
}

/// Two whitespace-separated columns (x in nm, U in eV); '#' starts a
/// comment, blank lines are skipped.
std::vector<TableSample> read_table(std::istream& in);
std::vector<TableSample> read_table_file(const std::string& path);

/// Step representation of U(x): U(x) = u[j] on [x[j], x[j+1]), j = 0..N,
/// with the last step extending to +infinity and the first extended to
/// -infinity.
struct DiscretizedPotential {
  std::vector<double> x;   ///< N+1 nodes, strictly increasing
  std::vector<double> u;   ///< U(x_j), one per node
  std::vector<double> dx;  ///< x[j+1]-x[j]; dx[N] repeats dx[N-1]

  /// Number of steps N (nodes minus one).
  std::size_t steps() const noexcept { return x.size() - 1; }

  /// Builds from explicit nodes; throws InvalidArgument unless there are at
  /// least 3 strictly increasing nodes with matching u values.
  static DiscretizedPotential from_nodes(std::vector<double> x, std::vector<double> u);

  /// Index j with x[j] <= pos < x[j+1]; pos == x[N] maps to N.
  std::size_t step_of(double pos) const;
};

/// Uniform grid x_j = x0 + j (xN-x0)/N, sampled at the left node of each
/// step. Throws InvalidArgument for a bad grid and EvaluationError if the
/// spec fails or yields a non-finite value at a node.
DiscretizedPotential discretize(const PotentialSpec& spec, double x0, double xN, std::size_t n);

/// Writes the nodes as a two-column table readable by read_table().
void write_table(const DiscretizedPotential& dp, std::ostream& out);

} // namespace stepwave

#endif
