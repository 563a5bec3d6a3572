#ifndef STEPWAVE_ERROR_HPP
#define STEPWAVE_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stepwave {

/// Bad argument or violated precondition (non-positive mass, empty grid, ...).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax or name error while reading a potential expression.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// A potential could not be evaluated at some point (outside a table or
/// piece range, non-finite value).
class EvaluationError : public std::runtime_error {
public:
  EvaluationError(const std::string& what, double x)
      : std::runtime_error(what), x_(x) {}

  double x() const noexcept { return x_; }

private:
  double x_;
};

/// Failure inside the recursion: a vanishing denominator, or an energy for
/// which the requested quantity is undefined. Carries the energy and, when
/// known, the offending step index.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double energy,
                 std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(describe(what, energy, step)),
        energy_(energy), step_(step) {}

  double energy() const noexcept { return energy_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

private:
  static std::string describe(const std::string& what, double energy,
                              std::optional<std::size_t> step);

  double energy_;
  std::optional<std::size_t> step_;
};

/// Run-configuration problems, all of them collected before reporting.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
  std::vector<std::string> problems_;
};

/// Filesystem failure; message includes the path.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace stepwave

#endif
