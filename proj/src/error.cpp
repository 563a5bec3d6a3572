#include "stepwave/error.hpp"

#include <sstream>

namespace stepwave {

std::string NumericalError::describe(const std::string& what, double energy,
                                     std::optional<std::size_t> step) {
  std::ostringstream os;
  os.precision(12);
  os << what << " (E = " << energy << " eV";
  if (step) os << ", step " << *step;
  os << ")";
  return os.str();
}

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration:";
  for (const auto& p : problems) out += "\n  - " + p;
  return out;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

} // namespace stepwave
