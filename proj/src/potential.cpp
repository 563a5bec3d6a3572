#include "stepwave/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "stepwave/constants.hpp"
#include "stepwave/error.hpp"

namespace stepwave {

namespace {

// Region edges are shifted left by this much so that grid nodes landing a
// rounding error away from an edge still see the half-open [lo, hi) rule.
constexpr double kEdgeSlack = 1e-9;

bool in_range(double x, double lo, double hi) {
  return x >= lo - kEdgeSlack && x < hi - kEdgeSlack;
}

struct BuiltinInfo {
  std::vector<std::string> required;
  ParameterMap optional;  // name -> default
};

const std::map<std::string, BuiltinInfo>& builtin_table() {
  static const std::map<std::string, BuiltinInfo> table = {
      {"lennard_jones", {{"A", "B", "mass"}, {{"J", 0.0}}}},
      {"double_well", {{"A_left", "A_right", "B", "C", "delta", "alpha"}, {{"a", 0.0}}}},
      {"square_barrier", {{"V0", "width"}, {{"center", 0.0}}}},
      {"double_barrier_vwell",
       {{"height", "barrier_width", "well_width", "depth"}, {{"center", 0.0}}}},
      {"coulomb_trunc", {{"epsilon"}, {{"e2", kCoulombE2}}}},
  };
  return table;
}

ParameterMap resolve(const std::string& name, const ParameterMap& given) {
  auto it = builtin_table().find(name);
  if (it == builtin_table().end())
    throw InvalidArgument("unknown builtin potential '" + name + "'");
  const BuiltinInfo& info = it->second;

  ParameterMap out = info.optional;
  std::vector<std::string> missing;
  for (const auto& req : info.required) {
    auto p = given.find(req);
    if (p == given.end()) missing.push_back(req);
    else out[req] = p->second;
  }
  for (const auto& [key, value] : given) {
    bool known = info.optional.count(key) ||
                 std::find(info.required.begin(), info.required.end(), key) != info.required.end();
    if (!known) throw InvalidArgument("builtin '" + name + "' has no parameter '" + key + "'");
    out[key] = value;
  }
  if (!missing.empty()) {
    std::string msg = "builtin '" + name + "' is missing parameter(s):";
    for (const auto& m : missing) msg += " " + m;
    throw InvalidArgument(msg);
  }
  return out;
}

std::function<double(double)> make_lennard_jones(const ParameterMap& p) {
  const double a = p.at("A"), b = p.at("B"), j = p.at("J");
  const double phi = phi_factor(p.at("mass"));
  const double rot = j * (j + 1.0) / (phi * phi);
  return [=](double x) {
    const double x2 = x * x;
    const double x6 = x2 * x2 * x2;
    return a / (x6 * x6) - b / x6 + rot / x2;
  };
}

std::function<double(double)> make_double_well(const ParameterMap& p) {
  const double al = p.at("A_left"), ar = p.at("A_right"), b = p.at("B"), c = p.at("C");
  const double a = p.at("a"), delta = p.at("delta"), alpha = p.at("alpha");
  if (!(alpha > 0.0)) throw InvalidArgument("double_well: alpha must be positive");
  return [=](double x) {
    const double y = x - a;
    const double g = (y - delta) / alpha;
    return (x <= a ? al : ar) * y * y + b * std::exp(-g * g) + c;
  };
}

std::function<double(double)> make_square_barrier(const ParameterMap& p) {
  const double v0 = p.at("V0"), w = p.at("width"), c = p.at("center");
  if (!(w > 0.0)) throw InvalidArgument("square_barrier: width must be positive");
  return [=](double x) { return in_range(x, c - 0.5 * w, c + 0.5 * w) ? v0 : 0.0; };
}

std::function<double(double)> make_double_barrier(const ParameterMap& p) {
  const double h = p.at("height"), bw = p.at("barrier_width");
  const double ww = p.at("well_width"), depth = p.at("depth"), c = p.at("center");
  if (!(bw > 0.0) || !(ww > 0.0))
    throw InvalidArgument("double_barrier_vwell: widths must be positive");
  const double half = 0.5 * ww;
  return [=](double x) {
    const double y = x - c;
    if (in_range(y, -half, half)) return -depth * (1.0 - std::abs(y) / half);
    if (in_range(y, -half - bw, -half) || in_range(y, half, half + bw)) return h;
    return 0.0;
  };
}

std::function<double(double)> make_coulomb(const ParameterMap& p) {
  const double e2 = p.at("e2"), eps = std::abs(p.at("epsilon"));
  return [=](double x) { return -e2 / (std::abs(x) + eps); };
}

} // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& [name, info] : builtin_table()) names.push_back(name);
  return names;
}

std::pair<std::vector<std::string>, std::vector<std::string>>
builtin_parameters(const std::string& name) {
  auto it = builtin_table().find(name);
  if (it == builtin_table().end())
    throw InvalidArgument("unknown builtin potential '" + name + "'");
  std::vector<std::string> optional;
  for (const auto& [key, value] : it->second.optional) optional.push_back(key);
  return {it->second.required, optional};
}

PotentialSpec PotentialSpec::builtin(const std::string& name, const ParameterMap& params) {
  const ParameterMap p = resolve(name, params);
  std::function<double(double)> eval;
  if (name == "lennard_jones") eval = make_lennard_jones(p);
  else if (name == "double_well") eval = make_double_well(p);
  else if (name == "square_barrier") eval = make_square_barrier(p);
  else if (name == "double_barrier_vwell") eval = make_double_barrier(p);
  else eval = make_coulomb(p);
  return PotentialSpec(Kind::builtin, name, std::move(eval));
}

PotentialSpec PotentialSpec::pieces(std::vector<ExpressionPiece> pieces) {
  if (pieces.empty()) throw InvalidArgument("expression potential needs at least one piece");
  std::sort(pieces.begin(), pieces.end(),
            [](const ExpressionPiece& a, const ExpressionPiece& b) { return a.lower < b.lower; });
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].lower < pieces[i].upper))
      throw InvalidArgument("expression piece " + std::to_string(i) + " has an empty range");
    if (i > 0 && pieces[i].lower != pieces[i - 1].upper)
      throw InvalidArgument("expression pieces must be contiguous without overlap");
  }
  auto eval = [pieces = std::move(pieces)](double x) {
    // Pieces are sorted and contiguous: first piece whose upper bound exceeds x.
    auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                               [](double v, const ExpressionPiece& p) { return v < p.upper; });
    if (it == pieces.end() || x < it->lower) {
      std::ostringstream os;
      os << "x = " << x << " nm is outside the expression pieces";
      throw EvaluationError(os.str(), x);
    }
    return it->expr(x);
  };
  return PotentialSpec(Kind::expression, "expression", std::move(eval));
}

PotentialSpec PotentialSpec::table(std::vector<TableSample> rows) {
  if (rows.size() < 2) throw InvalidArgument("a potential table needs at least two rows");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].x > rows[i - 1].x))
      throw InvalidArgument("table x values must be strictly increasing (row " +
                            std::to_string(i) + ")");
  }
  auto eval = [rows = std::move(rows)](double x) {
    auto it = std::upper_bound(rows.begin(), rows.end(), x,
                               [](double v, const TableSample& s) { return v < s.x; });
    if (it == rows.begin()) return rows.front().u;
    return std::prev(it)->u;
  };
  return PotentialSpec(Kind::table, "table", std::move(eval));
}

PotentialSpec PotentialSpec::constant(double value) {
  return PotentialSpec(Kind::expression, "constant", [value](double) { return value; });
}

std::vector<TableSample> read_table(std::istream& in) {
  std::vector<TableSample> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double x = 0.0, u = 0.0;
    if (!(fields >> x)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InvalidArgument("table line " + std::to_string(lineno) + ": expected two numbers");
    }
    std::string extra;
    if (!(fields >> u) || (fields >> extra))
      throw InvalidArgument("table line " + std::to_string(lineno) + ": expected two numbers");
    rows.push_back({x, u});
  }
  return rows;
}

std::vector<TableSample> read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open potential table '" + path + "'");
  try {
    return read_table(in);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

DiscretizedPotential DiscretizedPotential::from_nodes(std::vector<double> x, std::vector<double> u) {
  if (x.size() < 3) throw InvalidArgument("a discretized potential needs at least two steps");
  if (x.size() != u.size()) throw InvalidArgument("node and value arrays differ in length");
  DiscretizedPotential dp;
  dp.dx.resize(x.size());
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    dp.dx[j] = x[j + 1] - x[j];
    if (!(dp.dx[j] > 0.0)) throw InvalidArgument("grid nodes must be strictly increasing");
  }
  dp.dx.back() = dp.dx[x.size() - 2];
  dp.x = std::move(x);
  dp.u = std::move(u);
  return dp;
}

std::size_t DiscretizedPotential::step_of(double pos) const {
  if (pos >= x.back()) return steps();
  auto it = std::upper_bound(x.begin(), x.end(), pos);
  return static_cast<std::size_t>(std::distance(x.begin(), it)) - 1;
}

DiscretizedPotential discretize(const PotentialSpec& spec, double x0, double xN, std::size_t n) {
  if (!(x0 < xN)) throw InvalidArgument("grid requires x0 < xN");
  if (n < 2) throw InvalidArgument("grid requires N >= 2 steps");
  std::vector<double> x(n + 1), u(n + 1);
  const double h = (xN - x0) / static_cast<double>(n);
  for (std::size_t j = 0; j <= n; ++j) {
    x[j] = (j == n) ? xN : x0 + static_cast<double>(j) * h;
    u[j] = spec(x[j]);
    if (!std::isfinite(u[j])) {
      std::ostringstream os;
      os << "potential is not finite at x = " << x[j] << " nm (node " << j << ")";
      throw EvaluationError(os.str(), x[j]);
    }
  }
  return DiscretizedPotential::from_nodes(std::move(x), std::move(u));
}

void write_table(const DiscretizedPotential& dp, std::ostream& out) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "# x_nm U_eV\n";
  for (std::size_t j = 0; j < dp.x.size(); ++j) out << dp.x[j] << ' ' << dp.u[j] << '\n';
  out.precision(old);
}

} // namespace stepwave
