#include "stepwave/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stepwave/error.hpp"

namespace stepwave {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reads typed fields from one JSON object, recording every problem under a
// dotted path and remembering which keys were consumed.
class Section {
public:
  Section(const json* node, std::string path, std::vector<std::string>& problems)
      : node_(node), path_(std::move(path)), problems_(problems) {
    if (node_ && !node_->is_object()) {
      fail("", "must be an object");
      node_ = nullptr;
    }
  }

  bool valid() const { return node_ != nullptr; }
  bool has(const std::string& key) const { return node_ && node_->contains(key); }

  const json* raw(const std::string& key, bool required) {
    if (!node_) return nullptr;
    used_.insert(key);
    auto it = node_->find(key);
    if (it == node_->end()) {
      if (required) fail(key, "is required");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const std::string& key, bool required = true) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      fail(key, "must be a number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<std::size_t> count(const std::string& key, std::size_t minimum, bool required = true) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_number_integer() || v->get<long long>() < static_cast<long long>(minimum)) {
      fail(key, "must be an integer >= " + std::to_string(minimum));
      return std::nullopt;
    }
    return static_cast<std::size_t>(v->get<long long>());
  }

  std::optional<std::string> text(const std::string& key, bool required = true) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      fail(key, "must be a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<bool> flag(const std::string& key) {
    const json* v = raw(key, false);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      fail(key, "must be true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<Interval> interval(const std::string& key) {
    const json* v = raw(key, false);
    if (!v) return std::nullopt;
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
      fail(key, "must be [lower, upper]");
      return std::nullopt;
    }
    const Interval iv{(*v)[0].get<double>(), (*v)[1].get<double>()};
    if (!(iv.lower < iv.upper)) {
      fail(key, "needs lower < upper");
      return std::nullopt;
    }
    return iv;
  }

  std::optional<std::vector<double>> numbers(const std::string& key, bool required = true) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (v->is_number()) return std::vector<double>{v->get<double>()};
    if (!v->is_array() || v->empty()) {
      fail(key, "must be a number or a non-empty array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& e : *v) {
      if (!e.is_number()) {
        fail(key, "must contain only numbers");
        return std::nullopt;
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  Section child(const std::string& key, bool required = true) {
    return Section(raw(key, required), join(key), problems_);
  }

  void fail(const std::string& key, const std::string& what) const {
    problems_.push_back(join(key) + " " + what);
  }

  std::string join(const std::string& key) const {
    if (key.empty()) return path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  // Unknown keys are hard errors.
  void finish() const {
    if (!node_) return;
    for (const auto& [key, value] : node_->items())
      if (!used_.count(key)) fail(key, "is not a recognized key");
  }

private:
  const json* node_;
  std::string path_;
  std::vector<std::string>& problems_;
  std::set<std::string> used_;
};

std::string number_text(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void read_potential(Section& top, RunConfig& cfg, const std::filesystem::path& base_dir,
                    std::optional<double> particle_mass, std::vector<std::string>& problems) {
  Section pot = top.child("potential");
  if (!pot.valid()) return;
  const int sources = pot.has("builtin") + pot.has("expression") + pot.has("table");
  if (sources != 1) {
    pot.fail("", "must contain exactly one of builtin, expression, table");
    pot.raw("builtin", false);
    pot.raw("expression", false);
    pot.raw("table", false);
    pot.finish();
    return;
  }

  try {
    if (pot.has("builtin")) {
      Section b = pot.child("builtin");
      const auto name = b.text("name");
      ParameterMap params;
      if (const json* p = b.raw("params", false)) {
        if (!p->is_object()) {
          b.fail("params", "must be an object of numbers");
        } else {
          for (const auto& [key, value] : p->items()) {
            if (value.is_number()) params[key] = value.get<double>();
            else b.fail("params." + key, "must be a number");
          }
        }
      }
      b.finish();
      if (name) {
        if (*name == "lennard_jones" && !params.count("mass") && particle_mass)
          params["mass"] = *particle_mass;
        cfg.potential = PotentialSpec::builtin(*name, params);
        std::string summary = "builtin " + *name;
        for (const auto& [k, v] : params) summary += " " + k + "=" + number_text(v);
        cfg.potential_summary = summary;
      }
    } else if (pot.has("expression")) {
      const json* e = pot.raw("expression", true);
      std::vector<ExpressionPiece> pieces;
      if (e->is_string()) {
        pieces.push_back({-kInf, kInf, parse_expr(e->get<std::string>())});
      } else if (e->is_array() && !e->empty()) {
        for (std::size_t i = 0; i < e->size(); ++i) {
          Section piece(&(*e)[i], "potential.expression[" + std::to_string(i) + "]", problems);
          auto bound = [&](const char* key, double fallback) -> std::optional<double> {
            const json* v = piece.raw(key, true);
            if (!v) return std::nullopt;
            if (v->is_null()) return fallback;
            if (!v->is_number()) {
              piece.fail(key, "must be a number or null");
              return std::nullopt;
            }
            return v->get<double>();
          };
          const auto lo = bound("from", -kInf);
          const auto hi = bound("to", kInf);
          const auto text = piece.text("expr");
          piece.finish();
          if (lo && hi && text) {
            try {
              pieces.push_back({*lo, *hi, parse_expr(*text)});
            } catch (const ParseError& err) {
              piece.fail("expr", err.what());
            }
          }
        }
        if (pieces.size() != e->size()) pieces.clear();
      } else {
        pot.fail("expression", "must be a string or a non-empty array of pieces");
      }
      if (!pieces.empty()) {
        cfg.potential = PotentialSpec::pieces(std::move(pieces));
        cfg.potential_summary = "expression";
      }
    } else {
      const auto path = pot.text("table");
      if (path) {
        std::filesystem::path p(*path);
        if (p.is_relative()) p = base_dir / p;
        cfg.potential = load_table(read_table_file(p.string()));
        cfg.potential_summary = "table " + *path;
      }
    }
  } catch (const ParseError& e) {
    problems.push_back(std::string("potential.expression ") + e.what());
  } catch (const InvalidArgument& e) {
    problems.push_back(std::string("potential ") + e.what());
  }
  pot.finish();
}

std::optional<EnergyScan> read_scan(Section& task, std::size_t minimum) {
  Section e = task.child("energies");
  if (!e.valid()) return std::nullopt;
  const auto lo = e.number("Emin");
  const auto hi = e.number("Emax");
  const auto n = e.count("N_E", minimum);
  e.finish();
  if (!lo || !hi || !n) return std::nullopt;
  if (!(*lo < *hi)) {
    e.fail("", "needs Emin < Emax");
    return std::nullopt;
  }
  return EnergyScan{*lo, *hi, *n};
}

SearchRegion read_region(Section& task) {
  SearchRegion r;
  r.split = task.number("split", false);
  r.interval = task.interval("interval");
  if (r.split && r.interval) task.fail("", "accepts split or interval, not both");
  return r;
}

std::vector<double> time_range(Section& series) {
  const auto start = series.number("start");
  const auto stop = series.number("stop");
  const auto step = series.number("step");
  series.finish();
  if (!start || !stop || !step) return {};
  if (!(*step > 0.0) || *stop < *start) {
    series.fail("", "needs step > 0 and stop >= start");
    return {};
  }
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((*stop - *start) / *step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(*start + static_cast<double>(i) * *step);
  return out;
}

void read_task(Section& top, RunConfig& cfg, std::vector<std::string>& problems) {
  Section task = top.child("task");
  if (!task.valid()) return;
  const auto type = task.text("type");
  if (!type) {
    task.finish();
    return;
  }
  cfg.task_name = *type;
  const std::size_t before = problems.size();

  if (*type == "transmit") {
    TransmitTask t;
    if (auto s = read_scan(task, 1)) t.energies = *s;
    if (auto m = task.text("method", false)) {
      if (*m == "amplitude") t.method = TransmissionMethod::amplitude;
      else if (*m != "product") task.fail("method", "must be product or amplitude");
    }
    cfg.task = t;
  } else if (*type == "wavefunc") {
    WavefuncTask t;
    if (auto e = task.numbers("energies")) t.energies = *e;
    cfg.task = t;
  } else if (*type == "fofe") {
    FofeTask t;
    if (auto s = read_scan(task, 2)) t.energies = *s;
    t.region = read_region(task);
    cfg.task = t;
  } else if (*type == "eigen") {
    EigenTask t;
    if (auto s = read_scan(task, 3)) t.energies = *s;
    t.region = read_region(task);
    if (auto v = task.number("refine_tol", false)) {
      if (*v > 0.0) t.refine_tol = *v;
      else task.fail("refine_tol", "must be positive");
    }
    if (auto v = task.number("acceptance_ratio", false)) {
      if (*v > 0.0) t.acceptance_ratio = *v;
      else task.fail("acceptance_ratio", "must be positive");
    }
    if (auto v = task.flag("eigenfunctions")) t.eigenfunctions = *v;
    cfg.task = t;
  } else if (*type == "packet") {
    PacketTask t;
    const auto e0 = task.number("E0");
    const bool by_energy = task.has("delta_E"), by_space = task.has("sigma_x");
    if (by_energy == by_space) task.fail("", "needs exactly one of delta_E, sigma_x");
    if (by_energy) {
      if (auto v = task.number("delta_E")) t.width = EnergyHalfRange{*v};
    } else if (by_space) {
      if (auto v = task.number("sigma_x")) t.width = SpatialWidth{*v};
    }
    const auto modes = task.count("N_E", 3);
    const auto x0 = task.number("x0");
    if (auto s = task.numbers("snapshots", false)) t.snapshots = *s;
    if (task.has("series")) {
      Section series = task.child("series");
      t.series = time_range(series);
    }
    t.region = task.interval("region");
    if (task.has("lifetime")) {
      Section life = task.child("lifetime");
      t.lifetime_start = life.number("t_start");
      life.finish();
      if (!t.region || t.series.empty()) task.fail("lifetime", "needs region and series");
    }
    if (t.snapshots.empty() && t.series.empty()) task.fail("", "needs snapshots or series");
    if (e0 && modes && x0) {
      t.e0 = *e0;
      t.modes = *modes;
      t.x0 = *x0;
      if (problems.size() == before) {
        try {
          (void)design_packet(t.e0, t.width, t.modes, t.x0, ParticleContext::from_mass(cfg.mass > 0 ? cfg.mass : 1.0));
        } catch (const InvalidArgument& err) {
          task.fail("", err.what());
        }
      }
    }
    for (double t_fs : t.snapshots)
      if (t_fs < 0.0) task.fail("snapshots", "must be non-negative times");
    cfg.task = t;
  } else {
    task.fail("type", "must be one of transmit, wavefunc, fofe, eigen, packet");
  }
  task.finish();
}

} // namespace

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }

  std::vector<std::string> problems;
  RunConfig cfg;
  cfg.echo = doc.dump();
  Section top(&doc, "", problems);
  if (!top.valid()) throw ConfigError(problems);

  {
    Section particle = top.child("particle");
    if (auto m = particle.number("mass")) {
      if (*m > 0.0) cfg.mass = *m;
      else particle.fail("mass", "must be positive");
    }
    particle.finish();
  }
  read_potential(top, cfg, base_dir, cfg.mass > 0.0 ? std::optional<double>(cfg.mass) : std::nullopt,
                 problems);
  {
    Section grid = top.child("grid");
    const auto x0 = grid.number("x0");
    const auto xn = grid.number("xN");
    const auto n = grid.count("N", 2);
    grid.finish();
    if (x0 && xn && n) {
      if (*x0 < *xn) {
        cfg.x0 = *x0;
        cfg.xN = *xn;
        cfg.steps = *n;
      } else {
        grid.fail("", "needs x0 < xN");
      }
    }
  }
  read_task(top, cfg, problems);
  {
    Section out = top.child("output");
    if (auto dir = out.text("directory")) {
      std::filesystem::path p(*dir);
      cfg.output_directory = p.is_relative() ? base_dir / p : p;
    }
    if (auto f = out.text("format", false)) {
      if (*f == "json") cfg.format = OutputFormat::json;
      else if (*f != "csv") out.fail("format", "must be csv or json");
    }
    out.finish();
  }
  top.finish();

  // Cross-section checks once the pieces are individually valid.
  if (problems.empty() && cfg.potential) {
    try {
      const DiscretizedPotential dp = cfg.discretized();
      auto check_region = [&](const SearchRegion& r) {
        if (r.split && !(*r.split >= cfg.x0 && *r.split < cfg.xN))
          problems.push_back("task.split must lie inside [x0, xN)");
      };
      if (const auto* f = std::get_if<FofeTask>(&cfg.task)) check_region(f->region);
      if (const auto* e = std::get_if<EigenTask>(&cfg.task)) check_region(e->region);
      if (const auto* p = std::get_if<PacketTask>(&cfg.task)) {
        if (p->region && (p->region->upper < cfg.x0 || p->region->lower > cfg.xN))
          problems.push_back("task.region must overlap the grid");
      }
      (void)dp;
    } catch (const EvaluationError& e) {
      problems.push_back(std::string("grid: ") + e.what());
    } catch (const InvalidArgument& e) {
      problems.push_back(std::string("grid: ") + e.what());
    }
  }
  if (!problems.empty()) throw ConfigError(problems);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

} // namespace stepwave
