#include "stepwave/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>
#include <sstream>

#include "stepwave/config.hpp"
#include "stepwave/error.hpp"
#include "stepwave/output.hpp"
#include "stepwave/parallel.hpp"

namespace stepwave {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Job {
public:
  Job(const RunConfig& cfg, const RunOptions& opt, std::ostream& out, std::ostream& err)
      : cfg_(cfg), opt_(opt), out_(out), err_(err), ctx_(ParticleContext::from_mass(cfg.mass)),
        dp_(cfg.discretized()), threads_(resolve_threads(opt.threads)), stamp_(utc_timestamp()) {}

  void operator()(const TransmitTask& t) {
    const auto energies = energy_grid(t.energies.emin, t.energies.emax, t.energies.count);
    const auto curve = transmission_curve(dp_, energies, ctx_, t.method, threads_);
    DataTable table{{"E_eV", "T", "R"}, {}};
    for (std::size_t i = 0; i < energies.size(); ++i) table.rows.push_back({curve.E[i], curve.T[i], curve.R[i]});
    emit("transmission", table,
         {{"method", t.method == TransmissionMethod::product ? "product" : "amplitude"}});
    if (opt_.dump_coefficients) dump_coefficients(energies);
  }

  void operator()(const WavefuncTask& t) {
    for (std::size_t i = 0; i < t.energies.size(); ++i) {
      const auto sweep = left_sweep(dp_, t.energies[i], ctx_);
      const auto field = sample_wavefunction(sweep, dp_);
      const auto tr = transmission(sweep, dp_);
      emit("wavefunction_" + std::to_string(i + 1), field_table(field.x, field.psi),
           {{"energy_eV", format_value(t.energies[i])}, {"T", format_value(tr.T)}, {"R", format_value(tr.R)}});
    }
    if (opt_.dump_coefficients) dump_coefficients(t.energies);
  }

  void operator()(const FofeTask& t) {
    const auto energies = energy_grid(t.energies.emin, t.energies.emax, t.energies.count);
    if (t.region.split) {
      const auto [left, right] = split_interval(dp_, *t.region.split);
      const auto fl = mismatch_curve(dp_, energies, ctx_, left, threads_);
      const auto fr = mismatch_curve(dp_, energies, ctx_, right, threads_);
      DataTable table{{"E_eV", "f_left", "f_right"}, {}};
      for (std::size_t i = 0; i < energies.size(); ++i) table.rows.push_back({energies[i], fl.f[i], fr.f[i]});
      emit("mismatch", table, {{"split_nm", format_value(*t.region.split)}});
    } else {
      const auto f = mismatch_curve(dp_, energies, ctx_, t.region.interval, threads_);
      DataTable table{{"E_eV", "f"}, {}};
      for (std::size_t i = 0; i < energies.size(); ++i) table.rows.push_back({energies[i], f.f[i]});
      emit("mismatch", table, region_meta(t.region.interval));
    }
  }

  void operator()(const EigenTask& t) {
    EigenSearchOptions base;
    base.refine_tol = t.refine_tol;
    base.acceptance_ratio = t.acceptance_ratio;
    base.threads = threads_;
    const auto& e = t.energies;
    if (t.region.split) {
      const auto [left, right] = split_interval(dp_, *t.region.split);
      EigenSearchOptions lo = base, ro = base;
      lo.interval = left;
      ro.interval = right;
      const auto sl = scan_eigenvalues(dp_, e.emin, e.emax, e.count, ctx_, lo);
      const auto sr = scan_eigenvalues(dp_, e.emin, e.emax, e.count, ctx_, ro);
      DataTable table{{"E_eV", "f_left", "f_right"}, {}};
      for (std::size_t i = 0; i < sl.curve.E.size(); ++i)
        table.rows.push_back({sl.curve.E[i], sl.curve.f[i], sr.curve.f[i]});
      emit("mismatch", table, {{"split_nm", format_value(*t.region.split)}});
      report_levels("_left", sl, left, t.eigenfunctions);
      report_levels("_right", sr, right, t.eigenfunctions);
    } else {
      EigenSearchOptions o = base;
      o.interval = t.region.interval;
      const auto scan = scan_eigenvalues(dp_, e.emin, e.emax, e.count, ctx_, o);
      DataTable table{{"E_eV", "f"}, {}};
      for (std::size_t i = 0; i < scan.curve.E.size(); ++i) table.rows.push_back({scan.curve.E[i], scan.curve.f[i]});
      emit("mismatch", table, region_meta(t.region.interval));
      report_levels("", scan, t.region.interval, t.eigenfunctions);
    }
  }

  void operator()(const PacketTask& t) {
    const auto packet = design_packet(t.e0, t.width, t.modes, t.x0, ctx_);
    const auto cache = precompute_modes(dp_, packet, ctx_, threads_);
    const PacketEvolver evolver(packet, cache, dp_.x);
    const Metadata design{{"E0_eV", format_value(t.e0)},
                          {"kappa0_per_nm", format_value(packet.kappa0)},
                          {"sigma_k_per_nm", format_value(packet.sigma_k)},
                          {"fwhm_nm", format_value(packet.fwhm())},
                          {"group_velocity_nm_per_fs", format_value(packet.group_velocity)},
                          {"t_max_fs", format_value(packet.t_max)},
                          {"modes", std::to_string(t.modes)}};

    auto check_validity = [&](double time) {
      if (!evolver.within_validity(time) && !opt_.quiet)
        err_ << "warning: t = " << format_value(time) << " fs exceeds t_max = " << format_value(packet.t_max)
             << " fs; the discrete packet repeats beyond it\n";
    };

    for (double time : t.snapshots) {
      check_validity(time);
      const auto field = evolver.at(time);
      Metadata meta = design;
      meta.emplace_back("t_fs", format_value(time));
      emit("psi_t" + format_value(time) + "fs", field_table(field.x, field.psi), meta);
    }

    const std::vector<double>& times = t.series.empty() ? t.snapshots : t.series;
    DataTable summary{{"t_fs", "total_probability"}, {}};
    if (t.region) summary.columns.push_back("region_probability");
    std::vector<std::pair<double, double>> decay;
    for (double time : times) {
      if (&times == &t.series) check_validity(time);
      const auto field = evolver.at(time);
      std::vector<double> row{time, region_probability(field, dp_.x.front(), dp_.x.back())};
      if (t.region) {
        row.push_back(region_probability(field, t.region->lower, t.region->upper));
        decay.emplace_back(time, row.back());
      }
      summary.rows.push_back(std::move(row));
    }
    Metadata meta = design;
    if (t.region) {
      meta.emplace_back("region_nm", format_value(t.region->lower) + " " + format_value(t.region->upper));
    }
    emit("packet_summary", summary, meta);

    if (t.lifetime_start) {
      const auto fit = fit_lifetime(decay, *t.lifetime_start);
      DataTable table{{"tau_fs", "r_squared", "points"},
                      {{fit.tau, fit.r_squared, static_cast<double>(fit.points)}}};
      meta.emplace_back("t_start_fs", format_value(*t.lifetime_start));
      emit("lifetime", table, meta);
    }
  }

private:
  static DataTable field_table(const std::vector<double>& x, const std::vector<cplx>& psi) {
    DataTable table{{"x_nm", "re_psi", "im_psi", "abs2"}, {}};
    table.rows.reserve(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
      table.rows.push_back({x[j], psi[j].real(), psi[j].imag(), std::norm(psi[j])});
    return table;
  }

  static Metadata region_meta(const std::optional<Interval>& iv) {
    if (!iv) return {};
    return {{"interval_nm", format_value(iv->lower) + " " + format_value(iv->upper)}};
  }

  void report_levels(const std::string& suffix, const EigenScan& scan, const std::optional<Interval>& interval,
                     bool functions) {
    DataTable table{{"index", "E_eV", "uncertainty_eV", "residual"}, {}};
    for (std::size_t i = 0; i < scan.eigenvalues.size(); ++i) {
      const auto& c = scan.eigenvalues[i];
      table.rows.push_back({static_cast<double>(i + 1), c.energy, c.uncertainty, c.residual});
    }
    Metadata meta = region_meta(interval);
    meta.emplace_back("median_f", format_value(scan.median));
    meta.emplace_back("refine_tol_eV", format_value(scan.refine_tol));
    emit("eigenvalues" + suffix, table, meta);
    if (!functions) return;

    const std::string stem = suffix.empty() ? "eigenfunction_" : "eigenfunction" + suffix + "_";
    for (std::size_t i = 0; i < scan.eigenvalues.size(); ++i) {
      EigenfunctionOptions eo;
      eo.interval = interval;
      const auto pair = eigenfunction(dp_, scan.eigenvalues[i].energy, ctx_, eo);
      Metadata fm = region_meta(interval);
      fm.emplace_back("energy_eV", format_value(pair.energy));
      fm.emplace_back("match_index", std::to_string(pair.match_index));
      fm.emplace_back("nodes", std::to_string(count_nodes(pair)));
      fm.emplace_back("parity", format_value(parity(pair)));
      emit(stem + std::to_string(i + 1), field_table(pair.x, pair.psi), fm);
    }
  }

  void dump_coefficients(const std::vector<double>& energies) {
    DataTable table{{"E_eV", "j", "x_nm", "re_k", "im_k", "re_T", "im_T", "re_R_next", "im_R_next", "re_A",
                     "im_A", "re_B", "im_B"},
                    {}};
    const double nan = std::nan("");
    for (double e : energies) {
      const auto s = left_sweep(dp_, e, ctx_);
      for (std::size_t j = 0; j <= dp_.steps(); ++j) {
        const cplx t = j == 0 ? cplx(nan, nan) : s.T[j];
        table.rows.push_back({e, static_cast<double>(j), dp_.x[j], s.k[j].real(), s.k[j].imag(), t.real(), t.imag(),
                              s.R[j + 1].real(), s.R[j + 1].imag(), s.A[j].real(), s.A[j].imag(), s.B[j].real(),
                              s.B[j].imag()});
      }
    }
    emit("coefficients", table, {});
  }

  void emit(const std::string& stem, const DataTable& table, const Metadata& extra) {
    Metadata meta{{"engine", kEngineVersion},
                  {"config", cfg_.echo},
                  {"potential", cfg_.potential_summary},
                  {"grid", grid_summary()},
                  {"particle_mass_eV", format_value(cfg_.mass)},
                  {"task", cfg_.task_name}};
    meta.insert(meta.end(), extra.begin(), extra.end());
    meta.emplace_back("generated_utc", stamp_);
    const auto path = write_artifact(cfg_.output_directory, stem, table, meta, cfg_.format);
    if (!opt_.quiet) out_ << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
  }

  std::string grid_summary() const {
    std::ostringstream os;
    os << "x0=" << format_value(cfg_.x0) << " xN=" << format_value(cfg_.xN) << " N=" << cfg_.steps
       << " dx=" << format_value(dp_.dx[0]);
    return os.str();
  }

  const RunConfig& cfg_;
  const RunOptions& opt_;
  std::ostream& out_;
  std::ostream& err_;
  ParticleContext ctx_;
  DiscretizedPotential dp_;
  unsigned threads_;
  std::string stamp_;
};

} // namespace

int run(const std::filesystem::path& config_path, const RunOptions& options, std::ostream& out,
        std::ostream& err) {
  try {
    const RunConfig cfg = load_config(config_path);
    if (options.validate_only) {
      if (!options.quiet) out << config_path.string() << ": valid " << cfg.task_name << " config\n";
      return kExitOk;
    }
    Job job(cfg, options, out, err);
    std::visit(job, cfg.task);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error in " << config_path.string() << ":\n";
    for (const auto& p : e.problems()) err << "  - " << p << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

} // namespace stepwave
