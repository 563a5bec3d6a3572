#ifndef STEPWAVE_CONFIG_HPP
#define STEPWAVE_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stepwave/eigen.hpp"
#include "stepwave/scattering.hpp"
#include "stepwave/wavepacket.hpp"

namespace stepwave {

struct EnergyScan {
  double emin = 0.0;
  double emax = 0.0;
  std::size_t count = 0;
};

struct TransmitTask {
  EnergyScan energies;
  TransmissionMethod method = TransmissionMethod::product;
};

struct WavefuncTask {
  std::vector<double> energies;
};

// Either a split point (two searches) or one closed interval, or neither.
struct SearchRegion {
  std::optional<double> split;
  std::optional<Interval> interval;
};

struct FofeTask {
  EnergyScan energies;
  SearchRegion region;
};

struct EigenTask {
  EnergyScan energies;
  SearchRegion region;
  double refine_tol = 0.0;  // 0: a hundredth of the scan step
  double acceptance_ratio = 1e-3;
  bool eigenfunctions = true;
};

struct PacketTask {
  double e0 = 0.0;
  PacketWidth width = EnergyHalfRange{0.0};
  std::size_t modes = 0;
  double x0 = 0.0;
  std::vector<double> snapshots;      // fs
  std::vector<double> series;         // fs, rows of packet_summary
  std::optional<Interval> region;     // region_probability column
  std::optional<double> lifetime_start;
};

using Task = std::variant<TransmitTask, WavefuncTask, FofeTask, EigenTask, PacketTask>;

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string echo;  // compact JSON of the input document
  std::string potential_summary;
  std::optional<PotentialSpec> potential;
  double x0 = 0.0, xN = 0.0;
  std::size_t steps = 0;
  double mass = 0.0;
  std::string task_name;
  Task task;
  std::filesystem::path output_directory;
  OutputFormat format = OutputFormat::csv;

  DiscretizedPotential discretized() const { return discretize(*potential, x0, xN, steps); }
};

/// Parses and validates a run configuration. Every problem found is
/// collected into one ConfigError. Relative table and output paths are
/// resolved against `base_dir`. A missing table file raises IoError.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);

/// Reads `path` (IoError if unreadable) and parses it relative to its folder.
RunConfig load_config(const std::filesystem::path& path);

} // namespace stepwave

#endif
