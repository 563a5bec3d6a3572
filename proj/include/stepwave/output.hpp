#ifndef STEPWAVE_OUTPUT_HPP
#define STEPWAVE_OUTPUT_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "stepwave/config.hpp"

namespace stepwave {

inline constexpr const char* kEngineVersion = "stepwave 1.0.0";

/// Rectangular numeric result with named columns.
struct DataTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Ordered key/value metadata written ahead of the data.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Formats a value with 12 significant digits ("nan"/"inf" spelled out).
std::string format_value(double v);

/// Writes `table` to `dir/stem.csv` or `dir/stem.json` through a temporary
/// file and a rename. Creates `dir` if needed. Returns the final path.
/// Throws IoError with the path on failure, InvalidArgument for ragged rows.
std::filesystem::path write_artifact(const std::filesystem::path& dir, const std::string& stem,
                                     const DataTable& table, const Metadata& meta, OutputFormat format);

} // namespace stepwave

#endif
