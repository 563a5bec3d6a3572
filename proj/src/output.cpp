#include "stepwave/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "stepwave/error.hpp"

namespace stepwave {

namespace {

void render_csv(std::ostream& os, const DataTable& table, const Metadata& meta) {
  for (const auto& [key, value] : meta) os << "# " << key << ": " << value << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_value(row[c]);
    os << '\n';
  }
}

void render_json(std::ostream& os, const DataTable& table, const Metadata& meta) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : meta) doc["metadata"][key] = value;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    // Round through the 12-digit text so both formats carry the same values.
    for (double v : row) {
      if (std::isfinite(v)) r.push_back(std::strtod(format_value(v).c_str(), nullptr));
      else r.push_back(format_value(v));
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(1) << '\n';
}

} // namespace

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::filesystem::path write_artifact(const std::filesystem::path& dir, const std::string& stem,
                                     const DataTable& table, const Metadata& meta, OutputFormat format) {
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size())
      throw InvalidArgument("row width does not match the column count for " + stem);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  const auto target = dir / (stem + (format == OutputFormat::csv ? ".csv" : ".json"));
  auto temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + temp.string() + "' for writing");
    if (format == OutputFormat::csv) render_csv(out, table, meta);
    else render_json(out, table, meta);
    out.flush();
    if (!out) throw IoError("write failed for '" + temp.string() + "'");
  }
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw IoError("cannot move output into place at '" + target.string() + "'");
  }
  return target;
}

} // namespace stepwave
