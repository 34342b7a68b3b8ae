#include "cli/output.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace racetrack::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

CsvTable::CsvTable(std::initializer_list<std::string_view> columns) : columns_(columns.size()) {
  bool first = true;
  for (std::string_view c : columns) {
    if (!first) text_ += ',';
    text_ += c;
    first = false;
  }
  text_ += '\n';
}

void CsvTable::add_row(std::initializer_list<double> values) {
  if (values.size() != columns_) throw std::logic_error("CsvTable: row width does not match header");
  bool first = true;
  for (double v : values) {
    if (!first) text_ += ',';
    text_ += format_number(v);
    first = false;
  }
  text_ += '\n';
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  write_atomic(path, doc.dump(2) + "\n");
}

}  // namespace racetrack::cli
