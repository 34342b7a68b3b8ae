#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

namespace racetrack::cli {

/// Shortest text that round-trips the double; "nan" / "inf" / "-inf" otherwise.
std::string format_number(double x);

/// Comma-separated text with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::initializer_list<std::string_view> columns);

  void add_row(std::initializer_list<double> values);
  const std::string& text() const noexcept { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// Writes `content` next to `path` and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace racetrack::cli
