#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qgap {

using CsvCell = std::variant<std::int64_t, double, std::string>;

/// Buffered CSV emitter: a `# <schema>` tag line, one header row, then data
/// rows. Doubles are printed with %.17g (round-trip exact, byte-stable).
/// Nothing touches the filesystem until write_to/save.
class CsvTable {
public:
  CsvTable(std::string schema_id, std::vector<std::string> columns);

  void add_row(std::vector<CsvCell> cells);
  std::string body() const; // full file contents
  void save(const std::filesystem::path& file) const;

  const std::string& schema() const { return schema_; }
  std::size_t rows() const { return rows_.size(); }

private:
  std::string schema_;
  std::vector<std::string> columns_;
  std::vector<std::vector<CsvCell>> rows_;
};

std::string format_double(double v);

/// Provenance record written next to every command's outputs.
struct RunManifest {
  std::string command;
  std::string version;
  std::vector<std::pair<std::string, std::string>> parameters; // key -> JSON literal
  std::string config_hash; // hex FNV-1a over command + parameters (timestamps excluded)
  std::string created_utc;
  std::vector<std::pair<std::string, double>> wall_times_seconds;
  std::vector<std::string> outputs;

  void set_parameter(const std::string& key, std::int64_t v);
  void set_parameter(const std::string& key, double v);
  void set_parameter(const std::string& key, const std::string& v);
  void set_parameter_list(const std::string& key, const std::vector<double>& v);
  void set_parameter_list_int(const std::string& key, const std::vector<int>& v);

  /// Hash of (command, parameters); independent of timestamps and wall times.
  std::string compute_config_hash() const;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);

  void save(const std::filesystem::path& file) const;
};

std::string utc_timestamp_now();

} // namespace qgap
