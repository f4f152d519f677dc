#include "qgap/csvio.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qgap/errors.hpp"
#include "qgap/util.hpp"

namespace qgap {

namespace {

// RFC-4180-style quoting; only strings ever need it here.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::string schema_id, std::vector<std::string> columns)
    : schema_(std::move(schema_id)), columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<CsvCell> cells) {
  if (cells.size() != columns_.size()) throw UsageError("CsvTable: row width mismatch");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::body() const {
  std::string out = "# " + schema_ + "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(columns_[c]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (const auto* i = std::get_if<std::int64_t>(&row[c]))
        out += std::to_string(*i);
      else if (const auto* d = std::get_if<double>(&row[c]))
        out += format_double(*d);
      else
        out += csv_escape(std::get<std::string>(row[c]));
    }
    out += '\n';
  }
  return out;
}

void CsvTable::save(const std::filesystem::path& file) const {
  std::ofstream f(file, std::ios::binary);
  if (!f) throw UsageError("CsvTable: cannot open " + file.string());
  f << body();
}

void RunManifest::set_parameter(const std::string& key, std::int64_t v) {
  parameters.emplace_back(key, std::to_string(v));
}
void RunManifest::set_parameter(const std::string& key, double v) {
  parameters.emplace_back(key, format_double(v));
}
void RunManifest::set_parameter(const std::string& key, const std::string& v) {
  parameters.emplace_back(key, nlohmann::ordered_json(v).dump());
}
void RunManifest::set_parameter_list(const std::string& key, const std::vector<double>& v) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (double x : v) j.push_back(x);
  parameters.emplace_back(key, j.dump());
}
void RunManifest::set_parameter_list_int(const std::string& key, const std::vector<int>& v) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (int x : v) j.push_back(x);
  parameters.emplace_back(key, j.dump());
}

std::string RunManifest::compute_config_hash() const {
  std::uint64_t h = fnv1a(command);
  for (const auto& [k, v] : parameters) {
    h = fnv1a(k, h);
    h = fnv1a("=", h);
    h = fnv1a(v, h);
    h = fnv1a(";", h);
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "qgap";
  j["command"] = command;
  j["version"] = version;
  j["config_hash"] = config_hash;
  j["created_utc"] = created_utc;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = nlohmann::ordered_json::parse(v);
  j["parameters"] = params;
  nlohmann::ordered_json wt = nlohmann::ordered_json::object();
  for (const auto& [k, v] : wall_times_seconds) wt[k] = v;
  j["wall_times_seconds"] = wt;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.config_hash = j.at("config_hash").get<std::string>();
  m.created_utc = j.at("created_utc").get<std::string>();
  for (const auto& [k, v] : j.at("parameters").items()) m.parameters.emplace_back(k, v.dump());
  for (const auto& [k, v] : j.at("wall_times_seconds").items())
    m.wall_times_seconds.emplace_back(k, v.get<double>());
  for (const auto& o : j.at("outputs")) m.outputs.push_back(o.get<std::string>());
  return m;
}

void RunManifest::save(const std::filesystem::path& file) const {
  std::ofstream f(file, std::ios::binary);
  if (!f) throw UsageError("RunManifest: cannot open " + file.string());
  f << to_json();
}

std::string utc_timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace qgap
