#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "stripwave/errors.hpp"

namespace stripwave::cli {

using nlohmann::ordered_json;

ordered_json config_json(const ProblemConfig& cfg) {
  ordered_json j;
  j["a0"] = cfg.a0;
  j["sigma"] = cfg.sigma;
  j["c0"] = cfg.c0;
  j["regime_c"] = cfg.regime_c;
  j["regime_C"] = cfg.regime_C;
  j["s0"] = cfg.s0;
  j["quad_points"] = cfg.quad_points;
  j["quadrature"] = std::string(quadrature_name(cfg.quadrature));
  return j;
}

ordered_json RunManifest::to_json() const {
  ordered_json j;
  j["tool"] = "stripwave";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["args"] = args;
  j["seed"] = seed;
  j["timestamp"] = timestamp;
  j["kernels"] = kernels;
  j["config"] = config_json(config);
  return j;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Table::Table(std::string schema, std::vector<std::string> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw DomainError("table row has the wrong number of cells");
  rows_.push_back(std::move(row));
}

namespace {

std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

ordered_json json_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (auto d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_double(*d);
    return *d;
  }
  if (auto i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << text;
}

}  // namespace

std::string Table::to_csv(const std::string& header_comment) const {
  std::string out = "# " + header_comment + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
  out += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

ordered_json Table::to_json() const {
  ordered_json j;
  j["schema"] = schema_;
  j["rows"] = ordered_json::array();
  for (const auto& row : rows_) {
    ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[columns_[i]] = json_cell(row[i]);
    j["rows"].push_back(std::move(r));
  }
  return j;
}

void write_outputs(const std::string& dir, const RunManifest& manifest, const Table* table,
                   const ordered_json& summary, Format format) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir);

  write_file(root / "manifest.json", manifest.to_json().dump(2) + "\n");
  if (table != nullptr) {
    if (format == Format::Csv) {
      write_file(root / (manifest.command + ".csv"),
                 table->to_csv("stripwave " + manifest.command + " schema=" + table->schema() +
                               " manifest=manifest.json"));
    } else {
      ordered_json j = table->to_json();
      j["manifest"] = "manifest.json";
      write_file(root / (manifest.command + ".json"), j.dump(2) + "\n");
    }
  }
  write_file(root / (manifest.command + ".summary.json"), summary.dump(2) + "\n");
}

}  // namespace stripwave::cli
