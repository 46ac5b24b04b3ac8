#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "stripwave/config.hpp"

namespace stripwave::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::string kernels;
  ProblemConfig config;

  nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json config_json(const ProblemConfig& cfg);

using Cell = std::variant<std::monostate, double, long long, std::string>;

class Table {
 public:
  Table(std::string schema, std::vector<std::string> columns);
  void add_row(std::vector<Cell> row);

  const std::string& schema() const noexcept { return schema_; }
  std::size_t rows() const noexcept { return rows_.size(); }

  std::string to_csv(const std::string& header_comment) const;
  nlohmann::ordered_json to_json() const;

 private:
  std::string schema_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

enum class Format { Csv, Json };

// "%.17g", with nan/inf spelled out.
std::string format_double(double x);

// Writes manifest.json, the row table (<command>.csv or <command>.json) and
// <command>.summary.json into dir. Creates dir if needed.
void write_outputs(const std::string& dir, const RunManifest& manifest, const Table* table,
                   const nlohmann::ordered_json& summary, Format format);

}  // namespace stripwave::cli
