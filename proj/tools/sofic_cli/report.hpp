// Copyright 2026 The sofic-pressure Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CSV tables and the run manifest.

#ifndef SOFIC_CLI_REPORT_HPP_
#define SOFIC_CLI_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace sofic_cli {

inline constexpr int kManifestSchemaVersion = 1;

// 17 significant digits, "inf" / "-inf" / "nan" for non-finite values.
std::string FormatReal(double v);

// Non-finite values become strings, since JSON has no encoding for them.
nlohmann::json JsonReal(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& Add(double v);
  CsvTable& Add(std::int64_t v);
  CsvTable& Add(int v) { return Add(static_cast<std::int64_t>(v)); }
  CsvTable& Add(const std::string& v);
  // Closes the current row; its width must match the header.
  void EndRow();

  std::size_t rows() const { return rows_.size(); }
  std::string Render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> current_;
};

struct Report {
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json summary = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::array();
  std::string status = "ok";
  std::string failure_reason;
};

// Writes dir/name and records it in the report. Throws std::runtime_error if
// the file cannot be written.
void WriteCsv(const std::filesystem::path& dir, const std::string& name,
              const CsvTable& table, Report& report);

void WriteManifest(const std::filesystem::path& dir, const std::string& command,
                   std::uint64_t seed, double wall_time, const Report& report);

}  // namespace sofic_cli

#endif  // SOFIC_CLI_REPORT_HPP_
