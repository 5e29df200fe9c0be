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

#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "sofic/sofic.h"

namespace sofic_cli {

std::string FormatReal(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json JsonReal(double v) {
  if (std::isfinite(v)) return v;
  return FormatReal(v);
}

CsvTable& CsvTable::Add(double v) {
  current_.push_back(FormatReal(v));
  return *this;
}

CsvTable& CsvTable::Add(std::int64_t v) {
  current_.push_back(std::to_string(v));
  return *this;
}

CsvTable& CsvTable::Add(const std::string& v) {
  current_.push_back(v);
  return *this;
}

void CsvTable::EndRow() {
  if (current_.size() != header_.size()) {
    throw std::logic_error("csv row width does not match header");
  }
  rows_.push_back(std::move(current_));
  current_.clear();
}

std::string CsvTable::Render() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& row : rows_) line(row);
  return out;
}

void WriteCsv(const std::filesystem::path& dir, const std::string& name,
              const CsvTable& table, Report& report) {
  const std::filesystem::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << table.Render();
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
  report.outputs.push_back({{"file", name}, {"rows", table.rows()}});
}

void WriteManifest(const std::filesystem::path& dir, const std::string& command,
                   std::uint64_t seed, double wall_time, const Report& report) {
  nlohmann::json m;
  m["schema_version"] = kManifestSchemaVersion;
  m["command"] = command;
  m["config"] = report.config;
  m["library_version"] = sofic_version();
  m["seed"] = seed;
  m["wall_time_seconds"] = wall_time;
  m["status"] = report.status;
  m["failure_reason"] = report.failure_reason;
  m["outputs"] = report.outputs;
  m["summary"] = report.summary;
  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  out << m.dump(2) << '\n';
}

}  // namespace sofic_cli
