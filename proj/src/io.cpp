// Copyright 2026 The sirw Authors.
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

#include "sirw/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sirw/error.hpp"

namespace sirw {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) {
  for (const auto& h : header) field(h);
  end_row();
}

CsvWriter& CsvWriter::field(const std::string& v) {
  if (row_open_) text_.push_back(',');
  text_ += csv_escape(v);
  row_open_ = true;
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }
CsvWriter& CsvWriter::field(std::int64_t v) { return field(std::to_string(v)); }
CsvWriter& CsvWriter::field(std::uint64_t v) { return field(std::to_string(v)); }
CsvWriter& CsvWriter::field(const std::optional<double>& v) { return field(format_optional(v)); }

void CsvWriter::end_row() {
  text_.push_back('\n');
  row_open_ = false;
}

void write_text_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'", "out");
  out << contents;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'", "out");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string meta_path_for(const std::string& out_path) {
  std::filesystem::path p(out_path);
  p.replace_extension(".meta.json");
  return p.string();
}

std::string sibling_path(const std::string& out_path, const std::string& suffix) {
  const std::filesystem::path p(out_path);
  std::filesystem::path q = p.parent_path() / (p.stem().string() + "_" + suffix);
  q += p.extension();
  return q.string();
}

}  // namespace sirw
