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

#ifndef SIRW_IO_HPP_
#define SIRW_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sirw {

// %.17g, so every double round-trips. Infinities print as inf / -inf.
std::string format_double(double v);
// Empty string for nullopt.
std::string format_optional(const std::optional<double>& v);

// RFC 4180: quote when the field holds a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

// Accumulates rows with CRLF-free '\n' line endings.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);

  CsvWriter& field(const std::string& v);
  CsvWriter& field(double v);
  CsvWriter& field(std::int64_t v);
  CsvWriter& field(std::uint64_t v);
  CsvWriter& field(const std::optional<double>& v);
  void end_row();

  const std::string& str() const { return text_; }

 private:
  std::string text_;
  bool row_open_ = false;
};

// Throws Error(kIo) on failure.
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

// "<dir>/<stem>.meta.json" for "<dir>/<stem>.<ext>".
std::string meta_path_for(const std::string& out_path);
// Path with "_<suffix>" inserted before the extension.
std::string sibling_path(const std::string& out_path, const std::string& suffix);

}  // namespace sirw

#endif  // SIRW_IO_HPP_
