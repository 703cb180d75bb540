// Copyright 2026 The mtbias Authors.
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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mtbias {

// Line-oriented delimited text. The first non-blank line declares the
// delimiter ("# delimiter: tab" or "# delimiter: comma"), the next line
// names the columns. Later lines starting with '#' are comments.
//
// Tab files escape \t, \n and \\ inside fields; comma files use RFC 4180
// double quotes.
struct DelimitedRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct DelimitedTable {
  std::string source;
  char delimiter = '\t';
  std::vector<std::string> columns;
  std::vector<DelimitedRow> rows;

  // Index of a required column; throws DataError naming the file.
  std::size_t column(std::string_view name) const;
};

DelimitedTable parse_delimited(std::string_view contents, std::string source);
DelimitedTable read_delimited(const std::filesystem::path& path);

std::string delimiter_declaration(char delimiter);
std::string format_row(char delimiter, const std::vector<std::string>& fields);

}  // namespace mtbias
