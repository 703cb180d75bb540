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

#include "mtbias/delimited.hpp"

#include <algorithm>

#include "mtbias/errors.hpp"
#include "mtbias/text.hpp"

namespace mtbias {
namespace {

std::vector<std::string> split_comma(std::string_view line, const std::string& where) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw DataError(where + ": unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<std::string> split_line(char delimiter, std::string_view line,
                                    const std::string& where) {
  if (delimiter == ',') return split_comma(line, where);
  auto fields = text::split(line, '\t');
  for (auto& f : fields) f = text::unescape_field(f);
  return fields;
}

}  // namespace

std::size_t DelimitedTable::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw DataError(source + ": missing column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

DelimitedTable parse_delimited(std::string_view contents, std::string source) {
  DelimitedTable table;
  table.source = std::move(source);
  bool have_delimiter = false;
  bool have_columns = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    auto end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string where = table.source + ":" + std::to_string(line_no);
    if (text::trim(line).empty()) continue;
    if (!have_delimiter) {
      const auto decl = text::trim(line);
      if (decl == "# delimiter: tab") {
        table.delimiter = '\t';
      } else if (decl == "# delimiter: comma") {
        table.delimiter = ',';
      } else {
        throw DataError(where + ": expected '# delimiter: tab' or '# delimiter: comma'");
      }
      have_delimiter = true;
      continue;
    }
    if (line.front() == '#') continue;
    auto fields = split_line(table.delimiter, line, where);
    if (!have_columns) {
      for (auto& f : fields) f = std::string(text::trim(f));
      table.columns = std::move(fields);
      have_columns = true;
      continue;
    }
    if (fields.size() != table.columns.size()) {
      throw DataError(where + ": expected " + std::to_string(table.columns.size()) +
                      " fields, found " + std::to_string(fields.size()));
    }
    table.rows.push_back({line_no, std::move(fields)});
  }
  if (!have_columns) throw DataError(table.source + ": missing header");
  return table;
}

DelimitedTable read_delimited(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
  return parse_delimited(contents, path.string());
}

std::string delimiter_declaration(char delimiter) {
  return delimiter == ',' ? "# delimiter: comma\n" : "# delimiter: tab\n";
}

std::string format_row(char delimiter, const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(delimiter);
    if (delimiter == ',') {
      const auto& f = fields[i];
      if (f.find_first_of(",\"") != std::string::npos) {
        out.push_back('"');
        for (char c : f) {
          if (c == '"') out.push_back('"');
          out.push_back(c);
        }
        out.push_back('"');
      } else {
        out += f;
      }
    } else {
      out += text::escape_field(fields[i]);
    }
  }
  out.push_back('\n');
  return out;
}

}  // namespace mtbias
