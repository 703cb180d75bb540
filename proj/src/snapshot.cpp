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

#include <algorithm>

#include "mtbias/errors.hpp"
#include "mtbias/text.hpp"
#include "mtbias/translator.hpp"

namespace mtbias {

std::vector<TranslationRecord> parse_snapshot(std::string_view contents,
                                              const std::string& source) {
  std::vector<TranslationRecord> records;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    ++line_no;
    const auto end = contents.find('\n', pos);
    const bool terminated = end != std::string_view::npos;
    const auto line = contents.substr(pos, (terminated ? end : contents.size()) - pos);
    pos = terminated ? end + 1 : contents.size();
    const std::string where = source + ":" + std::to_string(line_no);
    if (!line.empty() && line.front() == '#') continue;
    if (!terminated) throw DataError(where + ": truncated snapshot line");
    if (line.empty()) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 6) {
      throw DataError(where + ": expected 6 fields, found " + std::to_string(fields.size()));
    }
    TranslationRecord r;
    r.request.source_lang = fields[0];
    r.request.target_lang = fields[1];
    try {
      r.request.text = text::base64_decode(fields[2]);
      r.output = text::base64_decode(fields[3]);
    } catch (const std::invalid_argument& e) {
      throw DataError(where + ": " + e.what());
    }
    r.backend_id = fields[4];
    r.retrieved_at = fields[5];
    if (r.request.source_lang.empty() || r.request.target_lang.empty() ||
        r.request.text.empty() || r.backend_id.empty()) {
      throw DataError(where + ": empty required field");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string format_snapshot(std::vector<TranslationRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.key() < b.key(); });
  std::string out = "# mtbias translation snapshot v1\n";
  for (const auto& r : records) {
    out += r.request.source_lang;
    out += '\t';
    out += r.request.target_lang;
    out += '\t';
    out += text::base64_encode(r.request.text);
    out += '\t';
    out += text::base64_encode(r.output);
    out += '\t';
    out += r.backend_id;
    out += '\t';
    out += r.retrieved_at;
    out += '\n';
  }
  return out;
}

std::vector<TranslationRecord> read_snapshot(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
  return parse_snapshot(contents, path.string());
}

void write_snapshot(const std::filesystem::path& path,
                    std::vector<TranslationRecord> records) {
  text::write_file_atomic(path, format_snapshot(std::move(records)));
}

void export_snapshot(const std::filesystem::path& cache_path,
                     const std::filesystem::path& snapshot_path) {
  write_snapshot(snapshot_path, read_snapshot(cache_path));
}

void import_snapshot(const std::filesystem::path& snapshot_path,
                     const std::filesystem::path& cache_path) {
  auto incoming = read_snapshot(snapshot_path);
  TranslationCache cache(cache_path);
  for (auto& r : incoming) cache.insert(std::move(r));
  cache.flush();
}

}  // namespace mtbias
