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

#include "mtbias/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "mtbias/delimited.hpp"
#include "mtbias/errors.hpp"
#include "mtbias/text.hpp"

namespace mtbias {
namespace {

std::optional<double> parse_percent(std::string_view field, const std::string& where) {
  const auto s = text::trim(field);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw DataError(where + ": malformed participation '" + std::string(s) + "'");
  }
  if (!(value >= 0.0 && value <= 100.0)) {
    throw DataError(where + ": participation " + std::string(s) +
                    " outside [0, 100] percent");
  }
  return value / 100.0;
}

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
  std::vector<std::string> words;
  for (const auto& raw : text::split(contents, '\n')) {
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    words.push_back(text::lowercase(line));
  }
  return words;
}

// Splits a title into lowercase word tokens on anything that is not a
// letter, digit, apostrophe or hyphen.
std::vector<std::string> title_tokens(std::string_view name) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text::lowercase(name)) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u) || c == '\'' || c == '-') {
      cur.push_back(c);
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

}  // namespace

std::string_view to_string(ParticipationSource source) {
  return source == ParticipationSource::Direct ? "direct" : "category-fallback";
}

ParticipationSource parse_participation_source(std::string_view s) {
  if (s == "direct") return ParticipationSource::Direct;
  if (s == "category-fallback") return ParticipationSource::CategoryFallback;
  throw DataError("unknown participation source '" + std::string(s) + "'");
}

CategoryTable::CategoryTable(std::vector<CategoryRow> rows) : rows_(std::move(rows)) {}

CategoryTable CategoryTable::load(const std::filesystem::path& path) {
  const auto table = read_delimited(path);
  const auto c_cat = table.column("category");
  const auto c_group = table.column("group");
  const auto c_pct = table.column("participation_percent");
  std::vector<CategoryRow> rows;
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    const std::string where = table.source + ":" + std::to_string(row.line);
    CategoryRow r;
    r.category = std::string(text::trim(row.fields[c_cat]));
    r.group = std::string(text::trim(row.fields[c_group]));
    if (r.category.empty() || r.group.empty()) {
      throw DataError(where + ": empty category or group");
    }
    if (!seen.insert(r.category).second) {
      throw DataError(where + ": duplicate category '" + r.category + "'");
    }
    const auto pct = parse_percent(row.fields[c_pct], where);
    if (!pct) throw DataError(where + ": category participation is required");
    r.female_participation = *pct;
    rows.push_back(std::move(r));
  }
  return CategoryTable(std::move(rows));
}

const CategoryRow* CategoryTable::find(std::string_view category) const {
  for (const auto& r : rows_) {
    if (r.category == category) return &r;
  }
  return nullptr;
}

std::vector<std::string> CategoryTable::groups() const {
  std::vector<std::string> out;
  for (const auto& r : rows_) {
    if (std::find(out.begin(), out.end(), r.group) == out.end()) out.push_back(r.group);
  }
  return out;
}

ExclusionLists ExclusionLists::load(const std::filesystem::path& gendered_words,
                                    const std::filesystem::path& generic_phrases) {
  return {read_word_list(gendered_words), read_word_list(generic_phrases)};
}

std::optional<std::string> ExclusionLists::match(std::string_view name) const {
  const auto lower = text::lowercase(name);
  for (const auto& phrase : generic_phrases) {
    if (lower.find(phrase) != std::string::npos) return "generic phrase '" + phrase + "'";
  }
  const auto tokens = title_tokens(name);
  for (const auto& word : gendered_words) {
    if (std::find(tokens.begin(), tokens.end(), word) != tokens.end()) {
      return "gendered word '" + word + "'";
    }
  }
  return std::nullopt;
}

double OccupationCorpus::mean_participation() const {
  if (records.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : records) sum += r.female_participation;
  return sum / static_cast<double>(records.size());
}

OccupationCorpus load_occupations(const std::filesystem::path& path,
                                  const std::filesystem::path& category_table,
                                  const ExclusionLists& exclusions) {
  OccupationCorpus corpus;
  corpus.categories = CategoryTable::load(category_table);
  const auto table = read_delimited(path);
  const auto c_name = table.column("name");
  const auto c_cat = table.column("category");
  const auto c_pct = table.column("female_participation_percent");
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    const std::string where = table.source + ":" + std::to_string(row.line);
    const std::string name(text::trim(row.fields[c_name]));
    const std::string category(text::trim(row.fields[c_cat]));
    if (name.empty()) throw DataError(where + ": empty occupation name");
    const auto* cat = corpus.categories.find(category);
    if (cat == nullptr) {
      throw DataError(where + ": unknown category '" + category + "' for '" + name + "'");
    }
    const auto pct = parse_percent(row.fields[c_pct], where);
    if (auto reason = exclusions.match(name)) {
      corpus.excluded.push_back({row.line, name, std::move(*reason)});
      continue;
    }
    if (!seen.insert(name).second) {
      throw DataError(where + ": duplicate occupation '" + name + "'");
    }
    OccupationRecord rec;
    rec.name = name;
    rec.category = cat->category;
    rec.group = cat->group;
    rec.female_participation = pct.value_or(cat->female_participation);
    rec.participation_source =
        pct ? ParticipationSource::Direct : ParticipationSource::CategoryFallback;
    corpus.records.push_back(std::move(rec));
  }
  return corpus;
}

std::vector<AdjectiveRecord> load_adjectives(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
  std::vector<AdjectiveRecord> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(contents, '\n')) {
    ++line_no;
    const auto word = text::trim(raw);
    if (word.empty()) continue;
    if (!seen.emplace(word).second) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": duplicate adjective '" + std::string(word) + "'");
    }
    out.push_back({std::string(word)});
  }
  return out;
}

std::vector<CategorySummary> summarize_categories(
    std::span<const OccupationRecord> records, const CategoryTable& table) {
  std::map<std::string, std::size_t, std::less<>> counts;
  for (const auto& r : records) ++counts[r.category];
  std::vector<CategorySummary> out;
  for (const auto& row : table.rows()) {
    const auto it = counts.find(row.category);
    if (it == counts.end()) continue;
    out.push_back({row.category, row.group, it->second, row.female_participation});
  }
  return out;
}

std::vector<OccupationRecord> restrict_to_group(
    std::span<const OccupationRecord> records, std::string_view group) {
  std::vector<OccupationRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const OccupationRecord& r) { return r.group == group; });
  return out;
}

}  // namespace mtbias
