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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtbias {

enum class ParticipationSource { Direct, CategoryFallback };

std::string_view to_string(ParticipationSource source);
ParticipationSource parse_participation_source(std::string_view s);

struct OccupationRecord {
  std::string name;
  std::string category;
  std::string group;
  double female_participation = 0.0;  // fraction in [0, 1]
  ParticipationSource participation_source = ParticipationSource::Direct;

  friend bool operator==(const OccupationRecord&, const OccupationRecord&) = default;
};

struct CategoryRow {
  std::string category;
  std::string group;
  double female_participation = 0.0;  // fraction in [0, 1]
};

// Category -> (group, category-level participation). Row order is the file
// order and drives the order of every per-category output.
class CategoryTable {
 public:
  CategoryTable() = default;
  explicit CategoryTable(std::vector<CategoryRow> rows);

  static CategoryTable load(const std::filesystem::path& path);

  const CategoryRow* find(std::string_view category) const;
  const std::vector<CategoryRow>& rows() const { return rows_; }

  // Distinct groups in first-appearance order.
  std::vector<std::string> groups() const;

 private:
  std::vector<CategoryRow> rows_;
};

// Words and phrases that disqualify an occupation title: gender-marked job
// words match whole tokens, generic phrases match substrings. Both are
// case-insensitive.
struct ExclusionLists {
  std::vector<std::string> gendered_words;
  std::vector<std::string> generic_phrases;

  static ExclusionLists load(const std::filesystem::path& gendered_words,
                             const std::filesystem::path& generic_phrases);

  // Reason the title is excluded, if any.
  std::optional<std::string> match(std::string_view name) const;
};

struct ExcludedRow {
  std::size_t line = 0;
  std::string name;
  std::string reason;
};

struct OccupationCorpus {
  std::vector<OccupationRecord> records;
  std::vector<ExcludedRow> excluded;
  CategoryTable categories;

  // Mean of female_participation over all records.
  double mean_participation() const;
};

// Reads an occupation file with columns (name, category,
// female_participation_percent). Blank percentages fall back to the
// category row. Throws DataError on an unknown category or a percentage
// outside [0, 100], naming the offending line.
OccupationCorpus load_occupations(const std::filesystem::path& path,
                                  const std::filesystem::path& category_table,
                                  const ExclusionLists& exclusions);

struct AdjectiveRecord {
  std::string word;

  friend bool operator==(const AdjectiveRecord&, const AdjectiveRecord&) = default;
};

// One word per line, file order preserved. Blank lines are skipped;
// duplicates are a DataError.
std::vector<AdjectiveRecord> load_adjectives(const std::filesystem::path& path);

struct CategorySummary {
  std::string category;
  std::string group;
  std::size_t occupation_count = 0;
  double female_participation = 0.0;
};

// One summary per category present in `records`, in category-table order.
std::vector<CategorySummary> summarize_categories(
    std::span<const OccupationRecord> records, const CategoryTable& table);

std::vector<OccupationRecord> restrict_to_group(
    std::span<const OccupationRecord> records, std::string_view group);

}  // namespace mtbias
