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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mtbias/corpus.hpp"
#include "mtbias/probes.hpp"
#include "mtbias/stats.hpp"
#include "mtbias/translator.hpp"

namespace mtbias {

// Every file passed between pipeline stages starts with
//   # mtbias-stage: <schema>
// followed by a tab-separated column header and escaped rows. Readers
// insist on the schema line and the header, raising SchemaError otherwise.
struct StageTable {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string format_stage(const StageTable& table);
void write_stage(const std::filesystem::path& path, const StageTable& table);
StageTable read_stage(const std::filesystem::path& path, std::string_view schema,
                      const std::vector<std::string>& columns);

namespace schema {
inline constexpr std::string_view kOccupations = "occupations/v1";
inline constexpr std::string_view kExcluded = "excluded/v1";
inline constexpr std::string_view kCategories = "categories/v1";
inline constexpr std::string_view kAdjectives = "adjectives/v1";
inline constexpr std::string_view kProbes = "probes/v1";
inline constexpr std::string_view kUnavailable = "unavailable/v1";
inline constexpr std::string_view kTranslations = "translations/v1";
inline constexpr std::string_view kLabels = "labels/v1";
}  // namespace schema

void write_occupations(const std::filesystem::path& path,
                       const std::vector<OccupationRecord>& records);
std::vector<OccupationRecord> read_occupations(const std::filesystem::path& path);

void write_excluded(const std::filesystem::path& path, const std::vector<ExcludedRow>& rows);

void write_category_summaries(const std::filesystem::path& path,
                              const std::vector<CategorySummary>& rows);
std::vector<CategorySummary> read_category_summaries(const std::filesystem::path& path);

void write_adjectives(const std::filesystem::path& path,
                      const std::vector<AdjectiveRecord>& words);
std::vector<AdjectiveRecord> read_adjectives(const std::filesystem::path& path);

void write_probes(const std::filesystem::path& path, const std::vector<Probe>& probes);
std::vector<Probe> read_probes(const std::filesystem::path& path);

void write_unavailable(const std::filesystem::path& path,
                       const std::vector<UnavailableProbe>& rows);
std::vector<UnavailableProbe> read_unavailable(const std::filesystem::path& path);

// A probe together with its English output.
struct TranslatedProbe {
  Probe probe;
  TranslationRecord record;
};

void write_translations(const std::filesystem::path& path,
                        const std::vector<TranslatedProbe>& rows);
std::vector<TranslatedProbe> read_translations(const std::filesystem::path& path);

void write_labels(const std::filesystem::path& path, const std::vector<LabeledResult>& rows);
std::vector<LabeledResult> read_labels(const std::filesystem::path& path);

}  // namespace mtbias
