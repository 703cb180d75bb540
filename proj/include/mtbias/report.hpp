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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtbias/stats.hpp"
#include "mtbias/translator.hpp"

namespace mtbias {

enum class BackendKind { Fixture, Live };

// Everything a run needs. Paths are kept as written in the config file and
// resolved against `base_dir` on use, so the manifest echo does not depend
// on where the repository lives.
struct RunConfig {
  std::filesystem::path base_dir;

  std::string occupations = "occupations.tsv";
  std::string categories = "categories.tsv";
  std::string gendered_words = "gendered_words.txt";
  std::string generic_phrases = "generic_phrases.txt";
  std::string adjectives = "adjectives.txt";
  std::string registry = "languages.jsonl";
  std::string lexicon = "lexicon.txt";

  BackendKind backend = BackendKind::Fixture;
  std::string snapshot = "fixture/snapshot.tsv";
  BackendConfig live;

  double alpha = 0.05;
  std::filesystem::path out_dir = "out";
  std::vector<std::string> languages;        // empty: every included language
  std::vector<std::string> category_filter;  // category or group names
  bool deterministic = true;

  // Parses a JSON config; `base_dir` anchors relative paths. Unknown keys
  // are a ConfigError.
  static RunConfig parse(std::string_view json, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  std::filesystem::path resolve(const std::string& path) const;

  // Throws ConfigError.
  void validate() const;

  // The config as canonical JSON, without the output directory.
  std::string echo() const;
};

BackendKind parse_backend_kind(std::string_view s);
std::string_view to_string(BackendKind kind);

std::shared_ptr<TranslationBackend> make_backend(const RunConfig& config);

// Output tree layout, relative to the run directory.
namespace paths {
inline constexpr std::string_view kOccupations = "corpus/occupations.tsv";
inline constexpr std::string_view kExcluded = "corpus/excluded.tsv";
inline constexpr std::string_view kCategories = "corpus/categories.tsv";
inline constexpr std::string_view kAdjectives = "corpus/adjectives.tsv";
inline constexpr std::string_view kProbes = "probes.tsv";
inline constexpr std::string_view kUnavailable = "unavailable.tsv";
inline constexpr std::string_view kTranslations = "translations.tsv";
inline constexpr std::string_view kLabels = "labels.tsv";
inline constexpr std::string_view kComparison = "comparison.tsv";
inline constexpr std::string_view kManifest = "manifest.json";
}  // namespace paths

// Pipeline stages. Each reads the files of the stages before it from
// `config.out_dir` and writes its own.
void run_ingest(const RunConfig& config);
void run_probes(const RunConfig& config, TranslationBackend& backend);
void run_translate(const RunConfig& config, TranslationBackend& backend);
void run_classify(const RunConfig& config);
void run_stats(const RunConfig& config);
void run_report(const RunConfig& config);

// All stages in order with the configured backend.
void run_audit(const RunConfig& config);

// Cell text of a test matrix: the p-value to three decimals, "<alpha" when
// rejected, "*" for the degenerate case, "n/a" when too few items.
std::string test_marker(const std::optional<TestResult>& result);

// "none", "accept" or "accept-complement-rejected".
std::string test_shading(const std::optional<TestResult>& result);

// Percentage of a fraction rounded half-up to three decimals.
std::string format_pct(double fraction);

}  // namespace mtbias
