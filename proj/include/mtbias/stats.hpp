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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtbias/classifier.hpp"
#include "mtbias/corpus.hpp"
#include "mtbias/probes.hpp"

namespace mtbias {

// One classified translation. Category and group are empty for adjectives.
struct LabeledResult {
  std::string probe_id;
  std::string language;  // language code
  SubjectKind kind = SubjectKind::Occupation;
  std::string subject;
  std::size_t template_index = 0;
  std::string category;
  std::string group;
  GenderLabel label = GenderLabel::Undetermined;
  bool conflict = false;

  friend bool operator==(const LabeledResult&, const LabeledResult&) = default;
};

// What a scope selects on the subject side.
enum class ScopeAxis {
  Occupations,  // every occupation probe
  Category,     // occupation probes of one category
  Group,        // occupation probes of one merged group
  Adjectives,   // every adjective probe
  Adjective,    // probes of one adjective
};

struct Scope {
  std::string language;  // empty selects all languages
  ScopeAxis axis = ScopeAxis::Occupations;
  std::string value;     // category, group or adjective; unused otherwise

  bool contains(const LabeledResult& r) const;
  std::string describe() const;
};

struct CellStats {
  Scope scope;
  std::size_t n_probes = 0;
  std::size_t counts[4] = {0, 0, 0, 0};  // indexed by GenderLabel
  double pct_female = 0.0;
  double pct_male = 0.0;
  double pct_neutral = 0.0;
  double pct_undetermined = 0.0;

  std::size_t count(GenderLabel label) const { return counts[static_cast<int>(label)]; }
  double pct(GenderLabel label) const;
};

// Fractions of each label among the probes selected by `scope`. Throws
// EmptyScope when nothing is selected.
CellStats cell_stats(std::span<const LabeledResult> results, const Scope& scope);

enum class Grouping { Category, Group };

enum class HistogramVariable {
  FemaleCount,
  MaleCount,
  NeutralCount,
  ParticipationQuantile,
  TranslatedFemaleQuantile,
};

std::string_view to_string(HistogramVariable variable);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;                // exclusive, except for the last bin
  std::vector<std::size_t> counts;   // aligned with HistogramSpec::groups

  std::size_t total() const;
};

struct HistogramSpec {
  HistogramVariable variable = HistogramVariable::FemaleCount;
  std::vector<std::string> groups;
  std::vector<HistogramBin> bins;

  std::size_t total() const;
};

// For every occupation, the number of its probes (over all languages and
// templates present in `results`) labeled `gender`. Bins are the integers
// 0..max probes per occupation; subcounts are split by group or category,
// sorted by name. Adjective results are ignored. Throws
// std::invalid_argument for Undetermined.
HistogramSpec pronoun_count_histogram(std::span<const LabeledResult> results,
                                      GenderLabel gender,
                                      Grouping grouping = Grouping::Group);

struct Heatmap {
  GenderLabel gender = GenderLabel::Female;
  Grouping grouping = Grouping::Group;
  std::vector<std::string> rows;     // language codes
  std::vector<std::string> columns;  // groups or categories
  std::vector<std::vector<double>> values;  // NaN marks an empty cell
};

// Fraction of `gender` per (language, group) over occupation probes. Rows
// and columns are each sorted ascending by their mean over non-empty
// cells, ties broken by name.
Heatmap heatmap(std::span<const LabeledResult> results, GenderLabel gender,
                Grouping grouping = Grouping::Group);

enum class Hypothesis {
  MaleOverFemale,
  MaleOverNeutral,
  NeutralOverFemale,
  ParticipationOverTranslatedFemale,
};

enum class Verdict { Reject, Accept, AcceptComplementRejected, Degenerate };

std::string_view to_string(Hypothesis hypothesis);
std::string_view to_string(Verdict verdict);

struct TestResult {
  Hypothesis hypothesis = Hypothesis::MaleOverFemale;
  Scope scope;
  std::size_t n = 0;
  double t = 0.0;
  std::size_t df = 0;
  double p = 1.0;
  // p of the reverse test; computed whenever the main test is not rejected.
  std::optional<double> complement_p;
  Verdict verdict = Verdict::Accept;
  double alpha = 0.05;
};

// Tests mean(x - y) > 0 with a one-sided paired t-test. Zero spread with a
// nonzero mean gives t = +-inf and p = 0 or 1; all-zero differences give
// Degenerate with t = 0 and p = 1. Throws std::invalid_argument when the
// sizes differ, n < 2, or alpha is outside (0, 1).
TestResult paired_one_sided_t_test(std::span<const double> x, std::span<const double> y,
                                   double alpha);

// Table of paired tests: one column per language plus "Total", one row per
// requested group or category plus "Total". Items are occupations with at
// least one probe in the cell; cells with fewer than two are empty.
struct TestMatrix {
  Hypothesis hypothesis = Hypothesis::MaleOverFemale;
  Grouping grouping = Grouping::Group;
  double alpha = 0.05;
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<TestResult>>> cells;
};

inline constexpr std::string_view kTotal = "Total";

TestMatrix test_matrix(std::span<const LabeledResult> results, Hypothesis hypothesis,
                       double alpha, Grouping grouping,
                       std::span<const std::string> row_names,
                       std::span<const std::string> languages);

struct ParticipationComparison {
  HistogramSpec participation;
  HistogramSpec translated_female;
  TestResult test;
  std::vector<std::string> occupations;  // compared, in record order
  std::vector<std::string> excluded;     // no labeled probe
  double mean_participation = 0.0;
  double mean_translated_female = 0.0;
  double variance_participation = 0.0;          // sample variance
  double variance_translated_female = 0.0;
};

inline constexpr std::size_t kComparisonBins = 12;

// Per occupation, the fraction of its probes labeled Female, compared with
// its participation: 12 equal-width bins over [0, 1] for each, and the
// paired test of participation over translated-female frequency.
ParticipationComparison participation_comparison(
    std::span<const OccupationRecord> records, std::span<const LabeledResult> results,
    double alpha);

}  // namespace mtbias
