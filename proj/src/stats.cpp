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

#include "mtbias/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "mtbias/errors.hpp"
#include "mtbias/student_t.hpp"

namespace mtbias {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

int index_of(GenderLabel label) { return static_cast<int>(label); }

const std::string& grouping_key(const LabeledResult& r, Grouping grouping) {
  return grouping == Grouping::Group ? r.group : r.category;
}

struct LabelCounts {
  std::size_t counts[4] = {0, 0, 0, 0};
  std::size_t total = 0;

  void add(GenderLabel label) {
    ++counts[index_of(label)];
    ++total;
  }
  double of(GenderLabel label) const { return static_cast<double>(counts[index_of(label)]); }
};

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

// Sorts `names` ascending by their score; ties keep lexicographic order.
std::vector<std::size_t> order_by_mean(const std::vector<std::string>& names,
                                       const std::vector<double>& scores) {
  std::vector<std::size_t> idx(names.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](std::size_t i) {
    // Empty rows or columns sort last.
    return std::isnan(scores[i]) ? kInf : scores[i];
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ka = key(a);
    const double kb = key(b);
    return ka != kb ? ka < kb : names[a] < names[b];
  });
  return idx;
}

std::pair<GenderLabel, GenderLabel> hypothesis_labels(Hypothesis h) {
  switch (h) {
    case Hypothesis::MaleOverFemale: return {GenderLabel::Male, GenderLabel::Female};
    case Hypothesis::MaleOverNeutral: return {GenderLabel::Male, GenderLabel::Neutral};
    case Hypothesis::NeutralOverFemale: return {GenderLabel::Neutral, GenderLabel::Female};
    case Hypothesis::ParticipationOverTranslatedFemale: break;
  }
  throw std::invalid_argument("hypothesis is not a pronoun comparison");
}

}  // namespace

bool Scope::contains(const LabeledResult& r) const {
  if (!language.empty() && r.language != language) return false;
  switch (axis) {
    case ScopeAxis::Occupations: return r.kind == SubjectKind::Occupation;
    case ScopeAxis::Category:
      return r.kind == SubjectKind::Occupation && r.category == value;
    case ScopeAxis::Group: return r.kind == SubjectKind::Occupation && r.group == value;
    case ScopeAxis::Adjectives: return r.kind == SubjectKind::Adjective;
    case ScopeAxis::Adjective: return r.kind == SubjectKind::Adjective && r.subject == value;
  }
  return false;
}

std::string Scope::describe() const {
  std::string lang = language.empty() ? "all languages" : language;
  switch (axis) {
    case ScopeAxis::Occupations: return lang + " / all occupations";
    case ScopeAxis::Adjectives: return lang + " / all adjectives";
    case ScopeAxis::Category: return lang + " / category " + value;
    case ScopeAxis::Group: return lang + " / group " + value;
    case ScopeAxis::Adjective: return lang + " / adjective " + value;
  }
  return lang;
}

double CellStats::pct(GenderLabel label) const {
  switch (label) {
    case GenderLabel::Female: return pct_female;
    case GenderLabel::Male: return pct_male;
    case GenderLabel::Neutral: return pct_neutral;
    case GenderLabel::Undetermined: return pct_undetermined;
  }
  return 0.0;
}

CellStats cell_stats(std::span<const LabeledResult> results, const Scope& scope) {
  CellStats out;
  out.scope = scope;
  for (const auto& r : results) {
    if (!scope.contains(r)) continue;
    ++out.counts[index_of(r.label)];
    ++out.n_probes;
  }
  if (out.n_probes == 0) throw EmptyScope("no results in scope " + scope.describe());
  const double n = static_cast<double>(out.n_probes);
  out.pct_female = out.count(GenderLabel::Female) / n;
  out.pct_male = out.count(GenderLabel::Male) / n;
  out.pct_neutral = out.count(GenderLabel::Neutral) / n;
  out.pct_undetermined = out.count(GenderLabel::Undetermined) / n;
  return out;
}

std::string_view to_string(HistogramVariable variable) {
  switch (variable) {
    case HistogramVariable::FemaleCount: return "female_count";
    case HistogramVariable::MaleCount: return "male_count";
    case HistogramVariable::NeutralCount: return "neutral_count";
    case HistogramVariable::ParticipationQuantile: return "participation";
    case HistogramVariable::TranslatedFemaleQuantile: return "translated_female";
  }
  return "?";
}

std::size_t HistogramBin::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

std::size_t HistogramSpec::total() const {
  std::size_t sum = 0;
  for (const auto& b : bins) sum += b.total();
  return sum;
}

HistogramSpec pronoun_count_histogram(std::span<const LabeledResult> results,
                                      GenderLabel gender, Grouping grouping) {
  HistogramSpec spec;
  switch (gender) {
    case GenderLabel::Female: spec.variable = HistogramVariable::FemaleCount; break;
    case GenderLabel::Male: spec.variable = HistogramVariable::MaleCount; break;
    case GenderLabel::Neutral: spec.variable = HistogramVariable::NeutralCount; break;
    case GenderLabel::Undetermined:
      throw std::invalid_argument("no histogram for undetermined outputs");
  }

  struct PerOccupation {
    std::string group;
    std::size_t hits = 0;
    std::size_t probes = 0;
  };
  std::map<std::string, PerOccupation> per;
  std::set<std::string> groups;
  for (const auto& r : results) {
    if (r.kind != SubjectKind::Occupation) continue;
    auto& o = per[r.subject];
    o.group = grouping_key(r, grouping);
    ++o.probes;
    if (r.label == gender) ++o.hits;
    groups.insert(o.group);
  }
  spec.groups.assign(groups.begin(), groups.end());

  std::size_t max_probes = 0;
  for (const auto& [_, o] : per) max_probes = std::max(max_probes, o.probes);
  for (std::size_t k = 0; k <= max_probes; ++k) {
    spec.bins.push_back({static_cast<double>(k), static_cast<double>(k + 1),
                         std::vector<std::size_t>(spec.groups.size(), 0)});
  }
  for (const auto& [_, o] : per) {
    const auto g = std::lower_bound(spec.groups.begin(), spec.groups.end(), o.group) -
                   spec.groups.begin();
    ++spec.bins[o.hits].counts[static_cast<std::size_t>(g)];
  }
  return spec;
}

Heatmap heatmap(std::span<const LabeledResult> results, GenderLabel gender,
                Grouping grouping) {
  std::map<std::pair<std::string, std::string>, LabelCounts> cells;
  std::set<std::string> languages;
  std::set<std::string> columns;
  for (const auto& r : results) {
    if (r.kind != SubjectKind::Occupation) continue;
    const auto& col = grouping_key(r, grouping);
    cells[{r.language, col}].add(r.label);
    languages.insert(r.language);
    columns.insert(col);
  }

  // Canonical (lexicographic) layout first, so that the marginal means are
  // computed in the same order whatever the input order was.
  const std::vector<std::string> row_names(languages.begin(), languages.end());
  const std::vector<std::string> col_names(columns.begin(), columns.end());
  std::vector<std::vector<double>> grid(row_names.size(),
                                        std::vector<double>(col_names.size(), kNaN));
  for (std::size_t i = 0; i < row_names.size(); ++i) {
    for (std::size_t j = 0; j < col_names.size(); ++j) {
      auto it = cells.find({row_names[i], col_names[j]});
      if (it != cells.end()) grid[i][j] = it->second.of(gender) / it->second.total;
    }
  }

  auto marginal = [](auto&& cell_at, std::size_t n) {
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = cell_at(k);
      if (std::isnan(v)) continue;
      sum += v;
      ++used;
    }
    return used ? sum / static_cast<double>(used) : kNaN;
  };
  std::vector<double> row_mean(row_names.size());
  std::vector<double> col_mean(col_names.size());
  for (std::size_t i = 0; i < row_names.size(); ++i) {
    row_mean[i] = marginal([&](std::size_t j) { return grid[i][j]; }, col_names.size());
  }
  for (std::size_t j = 0; j < col_names.size(); ++j) {
    col_mean[j] = marginal([&](std::size_t i) { return grid[i][j]; }, row_names.size());
  }
  const auto row_order = order_by_mean(row_names, row_mean);
  const auto col_order = order_by_mean(col_names, col_mean);

  Heatmap out;
  out.gender = gender;
  out.grouping = grouping;
  for (auto i : row_order) out.rows.push_back(row_names[i]);
  for (auto j : col_order) out.columns.push_back(col_names[j]);
  out.values.assign(out.rows.size(), std::vector<double>(out.columns.size(), kNaN));
  for (std::size_t a = 0; a < row_order.size(); ++a) {
    for (std::size_t b = 0; b < col_order.size(); ++b) {
      out.values[a][b] = grid[row_order[a]][col_order[b]];
    }
  }
  return out;
}

std::string_view to_string(Hypothesis hypothesis) {
  switch (hypothesis) {
    case Hypothesis::MaleOverFemale: return "male_over_female";
    case Hypothesis::MaleOverNeutral: return "male_over_neutral";
    case Hypothesis::NeutralOverFemale: return "neutral_over_female";
    case Hypothesis::ParticipationOverTranslatedFemale:
      return "participation_over_translated_female";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Reject: return "reject";
    case Verdict::Accept: return "accept";
    case Verdict::AcceptComplementRejected: return "accept-complement-rejected";
    case Verdict::Degenerate: return "degenerate";
  }
  return "?";
}

TestResult paired_one_sided_t_test(std::span<const double> x, std::span<const double> y,
                                   double alpha) {
  if (x.size() != y.size()) throw std::invalid_argument("paired samples differ in size");
  if (x.size() < 2) throw std::invalid_argument("paired test needs at least two items");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");

  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];

  TestResult out;
  out.n = n;
  out.df = n - 1;
  out.alpha = alpha;

  if (std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; })) {
    out.t = 0.0;
    out.p = 1.0;
    out.verdict = Verdict::Degenerate;
    return out;
  }

  const double m = mean(d);
  const double sd = std::sqrt(sample_variance(d));
  const double df = static_cast<double>(out.df);
  if (sd == 0.0) {
    out.t = m > 0.0 ? kInf : -kInf;
  } else {
    out.t = m * std::sqrt(static_cast<double>(n)) / sd;
  }
  out.p = stats::student_t_sf(out.t, df);
  if (out.p < alpha) {
    out.verdict = Verdict::Reject;
    return out;
  }
  out.complement_p = stats::student_t_sf(-out.t, df);
  out.verdict = *out.complement_p < alpha ? Verdict::AcceptComplementRejected
                                          : Verdict::Accept;
  return out;
}

TestMatrix test_matrix(std::span<const LabeledResult> results, Hypothesis hypothesis,
                       double alpha, Grouping grouping,
                       std::span<const std::string> row_names,
                       std::span<const std::string> languages) {
  const auto [x_label, y_label] = hypothesis_labels(hypothesis);

  TestMatrix out;
  out.hypothesis = hypothesis;
  out.grouping = grouping;
  out.alpha = alpha;
  out.rows.assign(row_names.begin(), row_names.end());
  out.rows.emplace_back(kTotal);
  out.columns.assign(languages.begin(), languages.end());
  out.columns.emplace_back(kTotal);
  out.cells.assign(out.rows.size(),
                   std::vector<std::optional<TestResult>>(out.columns.size()));

  // (row, column) -> occupation -> counts. Every result feeds its own cell
  // and the three Total cells it belongs to.
  std::map<std::pair<std::string, std::string>, std::map<std::string, LabelCounts>> cells;
  const std::set<std::string> wanted_rows(row_names.begin(), row_names.end());
  const std::set<std::string> wanted_cols(languages.begin(), languages.end());
  const std::string total(kTotal);
  for (const auto& r : results) {
    if (r.kind != SubjectKind::Occupation) continue;
    if (!wanted_cols.contains(r.language)) continue;
    const auto& key = grouping_key(r, grouping);
    const bool in_row = wanted_rows.contains(key);
    if (in_row) {
      cells[{key, r.language}][r.subject].add(r.label);
      cells[{key, total}][r.subject].add(r.label);
    }
    cells[{total, r.language}][r.subject].add(r.label);
    cells[{total, total}][r.subject].add(r.label);
  }

  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    for (std::size_t j = 0; j < out.columns.size(); ++j) {
      auto it = cells.find({out.rows[i], out.columns[j]});
      if (it == cells.end() || it->second.size() < 2) continue;
      std::vector<double> xs;
      std::vector<double> ys;
      for (const auto& [_, c] : it->second) {
        xs.push_back(c.of(x_label));
        ys.push_back(c.of(y_label));
      }
      TestResult t = paired_one_sided_t_test(xs, ys, alpha);
      t.hypothesis = hypothesis;
      t.scope.language = out.columns[j] == total ? "" : out.columns[j];
      if (out.rows[i] == total) {
        t.scope.axis = ScopeAxis::Occupations;
      } else {
        t.scope.axis = grouping == Grouping::Group ? ScopeAxis::Group : ScopeAxis::Category;
        t.scope.value = out.rows[i];
      }
      out.cells[i][j] = std::move(t);
    }
  }
  return out;
}

ParticipationComparison participation_comparison(
    std::span<const OccupationRecord> records, std::span<const LabeledResult> results,
    double alpha) {
  std::map<std::string, LabelCounts> per;
  for (const auto& r : results) {
    if (r.kind == SubjectKind::Occupation) per[r.subject].add(r.label);
  }

  ParticipationComparison out;
  std::vector<double> participation;
  std::vector<double> translated;
  for (const auto& rec : records) {
    auto it = per.find(rec.name);
    if (it == per.end() || it->second.total == 0) {
      out.excluded.push_back(rec.name);
      continue;
    }
    out.occupations.push_back(rec.name);
    participation.push_back(rec.female_participation);
    translated.push_back(it->second.of(GenderLabel::Female) / it->second.total);
  }
  if (participation.size() < 2) {
    throw EmptyScope("participation comparison needs at least two occupations with probes");
  }

  auto binned = [](HistogramVariable variable, std::span<const double> values) {
    HistogramSpec spec;
    spec.variable = variable;
    spec.groups = {"All"};
    for (std::size_t k = 0; k < kComparisonBins; ++k) {
      spec.bins.push_back({static_cast<double>(k) / kComparisonBins,
                           static_cast<double>(k + 1) / kComparisonBins, {0}});
    }
    for (double v : values) {
      auto k = static_cast<std::size_t>(std::floor(v * kComparisonBins));
      ++spec.bins[std::min(k, kComparisonBins - 1)].counts[0];
    }
    return spec;
  };
  out.participation = binned(HistogramVariable::ParticipationQuantile, participation);
  out.translated_female = binned(HistogramVariable::TranslatedFemaleQuantile, translated);

  out.mean_participation = mean(participation);
  out.mean_translated_female = mean(translated);
  out.variance_participation = sample_variance(participation);
  out.variance_translated_female = sample_variance(translated);

  out.test = paired_one_sided_t_test(participation, translated, alpha);
  out.test.hypothesis = Hypothesis::ParticipationOverTranslatedFemale;
  return out;
}

}  // namespace mtbias
