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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "mtbias/errors.hpp"
#include "mtbias/stats.hpp"
#include "mtbias/student_t.hpp"
#include "support.hpp"

using namespace mtbias;
using mtbias::testing::t_sf_oracle;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LabeledResult occ(std::string lang, std::string subject, std::string group, GenderLabel label,
                  std::string category = "") {
  LabeledResult r;
  r.language = std::move(lang);
  r.subject = std::move(subject);
  r.group = std::move(group);
  r.category = category.empty() ? r.group + " category" : std::move(category);
  r.label = label;
  r.probe_id = "occupation:" + r.language + ":0:" + r.subject;
  return r;
}

LabeledResult adj(std::string lang, std::string word, GenderLabel label) {
  LabeledResult r;
  r.language = std::move(lang);
  r.subject = std::move(word);
  r.kind = SubjectKind::Adjective;
  r.label = label;
  return r;
}

std::vector<LabeledResult> random_results(std::mt19937_64& rng, std::size_t n) {
  const char* langs[] = {"hu", "tr", "eu", "bn"};
  const char* groups[] = {"STEM", "Healthcare", "Legal"};
  std::vector<LabeledResult> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = occ(langs[rng() % 4], "job" + std::to_string(rng() % 15), groups[rng() % 3],
                 kAllLabels[rng() % 4]);
    // keep each occupation in one group
    r.group = groups[std::hash<std::string>{}(r.subject) % 3];
    r.category = r.group + " category";
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("incomplete beta closed forms") {
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    CHECK(stats::regularized_incomplete_beta(1, 1, x) == doctest::Approx(x).epsilon(1e-14));
    CHECK(stats::regularized_incomplete_beta(3, 1, x) ==
          doctest::Approx(x * x * x).epsilon(1e-13));
  }
  for (double a : {0.5, 2.0, 7.5, 40.0}) {
    CHECK(std::abs(stats::regularized_incomplete_beta(a, a, 0.5) - 0.5) < 1e-13);
  }
  CHECK_THROWS_AS(stats::regularized_incomplete_beta(0, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(stats::regularized_incomplete_beta(1, 1, 1.5), std::invalid_argument);
}

TEST_CASE("student t tail: closed forms for df 1 and 2") {
  for (double t : {-30.0, -2.0, -0.3, 0.0, 0.4, 1.0, 3.0, 100.0}) {
    const double cauchy = 0.5 - std::atan(t) / M_PI;
    const double df2 = 0.5 - t / (2.0 * std::sqrt(2.0 + t * t));
    CHECK(std::abs(stats::student_t_sf(t, 1) - cauchy) < 1e-12);
    CHECK(std::abs(stats::student_t_sf(t, 2) - df2) < 1e-12);
  }
  CHECK(stats::student_t_sf(kInf, 5) == 0.0);
  CHECK(stats::student_t_sf(-kInf, 5) == 1.0);
  CHECK(stats::student_t_cdf(0.0, 9) == doctest::Approx(0.5));
}

TEST_CASE("student t tail agrees with quadrature of the density") {
  for (double df : {1.0, 2.0, 3.0, 5.0, 9.0, 17.0, 29.0, 120.0}) {
    for (double t : {-6.0, -2.5, -1.0, -0.1, 0.0, 0.2, 0.9, 1.7, 3.3, 8.0, 25.0}) {
      const double ours = stats::student_t_sf(t, df);
      const double oracle = t_sf_oracle(t, df);
      CHECK_MESSAGE(std::abs(ours - oracle) < 1e-12, "df=", df, " t=", t);
    }
  }
}

TEST_CASE("paired test: forced separation and degenerate input") {
  const std::vector<double> ones{1, 1, 1, 1};
  const std::vector<double> zeros{0, 0, 0, 0};
  const auto sep = paired_one_sided_t_test(ones, zeros, 0.05);
  CHECK(sep.t == kInf);
  CHECK(sep.p == 0.0);
  CHECK(sep.verdict == Verdict::Reject);
  CHECK(sep.df == 3);

  const auto rev = paired_one_sided_t_test(zeros, ones, 0.05);
  CHECK(rev.p == 1.0);
  CHECK(rev.verdict == Verdict::AcceptComplementRejected);

  const auto deg = paired_one_sided_t_test(ones, ones, 0.05);
  CHECK(deg.verdict == Verdict::Degenerate);
  CHECK(deg.p >= 0.0);
  CHECK(deg.p <= 1.0);
}

TEST_CASE("paired test: verdicts against a hand computation") {
  // d = {1, 2, 0, 1}: mean 1, sd sqrt(2/3), t = 1 * 2 / sqrt(2/3)
  const std::vector<double> x{3, 4, 2, 5};
  const std::vector<double> y{2, 2, 2, 4};
  const auto r = paired_one_sided_t_test(x, y, 0.05);
  CHECK(r.t == doctest::Approx(2.0 / std::sqrt(2.0 / 3.0)));
  CHECK(r.p == doctest::Approx(t_sf_oracle(r.t, 3)).epsilon(1e-10));
  CHECK(r.verdict == Verdict::Reject);

  const std::vector<double> a{1, 0, 2, 1, 0};
  const std::vector<double> b{0, 1, 1, 1, 1};
  const auto m = paired_one_sided_t_test(a, b, 0.05);
  CHECK(m.verdict == Verdict::Accept);
  REQUIRE(m.complement_p.has_value());
  CHECK(*m.complement_p == doctest::Approx(1.0 - m.p));

  CHECK_THROWS_AS(paired_one_sided_t_test(std::vector<double>{1}, std::vector<double>{0}, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(paired_one_sided_t_test(x, std::vector<double>{1, 2}, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(paired_one_sided_t_test(x, y, 1.5), std::invalid_argument);
}

TEST_CASE("paired test: p decreases as the mean difference grows") {
  const std::vector<double> base{-1.0, 0.5, 1.0, -0.5, 0.0, 2.0};
  const std::vector<double> zero(base.size(), 0.0);
  double prev = 2.0;
  for (double shift = -2.0; shift <= 2.0; shift += 0.25) {
    std::vector<double> x = base;
    for (auto& v : x) v += shift;
    const auto r = paired_one_sided_t_test(x, zero, 0.05);
    CHECK(r.p <= prev);
    prev = r.p;
  }
}

TEST_CASE("cell stats: single probe and empty scope") {
  const std::vector<LabeledResult> one{occ("hu", "engineer", "STEM", GenderLabel::Male)};
  const auto c = cell_stats(one, {});
  CHECK(c.n_probes == 1);
  CHECK(c.pct_female == 0.0);
  CHECK(c.pct_male == 1.0);
  CHECK(c.pct_neutral == 0.0);
  CHECK(c.pct_undetermined == 0.0);
  CHECK_THROWS_AS(cell_stats(one, {"tr", ScopeAxis::Occupations, ""}), EmptyScope);
  CHECK_THROWS_AS(cell_stats(one, {"", ScopeAxis::Adjectives, ""}), EmptyScope);
}

TEST_CASE("cell stats: scopes select the right probes") {
  const std::vector<LabeledResult> rs{
      occ("hu", "nurse", "Healthcare", GenderLabel::Female),
      occ("tr", "nurse", "Healthcare", GenderLabel::Male),
      occ("hu", "engineer", "STEM", GenderLabel::Male),
      adj("hu", "Guilty", GenderLabel::Male),
      adj("tr", "Guilty", GenderLabel::Undetermined),
  };
  CHECK(cell_stats(rs, {}).n_probes == 3);
  CHECK(cell_stats(rs, {"", ScopeAxis::Group, "Healthcare"}).pct_female == 0.5);
  CHECK(cell_stats(rs, {"hu", ScopeAxis::Occupations, ""}).n_probes == 2);
  const auto g = cell_stats(rs, {"", ScopeAxis::Adjective, "Guilty"});
  CHECK(g.pct_male == 0.5);
  CHECK(g.pct_undetermined == 0.5);
}

TEST_CASE("cell stats: totals are probe weighted") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    const auto rs = random_results(rng, 1 + rng() % 80);
    const auto total = cell_stats(rs, {});
    double sum = 0.0;
    std::size_t n = 0;
    for (const char* g : {"STEM", "Healthcare", "Legal"}) {
      try {
        const auto c = cell_stats(rs, {"", ScopeAxis::Group, g});
        sum += c.pct_female * static_cast<double>(c.n_probes);
        n += c.n_probes;
      } catch (const EmptyScope&) {
      }
    }
    CHECK(n == total.n_probes);
    CHECK(std::abs(sum / static_cast<double>(n) - total.pct_female) < 1e-12);
  }
}

TEST_CASE("histogram: all-male occupation lands in bin 12") {
  std::vector<LabeledResult> rs;
  for (int i = 0; i < 12; ++i) {
    rs.push_back(occ("l" + std::to_string(i), "engineer", "STEM", GenderLabel::Male));
    rs.push_back(occ("l" + std::to_string(i), "nurse", "Healthcare",
                     i < 3 ? GenderLabel::Male : GenderLabel::Female));
  }
  const auto h = pronoun_count_histogram(rs, GenderLabel::Male);
  REQUIRE(h.bins.size() == 13);
  CHECK(h.variable == HistogramVariable::MaleCount);
  CHECK(h.groups == std::vector<std::string>{"Healthcare", "STEM"});
  CHECK(h.bins[12].counts == std::vector<std::size_t>{0, 1});
  CHECK(h.bins[3].counts == std::vector<std::size_t>{1, 0});
  CHECK(h.total() == 2);
  CHECK_THROWS_AS(pronoun_count_histogram(rs, GenderLabel::Undetermined), std::invalid_argument);
}

TEST_CASE("histogram: matches a brute-force recount") {
  std::mt19937_64 rng(5);
  const auto rs = random_results(rng, 400);
  for (auto g : {GenderLabel::Female, GenderLabel::Male, GenderLabel::Neutral}) {
    const auto h = pronoun_count_histogram(rs, g, Grouping::Category);
    std::map<std::string, std::size_t> hits;
    std::set<std::string> subjects;
    for (const auto& r : rs) {
      subjects.insert(r.subject);
      if (r.label == g) ++hits[r.subject];
    }
    CHECK(h.total() == subjects.size());
    for (std::size_t k = 0; k < h.bins.size(); ++k) {
      std::size_t expected = 0;
      for (const auto& s : subjects) expected += (hits[s] == k);
      CHECK(h.bins[k].total() == expected);
    }
  }
}

TEST_CASE("heatmap: sorted axes, consistency and permutation invariance") {
  std::mt19937_64 rng(9);
  auto rs = random_results(rng, 300);
  const auto h = heatmap(rs, GenderLabel::Female);
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    for (std::size_t j = 0; j < h.columns.size(); ++j) {
      const double v = h.values[i][j];
      try {
        const auto c = cell_stats(rs, {h.rows[i], ScopeAxis::Group, h.columns[j]});
        CHECK(v == c.pct_female);
      } catch (const EmptyScope&) {
        CHECK(std::isnan(v));
      }
    }
  }
  std::shuffle(rs.begin(), rs.end(), rng);
  const auto again = heatmap(rs, GenderLabel::Female);
  CHECK(again.rows == h.rows);
  CHECK(again.columns == h.columns);

  std::vector<LabeledResult> flat;
  for (const char* l : {"zh", "eu", "ms"}) {
    for (const char* g : {"Legal", "Corporate", "STEM"}) {
      flat.push_back(occ(l, std::string(g) + "job", g, GenderLabel::Male));
    }
  }
  const auto f = heatmap(flat, GenderLabel::Male);
  CHECK(f.rows == std::vector<std::string>{"eu", "ms", "zh"});
  CHECK(f.columns == std::vector<std::string>{"Corporate", "Legal", "STEM"});
}

TEST_CASE("test matrix: layout and cells") {
  std::vector<LabeledResult> rs;
  for (int i = 0; i < 6; ++i) {
    const std::string job = "job" + std::to_string(i);
    rs.push_back(occ("hu", job, "STEM", GenderLabel::Male));
    rs.push_back(occ("eu", job, "STEM", GenderLabel::Neutral));
  }
  rs.push_back(occ("hu", "lonely", "Legal", GenderLabel::Female));
  const std::vector<std::string> rows{"STEM", "Legal"};
  const std::vector<std::string> langs{"hu", "eu"};
  const auto m = test_matrix(rs, Hypothesis::MaleOverFemale, 0.05, Grouping::Group, rows, langs);
  CHECK(m.rows == std::vector<std::string>{"STEM", "Legal", "Total"});
  CHECK(m.columns == std::vector<std::string>{"hu", "eu", "Total"});
  REQUIRE(m.cells[0][0].has_value());
  CHECK(m.cells[0][0]->verdict == Verdict::Reject);
  REQUIRE(m.cells[0][1].has_value());
  CHECK(m.cells[0][1]->verdict == Verdict::Degenerate);
  CHECK_FALSE(m.cells[1][0].has_value());  // a single occupation
  CHECK(m.cells[2][2]->n == 7);

  const auto mn = test_matrix(rs, Hypothesis::MaleOverNeutral, 0.05, Grouping::Group, rows, langs);
  CHECK(mn.cells[0][1]->verdict == Verdict::AcceptComplementRejected);
}

TEST_CASE("participation comparison") {
  std::vector<OccupationRecord> recs;
  std::vector<LabeledResult> rs;
  for (int i = 0; i < 8; ++i) {
    const std::string name = "job" + std::to_string(i);
    recs.push_back({name, "c", "g", i / 8.0, ParticipationSource::Direct});
    for (int k = 0; k < 8; ++k) {
      rs.push_back(occ("l" + std::to_string(k), name, "g",
                       k < i ? GenderLabel::Female : GenderLabel::Male));
    }
  }
  recs.push_back({"ghost", "c", "g", 0.5, ParticipationSource::Direct});

  const auto same = participation_comparison(recs, rs, 0.05);
  CHECK(same.excluded == std::vector<std::string>{"ghost"});
  CHECK(same.occupations.size() == 8);
  CHECK(same.test.verdict == Verdict::Degenerate);
  CHECK(same.test.hypothesis == Hypothesis::ParticipationOverTranslatedFemale);
  REQUIRE(same.participation.bins.size() == 12);
  CHECK(same.participation.total() == 8);
  CHECK(same.translated_female.total() == 8);
  CHECK(same.mean_participation == doctest::Approx(same.mean_translated_female));

  for (auto& r : recs) r.female_participation = std::min(1.0, r.female_participation + 0.3);
  const auto higher = participation_comparison(recs, rs, 0.05);
  CHECK(higher.test.verdict == Verdict::Reject);
  CHECK(higher.participation.bins.back().total() >= 1);  // value 1.0 lands in the last bin
}
