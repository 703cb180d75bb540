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

#include <numeric>

#include "mtbias/corpus.hpp"
#include "mtbias/delimited.hpp"
#include "mtbias/errors.hpp"
#include "mtbias/text.hpp"
#include "support.hpp"

using namespace mtbias;
using mtbias::testing::data_dir;
using mtbias::testing::scratch_dir;
using mtbias::testing::write_text;

namespace {

OccupationCorpus shipped_corpus() {
  const auto d = data_dir();
  return load_occupations(
      d / "occupations.tsv", d / "categories.tsv",
      ExclusionLists::load(d / "gendered_words.txt", d / "generic_phrases.txt"));
}

const char* kCategories =
    "# delimiter: tab\n"
    "category\tgroup\tparticipation_percent\n"
    "Healthcare support\tHealthcare\t87.1\n"
    "Architecture and engineering\tSTEM\t16.2\n";

}  // namespace

TEST_CASE("text: lowercase handles several scripts") {
  CHECK(text::lowercase("ÁPOLÓNŐ") == "ápolónő");
  CHECK(text::lowercase("İSTANBUL") == "istanbul");
  CHECK(text::lowercase("ΑΒΓ") == "αβγ");
  CHECK(text::lowercase("ПРИВЕТ") == "привет");
  CHECK(text::lowercase("ẸKỌ") == "ẹkọ");
}

TEST_CASE("text: base64 round trip and rejection") {
  for (const std::string& s : std::vector<std::string>{"", "a", "ab", "abc", "ő egy ápolónő", std::string("\0\t\n", 3)}) {
    CHECK(text::base64_decode(text::base64_encode(s)) == s);
  }
  CHECK_THROWS_AS(text::base64_decode("abc"), std::invalid_argument);
  CHECK_THROWS_AS(text::base64_decode("a$==") , std::invalid_argument);
  CHECK_THROWS_AS(text::base64_decode("YR=="), std::invalid_argument);
}

TEST_CASE("text: half-up rounding at three decimals") {
  CHECK(text::fixed_half_up(0.0125, 3) == "0.013");
  CHECK(text::fixed_half_up(11.0145, 3) == "11.015");
  CHECK(text::fixed_half_up(2.0 / 3.0, 3) == "0.667");
  CHECK(text::fixed_half_up(0.0, 3) == "0.000");
  CHECK(text::fixed_half_up(-0.0004, 3) == "0.000");
}

TEST_CASE("text: field escaping round trips") {
  const std::string s = "a\tb\\c\nd\re";
  CHECK(text::escape_field(s).find('\t') == std::string::npos);
  CHECK(text::unescape_field(text::escape_field(s)) == s);
}

TEST_CASE("delimited: comma mode with quotes, tab mode, bad field count") {
  const auto t = parse_delimited(
      "# delimiter: comma\nname,category\n\"computer occupations, all other\",x\n", "mem");
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].fields[0] == "computer occupations, all other");

  CHECK_THROWS_AS(parse_delimited("name\tcategory\nx\ty\n", "mem"), DataError);
  try {
    parse_delimited("# delimiter: tab\na\tb\nx\n", "f.tsv");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("f.tsv:3") != std::string::npos);
  }
}

TEST_CASE("corpus: blank participation falls back to the category row") {
  const auto dir = scratch_dir("corpus");
  write_text(dir / "cat.tsv", kCategories);
  write_text(dir / "occ.tsv",
             "# delimiter: tab\nname\tcategory\tfemale_participation_percent\n"
             "phlebotomist\tHealthcare support\t\n"
             "civil engineer\tArchitecture and engineering\t12.5\n");
  const auto c = load_occupations(dir / "occ.tsv", dir / "cat.tsv", ExclusionLists{});
  REQUIRE(c.records.size() == 2);
  CHECK(c.records[0].female_participation == doctest::Approx(0.871));
  CHECK(c.records[0].participation_source == ParticipationSource::CategoryFallback);
  CHECK(c.records[0].group == "Healthcare");
  CHECK(c.records[1].participation_source == ParticipationSource::Direct);
  CHECK(c.records[1].female_participation == doctest::Approx(0.125));
}

TEST_CASE("corpus: excluded titles are dropped and reported") {
  const auto dir = scratch_dir("corpus");
  write_text(dir / "cat.tsv", kCategories);
  write_text(dir / "occ.tsv",
             "# delimiter: tab\nname\tcategory\tfemale_participation_percent\n"
             "waitress\tHealthcare support\t\n"
             "Engineers, all other\tArchitecture and engineering\t\n"
             "hostel manager\tHealthcare support\t50\n");
  ExclusionLists ex{{"waitress", "host"}, {", all other"}};
  const auto c = load_occupations(dir / "occ.tsv", dir / "cat.tsv", ex);
  REQUIRE(c.records.size() == 1);
  CHECK(c.records[0].name == "hostel manager");  // whole-token match only
  REQUIRE(c.excluded.size() == 2);
  CHECK(c.excluded[0].name == "waitress");
  CHECK(c.excluded[0].line == 3);
}

TEST_CASE("corpus: unknown category and out-of-range percent are hard errors") {
  const auto dir = scratch_dir("corpus");
  write_text(dir / "cat.tsv", kCategories);
  write_text(dir / "a.tsv",
             "# delimiter: tab\nname\tcategory\tfemale_participation_percent\n"
             "astronaut\tSpace\t10\n");
  write_text(dir / "b.tsv",
             "# delimiter: tab\nname\tcategory\tfemale_participation_percent\n"
             "aide\tHealthcare support\t101\n");
  try {
    load_occupations(dir / "a.tsv", dir / "cat.tsv", {});
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("a.tsv:3") != std::string::npos);
  }
  CHECK_THROWS_AS(load_occupations(dir / "b.tsv", dir / "cat.tsv", {}), DataError);
}

TEST_CASE("corpus: adjectives keep file order and reject duplicates") {
  const auto adj = load_adjectives(data_dir() / "adjectives.txt");
  REQUIRE(adj.size() == 21);
  CHECK(adj.front().word == "Happy");
  CHECK(adj.back().word == "Shy");

  const auto dir = scratch_dir("adj");
  write_text(dir / "empty.txt", "");
  write_text(dir / "dup.txt", "Happy\nHappy\n");
  CHECK(load_adjectives(dir / "empty.txt").empty());
  CHECK_THROWS_AS(load_adjectives(dir / "dup.txt"), DataError);
}

TEST_CASE("corpus: shipped file summaries") {
  const auto c = shipped_corpus();
  const auto s = summarize_categories(c.records, c.categories);
  CHECK(s.size() == 22);
  std::size_t total = 0;
  for (const auto& row : s) total += row.occupation_count;
  CHECK(total == c.records.size());

  auto arch = std::find_if(s.begin(), s.end(), [](const auto& r) {
    return r.category == "Architecture and engineering";
  });
  REQUIRE(arch != s.end());
  CHECK(arch->group == "STEM");
  CHECK(arch->occupation_count == 29);
  CHECK(arch->female_participation == doctest::Approx(0.162));

  const auto stem = restrict_to_group(c.records, "STEM");
  const auto ss = summarize_categories(stem, c.categories);
  REQUIRE(ss.size() == 3);
  CHECK(ss[0].occupation_count + ss[1].occupation_count + ss[2].occupation_count == 79);

  const std::vector<OccupationRecord> one{c.records.front()};
  const auto single = summarize_categories(one, c.categories);
  REQUIRE(single.size() == 1);
  CHECK(single[0].occupation_count == 1);
}

TEST_CASE("corpus: participation source follows the raw row") {
  const auto c = shipped_corpus();
  const auto table = parse_delimited(text::read_file(data_dir() / "occupations.tsv"), "occ");
  std::map<std::string, bool> numeric;
  const auto ni = table.column("name");
  const auto pi = table.column("female_participation_percent");
  for (const auto& r : table.rows) numeric[r.fields[ni]] = !text::trim(r.fields[pi]).empty();
  for (const auto& r : c.records) {
    CHECK((r.participation_source == ParticipationSource::Direct) == numeric.at(r.name));
    CHECK(r.female_participation >= 0.0);
    CHECK(r.female_participation <= 1.0);
  }
}

TEST_CASE("corpus: reloading is deterministic") {
  const auto a = shipped_corpus();
  const auto b = shipped_corpus();
  CHECK(a.records == b.records);
}
