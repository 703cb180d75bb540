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

#include <random>

#include "mtbias/classifier.hpp"
#include "mtbias/errors.hpp"
#include "support.hpp"

using namespace mtbias;
using mtbias::testing::data_dir;

namespace {

const ClassifierLexicon& lexicon() {
  static const auto lex = ClassifierLexicon::load(data_dir() / "lexicon.txt");
  return lex;
}

using Tokens = std::vector<std::string>;

}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("She's a nurse.") == Tokens{"she's", "a", "nurse"});
  CHECK(tokenize("He is an engineer") == Tokens{"he", "is", "an", "engineer"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("  \t ").empty());
  CHECK(tokenize("She’s 'quoted' here") == Tokens{"she's", "quoted", "here"});
  CHECK(tokenize("he/she,it") == Tokens{"he", "she", "it"});
  CHECK(tokenize("ÁPOLÓNŐ!") == Tokens{"ápolónő"});
}

TEST_CASE("classify: worked examples") {
  CHECK(classify("she's a nurse", lexicon()) == GenderLabel::Female);
  CHECK(classify("he is an engineer", lexicon()) == GenderLabel::Male);
  CHECK(classify("a trapper", lexicon()) == GenderLabel::Undetermined);
  CHECK(classify("they are a teacher", lexicon()) == GenderLabel::Neutral);
  CHECK(classify("", lexicon()) == GenderLabel::Undetermined);
}

TEST_CASE("classify: first match wins and conflicts are flagged") {
  const auto c = classify_detailed("he or she is a pilot", lexicon());
  CHECK(c.label == GenderLabel::Male);
  CHECK(c.conflict);
  const auto d = classify_detailed("he said he is a pilot", lexicon());
  CHECK(d.label == GenderLabel::Male);
  CHECK_FALSE(d.conflict);
}

TEST_CASE("classify: prefix properties") {
  const std::vector<std::string> sentences{"she is a nurse", "he is a baker", "it is a cook",
                                           "a trapper", "they are here", ""};
  for (const auto& s : sentences) {
    const auto base = classify(s, lexicon());
    CHECK(classify("well , " + s, lexicon()) == base);
    CHECK(classify("the doctor said " + s, lexicon()) == base);
    CHECK(classify("she " + s, lexicon()) == GenderLabel::Female);
    CHECK(classify("him " + s, lexicon()) == GenderLabel::Male);
    CHECK(classify("one " + s, lexicon()) == GenderLabel::Neutral);
  }
}

TEST_CASE("classify: undetermined exactly when no token is in the lexicon") {
  const std::vector<std::string> vocab{"she", "he", "it", "they", "a", "an", "nurse",
                                       "is", "was", "his", "her", "doctor", "that", "the",
                                       "she's", "he's", "hers", "someone", "heir", "shell"};
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    std::string s;
    bool any = false;
    const int n = static_cast<int>(rng() % 6);
    for (int k = 0; k < n; ++k) {
      const auto& w = vocab[rng() % vocab.size()];
      s += (k ? " " : "") + w;
      any = any || lexicon().lookup(w) != GenderLabel::Undetermined;
    }
    CHECK((classify(s, lexicon()) == GenderLabel::Undetermined) == !any);
  }
}

TEST_CASE("lexicon: shipped sets and validation") {
  const auto& lex = lexicon();
  CHECK(lex.female_tokens.size() == 5);
  CHECK(lex.male_tokens.size() == 5);
  CHECK(lex.neutral_tokens.size() == 10);
  CHECK(lex.lookup("it") == GenderLabel::Neutral);
  CHECK_THROWS_AS(ClassifierLexicon::parse("FEMALE\nshe\nMALE\nshe\nNEUTRAL\n", "mem"),
                  DataError);
  CHECK_THROWS_AS(ClassifierLexicon::parse("FEMALE\nShe\nMALE\nNEUTRAL\n", "mem"), DataError);
  CHECK_THROWS_AS(ClassifierLexicon::parse("she\n", "mem"), DataError);
}

TEST_CASE("labels round trip through their names") {
  for (auto l : kAllLabels) CHECK(parse_gender_label(to_string(l)) == l);
  CHECK_THROWS_AS(parse_gender_label("other"), DataError);
}
