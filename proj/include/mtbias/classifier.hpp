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
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mtbias {

enum class GenderLabel { Female, Male, Neutral, Undetermined };

inline constexpr GenderLabel kAllLabels[] = {GenderLabel::Female, GenderLabel::Male,
                                             GenderLabel::Neutral,
                                             GenderLabel::Undetermined};

std::string_view to_string(GenderLabel label);
GenderLabel parse_gender_label(std::string_view s);

struct ClassifierLexicon {
  std::set<std::string, std::less<>> female_tokens;
  std::set<std::string, std::less<>> male_tokens;
  std::set<std::string, std::less<>> neutral_tokens;

  // Sections FEMALE, MALE and NEUTRAL, one token per line; '#' starts a
  // comment line. Throws DataError, including for overlapping or
  // non-lowercase entries.
  static ClassifierLexicon parse(std::string_view contents, const std::string& source);
  static ClassifierLexicon load(const std::filesystem::path& path);

  // Throws DataError unless the sets are disjoint and all lowercase.
  void validate() const;

  // Label of a token, or Undetermined if it is in no set.
  GenderLabel lookup(std::string_view token) const;
};

// Lowercases, then splits on whitespace and punctuation. Apostrophes
// (' and U+2019) inside a token are kept as ASCII '; leading and trailing
// ones are dropped.
std::vector<std::string> tokenize(std::string_view sentence);

struct Classification {
  GenderLabel label = GenderLabel::Undetermined;
  // True when tokens of two or more distinct genders occur.
  bool conflict = false;
};

// The first token found in any lexicon set decides the label.
Classification classify_detailed(std::string_view sentence, const ClassifierLexicon& lexicon);

GenderLabel classify(std::string_view sentence, const ClassifierLexicon& lexicon);

}  // namespace mtbias
