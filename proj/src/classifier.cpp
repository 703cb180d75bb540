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

#include "mtbias/classifier.hpp"

#include "mtbias/errors.hpp"
#include "mtbias/text.hpp"

namespace mtbias {

std::string_view to_string(GenderLabel label) {
  switch (label) {
    case GenderLabel::Female: return "female";
    case GenderLabel::Male: return "male";
    case GenderLabel::Neutral: return "neutral";
    case GenderLabel::Undetermined: return "undetermined";
  }
  return "undetermined";
}

GenderLabel parse_gender_label(std::string_view s) {
  for (auto l : kAllLabels) {
    if (to_string(l) == s) return l;
  }
  throw DataError("unknown gender label '" + std::string(s) + "'");
}

ClassifierLexicon ClassifierLexicon::parse(std::string_view contents,
                                           const std::string& source) {
  ClassifierLexicon lex;
  std::set<std::string, std::less<>>* section = nullptr;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(contents, '\n')) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "FEMALE") {
      section = &lex.female_tokens;
    } else if (line == "MALE") {
      section = &lex.male_tokens;
    } else if (line == "NEUTRAL") {
      section = &lex.neutral_tokens;
    } else if (section == nullptr) {
      throw DataError(source + ":" + std::to_string(line_no) +
                      ": token before any FEMALE/MALE/NEUTRAL header");
    } else {
      section->emplace(line);
    }
  }
  try {
    lex.validate();
  } catch (const DataError& e) {
    throw DataError(source + ": " + e.what());
  }
  return lex;
}

ClassifierLexicon ClassifierLexicon::load(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
  return parse(contents, path.string());
}

void ClassifierLexicon::validate() const {
  const std::pair<const char*, const std::set<std::string, std::less<>>*> sets[] = {
      {"female", &female_tokens}, {"male", &male_tokens}, {"neutral", &neutral_tokens}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& tok : *sets[i].second) {
      if (tok.empty() || text::lowercase(tok) != tok) {
        throw DataError("lexicon token '" + tok + "' is not lowercase");
      }
      for (std::size_t j = i + 1; j < 3; ++j) {
        if (sets[j].second->contains(tok)) {
          throw DataError("lexicon token '" + tok + "' is both " + sets[i].first + " and " +
                          sets[j].first);
        }
      }
    }
  }
}

GenderLabel ClassifierLexicon::lookup(std::string_view token) const {
  if (female_tokens.contains(token)) return GenderLabel::Female;
  if (male_tokens.contains(token)) return GenderLabel::Male;
  if (neutral_tokens.contains(token)) return GenderLabel::Neutral;
  return GenderLabel::Undetermined;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::string cur;
  auto finish = [&] {
    while (!cur.empty() && cur.back() == '\'') cur.pop_back();
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    char32_t cp = text::next_code_point(sentence, pos);
    if (text::is_space(cp) || text::is_punctuation(cp)) {
      finish();
      continue;
    }
    if (cp == U'\'' || cp == 0x2019 || cp == 0xFF07) {
      if (!cur.empty()) cur.push_back('\'');
      continue;
    }
    text::append_utf8(cur, text::to_lower(cp));
  }
  finish();
  return tokens;
}

Classification classify_detailed(std::string_view sentence,
                                 const ClassifierLexicon& lexicon) {
  Classification result;
  for (const auto& tok : tokenize(sentence)) {
    const auto label = lexicon.lookup(tok);
    if (label == GenderLabel::Undetermined) continue;
    if (result.label == GenderLabel::Undetermined) {
      result.label = label;
    } else if (label != result.label) {
      result.conflict = true;
      break;
    }
  }
  return result;
}

GenderLabel classify(std::string_view sentence, const ClassifierLexicon& lexicon) {
  return classify_detailed(sentence, lexicon).label;
}

}  // namespace mtbias
