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

// Builds the offline translation snapshot used by tests and fixture runs.
//
// No live translation service is reachable from the build environment, so
// this tool stands in for one: a deterministic simulator whose pronoun
// choices are drawn from per-language and per-adjective rates, with the
// female rate of each occupation scaled by its recorded participation.
// Every draw is seeded by a hash of the request, so the output is a pure
// function of the inputs.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>

#include "mtbias/corpus.hpp"
#include "mtbias/errors.hpp"
#include "mtbias/parallel.hpp"
#include "mtbias/probes.hpp"
#include "mtbias/text.hpp"
#include "mtbias/translator.hpp"

namespace {

using namespace mtbias;

struct Rates {
  double female;
  double male;
  double neutral;
};

const std::map<std::string, Rates> kLanguageRates = {
    {"ms", {0.03827, 0.88420, 0.0}},     {"et", {0.17370, 0.72228, 0.00491}},
    {"fi", {0.34446, 0.56624, 0.0}},     {"hu", {0.34347, 0.58292, 0.0}},
    {"hy", {0.10010, 0.82041, 0.00687}}, {"bn", {0.16765, 0.37782, 0.25630}},
    {"ja", {0.0, 0.66928, 0.24436}},     {"tr", {0.02748, 0.62807, 0.18744}},
    {"yo", {0.01178, 0.48184, 0.38371}}, {"eu", {0.00393, 0.05496, 0.58587}},
    {"sw", {0.14033, 0.76644, 0.0}},     {"zh", {0.05986, 0.51717, 0.24338}},
};

const std::map<std::string, Rates> kAdjectiveRates = {
    {"happy", {0.36364, 0.27273, 0.18182}},      {"sad", {0.18182, 0.36364, 0.18182}},
    {"right", {0.0, 0.63636, 0.27273}},          {"wrong", {0.0, 0.54545, 0.36364}},
    {"afraid", {0.09091, 0.54545, 0.0}},         {"brave", {0.09091, 0.63636, 0.18182}},
    {"smart", {0.18182, 0.45455, 0.18182}},      {"dumb", {0.18182, 0.36364, 0.18182}},
    {"proud", {0.09091, 0.72727, 0.09091}},      {"strong", {0.09091, 0.54545, 0.18182}},
    {"polite", {0.18182, 0.45455, 0.18182}},     {"cruel", {0.09091, 0.63636, 0.18182}},
    {"desirable", {0.09091, 0.36364, 0.45455}},  {"loving", {0.18182, 0.45455, 0.27273}},
    {"sympathetic", {0.18182, 0.45455, 0.18182}}, {"modest", {0.18182, 0.45455, 0.27273}},
    {"successful", {0.09091, 0.54545, 0.27273}}, {"guilty", {0.0, 0.72727, 0.0}},
    {"innocent", {0.09091, 0.54545, 0.09091}},   {"mature", {0.36364, 0.36364, 0.09091}},
    {"shy", {0.36364, 0.27273, 0.27273}},
};

// A handful of real dictionary entries; every other word is passed through.
const std::map<std::pair<std::string, std::string>, std::string> kDictionary = {
    {{"hu", "nurse"}, "ápolónő"}, {{"hu", "engineer"}, "mérnök"},
    {{"hu", "baker"}, "pék"},     {{"tr", "nurse"}, "hemşire"},
    {{"tr", "engineer"}, "mühendis"}, {{"fi", "nurse"}, "sairaanhoitaja"},
};

// Outputs pinned to the worked example of the method.
const std::map<std::pair<std::string, std::string>, std::string> kPinned = {
    {{"hu", "ő egy ápolónő"}, "she's a nurse"},
    {{"hu", "ő egy mérnök"}, "he's an engineer"},
};

double unit_draw(std::string_view seed) {
  const std::string h = text::sha256_hex(seed);
  std::uint64_t v = std::stoull(h.substr(0, 13), nullptr, 16);
  return static_cast<double>(v) / static_cast<double>(1ULL << 52);
}

class SimulatedBackend final : public TranslationBackend {
 public:
  SimulatedBackend(const LanguageRegistry& registry, const std::vector<OccupationRecord>& occ)
      : registry_(registry) {
    double sum = 0.0;
    for (const auto& r : occ) {
      participation_[text::lowercase(r.name)] = r.female_participation;
      sum += r.female_participation;
    }
    mean_participation_ = sum / static_cast<double>(occ.size());
    for (const auto& [k, v] : kDictionary) english_[{k.first, v}] = k.second;
  }

  std::string id() const override { return "simulated"; }
  std::size_t max_concurrency() const override { return 8; }

  TranslationRecord translate(const TranslationRequest& request) override {
    request.validate();
    std::string out = request.source_lang == "en" ? localize(request) : render(request);
    return {request, out, id(), "2026-01-01T00:00:00Z", false};
  }

 private:
  std::string localize(const TranslationRequest& r) const {
    auto it = kDictionary.find({r.target_lang, r.text});
    return it != kDictionary.end() ? it->second : r.text;
  }

  std::string render(const TranslationRequest& r) const {
    if (auto it = kPinned.find({r.source_lang, r.text}); it != kPinned.end()) return it->second;
    const auto* lang = registry_.find(r.source_lang);
    if (!lang) throw Unavailable("simulator does not know language " + r.source_lang);

    std::string word;
    SubjectKind kind = SubjectKind::Occupation;
    for (auto k : {SubjectKind::Occupation, SubjectKind::Adjective}) {
      for (const auto& t : lang->templates(k)) {
        const auto at = t.find(kPlaceholder);
        const std::string pre = t.substr(0, at);
        const std::string post = t.substr(at + kPlaceholder.size());
        if (r.text.size() > pre.size() + post.size() && r.text.starts_with(pre) &&
            r.text.ends_with(post)) {
          word = r.text.substr(pre.size(), r.text.size() - pre.size() - post.size());
          kind = k;
          break;
        }
      }
      if (!word.empty()) break;
    }
    if (word.empty()) throw Unavailable("simulator cannot parse '" + r.text + "'");
    if (auto it = english_.find({r.source_lang, word}); it != english_.end()) word = it->second;
    if (kAdjectiveRates.contains(word) && !participation_.contains(word)) {
      kind = SubjectKind::Adjective;
    }

    Rates rates;
    if (kind == SubjectKind::Adjective) {
      rates = kAdjectiveRates.at(word);
    } else {
      rates = kLanguageRates.at(r.source_lang);
      const auto p = participation_.find(word);
      const double share = p == participation_.end() ? 1.0 : p->second / mean_participation_;
      rates.female = std::min(0.95, rates.female * share);
      rates.male = std::max(0.0, std::min(rates.male, 1.0 - rates.female - rates.neutral));
    }

    const std::string seed = r.source_lang + "|" + r.text;
    const double u = unit_draw(seed);
    const bool alt = unit_draw(seed + "#form") < 0.5;
    const bool conflict = unit_draw(seed + "#conflict") < 0.02;

    std::string subject = word;
    if (kind == SubjectKind::Occupation) {
      const bool vowel = std::string_view("aeiou").find(word[0]) != std::string_view::npos;
      subject = (vowel ? "an " : "a ") + word;
    }
    if (u < rates.female) return (alt ? "she's " : "she is ") + subject;
    if (u < rates.female + rates.male) {
      if (conflict) return "he or she is " + subject;
      return (alt ? "he's " : "he is ") + subject;
    }
    if (u < rates.female + rates.male + rates.neutral) {
      return (alt ? "it is " : "they are ") + subject;
    }
    return subject;
  }

  const LanguageRegistry& registry_;
  std::map<std::string, double> participation_;
  std::map<std::pair<std::string, std::string>, std::string> english_;
  double mean_participation_ = 0.4;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the simulated translation snapshot"};
  std::string data_dir = MTBIAS_DATA_DIR;
  std::string out;
  app.add_option("--data", data_dir, "directory holding the corpus files");
  app.add_option("--out", out, "snapshot to write")->required();
  CLI11_PARSE(app, argc, argv);

  try {
    const std::filesystem::path d(data_dir);
    const auto corpus = load_occupations(
        d / "occupations.tsv", d / "categories.tsv",
        ExclusionLists::load(d / "gendered_words.txt", d / "generic_phrases.txt"));
    const auto registry = LanguageRegistry::load(d / "languages.jsonl");
    const auto languages = registry.included();

    auto cache = std::make_shared<TranslationCache>();
    CachingBackend backend(std::make_shared<SimulatedBackend>(registry, corpus.records), cache);

    std::vector<std::string> occupations;
    for (const auto& r : corpus.records) occupations.push_back(r.name);
    std::vector<std::string> adjectives;
    for (const auto& a : load_adjectives(d / "adjectives.txt")) adjectives.push_back(a.word);

    auto probes = build_probes(occupations, SubjectKind::Occupation, languages, backend).probes;
    const auto adj = build_probes(adjectives, SubjectKind::Adjective, languages, backend).probes;
    probes.insert(probes.end(), adj.begin(), adj.end());
    parallel_for(probes.size(), backend.max_concurrency(), [&](std::size_t i) {
      backend.translate({probes[i].sentence, probes[i].language, "en"});
    });

    write_snapshot(out, cache->records());
    std::cout << cache->size() << " records written to " << out << "\n";
  } catch (const std::exception& e) {
    std::cerr << "synth_fixture: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
