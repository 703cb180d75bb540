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

#include "mtbias/probes.hpp"

#include <json.hpp>

#include <set>

#include "mtbias/errors.hpp"
#include "mtbias/parallel.hpp"
#include "mtbias/text.hpp"

namespace mtbias {
namespace {

using nlohmann::ordered_json;

std::size_t count_placeholders(std::string_view tmpl) {
  std::size_t n = 0;
  for (auto at = tmpl.find(kPlaceholder); at != std::string_view::npos;
       at = tmpl.find(kPlaceholder, at + kPlaceholder.size())) {
    ++n;
  }
  return n;
}

LanguageSpec spec_from_json(const ordered_json& j, const std::string& where) {
  static const std::set<std::string> kKnown = {
      "code", "name", "family", "occupation_templates", "adjective_templates",
      "included", "exclusion_reason"};
  if (!j.is_object()) throw DataError(where + ": record is not a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kKnown.contains(k)) throw DataError(where + ": unknown field '" + k + "'");
  }
  LanguageSpec spec;
  try {
    spec.code = j.at("code").get<std::string>();
    spec.name = j.at("name").get<std::string>();
    spec.family = j.at("family").get<std::string>();
    spec.occupation_templates = j.at("occupation_templates").get<std::vector<std::string>>();
    spec.adjective_templates = j.at("adjective_templates").get<std::vector<std::string>>();
    spec.included = j.at("included").get<bool>();
    if (j.contains("exclusion_reason")) {
      spec.exclusion_reason = j["exclusion_reason"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(where + ": " + e.what());
  }
  try {
    spec.validate();
  } catch (const DataError& e) {
    throw DataError(where + ": " + e.what());
  }
  return spec;
}

ordered_json spec_to_json(const LanguageSpec& spec) {
  ordered_json j;
  j["code"] = spec.code;
  j["name"] = spec.name;
  j["family"] = spec.family;
  j["occupation_templates"] = spec.occupation_templates;
  j["adjective_templates"] = spec.adjective_templates;
  j["included"] = spec.included;
  if (spec.exclusion_reason) j["exclusion_reason"] = *spec.exclusion_reason;
  return j;
}

}  // namespace

std::string_view to_string(SubjectKind kind) {
  return kind == SubjectKind::Occupation ? "occupation" : "adjective";
}

SubjectKind parse_subject_kind(std::string_view s) {
  if (s == "occupation") return SubjectKind::Occupation;
  if (s == "adjective") return SubjectKind::Adjective;
  throw DataError("unknown subject kind '" + std::string(s) + "'");
}

std::string instantiate(std::string_view tmpl, std::string_view word) {
  if (count_placeholders(tmpl) != 1) {
    throw DataError("template '" + std::string(tmpl) + "' must contain exactly one " +
                    std::string(kPlaceholder));
  }
  const auto at = tmpl.find(kPlaceholder);
  std::string out(tmpl.substr(0, at));
  out += word;
  out += tmpl.substr(at + kPlaceholder.size());
  return out;
}

void LanguageSpec::validate() const {
  if (code.empty() || name.empty()) throw DataError("language without code or name");
  for (const auto* list : {&occupation_templates, &adjective_templates}) {
    for (const auto& t : *list) {
      if (count_placeholders(t) != 1) {
        throw DataError(name + ": template '" + t + "' must contain exactly one " +
                        std::string(kPlaceholder));
      }
    }
  }
  if (included) {
    if (occupation_templates.empty() || adjective_templates.empty()) {
      throw DataError(name + ": included language needs occupation and adjective templates");
    }
    if (exclusion_reason) throw DataError(name + ": included language has an exclusion reason");
  } else if (!exclusion_reason || exclusion_reason->empty()) {
    throw DataError(name + ": excluded language needs an exclusion reason");
  }
}

LanguageRegistry::LanguageRegistry(std::vector<LanguageSpec> languages)
    : languages_(std::move(languages)) {
  std::set<std::string> codes;
  for (const auto& l : languages_) {
    l.validate();
    if (!codes.insert(l.code).second) throw DataError("duplicate language code " + l.code);
  }
}

LanguageRegistry LanguageRegistry::parse(std::string_view contents,
                                         const std::string& source) {
  std::vector<LanguageSpec> specs;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(contents, '\n')) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no);
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + ": " + e.what());
    }
    specs.push_back(spec_from_json(j, where));
  }
  return LanguageRegistry(std::move(specs));
}

LanguageRegistry LanguageRegistry::load(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
  return parse(contents, path.string());
}

std::string LanguageRegistry::serialize() const {
  std::string out;
  for (const auto& l : languages_) {
    out += spec_to_json(l).dump();
    out += '\n';
  }
  return out;
}

std::vector<LanguageSpec> LanguageRegistry::included() const {
  std::vector<LanguageSpec> out;
  for (const auto& l : languages_) {
    if (l.included) out.push_back(l);
  }
  return out;
}

std::vector<LanguageSpec> LanguageRegistry::excluded() const {
  std::vector<LanguageSpec> out;
  for (const auto& l : languages_) {
    if (!l.included) out.push_back(l);
  }
  return out;
}

const LanguageSpec* LanguageRegistry::find(std::string_view code_or_name) const {
  const auto lower = text::lowercase(code_or_name);
  for (const auto& l : languages_) {
    if (l.code == code_or_name || text::lowercase(l.name) == lower) return &l;
  }
  return nullptr;
}

std::vector<LanguageSpec> LanguageRegistry::select(
    const std::vector<std::string>& filter) const {
  if (filter.empty()) return included();
  std::set<std::string> wanted;
  for (const auto& f : filter) {
    const auto* spec = find(f);
    if (spec == nullptr) throw ConfigError("unknown language '" + f + "'");
    if (!spec->included) {
      throw ConfigError("language '" + spec->name + "' is excluded: " +
                        spec->exclusion_reason.value_or(""));
    }
    wanted.insert(spec->code);
  }
  std::vector<LanguageSpec> out;
  for (const auto& l : languages_) {
    if (wanted.contains(l.code)) out.push_back(l);
  }
  return out;
}

std::string Probe::id() const {
  return std::string(to_string(subject_kind)) + ":" + language + ":" +
         std::to_string(template_index) + ":" + subject;
}

std::string UnavailableProbe::id() const {
  return std::string(to_string(subject_kind)) + ":" + language + ":" +
         std::to_string(template_index) + ":" + subject;
}

std::string localize_subject(std::string_view subject, const LanguageSpec& language,
                             TranslationBackend& backend) {
  const TranslationRequest request{text::lowercase(text::trim(subject)), "en", language.code};
  auto record = backend.translate(request);
  auto localized = std::string(text::trim(record.output));
  if (localized.empty()) {
    throw Unavailable("empty localization of '" + request.text + "' into " + language.code);
  }
  return localized;
}

ProbeSet build_probes(std::span<const std::string> words, SubjectKind kind,
                      std::span<const LanguageSpec> languages,
                      TranslationBackend& backend) {
  for (const auto& l : languages) {
    if (!l.included) throw ConfigError("cannot build probes for excluded language " + l.name);
  }
  struct Slot {
    std::optional<std::string> localized;
    std::string error;
  };
  const std::size_t n_lang = languages.size();
  std::vector<Slot> slots(words.size() * n_lang);
  parallel_for(slots.size(), backend.max_concurrency(), [&](std::size_t i) {
    const auto& word = words[i / n_lang];
    const auto& lang = languages[i % n_lang];
    try {
      slots[i].localized = localize_subject(word, lang, backend);
    } catch (const Unavailable& e) {
      slots[i].error = e.what();
    } catch (const ProtocolError& e) {
      slots[i].error = e.what();
    }
  });

  ProbeSet out;
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (std::size_t l = 0; l < n_lang; ++l) {
      const auto& slot = slots[w * n_lang + l];
      const auto& lang = languages[l];
      const auto& templates = lang.templates(kind);
      for (std::size_t t = 0; t < templates.size(); ++t) {
        if (slot.localized) {
          out.probes.push_back({lang.code, t, words[w], kind, *slot.localized,
                                instantiate(templates[t], *slot.localized)});
        } else {
          out.unavailable.push_back({lang.code, t, words[w], kind, "localize", slot.error});
        }
      }
    }
  }
  return out;
}

}  // namespace mtbias
