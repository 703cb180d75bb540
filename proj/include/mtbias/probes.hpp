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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtbias/translator.hpp"

namespace mtbias {

enum class SubjectKind { Occupation, Adjective };

std::string_view to_string(SubjectKind kind);
SubjectKind parse_subject_kind(std::string_view s);

// Marks where the subject word goes in a template.
inline constexpr std::string_view kPlaceholder = "{word}";

// Replaces the single placeholder in `tmpl`; throws DataError if the
// template does not hold exactly one.
std::string instantiate(std::string_view tmpl, std::string_view word);

struct LanguageSpec {
  std::string code;  // translation API language identifier
  std::string name;
  std::string family;
  std::vector<std::string> occupation_templates;
  std::vector<std::string> adjective_templates;
  bool included = false;
  std::optional<std::string> exclusion_reason;

  const std::vector<std::string>& templates(SubjectKind kind) const {
    return kind == SubjectKind::Occupation ? occupation_templates : adjective_templates;
  }

  // Throws DataError.
  void validate() const;

  friend bool operator==(const LanguageSpec&, const LanguageSpec&) = default;
};

// Languages under audit, one JSON object per line:
//   {"code":..,"name":..,"family":..,"occupation_templates":[..],
//    "adjective_templates":[..],"included":..,"exclusion_reason":..}
class LanguageRegistry {
 public:
  LanguageRegistry() = default;
  explicit LanguageRegistry(std::vector<LanguageSpec> languages);

  static LanguageRegistry parse(std::string_view contents, const std::string& source);
  static LanguageRegistry load(const std::filesystem::path& path);
  std::string serialize() const;

  const std::vector<LanguageSpec>& languages() const { return languages_; }
  std::vector<LanguageSpec> included() const;
  std::vector<LanguageSpec> excluded() const;

  // Lookup by code or (case-insensitive) name.
  const LanguageSpec* find(std::string_view code_or_name) const;

  // Included languages whose code or name appears in `filter`, in registry
  // order; an empty filter selects all included languages. Throws
  // ConfigError for unknown or excluded names.
  std::vector<LanguageSpec> select(const std::vector<std::string>& filter) const;

 private:
  std::vector<LanguageSpec> languages_;
};

struct Probe {
  std::string language;  // LanguageSpec::code
  std::size_t template_index = 0;
  std::string subject;
  SubjectKind subject_kind = SubjectKind::Occupation;
  std::string localized_subject;
  std::string sentence;

  // "<kind>:<language>:<template_index>:<subject>", unique per probe.
  std::string id() const;

  friend bool operator==(const Probe&, const Probe&) = default;
};

struct UnavailableProbe {
  std::string language;
  std::size_t template_index = 0;
  std::string subject;
  SubjectKind subject_kind = SubjectKind::Occupation;
  std::string stage;   // "localize" or "translate"
  std::string detail;

  std::string id() const;

  friend bool operator==(const UnavailableProbe&, const UnavailableProbe&) = default;
};

struct ProbeSet {
  std::vector<Probe> probes;
  std::vector<UnavailableProbe> unavailable;

  std::size_t built() const { return probes.size() + unavailable.size(); }
};

// English -> language translation of the bare word, lowercased, through
// `backend` (and whatever cache backs it). Throws Unavailable.
std::string localize_subject(std::string_view subject, const LanguageSpec& language,
                             TranslationBackend& backend);

// One probe per (word, language, template), ordered word-major, then
// language, then template index. Localization runs concurrently up to
// backend.max_concurrency(); failures mark that word's probes unavailable
// without aborting the batch.
ProbeSet build_probes(std::span<const std::string> words, SubjectKind kind,
                      std::span<const LanguageSpec> languages,
                      TranslationBackend& backend);

}  // namespace mtbias
