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

#include "mtbias/stage_io.hpp"

#include <charconv>
#include <system_error>

#include "mtbias/errors.hpp"
#include "mtbias/text.hpp"

namespace mtbias {
namespace {

constexpr std::string_view kSchemaPrefix = "# mtbias-stage: ";

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw DataError(path.string() + ": bad number '" + s + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& s, const std::filesystem::path& path) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw DataError(path.string() + ": bad count '" + s + "'");
  }
  return v;
}

bool parse_flag(const std::string& s, const std::filesystem::path& path) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw DataError(path.string() + ": bad flag '" + s + "'");
}

const std::vector<std::string> kOccupationColumns = {
    "name", "category", "group", "female_participation", "participation_source"};
const std::vector<std::string> kCategoryColumns = {"category", "group", "occupation_count",
                                                   "female_participation"};
const std::vector<std::string> kProbeColumns = {
    "probe_id", "language", "kind", "template_index", "subject", "localized_subject",
    "sentence"};
const std::vector<std::string> kUnavailableColumns = {
    "probe_id", "language", "kind", "template_index", "subject", "stage", "detail"};
const std::vector<std::string> kTranslationColumns = {
    "probe_id", "language", "kind",   "template_index", "subject",     "localized_subject",
    "sentence", "output",   "target", "backend_id",     "retrieved_at"};
const std::vector<std::string> kLabelColumns = {
    "probe_id", "language", "kind", "template_index", "subject",
    "category", "group",    "label", "conflict"};

}  // namespace

std::string format_stage(const StageTable& table) {
  std::string out;
  out += kSchemaPrefix;
  out += table.schema;
  out += '\n';
  out += text::join(table.columns, "\t");
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += text::escape_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_stage(const std::filesystem::path& path, const StageTable& table) {
  text::write_file_atomic(path, format_stage(table));
}

StageTable read_stage(const std::filesystem::path& path, std::string_view schema,
                      const std::vector<std::string>& columns) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
  auto lines = text::split(contents, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();

  const std::string expected = std::string(schema);
  const std::string first = lines.empty() ? std::string() : lines[0];
  if (!first.starts_with(kSchemaPrefix)) {
    throw SchemaError(path.string(), expected, first.empty() ? "(none)" : first);
  }
  const std::string found = first.substr(kSchemaPrefix.size());
  if (found != expected) throw SchemaError(path.string(), expected, found);

  const std::string header = text::join(columns, "\t");
  const std::string found_header = lines.size() > 1 ? lines[1] : "";
  if (found_header != header) {
    throw SchemaError(path.string(), expected + " [" + header + "]",
                      found + " [" + found_header + "]");
  }

  StageTable table{expected, columns, {}};
  for (std::size_t i = 2; i < lines.size(); ++i) {
    auto fields = text::split(lines[i], '\t');
    if (fields.size() != columns.size()) {
      throw DataError(path.string() + ":" + std::to_string(i + 1) + ": expected " +
                      std::to_string(columns.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    for (auto& f : fields) f = text::unescape_field(f);
    table.rows.push_back(std::move(fields));
  }
  return table;
}

void write_occupations(const std::filesystem::path& path,
                       const std::vector<OccupationRecord>& records) {
  StageTable t{std::string(schema::kOccupations), kOccupationColumns, {}};
  for (const auto& r : records) {
    t.rows.push_back({r.name, r.category, r.group, shortest(r.female_participation),
                      std::string(to_string(r.participation_source))});
  }
  write_stage(path, t);
}

std::vector<OccupationRecord> read_occupations(const std::filesystem::path& path) {
  std::vector<OccupationRecord> out;
  for (auto& row : read_stage(path, schema::kOccupations, kOccupationColumns).rows) {
    out.push_back({row[0], row[1], row[2], parse_double(row[3], path),
                   parse_participation_source(row[4])});
  }
  return out;
}

void write_excluded(const std::filesystem::path& path, const std::vector<ExcludedRow>& rows) {
  StageTable t{std::string(schema::kExcluded), {"line", "name", "reason"}, {}};
  for (const auto& r : rows) t.rows.push_back({std::to_string(r.line), r.name, r.reason});
  write_stage(path, t);
}

void write_category_summaries(const std::filesystem::path& path,
                              const std::vector<CategorySummary>& rows) {
  StageTable t{std::string(schema::kCategories), kCategoryColumns, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.category, r.group, std::to_string(r.occupation_count),
                      shortest(r.female_participation)});
  }
  write_stage(path, t);
}

std::vector<CategorySummary> read_category_summaries(const std::filesystem::path& path) {
  std::vector<CategorySummary> out;
  for (auto& row : read_stage(path, schema::kCategories, kCategoryColumns).rows) {
    out.push_back({row[0], row[1], parse_size(row[2], path), parse_double(row[3], path)});
  }
  return out;
}

void write_adjectives(const std::filesystem::path& path,
                      const std::vector<AdjectiveRecord>& words) {
  StageTable t{std::string(schema::kAdjectives), {"word"}, {}};
  for (const auto& w : words) t.rows.push_back({w.word});
  write_stage(path, t);
}

std::vector<AdjectiveRecord> read_adjectives(const std::filesystem::path& path) {
  std::vector<AdjectiveRecord> out;
  for (auto& row : read_stage(path, schema::kAdjectives, {"word"}).rows) {
    out.push_back({row[0]});
  }
  return out;
}

void write_probes(const std::filesystem::path& path, const std::vector<Probe>& probes) {
  StageTable t{std::string(schema::kProbes), kProbeColumns, {}};
  for (const auto& p : probes) {
    t.rows.push_back({p.id(), p.language, std::string(to_string(p.subject_kind)),
                      std::to_string(p.template_index), p.subject, p.localized_subject,
                      p.sentence});
  }
  write_stage(path, t);
}

std::vector<Probe> read_probes(const std::filesystem::path& path) {
  std::vector<Probe> out;
  for (auto& row : read_stage(path, schema::kProbes, kProbeColumns).rows) {
    out.push_back({row[1], parse_size(row[3], path), row[4], parse_subject_kind(row[2]),
                   row[5], row[6]});
  }
  return out;
}

void write_unavailable(const std::filesystem::path& path,
                       const std::vector<UnavailableProbe>& rows) {
  StageTable t{std::string(schema::kUnavailable), kUnavailableColumns, {}};
  for (const auto& u : rows) {
    t.rows.push_back({u.id(), u.language, std::string(to_string(u.subject_kind)),
                      std::to_string(u.template_index), u.subject, u.stage, u.detail});
  }
  write_stage(path, t);
}

std::vector<UnavailableProbe> read_unavailable(const std::filesystem::path& path) {
  std::vector<UnavailableProbe> out;
  for (auto& row : read_stage(path, schema::kUnavailable, kUnavailableColumns).rows) {
    out.push_back({row[1], parse_size(row[3], path), row[4], parse_subject_kind(row[2]),
                   row[5], row[6]});
  }
  return out;
}

void write_translations(const std::filesystem::path& path,
                        const std::vector<TranslatedProbe>& rows) {
  StageTable t{std::string(schema::kTranslations), kTranslationColumns, {}};
  for (const auto& [p, r] : rows) {
    t.rows.push_back({p.id(), p.language, std::string(to_string(p.subject_kind)),
                      std::to_string(p.template_index), p.subject, p.localized_subject,
                      p.sentence, r.output, r.request.target_lang, r.backend_id,
                      r.retrieved_at});
  }
  write_stage(path, t);
}

std::vector<TranslatedProbe> read_translations(const std::filesystem::path& path) {
  std::vector<TranslatedProbe> out;
  for (auto& row : read_stage(path, schema::kTranslations, kTranslationColumns).rows) {
    TranslatedProbe tp;
    tp.probe = {row[1], parse_size(row[3], path), row[4], parse_subject_kind(row[2]),
                row[5], row[6]};
    tp.record.request = {row[6], row[1], row[8]};
    tp.record.output = row[7];
    tp.record.backend_id = row[9];
    tp.record.retrieved_at = row[10];
    out.push_back(std::move(tp));
  }
  return out;
}

void write_labels(const std::filesystem::path& path, const std::vector<LabeledResult>& rows) {
  StageTable t{std::string(schema::kLabels), kLabelColumns, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.probe_id, r.language, std::string(to_string(r.kind)),
                      std::to_string(r.template_index), r.subject, r.category, r.group,
                      std::string(to_string(r.label)), r.conflict ? "1" : "0"});
  }
  write_stage(path, t);
}

std::vector<LabeledResult> read_labels(const std::filesystem::path& path) {
  std::vector<LabeledResult> out;
  for (auto& row : read_stage(path, schema::kLabels, kLabelColumns).rows) {
    out.push_back({row[0], row[1], parse_subject_kind(row[2]), row[4],
                   parse_size(row[3], path), row[5], row[6], parse_gender_label(row[7]),
                   parse_flag(row[8], path)});
  }
  return out;
}

}  // namespace mtbias
