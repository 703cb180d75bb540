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

#include "mtbias/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "mtbias/classifier.hpp"
#include "mtbias/corpus.hpp"
#include "mtbias/errors.hpp"
#include "mtbias/parallel.hpp"
#include "mtbias/probes.hpp"
#include "mtbias/stage_io.hpp"
#include "mtbias/text.hpp"

namespace mtbias {
namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

fs::path at(const RunConfig& c, std::string_view rel) { return c.out_dir / fs::path(rel); }

std::string fmt6(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return text::fixed_half_up(v, 6);
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string slug(std::string_view name) {
  std::string out;
  for (char c : text::lowercase(name)) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (keep) {
      out.push_back(c);
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

// Plain tab-separated plot or table file: one header line, then rows.
void write_tsv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string out = text::join(header, "\t") + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += text::escape_field(row[i]);
    }
    out += '\n';
  }
  text::write_file_atomic(path, out);
}

template <typename T>
T get_or(const ordered_json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void reject_unknown_keys(const ordered_json& j, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

std::vector<std::string> pct_row(const CellStats& s) {
  return {std::to_string(s.n_probes), format_pct(s.pct_female), format_pct(s.pct_male),
          format_pct(s.pct_neutral), format_pct(s.pct_undetermined)};
}

const std::vector<std::string> kPctHeader = {"n_probes", "female_pct", "male_pct",
                                             "neutral_pct", "undetermined_pct"};

std::vector<std::string> concat(std::vector<std::string> a,
                                const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::optional<CellStats> try_cell(std::span<const LabeledResult> results, const Scope& s) {
  try {
    return cell_stats(results, s);
  } catch (const EmptyScope&) {
    return std::nullopt;
  }
}

std::vector<std::string> groups_in_order(const std::vector<CategorySummary>& summaries) {
  std::vector<std::string> groups;
  for (const auto& s : summaries) {
    if (std::find(groups.begin(), groups.end(), s.group) == groups.end()) {
      groups.push_back(s.group);
    }
  }
  return groups;
}

void write_tables(const RunConfig& config, std::span<const LabeledResult> labels,
                  const std::vector<CategorySummary>& summaries,
                  const std::vector<std::string>& groups,
                  const std::vector<LanguageSpec>& languages,
                  const std::vector<AdjectiveRecord>& adjectives) {
  const Scope all_occ{"", ScopeAxis::Occupations, ""};

  std::vector<std::vector<std::string>> rows;
  for (const auto& s : summaries) {
    if (auto c = try_cell(labels, {"", ScopeAxis::Category, s.category})) {
      rows.push_back(concat({s.category, s.group}, pct_row(*c)));
    }
  }
  if (auto c = try_cell(labels, all_occ)) rows.push_back(concat({"Total", ""}, pct_row(*c)));
  write_tsv(at(config, "tables/by_category.tsv"), concat({"category", "group"}, kPctHeader),
            rows);

  rows.clear();
  for (const auto& g : groups) {
    if (auto c = try_cell(labels, {"", ScopeAxis::Group, g})) {
      rows.push_back(concat({g}, pct_row(*c)));
    }
  }
  if (auto c = try_cell(labels, all_occ)) rows.push_back(concat({"Total"}, pct_row(*c)));
  write_tsv(at(config, "tables/by_group.tsv"), concat({"group"}, kPctHeader), rows);

  rows.clear();
  for (const auto& l : languages) {
    if (auto c = try_cell(labels, {l.code, ScopeAxis::Occupations, ""})) {
      rows.push_back(concat({l.code, l.name}, pct_row(*c)));
    }
  }
  if (auto c = try_cell(labels, all_occ)) rows.push_back(concat({"Total", ""}, pct_row(*c)));
  write_tsv(at(config, "tables/by_language.tsv"), concat({"language", "name"}, kPctHeader),
            rows);

  rows.clear();
  for (const auto& a : adjectives) {
    if (auto c = try_cell(labels, {"", ScopeAxis::Adjective, a.word})) {
      rows.push_back(concat({a.word}, pct_row(*c)));
    }
  }
  if (auto c = try_cell(labels, {"", ScopeAxis::Adjectives, ""})) {
    rows.push_back(concat({"Total"}, pct_row(*c)));
  }
  write_tsv(at(config, "tables/by_adjective.tsv"), concat({"adjective"}, kPctHeader), rows);
}

void write_tests(const RunConfig& config, std::span<const LabeledResult> labels,
                 const std::vector<std::string>& groups,
                 const std::vector<LanguageSpec>& languages) {
  std::vector<std::string> codes;
  for (const auto& l : languages) codes.push_back(l.code);

  for (auto h : {Hypothesis::MaleOverFemale, Hypothesis::MaleOverNeutral,
                 Hypothesis::NeutralOverFemale}) {
    const auto m = test_matrix(labels, h, config.alpha, Grouping::Group, groups, codes);
    const std::string base = "tests/" + std::string(to_string(h));

    std::vector<std::vector<std::string>> markers;
    std::vector<std::vector<std::string>> shading;
    std::vector<std::vector<std::string>> detail;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      std::vector<std::string> mk{m.rows[i]};
      std::vector<std::string> sh{m.rows[i]};
      for (std::size_t j = 0; j < m.columns.size(); ++j) {
        const auto& cell = m.cells[i][j];
        mk.push_back(test_marker(cell));
        sh.push_back(test_shading(cell));
        if (!cell) {
          detail.push_back({m.rows[i], m.columns[j], "0", "NA", "NA", "NA", "NA",
                            "n/a", "NA", "none"});
          continue;
        }
        detail.push_back({m.rows[i], m.columns[j], std::to_string(cell->n), fmt6(cell->t),
                          std::to_string(cell->df), sci(cell->p),
                          cell->complement_p ? sci(*cell->complement_p) : "NA",
                          std::string(to_string(cell->verdict)), test_marker(cell),
                          test_shading(cell)});
      }
      markers.push_back(std::move(mk));
      shading.push_back(std::move(sh));
    }
    const auto header = concat({"group"}, m.columns);
    write_tsv(at(config, base + ".tsv"), header, markers);
    write_tsv(at(config, base + "_shading.tsv"), header, shading);
    write_tsv(at(config, base + "_detail.tsv"),
              {"group", "language", "n", "t", "df", "p", "complement_p", "verdict", "marker",
               "shading"},
              detail);
  }
}

void write_count_histogram(const fs::path& path, const HistogramSpec& h) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& b : h.bins) {
    std::vector<std::string> row{std::to_string(static_cast<long>(b.lower)),
                                 std::to_string(static_cast<long>(b.upper))};
    for (auto c : b.counts) row.push_back(std::to_string(c));
    row.push_back(std::to_string(b.total()));
    rows.push_back(std::move(row));
  }
  write_tsv(path, concat(concat({"bin_lower", "bin_upper"}, h.groups), {"total"}), rows);
}

void write_plots(const RunConfig& config, std::span<const LabeledResult> labels,
                 const std::vector<std::string>& groups,
                 const std::vector<LanguageSpec>& languages) {
  constexpr GenderLabel kGenders[] = {GenderLabel::Female, GenderLabel::Male,
                                      GenderLabel::Neutral};
  for (auto g : kGenders) {
    const std::string name(to_string(g));
    write_count_histogram(at(config, "plots/histogram_" + name + ".tsv"),
                          pronoun_count_histogram(labels, g, Grouping::Group));

    const auto hm = heatmap(labels, g, Grouping::Group);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < hm.rows.size(); ++i) {
      std::vector<std::string> row{hm.rows[i]};
      for (double v : hm.values[i]) row.push_back(fmt6(v));
      rows.push_back(std::move(row));
    }
    write_tsv(at(config, "plots/heatmap_" + name + ".tsv"), concat({"language"}, hm.columns),
              rows);
  }

  // Per group, the three pronoun histograms side by side.
  for (const auto& group : groups) {
    std::vector<LabeledResult> subset;
    for (const auto& r : labels) {
      if (r.kind == SubjectKind::Occupation && r.group == group) subset.push_back(r);
    }
    if (subset.empty()) continue;
    std::vector<HistogramSpec> hs;
    for (auto g : kGenders) hs.push_back(pronoun_count_histogram(subset, g, Grouping::Group));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < hs[0].bins.size(); ++k) {
      rows.push_back({std::to_string(k), std::to_string(k + 1),
                      std::to_string(hs[0].bins[k].total()),
                      std::to_string(hs[1].bins[k].total()),
                      std::to_string(hs[2].bins[k].total())});
    }
    write_tsv(at(config, "plots/histogram_by_gender_" + slug(group) + ".tsv"),
              {"bin_lower", "bin_upper", "female", "male", "neutral"}, rows);
  }

  auto fractions = [](const CellStats& c) {
    return std::vector<std::string>{fmt6(c.pct_female), fmt6(c.pct_male),
                                    fmt6(c.pct_neutral), fmt6(c.pct_undetermined)};
  };
  const std::vector<std::string> frac_header = {"female", "male", "neutral", "undetermined"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& g : groups) {
    if (auto c = try_cell(labels, {"", ScopeAxis::Group, g})) {
      rows.push_back(concat({g}, fractions(*c)));
    }
  }
  write_tsv(at(config, "plots/bars_by_group.tsv"), concat({"group"}, frac_header), rows);
  rows.clear();
  for (const auto& l : languages) {
    if (auto c = try_cell(labels, {l.code, ScopeAxis::Occupations, ""})) {
      rows.push_back(concat({l.code}, fractions(*c)));
    }
  }
  write_tsv(at(config, "plots/bars_by_language.tsv"), concat({"language"}, frac_header), rows);
}

void write_comparison(const RunConfig& config, const ParticipationComparison& cmp) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < cmp.participation.bins.size(); ++k) {
    const auto& b = cmp.participation.bins[k];
    rows.push_back({fmt6(b.lower), fmt6(b.upper), std::to_string(b.total()),
                    std::to_string(cmp.translated_female.bins[k].total())});
  }
  write_tsv(at(config, "plots/participation_histogram.tsv"),
            {"bin_lower", "bin_upper", "participation", "translated_female"}, rows);

  const auto& t = cmp.test;
  write_tsv(at(config, paths::kComparison), {"key", "value"},
            {{"occupations", std::to_string(cmp.occupations.size())},
             {"excluded", std::to_string(cmp.excluded.size())},
             {"mean_participation", fmt6(cmp.mean_participation)},
             {"mean_translated_female", fmt6(cmp.mean_translated_female)},
             {"variance_participation", fmt6(cmp.variance_participation)},
             {"variance_translated_female", fmt6(cmp.variance_translated_female)},
             {"hypothesis", std::string(to_string(t.hypothesis))},
             {"t", fmt6(t.t)},
             {"df", std::to_string(t.df)},
             {"p", sci(t.p)},
             {"alpha", fmt6(t.alpha)},
             {"verdict", std::string(to_string(t.verdict))}});
}

LanguageRegistry registry_of(const RunConfig& config) {
  return LanguageRegistry::load(config.resolve(config.registry));
}

}  // namespace

// ---------------------------------------------------------------------------

BackendKind parse_backend_kind(std::string_view s) {
  if (s == "fixture") return BackendKind::Fixture;
  if (s == "live") return BackendKind::Live;
  throw ConfigError("backend must be 'live' or 'fixture', got '" + std::string(s) + "'");
}

std::string_view to_string(BackendKind kind) {
  return kind == BackendKind::Fixture ? "fixture" : "live";
}

RunConfig RunConfig::parse(std::string_view json, const fs::path& base_dir) {
  ordered_json j;
  try {
    j = ordered_json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(j,
                      {"occupations", "categories", "gendered_words", "generic_phrases",
                       "adjectives", "registry", "lexicon", "backend", "snapshot", "live",
                       "alpha", "out_dir", "languages", "category_filter", "deterministic"},
                      "config");

  RunConfig c;
  c.base_dir = base_dir;
  try {
    c.occupations = get_or(j, "occupations", c.occupations);
    c.categories = get_or(j, "categories", c.categories);
    c.gendered_words = get_or(j, "gendered_words", c.gendered_words);
    c.generic_phrases = get_or(j, "generic_phrases", c.generic_phrases);
    c.adjectives = get_or(j, "adjectives", c.adjectives);
    c.registry = get_or(j, "registry", c.registry);
    c.lexicon = get_or(j, "lexicon", c.lexicon);
    c.backend = parse_backend_kind(get_or<std::string>(j, "backend", "fixture"));
    c.snapshot = get_or(j, "snapshot", c.snapshot);
    c.alpha = get_or(j, "alpha", c.alpha);
    // The output directory is taken relative to the working directory.
    c.out_dir = get_or<std::string>(j, "out_dir", "out");
    c.languages = get_or(j, "languages", c.languages);
    c.category_filter = get_or(j, "category_filter", c.category_filter);
    c.deterministic = get_or(j, "deterministic", c.deterministic);
    if (j.contains("live")) {
      const auto& l = j.at("live");
      reject_unknown_keys(l,
                          {"endpoint", "adapter", "credential_env", "max_concurrent",
                           "requests_per_second", "retry_budget", "cache_path",
                           "backoff_initial_ms", "backoff_max_ms", "timeout_ms"},
                          "config.live");
      auto& b = c.live;
      b.endpoint = get_or(l, "endpoint", b.endpoint);
      b.adapter = get_or(l, "adapter", b.adapter);
      b.credential_env = get_or(l, "credential_env", b.credential_env);
      b.max_concurrent = get_or(l, "max_concurrent", b.max_concurrent);
      b.requests_per_second = get_or(l, "requests_per_second", b.requests_per_second);
      b.retry_budget = get_or(l, "retry_budget", b.retry_budget);
      if (l.contains("cache_path")) b.cache_path = l.at("cache_path").get<std::string>();
      b.backoff_initial =
          std::chrono::milliseconds(get_or(l, "backoff_initial_ms", b.backoff_initial.count()));
      b.backoff_max =
          std::chrono::milliseconds(get_or(l, "backoff_max_ms", b.backoff_max.count()));
      b.timeout = std::chrono::milliseconds(get_or(l, "timeout_ms", b.timeout.count()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse(contents, base);
}

fs::path RunConfig::resolve(const std::string& path) const {
  fs::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

void RunConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!deterministic) {
    throw ConfigError("the pipeline has no randomness; 'deterministic' must be true");
  }
  for (const auto* p : {&occupations, &categories, &gendered_words, &generic_phrases,
                        &adjectives, &registry, &lexicon}) {
    if (!fs::exists(resolve(*p))) throw ConfigError("missing input file " + resolve(*p).string());
  }
  if (backend == BackendKind::Fixture) {
    if (!fs::exists(resolve(snapshot))) {
      throw ConfigError("missing snapshot " + resolve(snapshot).string());
    }
  } else {
    live.validate();
  }
  if (out_dir.empty()) throw ConfigError("output directory is empty");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir.string());
  // Language names are checked against the registry here, not mid-run.
  registry_of(*this).select(languages);
  if (!category_filter.empty()) {
    const auto table = CategoryTable::load(resolve(categories));
    const auto groups = table.groups();
    for (const auto& name : category_filter) {
      const bool known = table.find(name) != nullptr ||
                         std::find(groups.begin(), groups.end(), name) != groups.end();
      if (!known) throw ConfigError("unknown category or group '" + name + "'");
    }
  }
}

std::string RunConfig::echo() const {
  ordered_json j;
  j["occupations"] = occupations;
  j["categories"] = categories;
  j["gendered_words"] = gendered_words;
  j["generic_phrases"] = generic_phrases;
  j["adjectives"] = adjectives;
  j["registry"] = registry;
  j["lexicon"] = lexicon;
  j["backend"] = to_string(backend);
  if (backend == BackendKind::Fixture) {
    j["snapshot"] = snapshot;
  } else {
    j["live"] = {{"endpoint", live.endpoint},
                 {"adapter", live.adapter},
                 {"credential_env", live.credential_env},
                 {"max_concurrent", live.max_concurrent},
                 {"requests_per_second", live.requests_per_second},
                 {"retry_budget", live.retry_budget},
                 {"cache_path", live.cache_path.string()}};
  }
  j["alpha"] = alpha;
  j["languages"] = languages;
  j["category_filter"] = category_filter;
  j["deterministic"] = deterministic;
  return j.dump();
}

std::shared_ptr<TranslationBackend> make_backend(const RunConfig& config) {
  if (config.backend == BackendKind::Fixture) {
    return std::make_shared<FixtureBackend>(
        FixtureBackend::from_file(config.resolve(config.snapshot)));
  }
  BackendConfig live = config.live;
  if (!live.cache_path.empty()) live.cache_path = config.resolve(live.cache_path.string());
  return make_live_backend(live);
}

// ---------------------------------------------------------------------------

void run_ingest(const RunConfig& config) {
  const auto exclusions = ExclusionLists::load(config.resolve(config.gendered_words),
                                               config.resolve(config.generic_phrases));
  auto corpus = load_occupations(config.resolve(config.occupations),
                                 config.resolve(config.categories), exclusions);
  std::vector<OccupationRecord> records;
  const std::set<std::string> filter(config.category_filter.begin(),
                                     config.category_filter.end());
  for (auto& r : corpus.records) {
    if (filter.empty() || filter.contains(r.category) || filter.contains(r.group)) {
      records.push_back(std::move(r));
    }
  }
  if (records.empty()) throw DataError("no occupations left after filtering");

  write_occupations(at(config, paths::kOccupations), records);
  write_excluded(at(config, paths::kExcluded), corpus.excluded);
  write_category_summaries(at(config, paths::kCategories),
                           summarize_categories(records, corpus.categories));
  write_adjectives(at(config, paths::kAdjectives),
                   load_adjectives(config.resolve(config.adjectives)));
}

void run_probes(const RunConfig& config, TranslationBackend& backend) {
  const auto languages = registry_of(config).select(config.languages);
  std::vector<std::string> occupations;
  for (const auto& r : read_occupations(at(config, paths::kOccupations))) {
    occupations.push_back(r.name);
  }
  std::vector<std::string> adjectives;
  for (const auto& a : read_adjectives(at(config, paths::kAdjectives))) {
    adjectives.push_back(a.word);
  }

  auto set = build_probes(occupations, SubjectKind::Occupation, languages, backend);
  auto adj = build_probes(adjectives, SubjectKind::Adjective, languages, backend);
  set.probes.insert(set.probes.end(), adj.probes.begin(), adj.probes.end());
  set.unavailable.insert(set.unavailable.end(), adj.unavailable.begin(),
                         adj.unavailable.end());
  if (set.probes.empty() && !set.unavailable.empty()) {
    throw Unavailable("no subject could be localized: " + set.unavailable.front().detail);
  }
  write_probes(at(config, paths::kProbes), set.probes);
  write_unavailable(at(config, paths::kUnavailable), set.unavailable);
}

void run_translate(const RunConfig& config, TranslationBackend& backend) {
  const auto probes = read_probes(at(config, paths::kProbes));
  std::vector<UnavailableProbe> unavailable;
  for (auto& u : read_unavailable(at(config, paths::kUnavailable))) {
    if (u.stage != "translate") unavailable.push_back(std::move(u));
  }

  std::vector<std::optional<TranslationRecord>> records(probes.size());
  std::vector<std::string> failures(probes.size());
  parallel_for(probes.size(), backend.max_concurrency(), [&](std::size_t i) {
    const auto& p = probes[i];
    try {
      records[i] = backend.translate({p.sentence, p.language, "en"});
    } catch (const Unavailable& e) {
      failures[i] = e.what();
    } catch (const ProtocolError& e) {
      failures[i] = e.what();
    }
  });

  std::vector<TranslatedProbe> translated;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto& p = probes[i];
    if (records[i]) {
      translated.push_back({p, *records[i]});
    } else {
      unavailable.push_back({p.language, p.template_index, p.subject, p.subject_kind,
                             "translate", failures[i]});
    }
  }
  if (translated.empty() && !probes.empty()) {
    throw Unavailable("no probe could be translated: " + unavailable.back().detail);
  }
  write_translations(at(config, paths::kTranslations), translated);
  write_unavailable(at(config, paths::kUnavailable), unavailable);
}

void run_classify(const RunConfig& config) {
  const auto lexicon = ClassifierLexicon::load(config.resolve(config.lexicon));
  std::map<std::string, std::pair<std::string, std::string>> where;
  for (const auto& r : read_occupations(at(config, paths::kOccupations))) {
    where[r.name] = {r.category, r.group};
  }

  std::vector<LabeledResult> labels;
  for (const auto& [p, rec] : read_translations(at(config, paths::kTranslations))) {
    LabeledResult r;
    r.probe_id = p.id();
    r.language = p.language;
    r.kind = p.subject_kind;
    r.subject = p.subject;
    r.template_index = p.template_index;
    if (p.subject_kind == SubjectKind::Occupation) {
      auto it = where.find(p.subject);
      if (it == where.end()) {
        throw DataError("translated probe " + r.probe_id + " names an unknown occupation");
      }
      r.category = it->second.first;
      r.group = it->second.second;
    }
    const auto c = classify_detailed(rec.output, lexicon);
    r.label = c.label;
    r.conflict = c.conflict;
    labels.push_back(std::move(r));
  }
  write_labels(at(config, paths::kLabels), labels);
}

void run_stats(const RunConfig& config) {
  const auto labels = read_labels(at(config, paths::kLabels));
  const auto occupations = read_occupations(at(config, paths::kOccupations));
  const auto summaries = read_category_summaries(at(config, paths::kCategories));
  const auto adjectives = read_adjectives(at(config, paths::kAdjectives));
  const auto languages = registry_of(config).select(config.languages);
  const auto groups = groups_in_order(summaries);

  write_tables(config, labels, summaries, groups, languages, adjectives);
  write_tests(config, labels, groups, languages);
  write_plots(config, labels, groups, languages);
  write_comparison(config, participation_comparison(occupations, labels, config.alpha));
}

void run_report(const RunConfig& config) {
  const auto probes = read_probes(at(config, paths::kProbes));
  const auto unavailable = read_unavailable(at(config, paths::kUnavailable));
  const auto translations = read_translations(at(config, paths::kTranslations));
  const auto labels = read_labels(at(config, paths::kLabels));

  std::size_t localize_failures = 0;
  std::size_t translate_failures = 0;
  for (const auto& u : unavailable) (u.stage == "localize" ? localize_failures : translate_failures)++;

  std::map<std::string, std::size_t> conflicts;
  for (const auto& l : registry_of(config).select(config.languages)) conflicts[l.code] = 0;
  for (const auto& r : labels) {
    if (r.conflict) ++conflicts[r.language];
  }

  std::set<std::string> backend_ids;
  for (const auto& t : translations) backend_ids.insert(t.record.backend_id);

  std::string digest;
  if (config.backend == BackendKind::Fixture) {
    digest = text::sha256_hex(text::read_file(config.resolve(config.snapshot)));
  } else if (!config.live.cache_path.empty() &&
             fs::exists(config.resolve(config.live.cache_path.string()))) {
    digest = text::sha256_hex(text::read_file(config.resolve(config.live.cache_path.string())));
  }

  ordered_json m;
  m["tool"] = "mtbias";
  m["version"] = MTBIAS_VERSION;
  m["config"] = ordered_json::parse(config.echo());
  m["probes"] = {{"built", probes.size() + localize_failures},
                 {"translated", translations.size()},
                 {"unavailable", unavailable.size()},
                 {"unavailable_localize", localize_failures},
                 {"unavailable_translate", translate_failures}};
  m["labels"] = labels.size();
  m["conflicts_by_language"] = conflicts;
  m["backend_ids"] = backend_ids;
  m["snapshot_sha256"] = digest;
  m["assumptions"] = {
      "per-cell tests are one-sided paired t-tests over per-occupation pronoun counts",
      "participation and translated-female frequency are paired on occupation",
      "comparison histograms use 12 equal-width bins over [0, 1]",
      "multi-template languages contribute one probe per template"};
  text::write_file_atomic(at(config, paths::kManifest), m.dump(2) + "\n");
}

void run_audit(const RunConfig& config) {
  auto backend = make_backend(config);
  run_ingest(config);
  run_probes(config, *backend);
  run_translate(config, *backend);
  run_classify(config);
  run_stats(config);
  run_report(config);
}

std::string test_marker(const std::optional<TestResult>& result) {
  if (!result) return "n/a";
  switch (result->verdict) {
    case Verdict::Degenerate: return "*";
    case Verdict::Reject: return "<alpha";
    case Verdict::Accept:
    case Verdict::AcceptComplementRejected: break;
  }
  return text::fixed_half_up(result->p, 3);
}

std::string test_shading(const std::optional<TestResult>& result) {
  if (!result) return "none";
  switch (result->verdict) {
    case Verdict::Reject: return "none";
    case Verdict::AcceptComplementRejected: return "accept-complement-rejected";
    case Verdict::Accept:
    case Verdict::Degenerate: return "accept";
  }
  return "none";
}

std::string format_pct(double fraction) { return text::fixed_half_up(fraction * 100.0, 3); }

}  // namespace mtbias
