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

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mtbias/errors.hpp"
#include "mtbias/report.hpp"
#include "mtbias/translator.hpp"

namespace {

namespace fs = std::filesystem;
using namespace mtbias;

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kUnavailable = 3, kSchema = 4 };

struct Overrides {
  std::string config = std::string(MTBIAS_DATA_DIR) + "/audit.json";
  std::optional<std::string> backend;
  std::optional<std::string> snapshot;
  std::optional<double> alpha;
  std::optional<std::string> languages;
  std::optional<std::string> out;
};

void add_run_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--backend", o.backend, "live or fixture");
  cmd->add_option("--snapshot", o.snapshot, "snapshot replayed by the fixture backend");
  cmd->add_option("--alpha", o.alpha, "significance level");
  cmd->add_option("--languages", o.languages, "comma-separated language codes or names");
  cmd->add_option("--out", o.out, "output directory");
}

RunConfig build_config(const Overrides& o) {
  RunConfig c = RunConfig::load(o.config);
  if (o.backend) c.backend = parse_backend_kind(*o.backend);
  if (o.snapshot) c.snapshot = fs::absolute(*o.snapshot).string();
  if (o.alpha) c.alpha = *o.alpha;
  if (o.languages) {
    c.languages.clear();
    std::stringstream ss(*o.languages);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) c.languages.push_back(item);
    }
  }
  if (o.out) c.out_dir = *o.out;
  c.validate();
  return c;
}

int guarded(const std::string& stage, const std::function<void(std::string&)>& body) {
  std::string current = stage;
  try {
    body(current);
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "mtbias: " << current << ": configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const Unavailable& e) {
    std::cerr << "mtbias: " << current << ": backend unavailable: " << e.what() << "\n";
    return kUnavailable;
  } catch (const SchemaError& e) {
    std::cerr << "mtbias: " << current << ": schema mismatch: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "mtbias: " << current << ": " << e.what() << "\n";
    return kOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audit a translation system for gendered pronoun defaults"};
  app.set_version_flag("--version", MTBIAS_VERSION);
  app.require_subcommand(1);

  Overrides o;
  struct Stage {
    const char* name;
    const char* help;
  };
  const Stage stages[] = {
      {"run", "run every stage"},
      {"ingest", "load and curate the occupation and adjective corpora"},
      {"probes", "build source-language probe sentences"},
      {"translate", "translate probes into English"},
      {"classify", "label the pronominal gender of each translation"},
      {"stats", "write tables, test matrices, plot data and the comparison"},
      {"report", "write the run manifest"},
  };
  for (const auto& s : stages) add_run_options(app.add_subcommand(s.name, s.help), o);

  auto* snap = app.add_subcommand("snapshot", "move records between a cache and a snapshot");
  snap->require_subcommand(1);
  std::string cache_path;
  std::string snapshot_path;
  auto* exp = snap->add_subcommand("export", "write a cache out as a sorted snapshot");
  exp->add_option("--cache", cache_path, "cache file")->required();
  exp->add_option("--out", snapshot_path, "snapshot to write")->required();
  auto* imp = snap->add_subcommand("import", "merge a snapshot into a cache");
  imp->add_option("--snapshot", snapshot_path, "snapshot to read")->required();
  imp->add_option("--cache", cache_path, "cache file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  if (exp->parsed()) {
    return guarded("snapshot export",
                   [&](std::string&) { export_snapshot(cache_path, snapshot_path); });
  }
  if (imp->parsed()) {
    return guarded("snapshot import",
                   [&](std::string&) { import_snapshot(snapshot_path, cache_path); });
  }

  const std::string name = app.get_subcommands().front()->get_name();
  return guarded("config", [&](std::string& current) {
    const RunConfig config = build_config(o);
    std::shared_ptr<TranslationBackend> backend;
    auto get_backend = [&]() -> TranslationBackend& {
      if (!backend) backend = make_backend(config);
      return *backend;
    };
    const bool all = name == "run";
    auto step = [&](const char* stage, const std::function<void()>& fn) {
      if (!all && name != stage) return;
      current = std::string("stage ") + stage;
      fn();
    };
    step("ingest", [&] { run_ingest(config); });
    step("probes", [&] { run_probes(config, get_backend()); });
    step("translate", [&] { run_translate(config, get_backend()); });
    step("classify", [&] { run_classify(config); });
    step("stats", [&] { run_stats(config); });
    step("report", [&] { run_report(config); });
  });
}
