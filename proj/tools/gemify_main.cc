// Copyright 2026 The gemify Authors.
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

// gemify: restructure guideline text into GEM XML.
//
//   gemify analyze INPUT... [--dump couples] [--out PATH]
//   gemify eval PRED GOLD
//   gemify train CORPUS_DIR [--out rules.tsv]
//
// Exit codes: 0 ok, 1 pipeline failure, 2 input or configuration error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gemify/config.h"
#include "gemify/cues.h"
#include "gemify/errors.h"
#include "gemify/eval.h"
#include "gemify/pipeline.h"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kPipelineFailure = 1;
constexpr int kInputError = 2;

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gemify::ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gemify::ConfigError("cannot write " + path.string());
  out << contents;
}

struct AnalyzeFlags {
  std::vector<std::string> inputs;
  std::string config;
  std::string lexicons;
  bool no_domain = false;
  std::string rules;
  std::vector<std::string> dumps;
  std::string gem_names;
  std::string out;
  std::vector<std::string> disabled;
  std::string sidecar;
  bool stats = false;
};

std::string dump(const std::string &kind, const std::string &stem,
                 const gemify::PipelineResult &r) {
  if (kind == "cues") return gemify::dump_cues(r.store);
  if (kind == "segments") return gemify::format_standoff(stem, r.document, r.segments);
  if (kind == "tree") return gemify::format_tree(r.tree, r.document);
  if (kind == "couples") return gemify::format_couples(r.couples);
  return gemify::dump_facts(r.store);
}

int analyze(const AnalyzeFlags &flags, CLI::App &cmd) {
  gemify::RunConfig config;
  if (!flags.config.empty()) config = gemify::load_config(flags.config);
  if (cmd.count("--lexicons")) config.lexicon_dir = flags.lexicons;
  if (flags.no_domain) config.domain_lexicon = false;
  if (cmd.count("--rules")) config.rules = flags.rules;
  if (cmd.count("--gem-names")) config.gem_names = *gemify::parse_gem_names(flags.gem_names);
  if (cmd.count("--out")) config.out = flags.out;
  if (cmd.count("--sidecar")) config.sidecar = flags.sidecar;
  if (flags.stats) config.stats = true;
  config.dumps.insert(config.dumps.end(), flags.dumps.begin(), flags.dumps.end());
  config.disabled_stages.insert(config.disabled_stages.end(), flags.disabled.begin(),
                                flags.disabled.end());
  if (flags.inputs.size() > 1 && !config.out.empty()) {
    throw gemify::ConfigError("--out needs a single input file");
  }
  if (!config.sidecar.empty() && flags.inputs.size() > 1) {
    throw gemify::ConfigError("--sidecar needs a single input file");
  }

  gemify::LoadedConfig loaded = gemify::load_run(config);
  std::optional<gemify::Sidecar> sidecar;
  if (!config.sidecar.empty()) {
    try {
      sidecar = gemify::parse_sidecar(read_file(config.sidecar));
    } catch (const gemify::FormatError &e) {
      throw gemify::ConfigError(config.sidecar.string() + ": " + e.what());
    }
    loaded.options.sidecar = &*sidecar;
  }

  for (const std::string &input : flags.inputs) {
    fs::path in_path(input);
    std::string text = read_file(in_path);
    std::string stem = in_path.stem().string();
    gemify::PipelineResult r =
        gemify::run_pipeline(text, loaded.pack, loaded.options, stem);

    fs::path out_path = config.out.empty()
                            ? in_path.parent_path() / (stem + ".gem.xml")
                            : config.out;
    fs::path dump_dir = out_path.parent_path();
    if (config.out == "-") {
      std::cout << r.xml;
      dump_dir = in_path.parent_path();
    } else {
      write_file(out_path, r.xml);
    }
    for (const std::string &kind : config.dumps) {
      write_file(dump_dir / (stem + "." + kind + ".tsv"), dump(kind, stem, r));
    }
    for (const gemify::StoreWarning &w : r.store.warnings()) {
      std::cerr << stem << ": warning: " << w.message << "\n";
    }
    if (config.stats) {
      std::cout << "# " << stem << "\n"
                << gemify::format_stats(gemify::compute_stats(r));
    }
  }
  return kOk;
}

int eval(const std::string &pred, const std::string &gold) {
  gemify::EvalReport report =
      gemify::evaluate_files(read_file(pred), read_file(gold));
  std::cout << gemify::format_report(report);
  return kOk;
}

int train(const std::string &corpus_dir, std::string out, double threshold,
          const std::string &lexicons) {
  gemify::RunConfig config;
  if (!lexicons.empty()) config.lexicon_dir = lexicons;
  gemify::LoadedConfig loaded = gemify::load_run(config);
  if (!fs::is_directory(corpus_dir)) {
    throw gemify::ConfigError("not a directory: " + corpus_dir);
  }
  std::vector<fs::path> texts;
  for (const auto &entry : fs::directory_iterator(corpus_dir)) {
    if (entry.path().extension() == ".txt") texts.push_back(entry.path());
  }
  std::sort(texts.begin(), texts.end());
  std::vector<gemify::TrainingDocument> corpus;
  for (const fs::path &t : texts) {
    fs::path gold = t.parent_path() / (t.stem().string() + ".gold.tsv");
    if (!fs::exists(gold)) continue;
    gemify::TrainingDocument doc;
    doc.doc_id = t.stem().string();
    doc.text = read_file(t);
    try {
      doc.gold = gemify::parse_standoff(read_file(gold));
    } catch (const gemify::FormatError &e) {
      throw gemify::ConfigError(gold.string() + ": " + e.what());
    }
    corpus.push_back(std::move(doc));
  }
  gemify::RuleTable table =
      gemify::train_bundles(corpus, loaded.pack, loaded.options, threshold);
  if (out.empty()) out = (fs::path(corpus_dir) / "rules.tsv").string();
  write_file(out, gemify::format_rule_table(table));
  std::cout << "rules=" << table.rules.size() << "\nout=" << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Restructure clinical guideline text into GEM XML"};
  app.require_subcommand(1);

  AnalyzeFlags af;
  CLI::App *analyze_cmd = app.add_subcommand("analyze", "Run the pipeline and write <stem>.gem.xml");
  analyze_cmd->add_option("inputs", af.inputs, "Guideline text files")->required();
  analyze_cmd->add_option("--config", af.config, "key = value run configuration");
  analyze_cmd->add_option("--lexicons", af.lexicons, "Lexicon pack directory");
  analyze_cmd->add_flag("--no-domain-lexicon", af.no_domain,
                        "Do not tag headings with domain terms");
  analyze_cmd->add_option("--rules", af.rules, "Rule table file");
  analyze_cmd->add_option("--dump", af.dumps, "cues|segments|tree|couples|facts")
      ->check(CLI::IsMember({"cues", "segments", "tree", "couples", "facts"}));
  analyze_cmd->add_option("--gem-names", af.gem_names, "Element names: fr or en")
      ->check(CLI::IsMember({"fr", "en"}));
  analyze_cmd->add_option("--out", af.out, "Output XML path ('-' for stdout)");
  analyze_cmd->add_option("--disable-stage", af.disabled, "Skip a pipeline stage");
  analyze_cmd->add_option("--sidecar", af.sidecar, "Token annotation TSV");
  analyze_cmd->add_flag("--stats", af.stats, "Print frame statistics");

  std::string pred, gold;
  CLI::App *eval_cmd = app.add_subcommand("eval", "Score predictions against gold");
  eval_cmd->add_option("pred", pred, "Predicted couples or segments")->required();
  eval_cmd->add_option("gold", gold, "Gold couples or segments")->required();

  std::string corpus, train_out, train_lexicons;
  double threshold = gemify::kDefaultThreshold;
  CLI::App *train_cmd = app.add_subcommand("train", "Derive a rule table from a corpus");
  train_cmd->add_option("corpus", corpus, "Directory of <doc>.txt + <doc>.gold.tsv")
      ->required();
  train_cmd->add_option("--out", train_out, "Rule table path");
  train_cmd->add_option("--threshold", threshold, "Chi-square cutoff");
  train_cmd->add_option("--lexicons", train_lexicons, "Lexicon pack directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) return analyze(af, *analyze_cmd);
    if (*eval_cmd) return eval(pred, gold);
    return train(corpus, train_out, threshold, train_lexicons);
  } catch (const gemify::PipelineError &e) {
    std::cerr << "gemify: " << e.what() << "\n";
    return kPipelineFailure;
  } catch (const gemify::Error &e) {
    std::cerr << "gemify: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    std::cerr << "gemify: " << e.what() << "\n";
    return kPipelineFailure;
  }
}
