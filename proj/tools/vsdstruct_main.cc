// Copyright 2026 The vsdstruct Authors.
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

// Command-line front end: synth, ingest, validate, train, predict, evaluate
// and features.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "vsd/block_model.h"
#include "vsd/corpus_io.h"
#include "vsd/error.h"
#include "vsd/evaluation.h"
#include "vsd/features.h"
#include "vsd/pipeline.h"
#include "vsd/synth.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;
constexpr char kScorerEnv[] = "VSD_SCORER_CMD";

struct ModelOptions {
  std::string scorer = "internal";
  std::string scorer_cmd;
  std::vector<std::string> disabled;
  int trees = 100;
  std::uint64_t seed = 0;
};

void AddModelOptions(CLI::App* cmd, ModelOptions& o) {
  cmd->add_option("--scorer", o.scorer,
                  "Coherence scorer: internal, none or external")
      ->check(CLI::IsMember({"internal", "none", "external"}));
  cmd->add_option("--scorer-cmd", o.scorer_cmd,
                  std::string("External scorer command (default $") +
                      kScorerEnv + ")");
  cmd->add_option("--disable-feature", o.disabled,
                  "Feature name to leave out (repeatable)");
  cmd->add_option("--trees", o.trees, "Trees per forest")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Random seed");
}

vsd::ScorerKind ScorerKindOf(const ModelOptions& o) {
  if (o.scorer == "none") return vsd::ScorerKind::kNone;
  if (o.scorer == "external") return vsd::ScorerKind::kExternal;
  return vsd::ScorerKind::kInternal;
}

std::string ScorerCommand(const ModelOptions& o) {
  if (!o.scorer_cmd.empty()) return o.scorer_cmd;
  const char* env = std::getenv(kScorerEnv);
  return env != nullptr ? env : "";
}

std::unique_ptr<vsd::ExternalScorer> MaybeExternal(const ModelOptions& o,
                                                   bool needed) {
  if (!needed) return nullptr;
  const std::string cmd = ScorerCommand(o);
  if (cmd.empty()) {
    throw vsd::Error(std::string("external scorer needs --scorer-cmd or $") +
                     kScorerEnv);
  }
  return std::make_unique<vsd::ExternalScorer>(cmd);
}

vsd::TrainConfig MakeTrainConfig(const ModelOptions& o) {
  vsd::TrainConfig c;
  c.forest.n_trees = o.trees;
  c.forest.seed = o.seed;
  c.disabled_features = o.disabled;
  c.scorer = ScorerKindOf(o);
  return c;
}

std::optional<vsd::DocType> DocTypeOption(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return vsd::ParseDocType(name);
}

// Runs fn(i) for i in [0, n) on at most `jobs` threads. The first exception
// is rethrown after all workers finish.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn fn) {
  const std::size_t workers = std::clamp<std::size_t>(
      jobs > 0 ? static_cast<std::size_t>(jobs)
               : std::max(1u, std::thread::hardware_concurrency()),
      1, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

// ---- synth ---------------------------------------------------------------

struct SynthOptions {
  std::string out;
  std::string doc_type = "contract-pdf-en";
  std::uint64_t seed = 0;
  vsd::SynthSpec spec;
  std::vector<std::string> styles;
};

int RunSynth(const SynthOptions& o) {
  vsd::SynthSpec spec = o.spec;
  spec.doc_type = vsd::ParseDocType(o.doc_type);
  if (!o.styles.empty()) {
    spec.styles.clear();
    for (const auto& s : o.styles) {
      spec.styles.push_back(s == "numbered" ? vsd::SynthStyle::kNumbered
                                            : vsd::SynthStyle::kSpaced);
    }
  }
  const auto docs = vsd::Synthesize(spec, o.seed);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::ostringstream name;
    name << "doc-" << std::setw(4) << std::setfill('0') << d;
    vsd::SaveLabeledDocument(fs::path(o.out) / name.str(), docs[d].labeled);
  }
  std::cout << "wrote " << docs.size() << " documents to " << o.out << "\n";
  return kExitOk;
}

// ---- ingest --------------------------------------------------------------

struct IngestOptions {
  std::string input;
  std::string out;
  std::string doc_type;
  std::string doc_id;
};

int RunIngest(const IngestOptions& o) {
  const std::string content = vsd::ReadFile(o.input);
  vsd::Document doc;
  const bool json = fs::path(o.input).extension() == ".json";
  if (json) {
    doc = vsd::ParseBlockJson(content);
    if (!o.doc_id.empty()) doc.doc_id = o.doc_id;
  } else {
    if (o.doc_type.empty()) {
      throw vsd::Error("plain-text input needs --doc-type");
    }
    const std::string id =
        o.doc_id.empty() ? fs::path(o.input).stem().string() : o.doc_id;
    doc = vsd::IngestPlainText(content, id, vsd::ParseDocType(o.doc_type));
  }
  const fs::path dir(o.out);
  vsd::WriteFileAtomic(dir / vsd::kBlocksFile, vsd::WriteBlockJson(doc));
  if (vsd::IsTextType(doc.doc_type)) {
    vsd::WriteFileAtomic(dir / vsd::kSourceFile, vsd::RenderPlainText(doc));
  }
  std::cout << "ingested " << doc.blocks.size() << " blocks into "
            << dir.string() << "\n";
  return kExitOk;
}

// ---- validate ------------------------------------------------------------

struct ValidateOptions {
  std::string path;
  std::string doc_type;
};

int RunValidate(const ValidateOptions& o) {
  const auto type = DocTypeOption(o.doc_type);
  int failures = 0;
  for (const auto& dir : vsd::DiscoverDocuments(o.path)) {
    const auto doc = vsd::LoadDocument(dir, type);
    const fs::path gold = dir / vsd::kGoldFile;
    std::vector<vsd::Violation> violations;
    try {
      const auto ann = vsd::ParseAnnotationLenient(vsd::ReadFile(gold));
      if (ann.size() != doc.blocks.size()) {
        violations.push_back(
            {-1, "annotation has " + std::to_string(ann.size()) +
                     " rows for " + std::to_string(doc.blocks.size()) +
                     " blocks"});
      } else {
        violations = vsd::ValidateAnnotation(doc, ann);
      }
    } catch (const vsd::Error& e) {
      violations.push_back({-1, e.what()});
    }
    for (const auto& v : violations) {
      std::cout << gold.string() << ": ";
      if (v.block >= 0) std::cout << "block " << v.block << ": ";
      std::cout << v.message << "\n";
    }
    failures += !violations.empty();
  }
  if (failures > 0) {
    std::cout << failures << " document(s) failed validation\n";
    return kExitInvalid;
  }
  std::cout << "ok\n";
  return kExitOk;
}

// ---- train ---------------------------------------------------------------

struct TrainOptions {
  std::string corpus;
  std::string model;
  std::string doc_type;
  ModelOptions model_options;
};

int RunTrain(const TrainOptions& o) {
  const auto corpus = vsd::LoadCorpus(o.corpus, DocTypeOption(o.doc_type));
  const auto config = MakeTrainConfig(o.model_options);
  const auto external = MaybeExternal(
      o.model_options, config.scorer == vsd::ScorerKind::kExternal);
  const auto bundle = vsd::Train(corpus, config, external.get());
  vsd::WriteFileAtomic(o.model, bundle.ToJson());
  std::cout << "trained on " << corpus.size() << " documents; model written to "
            << o.model << "\n";
  return kExitOk;
}

// ---- predict -------------------------------------------------------------

struct PredictOptions {
  std::string model;
  std::string input;
  std::string out;
  std::string doc_type;
  std::string scorer_cmd;
  int jobs = 0;
};

int RunPredict(const PredictOptions& o) {
  const auto bundle = vsd::ModelBundle::FromJson(vsd::ReadFile(o.model));
  ModelOptions scorer_options;
  scorer_options.scorer_cmd = o.scorer_cmd;
  const auto external = MaybeExternal(
      scorer_options, bundle.scorer == vsd::ScorerKind::kExternal);
  const auto dirs = vsd::DiscoverDocuments(o.input);
  if (dirs.empty()) throw vsd::Error("no documents under " + o.input);
  const auto type = DocTypeOption(o.doc_type);
  ParallelFor(dirs.size(), o.jobs, [&](std::size_t i) {
    const auto doc = vsd::LoadDocument(dirs[i], type);
    const auto prediction = vsd::Predict(doc, bundle, external.get());
    vsd::WriteFileAtomic(fs::path(o.out) / (doc.doc_id + ".json"),
                         vsd::PredictionJson(doc, prediction) + "\n");
  });
  std::cout << "predicted " << dirs.size() << " documents into " << o.out
            << "\n";
  return kExitOk;
}

// ---- evaluate ------------------------------------------------------------

struct EvaluateOptions {
  std::string corpus;
  std::string doc_type;
  std::string format = "table";
  std::string out;
  int folds = 5;
  ModelOptions model_options;
};

int RunEvaluate(const EvaluateOptions& o) {
  const auto corpus = vsd::LoadCorpus(o.corpus, DocTypeOption(o.doc_type));
  const auto config = MakeTrainConfig(o.model_options);
  const auto external = MaybeExternal(
      o.model_options, config.scorer == vsd::ScorerKind::kExternal);
  const auto result = vsd::CrossValidate(corpus, o.folds, o.model_options.seed,
                                         config, external.get());
  const std::string report = o.format == "json"
                                 ? vsd::ReportJson(result) + "\n"
                                 : vsd::ReportTable(result);
  if (o.out.empty()) {
    std::cout << report;
  } else {
    vsd::WriteFileAtomic(o.out, report);
    std::cout << "report written to " << o.out << "\n";
  }
  return kExitOk;
}

// ---- features ------------------------------------------------------------

struct FeaturesOptions {
  std::string input;
  std::string out;
  std::string doc_type;
  std::vector<std::string> disabled;
  bool pointer = false;
  bool internal_scorer = false;
};

int RunFeatures(const FeaturesOptions& o) {
  const auto type = DocTypeOption(o.doc_type);
  const auto dirs = vsd::DiscoverDocuments(o.input);
  if (dirs.empty()) throw vsd::Error("no documents under " + o.input);
  std::vector<vsd::Document> docs;
  std::vector<std::optional<vsd::Annotation>> golds;
  for (const auto& dir : dirs) {
    docs.push_back(vsd::LoadDocument(dir, type));
    const fs::path gold = dir / vsd::kGoldFile;
    golds.push_back(fs::is_regular_file(gold)
                        ? std::optional(vsd::ParseAnnotation(
                              vsd::ReadFile(gold), docs.back().blocks.size()))
                        : std::nullopt);
  }
  const auto registry =
      vsd::FeatureRegistry::ForDocType(docs.front().doc_type, o.disabled);
  std::optional<vsd::CharNGramModel> ngram;
  if (o.internal_scorer) {
    std::vector<std::string> texts;
    for (const auto& d : docs) {
      for (const auto& b : d.blocks) texts.push_back(b.text);
    }
    ngram = vsd::CharNGramModel::Train(texts);
  }

  std::vector<std::string> columns =
      o.pointer ? vsd::PointerColumns() : registry.columns();
  std::vector<vsd::FeatureRow> rows;
  std::vector<std::string> ids;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (docs[d].doc_type != registry.doc_type()) {
      throw vsd::Error("documents mix types " +
                       std::string(vsd::DocTypeName(registry.doc_type())) +
                       " and " +
                       std::string(vsd::DocTypeName(docs[d].doc_type)));
    }
    const auto analysis = vsd::AnalyzeDocument(docs[d]);
    if (o.pointer) {
      if (!golds[d]) continue;
      auto p = vsd::PointerFeatureRows(analysis, golds[d]->labels);
      for (std::size_t r = 0; r < p.rows.size(); ++r) {
        ids.push_back(docs[d].doc_id + ":" +
                      std::to_string(p.pairs[r].up_block) + "->" +
                      std::to_string(p.pairs[r].candidate));
        rows.push_back(std::move(p.rows[r]));
      }
      continue;
    }
    std::vector<bool> mask(docs[d].blocks.size(), false);
    if (golds[d]) {
      for (std::size_t i = 0; i < mask.size(); ++i) {
        mask[i] = golds[d]->labels[i] == vsd::Label::kOmitted;
      }
    }
    auto m = vsd::TransitionFeatureMatrix(analysis, mask, registry,
                                          ngram ? &*ngram : nullptr);
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      ids.push_back(docs[d].doc_id + ":" + std::to_string(i));
      rows.push_back(std::move(m.rows[i]));
    }
  }
  std::ostringstream csv;
  vsd::WriteFeatureCsv(csv, columns, rows, ids);
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    vsd::WriteFileAtomic(o.out, csv.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logical structure analysis of visually structured documents"};
  app.require_subcommand(1);
  const std::vector<std::string> kDocTypes = {
      "contract-pdf-en", "law-pdf-en", "contract-txt-en", "contract-pdf-ja"};

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--out", synth.out, "Output corpus directory")
      ->required();
  synth_cmd->add_option("--doc-type", synth.doc_type, "Document type")
      ->check(CLI::IsMember(kDocTypes));
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--documents", synth.spec.documents,
                        "Number of documents");
  synth_cmd->add_option("--depth", synth.spec.depth_limit, "Nesting levels");
  synth_cmd->add_option("--debris-rate", synth.spec.debris_rate,
                        "Fraction of debris blocks");
  synth_cmd->add_option("--indent-step", synth.spec.indent_step,
                        "Indentation per level (0 = default)");
  synth_cmd->add_option("--style", synth.styles,
                        "Rendering style, repeatable: numbered, spaced")
      ->check(CLI::IsMember({"numbered", "spaced"}));

  IngestOptions ingest;
  auto* ingest_cmd =
      app.add_subcommand("ingest", "Convert plain text or block JSON");
  ingest_cmd->add_option("input", ingest.input, "source.txt or blocks JSON")
      ->required()
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--out", ingest.out, "Output document directory")
      ->required();
  ingest_cmd->add_option("--doc-type", ingest.doc_type, "Document type")
      ->check(CLI::IsMember(kDocTypes));
  ingest_cmd->add_option("--doc-id", ingest.doc_id, "Document id");

  ValidateOptions validate;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check gold annotations");
  validate_cmd->add_option("path", validate.path, "Document or corpus dir")
      ->required()
      ->check(CLI::ExistingDirectory);
  validate_cmd->add_option("--doc-type", validate.doc_type,
                           "Type for source.txt documents")
      ->check(CLI::IsMember(kDocTypes));

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train a model bundle");
  train_cmd->add_option("--corpus", train.corpus, "Annotated corpus dir")
      ->required()
      ->check(CLI::ExistingDirectory);
  train_cmd->add_option("--model", train.model, "Output model file")
      ->required();
  train_cmd->add_option("--doc-type", train.doc_type,
                        "Type for source.txt documents")
      ->check(CLI::IsMember(kDocTypes));
  AddModelOptions(train_cmd, train.model_options);

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Parse documents");
  predict_cmd->add_option("--model", predict.model, "Model bundle")
      ->required()
      ->check(CLI::ExistingFile);
  predict_cmd->add_option("--input", predict.input, "Document or corpus dir")
      ->required()
      ->check(CLI::ExistingDirectory);
  predict_cmd->add_option("--out", predict.out, "Output directory")
      ->required();
  predict_cmd->add_option("--doc-type", predict.doc_type,
                          "Type for source.txt documents")
      ->check(CLI::IsMember(kDocTypes));
  predict_cmd->add_option("--scorer-cmd", predict.scorer_cmd,
                          "External scorer command");
  predict_cmd->add_option("--jobs", predict.jobs, "Worker threads");

  EvaluateOptions evaluate;
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "Cross-validate against the baselines");
  evaluate_cmd->add_option("--corpus", evaluate.corpus, "Annotated corpus")
      ->required()
      ->check(CLI::ExistingDirectory);
  evaluate_cmd->add_option("--doc-type", evaluate.doc_type,
                           "Type for source.txt documents")
      ->check(CLI::IsMember(kDocTypes));
  evaluate_cmd->add_option("--folds", evaluate.folds, "Number of folds")
      ->check(CLI::Range(2, 1000));
  evaluate_cmd->add_option("--format", evaluate.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  evaluate_cmd->add_option("--out", evaluate.out, "Report file");
  AddModelOptions(evaluate_cmd, evaluate.model_options);

  FeaturesOptions features;
  auto* features_cmd =
      app.add_subcommand("features", "Dump feature rows as CSV");
  features_cmd->add_option("input", features.input, "Document or corpus dir")
      ->required()
      ->check(CLI::ExistingDirectory);
  features_cmd->add_option("--out", features.out, "CSV file (default stdout)");
  features_cmd->add_option("--doc-type", features.doc_type,
                           "Type for source.txt documents")
      ->check(CLI::IsMember(kDocTypes));
  features_cmd->add_option("--disable-feature", features.disabled,
                           "Feature name to leave out (repeatable)");
  features_cmd->add_flag("--pointer", features.pointer,
                         "Dump pointer rows built from gold labels");
  features_cmd->add_flag("--internal-scorer", features.internal_scorer,
                         "Fill S1 with an n-gram model fit on the input");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth_cmd->parsed()) return RunSynth(synth);
    if (ingest_cmd->parsed()) return RunIngest(ingest);
    if (validate_cmd->parsed()) return RunValidate(validate);
    if (train_cmd->parsed()) return RunTrain(train);
    if (predict_cmd->parsed()) return RunPredict(predict);
    if (evaluate_cmd->parsed()) return RunEvaluate(evaluate);
    if (features_cmd->parsed()) return RunFeatures(features);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
