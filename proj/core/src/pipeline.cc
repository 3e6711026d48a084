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

#include "vsd/pipeline.h"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "vsd/error.h"
#include "vsd/layout.h"
#include "vsd/text_cues.h"
#include "vsd/utf8.h"

namespace vsd {

namespace {

constexpr int kBundleVersion = 1;

std::string Hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string_view ScorerKindName(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::kNone:
      return "none";
    case ScorerKind::kInternal:
      return "internal";
    case ScorerKind::kExternal:
      return "external";
  }
  return "none";
}

ScorerKind ParseScorerKind(std::string_view name) {
  if (name == "none") return ScorerKind::kNone;
  if (name == "internal") return ScorerKind::kInternal;
  if (name == "external") return ScorerKind::kExternal;
  throw Error("unknown scorer kind: " + std::string(name));
}

std::vector<bool> OmittedMask(const std::vector<Label>& labels) {
  std::vector<bool> mask(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    mask[i] = labels[i] == Label::kOmitted;
  }
  return mask;
}

std::string DocumentText(const Document& doc) {
  std::string out;
  for (const auto& b : doc.blocks) {
    if (!out.empty()) out += ' ';
    out += b.text;
  }
  return out;
}

// Pointer choice without a trained model: the latest candidate whose
// paragraph head shares the left indentation cluster of the next block.
int FallbackPointer(const DocumentAnalysis& analysis,
                    const std::vector<Label>& labels, int up_block,
                    const std::vector<int>& candidates) {
  int next = -1;
  for (int k = up_block + 1; k < static_cast<int>(labels.size()); ++k) {
    if (labels[k] != Label::kOmitted) {
      next = k;
      break;
    }
  }
  if (next >= 0) {
    const int want = LeftCluster(analysis.doc->blocks[next], analysis.frame);
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
      const int head = ParagraphHead(labels, *it);
      if (LeftCluster(analysis.doc->blocks[head], analysis.frame) == want) {
        return *it;
      }
    }
  }
  return candidates.back();
}

Prediction Finish(std::vector<Label> labels,
                  std::vector<std::optional<int>> pointers) {
  Prediction p;
  p.annotation = RepairAnnotation(std::move(labels), std::move(pointers));
  p.tree = BuildTree(p.annotation);
  return p;
}

}  // namespace

FeatureRegistry ModelBundle::Registry() const {
  return FeatureRegistry::ForDocType(doc_type, disabled_features);
}

std::string ModelBundle::ToJson() const {
  nlohmann::ordered_json j;
  j["version"] = kBundleVersion;
  j["doc_type"] = std::string(DocTypeName(doc_type));
  j["disabled_features"] = disabled_features;
  j["transition_fingerprint"] = Hex(transition_fingerprint);
  j["pointer_fingerprint"] = Hex(pointer_fingerprint);
  j["transition_forest"] = nlohmann::ordered_json::parse(transition.ToJson());
  j["pointer_forest"] = pointer
                            ? nlohmann::ordered_json::parse(pointer->ToJson())
                            : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json s;
  s["kind"] = std::string(ScorerKindName(scorer));
  if (ngram) s["model"] = nlohmann::ordered_json::parse(ngram->ToJson());
  j["scorer"] = std::move(s);
  return j.dump();
}

ModelBundle ModelBundle::FromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model bundle: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != kBundleVersion) {
      throw Error("model bundle: unsupported version " +
                  j.at("version").dump());
    }
    ModelBundle b;
    b.doc_type = ParseDocType(j.at("doc_type").get<std::string>());
    b.disabled_features =
        j.at("disabled_features").get<std::vector<std::string>>();
    b.transition_fingerprint = std::stoull(
        j.at("transition_fingerprint").get<std::string>(), nullptr, 16);
    b.pointer_fingerprint = std::stoull(
        j.at("pointer_fingerprint").get<std::string>(), nullptr, 16);
    if (b.transition_fingerprint != b.Registry().Fingerprint()) {
      throw Error("model bundle: transition feature schema mismatch");
    }
    if (b.pointer_fingerprint != PointerFingerprint()) {
      throw Error("model bundle: pointer feature schema mismatch");
    }
    b.transition = Forest::FromJson(j.at("transition_forest").dump());
    if (b.transition.num_features() !=
        static_cast<int>(b.Registry().width())) {
      throw Error("model bundle: transition forest width mismatch");
    }
    if (!j.at("pointer_forest").is_null()) {
      b.pointer = Forest::FromJson(j.at("pointer_forest").dump());
    }
    const auto& s = j.at("scorer");
    b.scorer = ParseScorerKind(s.at("kind").get<std::string>());
    if (b.scorer == ScorerKind::kInternal) {
      b.ngram = CharNGramModel::FromJson(s.at("model").dump());
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model bundle: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(std::string("model bundle: ") + e.what());
  }
}

ModelBundle Train(const std::vector<LabeledDocument>& corpus,
                  const TrainConfig& config, const Scorer* external) {
  if (corpus.empty()) throw Error("training corpus is empty");
  const DocType type = corpus.front().doc.doc_type;
  for (const auto& d : corpus) {
    if (d.doc.doc_type != type) {
      throw Error("training corpus mixes document types " +
                  std::string(DocTypeName(type)) + " and " +
                  std::string(DocTypeName(d.doc.doc_type)));
    }
    const auto violations = ValidateAnnotation(d.doc, d.gold);
    if (!violations.empty()) {
      throw Error("invalid gold annotation for " + d.doc.doc_id + ": block " +
                  std::to_string(violations.front().block) + ": " +
                  violations.front().message);
    }
  }
  if (config.scorer == ScorerKind::kExternal && external == nullptr) {
    throw Error("external scorer requested but none supplied");
  }

  ModelBundle bundle;
  bundle.doc_type = type;
  bundle.disabled_features = config.disabled_features;
  const FeatureRegistry registry = bundle.Registry();
  bundle.transition_fingerprint = registry.Fingerprint();
  bundle.pointer_fingerprint = PointerFingerprint();
  bundle.scorer = registry.Has(FeatureId::kS1) ? config.scorer
                                               : ScorerKind::kNone;

  const Scorer* scorer = nullptr;
  if (bundle.scorer == ScorerKind::kInternal) {
    std::vector<std::string> texts;
    for (const auto& d : corpus) texts.push_back(DocumentText(d.doc));
    bundle.ngram = CharNGramModel::Train(texts, config.ngram_order);
    scorer = &*bundle.ngram;
  } else if (bundle.scorer == ScorerKind::kExternal) {
    scorer = external;
  }

  std::vector<FeatureRow> t_rows;
  std::vector<int> t_labels;
  std::vector<FeatureRow> p_rows;
  std::vector<int> p_labels;
  for (const auto& d : corpus) {
    const auto analysis = AnalyzeDocument(d.doc);
    const auto& labels = d.gold.labels;
    auto matrix = TransitionFeatureMatrix(analysis, OmittedMask(labels),
                                          registry, scorer);
    const int sentinel = LastRetained(labels);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (static_cast<int>(i) == sentinel) continue;
      t_rows.push_back(std::move(matrix.rows[i]));
      t_labels.push_back(static_cast<int>(labels[i]));
    }
    auto pointer_rows = PointerFeatureRows(analysis, labels);
    for (std::size_t r = 0; r < pointer_rows.rows.size(); ++r) {
      const auto& pair = pointer_rows.pairs[r];
      p_rows.push_back(std::move(pointer_rows.rows[r]));
      p_labels.push_back(d.gold.pointers[pair.up_block] == pair.candidate);
    }
  }
  if (t_rows.empty()) throw Error("training corpus has no transition rows");
  bundle.transition = Forest::Fit(t_rows, t_labels, kNumLabels, config.forest);
  if (!p_rows.empty()) {
    bundle.pointer = Forest::Fit(p_rows, p_labels, 2, config.forest);
  }
  return bundle;
}

Prediction Predict(const Document& doc, const ModelBundle& bundle,
                   const Scorer* external) {
  if (doc.doc_type != bundle.doc_type) {
    throw Error("document " + doc.doc_id + " has type " +
                std::string(DocTypeName(doc.doc_type)) +
                " but the model was trained for " +
                std::string(DocTypeName(bundle.doc_type)));
  }
  const FeatureRegistry registry = bundle.Registry();
  const Scorer* scorer = nullptr;
  if (bundle.scorer == ScorerKind::kInternal && bundle.ngram) {
    scorer = &*bundle.ngram;
  } else if (bundle.scorer == ScorerKind::kExternal) {
    scorer = external;
  }
  const auto analysis = AnalyzeDocument(doc);
  const std::size_t n = doc.blocks.size();
  constexpr int kOmitted = static_cast<int>(Label::kOmitted);

  // Pass 1: contiguous contexts decide which blocks are debris.
  const auto pass1 = TransitionFeatureMatrix(
      analysis, std::vector<bool>(n, false), registry, scorer);
  std::vector<bool> omitted(n, false);
  std::vector<double> omitted_proba(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto proba = bundle.transition.PredictProba(pass1.rows[i]);
    omitted_proba[i] = proba[kOmitted];
    omitted[i] = std::max_element(proba.begin(), proba.end()) -
                     proba.begin() ==
                 kOmitted;
  }
  if (std::all_of(omitted.begin(), omitted.end(), [](bool b) { return b; })) {
    const auto keep =
        std::min_element(omitted_proba.begin(), omitted_proba.end()) -
        omitted_proba.begin();
    omitted[keep] = false;
  }

  // Pass 2: contexts skip the debris; OMITTED is no longer an option.
  const auto pass2 = TransitionFeatureMatrix(analysis, omitted, registry,
                                             scorer);
  std::vector<Label> labels(n, Label::kOmitted);
  for (std::size_t i = 0; i < n; ++i) {
    if (omitted[i]) continue;
    const auto proba = bundle.transition.PredictProba(pass2.rows[i]);
    int best = static_cast<int>(Label::kConsecutive);
    double best_p = 0;
    for (int c = 0; c < kOmitted; ++c) {
      if (proba[c] > best_p) {
        best = c;
        best_p = proba[c];
      }
    }
    labels[i] = static_cast<Label>(best);
  }
  const int sentinel = LastRetained(labels);
  labels[sentinel] = Label::kConsecutive;

  std::vector<std::optional<int>> pointers(n);
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (labels[i] != Label::kUp) continue;
    const auto candidates = PointerCandidates(labels, i);
    if (candidates.empty()) continue;  // repaired to CONSECUTIVE
    if (!bundle.pointer) {
      pointers[i] = FallbackPointer(analysis, labels, i, candidates);
      continue;
    }
    int best = candidates.front();
    double best_p = -1;
    for (int j : candidates) {
      const auto row = PointerFeatureRow(analysis, labels, i, j);
      const double p = bundle.pointer->PredictProba(row)[1];
      if (p >= best_p) {  // later candidates win ties
        best = j;
        best_p = p;
      }
    }
    pointers[i] = best;
  }
  return Finish(std::move(labels), std::move(pointers));
}

Annotation RepairAnnotation(std::vector<Label> labels,
                            std::vector<std::optional<int>> pointers) {
  const int n = static_cast<int>(labels.size());
  if (pointers.size() != labels.size()) {
    throw Error("label and pointer counts differ");
  }
  const int sentinel = LastRetained(labels);
  if (sentinel < 0) throw Error("cannot repair: every block is OMITTED");
  labels[sentinel] = Label::kConsecutive;

  // Replays the stack of open paragraphs; each paragraph is identified by
  // its id, and `last` holds its most recent block.
  std::vector<int> paragraph_of(n, -1);
  std::vector<int> last;
  std::vector<int> stack;
  int current = -1;
  for (int i = 0; i < n; ++i) {
    if (labels[i] == Label::kOmitted) {
      pointers[i].reset();
      continue;
    }
    if (current < 0) {
      last.push_back(i);
      stack.push_back(0);
    }
    paragraph_of[i] = stack.back();
    last[stack.back()] = i;
    current = i;
    if (i == sentinel) {
      // Only OMITTED blocks follow; their pointers are cleared above.
      pointers[i].reset();
      continue;
    }

    if (labels[i] == Label::kUp) {
      int target_depth = -1;  // stack position of the paragraph to rejoin
      if (pointers[i] && *pointers[i] >= 0 && *pointers[i] < i) {
        const int para = paragraph_of[*pointers[i]];
        const auto it = std::find(stack.begin(), stack.end(), para);
        if (para >= 0 && it != stack.end()) {
          target_depth = static_cast<int>(it - stack.begin());
        }
      }
      if (target_depth == static_cast<int>(stack.size()) - 1) {
        labels[i] = Label::kConsecutive;
        target_depth = -1;
      } else if (target_depth < 0 && stack.size() >= 2) {
        target_depth = static_cast<int>(stack.size()) - 2;
      } else if (target_depth < 0) {
        labels[i] = Label::kConsecutive;
      }
      if (labels[i] == Label::kUp) {
        pointers[i] = last[stack[target_depth]];
        stack.resize(target_depth);
      }
    }
    if (labels[i] != Label::kUp) pointers[i].reset();

    switch (labels[i]) {
      case Label::kContinuous:
        break;
      case Label::kConsecutive:
        stack.pop_back();
        [[fallthrough]];
      case Label::kDown:
      case Label::kUp:
        last.push_back(-1);
        stack.push_back(static_cast<int>(last.size()) - 1);
        break;
      case Label::kOmitted:
        break;
    }
  }
  return Annotation{std::move(labels), std::move(pointers)};
}

Prediction NumberingBaseline(const Document& doc) {
  const Language language =
      IsJapanese(doc.doc_type) ? Language::kJapanese : Language::kEnglish;
  const std::size_t n = doc.blocks.size();
  std::vector<Label> labels(n, Label::kConsecutive);
  std::vector<std::optional<int>> pointers(n);
  NumberingMemory memory;
  memory.Step(DetectNumbering(doc.blocks[0].text, language), 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int next = static_cast<int>(i + 1);
    const auto r = memory.Step(DetectNumbering(doc.blocks[next].text, language),
                               next);
    switch (r.step) {
      case NumberingStep::kContinuous:
        labels[i] = Label::kContinuous;
        break;
      case NumberingStep::kDown:
        labels[i] = Label::kDown;
        break;
      case NumberingStep::kUp:
        labels[i] = Label::kUp;
        pointers[i] = r.matched_block;
        break;
      case NumberingStep::kConsecutive:
      case NumberingStep::kOther:
        labels[i] = Label::kConsecutive;
        break;
    }
  }
  return Finish(std::move(labels), std::move(pointers));
}

Prediction VisualBaseline(const Document& doc) {
  const PageFrame frame = ComputePageFrame(doc);
  const std::size_t n = doc.blocks.size();
  std::vector<Label> labels(n, Label::kConsecutive);
  std::vector<std::optional<int>> pointers(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto& cur = doc.blocks[i];
    const auto& next = doc.blocks[i + 1];
    switch (IndentationRelation(cur, next, frame)) {
      case Indentation::kSame:
        labels[i] = LargerSpacing(cur, next, frame) ? Label::kConsecutive
                                                    : Label::kContinuous;
        break;
      case Indentation::kDeeper:
        labels[i] = Label::kDown;
        break;
      case Indentation::kShallower: {
        labels[i] = Label::kUp;
        const int want = LeftCluster(next, frame);
        for (int k = static_cast<int>(i); k >= 0; --k) {
          if (LeftCluster(doc.blocks[k], frame) == want) {
            pointers[i] = k;
            break;
          }
        }
        break;
      }
    }
  }
  return Finish(std::move(labels), std::move(pointers));
}

std::vector<std::string> ParagraphTexts(const Document& doc,
                                        const DocumentTree& tree) {
  const std::string separator = IsJapanese(doc.doc_type) ? "" : " ";
  std::vector<std::string> out;
  for (const auto& p : Preorder(tree)) {
    std::string text;
    for (std::size_t k = 0; k < p.node->blocks.size(); ++k) {
      if (k > 0) text += separator;
      text += utf8::Trim(doc.blocks[p.node->blocks[k]].text);
    }
    out.push_back(std::move(text));
  }
  return out;
}

std::string PredictionJson(const Document& doc, const Prediction& prediction) {
  nlohmann::ordered_json j;
  j["doc_id"] = doc.doc_id;
  j["doc_type"] = std::string(DocTypeName(doc.doc_type));
  auto labels = nlohmann::ordered_json::array();
  auto pointers = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < prediction.annotation.size(); ++i) {
    labels.push_back(std::string(LabelName(prediction.annotation.labels[i])));
    const auto& p = prediction.annotation.pointers[i];
    pointers.push_back(p ? nlohmann::ordered_json(*p)
                         : nlohmann::ordered_json(nullptr));
  }
  j["labels"] = std::move(labels);
  j["pointers"] = std::move(pointers);
  j["tree"] = nlohmann::ordered_json::parse(TreeToJson(prediction.tree));
  j["paragraph_texts"] = ParagraphTexts(doc, prediction.tree);
  return j.dump(2);
}

}  // namespace vsd
