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

#include "vsd/evaluation.h"

#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "json.hpp"
#include "vsd/error.h"

namespace vsd {

namespace {

constexpr std::array<Relation, kNumScoredRelations> kScored = {
    Relation::kSameParagraph, Relation::kSibling,
    Relation::kAncestorDescendant};

Prf MacroPrf(const std::vector<Counts>& per_doc) {
  Prf out;
  int used = 0;
  for (const auto& c : per_doc) {
    if (c.tp + c.fn == 0) {
      ++out.skipped;
      continue;
    }
    const Prf p = ComputePrf(c);
    out.precision += p.precision;
    out.recall += p.recall;
    out.f1 += p.f1;
    out.precision_undefined |= p.precision_undefined;
    out.recall_undefined |= p.recall_undefined;
    ++used;
  }
  if (used == 0) {
    out.applicable = false;
    return out;
  }
  out.precision /= used;
  out.recall /= used;
  out.f1 /= used;
  return out;
}

Ratio MicroRatio(std::int64_t num, std::int64_t den) {
  if (den == 0) return {0, false};
  return {static_cast<double>(num) / static_cast<double>(den), true};
}

nlohmann::ordered_json PrfJson(const Prf& p) {
  nlohmann::ordered_json j;
  if (!p.applicable) {
    j["precision"] = nullptr;
    j["recall"] = nullptr;
    j["f1"] = nullptr;
  } else {
    j["precision"] = p.precision;
    j["recall"] = p.recall;
    j["f1"] = p.f1;
  }
  j["precision_undefined"] = p.precision_undefined;
  j["recall_undefined"] = p.recall_undefined;
  j["skipped_documents"] = p.skipped;
  return j;
}

nlohmann::ordered_json RatioJson(const Ratio& r) {
  return r.applicable ? nlohmann::ordered_json(r.value)
                      : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json ReportToJson(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["documents"] = r.documents;
  j["pair_accuracy"] = RatioJson(r.pair_accuracy);
  for (int c = 0; c < kNumScoredRelations; ++c) {
    j[std::string(RelationName(kScored[c]))] = PrfJson(r.relation[c]);
  }
  j["average_f1"] = RatioJson(r.average_f1);
  j["transition_accuracy"] = RatioJson(r.transition_accuracy);
  j["boundary"] = PrfJson(r.boundary);
  j["elimination"] = PrfJson(r.elimination);
  return j;
}

std::string Cell(double v, bool applicable) {
  if (!applicable) return "n/a";
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << v;
  return s.str();
}

}  // namespace

Prf ComputePrf(const Counts& c) {
  Prf p;
  p.applicable = c.tp + c.fp + c.fn > 0;
  if (c.tp + c.fp > 0) {
    p.precision = c.tp / (c.tp + c.fp);
  } else {
    p.precision_undefined = true;
  }
  if (c.tp + c.fn > 0) {
    p.recall = c.tp / (c.tp + c.fn);
  } else {
    p.recall_undefined = true;
  }
  if (p.precision + p.recall > 0) {
    p.f1 = 2 * p.precision * p.recall / (p.precision + p.recall);
  }
  return p;
}

DocumentScore ScoreDocument(const Annotation& gold_ann,
                            const DocumentTree& gold_tree,
                            const Annotation& pred_ann,
                            const DocumentTree& pred_tree) {
  const std::size_t n = gold_ann.size();
  if (pred_ann.size() != n || gold_tree.num_blocks != static_cast<int>(n) ||
      pred_tree.num_blocks != static_cast<int>(n)) {
    throw Error("gold and prediction cover different block counts");
  }
  DocumentScore s;
  const auto gm = BuildRelationshipMatrix(gold_tree);
  const auto pm = BuildRelationshipMatrix(pred_tree);
  for (int i = 0; i < static_cast<int>(n); ++i) {
    for (int j = i + 1; j < static_cast<int>(n); ++j) {
      const Relation g = gm.at(i, j);
      const Relation p = pm.at(i, j);
      ++s.pairs;
      s.pairs_correct += g == p;
      for (int c = 0; c < kNumScoredRelations; ++c) {
        const bool gc = g == kScored[c];
        const bool pc = p == kScored[c];
        s.relation[c].tp += gc && pc;
        s.relation[c].fp += pc && !gc;
        s.relation[c].fn += gc && !pc;
      }
    }
  }

  const auto gb = BoundaryVector(gold_ann);
  const auto pb = BoundaryVector(pred_ann);
  for (std::size_t i = 0; i < gb.size(); ++i) {
    s.boundary.tp += gb[i] && pb[i];
    s.boundary.fp += pb[i] && !gb[i];
    s.boundary.fn += gb[i] && !pb[i];
  }

  const int sentinel = LastRetained(gold_ann.labels);
  for (std::size_t i = 0; i < n; ++i) {
    const bool g = gold_ann.labels[i] == Label::kOmitted;
    const bool p = pred_ann.labels[i] == Label::kOmitted;
    s.elimination.tp += g && p;
    s.elimination.fp += p && !g;
    s.elimination.fn += g && !p;
    if (static_cast<int>(i) == sentinel) continue;
    ++s.transitions;
    s.transitions_correct += gold_ann.labels[i] == pred_ann.labels[i];
  }
  return s;
}

MetricReport Aggregate(const std::vector<DocumentScore>& scores,
                       Averaging mode) {
  MetricReport r;
  r.documents = static_cast<int>(scores.size());
  if (mode == Averaging::kMicro) {
    std::array<Counts, kNumScoredRelations> rel{};
    Counts boundary;
    Counts elimination;
    std::int64_t pairs = 0, pairs_ok = 0, trans = 0, trans_ok = 0;
    for (const auto& s : scores) {
      for (int c = 0; c < kNumScoredRelations; ++c) rel[c] += s.relation[c];
      boundary += s.boundary;
      elimination += s.elimination;
      pairs += s.pairs;
      pairs_ok += s.pairs_correct;
      trans += s.transitions;
      trans_ok += s.transitions_correct;
    }
    for (int c = 0; c < kNumScoredRelations; ++c) {
      r.relation[c] = ComputePrf(rel[c]);
    }
    r.boundary = ComputePrf(boundary);
    r.elimination = ComputePrf(elimination);
    r.pair_accuracy = MicroRatio(pairs_ok, pairs);
    r.transition_accuracy = MicroRatio(trans_ok, trans);
  } else {
    for (int c = 0; c < kNumScoredRelations; ++c) {
      std::vector<Counts> per_doc;
      for (const auto& s : scores) per_doc.push_back(s.relation[c]);
      r.relation[c] = MacroPrf(per_doc);
    }
    std::vector<Counts> b;
    std::vector<Counts> e;
    double pair_sum = 0, trans_sum = 0;
    int pair_docs = 0, trans_docs = 0;
    for (const auto& s : scores) {
      b.push_back(s.boundary);
      e.push_back(s.elimination);
      if (s.pairs > 0) {
        pair_sum += static_cast<double>(s.pairs_correct) / s.pairs;
        ++pair_docs;
      }
      if (s.transitions > 0) {
        trans_sum += static_cast<double>(s.transitions_correct) / s.transitions;
        ++trans_docs;
      }
    }
    r.boundary = MacroPrf(b);
    r.elimination = MacroPrf(e);
    r.pair_accuracy = pair_docs > 0 ? Ratio{pair_sum / pair_docs, true}
                                    : Ratio{0, false};
    r.transition_accuracy = trans_docs > 0
                                ? Ratio{trans_sum / trans_docs, true}
                                : Ratio{0, false};
  }
  double f1_sum = 0;
  int f1_count = 0;
  for (const auto& p : r.relation) {
    if (!p.applicable) continue;
    f1_sum += p.f1;
    ++f1_count;
  }
  r.average_f1 = f1_count > 0 ? Ratio{f1_sum / f1_count, true} : Ratio{0, false};
  return r;
}

std::vector<int> AssignFolds(std::size_t num_documents, int k,
                             std::uint64_t seed) {
  if (k < 1) throw Error("fold count must be positive");
  std::vector<int> order(num_documents);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  std::vector<int> fold(num_documents);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    fold[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(k));
  }
  return fold;
}

CrossValidationResult CrossValidate(const std::vector<LabeledDocument>& corpus,
                                    int k, std::uint64_t seed,
                                    const TrainConfig& config,
                                    const Scorer* external) {
  if (k < 2) throw Error("cross-validation needs at least 2 folds");
  if (corpus.size() < static_cast<std::size_t>(k)) {
    throw Error("corpus has " + std::to_string(corpus.size()) +
                " documents, fewer than " + std::to_string(k) + " folds");
  }
  CrossValidationResult result;
  result.folds = k;
  result.seed = seed;
  result.fold_of = AssignFolds(corpus.size(), k, seed);

  const std::size_t n = corpus.size();
  std::vector<DocumentScore> ours(n), numbering(n), visual(n);
  std::vector<DocumentTree> gold_trees(n);
  for (std::size_t d = 0; d < n; ++d) {
    gold_trees[d] = BuildTree(corpus[d].gold);
    const auto nb = NumberingBaseline(corpus[d].doc);
    numbering[d] = ScoreDocument(corpus[d].gold, gold_trees[d],
                                 nb.annotation, nb.tree);
    const auto vb = VisualBaseline(corpus[d].doc);
    visual[d] =
        ScoreDocument(corpus[d].gold, gold_trees[d], vb.annotation, vb.tree);
  }
  for (int f = 0; f < k; ++f) {
    std::vector<LabeledDocument> train;
    for (std::size_t d = 0; d < n; ++d) {
      if (result.fold_of[d] != f) train.push_back(corpus[d]);
    }
    TrainConfig fold_config = config;
    fold_config.forest.seed = config.forest.seed + static_cast<std::uint64_t>(f);
    const ModelBundle bundle = Train(train, fold_config, external);
    for (std::size_t d = 0; d < n; ++d) {
      if (result.fold_of[d] != f) continue;
      const auto pred = Predict(corpus[d].doc, bundle, external);
      ours[d] = ScoreDocument(corpus[d].gold, gold_trees[d], pred.annotation,
                              pred.tree);
    }
  }
  auto make = [](std::string name, std::vector<DocumentScore> scores) {
    SystemReport s;
    s.system = std::move(name);
    s.micro = Aggregate(scores, Averaging::kMicro);
    s.macro = Aggregate(scores, Averaging::kMacro);
    s.documents = std::move(scores);
    return s;
  };
  result.systems.push_back(make("ours", std::move(ours)));
  result.systems.push_back(make("numbering", std::move(numbering)));
  result.systems.push_back(make("visual", std::move(visual)));
  return result;
}

std::string ReportJson(const CrossValidationResult& result) {
  nlohmann::ordered_json j;
  j["folds"] = result.folds;
  j["seed"] = result.seed;
  j["fold_of"] = result.fold_of;
  nlohmann::ordered_json systems;
  for (const auto& s : result.systems) {
    systems[s.system] = {{"micro", ReportToJson(s.micro)},
                         {"macro", ReportToJson(s.macro)}};
  }
  j["systems"] = std::move(systems);
  return j.dump(2);
}

std::string ReportTable(const CrossValidationResult& result) {
  struct Row {
    std::string name;
    std::function<std::pair<double, bool>(const MetricReport&)> get;
  };
  auto prf = [](int which, auto select) {
    return [which, select](const MetricReport& r) {
      const Prf& p = select(r);
      const double v = which == 0 ? p.precision : which == 1 ? p.recall : p.f1;
      return std::make_pair(v, p.applicable);
    };
  };
  auto ratio = [](auto select) {
    return [select](const MetricReport& r) {
      const Ratio& x = select(r);
      return std::make_pair(x.value, x.applicable);
    };
  };
  std::vector<Row> rows = {
      {"Accuracy", ratio([](const MetricReport& r) -> const Ratio& {
         return r.pair_accuracy;
       })},
      {"Same paragraph F1", prf(2, [](const MetricReport& r) -> const Prf& {
         return r.relation[0];
       })},
      {"Sibling F1", prf(2, [](const MetricReport& r) -> const Prf& {
         return r.relation[1];
       })},
      {"Ancestor-descendant F1",
       prf(2, [](const MetricReport& r) -> const Prf& {
         return r.relation[2];
       })},
      {"Average F1", ratio([](const MetricReport& r) -> const Ratio& {
         return r.average_f1;
       })},
      {"Transition accuracy", ratio([](const MetricReport& r) -> const Ratio& {
         return r.transition_accuracy;
       })},
  };
  const std::array<std::string, 3> kPrf = {"P", "R", "F1"};
  for (int w = 0; w < 3; ++w) {
    rows.push_back({"Boundary " + kPrf[w],
                    prf(w, [](const MetricReport& r) -> const Prf& {
                      return r.boundary;
                    })});
  }
  for (int w = 0; w < 3; ++w) {
    rows.push_back({"Elimination " + kPrf[w],
                    prf(w, [](const MetricReport& r) -> const Prf& {
                      return r.elimination;
                    })});
  }

  std::ostringstream out;
  constexpr int kLabelWidth = 24;
  constexpr int kCellWidth = 8;
  out << std::left << std::setw(kLabelWidth) << "";
  for (const auto& s : result.systems) {
    out << std::left << std::setw(2 * kCellWidth) << s.system;
  }
  out << '\n' << std::setw(kLabelWidth) << "";
  for (std::size_t i = 0; i < result.systems.size(); ++i) {
    out << std::left << std::setw(kCellWidth) << "Micro"
        << std::setw(kCellWidth) << "Macro";
  }
  out << '\n';
  for (const auto& row : rows) {
    out << std::left << std::setw(kLabelWidth) << row.name;
    for (const auto& s : result.systems) {
      const auto [mi, mi_ok] = row.get(s.micro);
      const auto [ma, ma_ok] = row.get(s.macro);
      out << std::left << std::setw(kCellWidth) << Cell(mi, mi_ok)
          << std::setw(kCellWidth) << Cell(ma, ma_ok);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace vsd
