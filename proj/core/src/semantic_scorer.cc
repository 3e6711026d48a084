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

#include "vsd/semantic_scorer.h"

#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <set>

#include "json.hpp"
#include "vsd/error.h"
#include "vsd/utf8.h"

namespace vsd {

namespace {

constexpr char32_t kBos = 0xFFFFFFFF;
constexpr char32_t kUnk = 0xFFFFFFFE;
constexpr int kModelVersion = 1;

}  // namespace

CharNGramModel CharNGramModel::Train(const std::vector<std::string>& corpus,
                                     int order, double smoothing) {
  if (order < 1) throw Error("n-gram order must be at least 1");
  if (!(smoothing > 0)) throw Error("n-gram smoothing must be positive");
  std::vector<std::u32string> texts;
  std::set<char32_t> seen;
  for (const auto& s : corpus) {
    texts.push_back(utf8::Decode(s));
    seen.insert(texts.back().begin(), texts.back().end());
  }
  if (seen.empty()) throw Error("n-gram corpus is empty");

  CharNGramModel model;
  model.order_ = order;
  model.smoothing_ = smoothing;
  model.vocabulary_.assign(seen.begin(), seen.end());
  for (const auto& t : texts) model.Count(t);
  return model;
}

char32_t CharNGramModel::Map(char32_t c) const {
  return std::binary_search(vocabulary_.begin(), vocabulary_.end(), c) ? c
                                                                       : kUnk;
}

std::u32string CharNGramModel::Key(std::u32string_view history,
                                   char32_t next) const {
  const std::size_t width = static_cast<std::size_t>(order_ - 1);
  std::u32string key(width, kBos);
  const std::size_t take = std::min(width, history.size());
  for (std::size_t i = 0; i < take; ++i) {
    key[width - take + i] = Map(history[history.size() - take + i]);
  }
  key.push_back(Map(next));
  return key;
}

void CharNGramModel::Count(std::u32string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    std::u32string key = Key(text.substr(0, i), text[i]);
    joint_[key] += 1;
    key.pop_back();
    context_[key] += 1;
  }
}

double CharNGramModel::Probability(std::u32string_view history,
                                   char32_t next) const {
  std::u32string key = Key(history, next);
  const auto j = joint_.find(key);
  const double joint = j == joint_.end() ? 0.0 : j->second;
  key.pop_back();
  const auto c = context_.find(key);
  const double context = c == context_.end() ? 0.0 : c->second;
  return (joint + smoothing_) /
         (context + smoothing_ * static_cast<double>(VocabularySize()));
}

std::optional<double> CharNGramModel::Score(std::string_view context,
                                            std::string_view target) const {
  const std::u32string t = utf8::Decode(target);
  if (t.empty()) return 0.0;
  std::u32string full = utf8::Decode(context);
  if (!full.empty()) full.push_back(U' ');
  const std::size_t start = full.size();
  full += t;
  double nll = 0;
  const std::u32string_view view(full);
  for (std::size_t i = start; i < full.size(); ++i) {
    nll -= std::log(Probability(view.substr(0, i), full[i]));
  }
  return nll / static_cast<double>(t.size());
}

std::string CharNGramModel::ToJson() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = kModelVersion;
  j["order"] = order_;
  j["smoothing"] = smoothing_;
  j["vocabulary"] = vocabulary_;
  std::vector<std::pair<std::u32string, double>> counts(joint_.begin(),
                                                        joint_.end());
  std::sort(counts.begin(), counts.end());
  ordered_json arr = ordered_json::array();
  for (const auto& [key, count] : counts) {
    arr.push_back({std::vector<std::uint32_t>(key.begin(), key.end()), count});
  }
  j["counts"] = std::move(arr);
  return j.dump();
}

CharNGramModel CharNGramModel::FromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("n-gram model: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != kModelVersion) {
      throw Error("n-gram model: unsupported version " +
                  j.at("version").dump());
    }
    CharNGramModel model;
    model.order_ = j.at("order").get<int>();
    model.smoothing_ = j.at("smoothing").get<double>();
    for (auto cp : j.at("vocabulary").get<std::vector<std::uint32_t>>()) {
      model.vocabulary_.push_back(static_cast<char32_t>(cp));
    }
    std::sort(model.vocabulary_.begin(), model.vocabulary_.end());
    const std::size_t width = static_cast<std::size_t>(model.order_);
    for (const auto& entry : j.at("counts")) {
      const auto cps = entry.at(0).get<std::vector<std::uint32_t>>();
      if (cps.size() != width) throw Error("n-gram model: bad key width");
      std::u32string key(cps.begin(), cps.end());
      const double count = entry.at(1).get<double>();
      model.joint_[key] += count;
      key.pop_back();
      model.context_[key] += count;
    }
    if (model.order_ < 1) throw Error("n-gram model: bad order");
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("n-gram model: ") + e.what());
  }
}

ExternalScorer::ExternalScorer(const std::string& command) {
  int fds[2];
  if (socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
    throw Error("external scorer: socketpair failed");
  }
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw Error("external scorer: fork failed");
  }
  if (pid == 0) {
    close(fds[0]);
    dup2(fds[1], STDIN_FILENO);
    dup2(fds[1], STDOUT_FILENO);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);
  fd_ = fds[0];
  pid_ = pid;
}

ExternalScorer::~ExternalScorer() { Shutdown(); }

void ExternalScorer::Shutdown() const {
  if (fd_ >= 0) {
    close(fd_);
    fd_ = -1;
  }
  if (pid_ > 0) {
    int status = 0;
    while (waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
    }
    pid_ = -1;
  }
}

std::optional<double> ExternalScorer::Score(std::string_view context,
                                            std::string_view target) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (fd_ < 0) return std::nullopt;

  nlohmann::json request = {{"context", std::string(context)},
                            {"target", std::string(target)}};
  const std::string line =
      request.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) +
      "\n";
  std::size_t sent = 0;
  while (sent < line.size()) {
    const ssize_t n =
        send(fd_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      Shutdown();
      return std::nullopt;
    }
    sent += static_cast<std::size_t>(n);
  }

  std::size_t newline;
  while ((newline = buffer_.find('\n')) == std::string::npos) {
    char chunk[4096];
    const ssize_t n = read(fd_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      Shutdown();
      return std::nullopt;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
  const std::string response = buffer_.substr(0, newline);
  buffer_.erase(0, newline + 1);
  try {
    const auto j = nlohmann::json::parse(response);
    const double nll = j.at("nll").get<double>();
    if (!std::isfinite(nll)) return std::nullopt;
    return nll;
  } catch (const nlohmann::json::exception&) {
    Shutdown();
    return std::nullopt;
  }
}

std::optional<std::pair<double, double>> CoherenceFeatures(
    const std::string* prev, const std::string* cur, const std::string* next,
    const Scorer& scorer) {
  if (prev == nullptr || cur == nullptr || next == nullptr) return std::nullopt;
  const auto cur_given_prev = scorer.Score(*prev, *cur);
  const auto next_given_prev = scorer.Score(*prev, *next);
  const auto next_given_cur = scorer.Score(*cur, *next);
  if (!cur_given_prev || !next_given_prev || !next_given_cur) {
    return std::nullopt;
  }
  return std::make_pair(*cur_given_prev - *next_given_prev,
                        *next_given_cur - *next_given_prev);
}

}  // namespace vsd
