// Copyright 2026 The modalbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modalbench/study/study.h"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "modalbench/synthesis/rng.h"

namespace modalbench {

namespace {

using nlohmann::json;

constexpr const char* kInstructionsFYes =
    "In this study, you will be presented with two statements followed by a question. Your task is to answer "
    "either Yes or No to the question, based on the information provided in the statements. Please respond "
    "quickly and accurately by pressing \"F\" for Yes, and \"J\" for No.";
constexpr const char* kInstructionsFNo =
    "In this study, you will be presented with two statements followed by a question. Your task is to answer "
    "either Yes or No to the question, based on the information provided in the statements. Please respond "
    "quickly and accurately by pressing \"F\" for No, and \"J\" for Yes.";

std::string NowUtc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string NewToken() {
  std::random_device rd;
  std::ostringstream s;
  for (int i = 0; i < 4; ++i) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", rd());
    s << buf;
  }
  return s.str();
}

std::uint64_t SessionSeed(std::uint64_t seed, std::uint64_t ordinal) {
  // splitmix64 of the pair, so neighbouring ordinals give unrelated streams
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (ordinal + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <typename T>
void Shuffle(std::vector<T>& v, PortableRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.Below(i)]);
}

json SessionJson(const Session& s) {
  return {{"event", "session"},        {"session_id", s.session_id}, {"ordinal", s.ordinal},
          {"key_mapping", KeyMappingName(s.key_mapping)}, {"items", s.items}, {"created_at", s.created_at}};
}

json TrialJson(const TrialRecord& r) {
  return {{"session_id", r.session_id},
          {"item_id", r.item_id},
          {"form_id", r.form_id},
          {"modality", ModalityName(r.modality)},
          {"arg_form", ArgFormName(r.arg_form)},
          {"ground_truth", AnswerName(r.ground_truth)},
          {"order", r.order},
          {"key_mapping", KeyMappingName(r.key_mapping)},
          {"key_pressed", std::string(1, r.key_pressed)},
          {"response", AnswerName(r.response)},
          {"correct", r.correct},
          {"rt_ms", r.rt_ms},
          {"submitted_at", r.submitted_at}};
}

TrialRecord TrialFromJson(const json& j) {
  TrialRecord r;
  r.session_id = j.at("session_id").get<std::string>();
  r.item_id = j.at("item_id").get<std::string>();
  r.form_id = j.at("form_id").get<std::string>();
  r.modality = ParseModality(j.at("modality").get<std::string>());
  r.arg_form = ParseArgForm(j.at("arg_form").get<std::string>());
  r.ground_truth = ParseAnswer(j.at("ground_truth").get<std::string>());
  r.order = j.at("order").get<std::size_t>();
  r.key_mapping = ParseKeyMapping(j.at("key_mapping").get<std::string>());
  const auto key = j.at("key_pressed").get<std::string>();
  if (key.size() != 1) throw std::invalid_argument("bad key_pressed: " + key);
  r.key_pressed = key[0];
  r.response = ParseAnswer(j.at("response").get<std::string>());
  r.correct = j.at("correct").get<bool>();
  r.rt_ms = j.at("rt_ms").get<double>();
  r.submitted_at = j.value("submitted_at", "");
  return r;
}

}  // namespace

std::string_view KeyMappingName(KeyMapping m) { return m == KeyMapping::kFYes ? "FYes" : "FNo"; }

KeyMapping ParseKeyMapping(std::string_view name) {
  if (name == "FYes") return KeyMapping::kFYes;
  if (name == "FNo") return KeyMapping::kFNo;
  throw std::invalid_argument("unknown key mapping: " + std::string(name));
}

std::string_view Instructions(KeyMapping m) { return m == KeyMapping::kFYes ? kInstructionsFYes : kInstructionsFNo; }

std::string_view KeyLegend(KeyMapping m) { return m == KeyMapping::kFYes ? "F = Yes, J = No" : "F = No, J = Yes"; }

Answer DecodeKey(KeyMapping m, char key) {
  if (key != 'F' && key != 'J') throw std::invalid_argument(std::string("key must be F or J, got ") + key);
  const bool yes = (key == 'F') == (m == KeyMapping::kFYes);
  return yes ? Answer::kYes : Answer::kNo;
}

std::string TrialToJsonLine(const TrialRecord& r) { return TrialJson(r).dump(); }

TrialRecord TrialFromJsonLine(std::string_view line) { return TrialFromJson(json::parse(line)); }

TrialPayload PayloadFor(const QuestionItem& item, KeyMapping mapping) {
  TrialPayload p;
  p.item_id = item.item_id;
  p.legend = KeyLegend(mapping);
  std::istringstream in(item.prompt);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.rfind("Question: ", 0) == 0) {
      p.question = line.substr(10);
      break;
    }
    p.statements.push_back(line);
  }
  if (p.question.empty()) throw std::invalid_argument("prompt of " + item.item_id + " has no question line");
  return p;
}

StudyStore::StudyStore(std::vector<QuestionItem> items, StudyOptions options) : options_(std::move(options)) {
  for (auto& it : items) {
    if (it.family != Family::kMain24) continue;
    item_index_[it.item_id] = items_.size();
    by_form_[it.form_id].push_back(items_.size());
    items_.push_back(std::move(it));
  }
  if (options_.items_per_session == 0) throw std::invalid_argument("items_per_session must be positive");
  if (!options_.log_path.empty()) {
    Replay();
    fd_ = ::open(options_.log_path.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd_ < 0) throw std::runtime_error("cannot open study log " + options_.log_path);
  }
}

StudyStore::~StudyStore() {
  if (fd_ >= 0) ::close(fd_);
}

void StudyStore::Replay() {
  std::ifstream in(options_.log_path, std::ios::binary);
  if (!in) return;
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  std::size_t good = 0, pos = 0;
  while (pos < data.size()) {
    const std::size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) break;  // torn tail from a crash mid-append
    const std::string line = data.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) {
      good = pos;
      continue;
    }
    const json j = json::parse(line);
    if (j.at("event") == "session") {
      Session s;
      s.session_id = j.at("session_id").get<std::string>();
      s.ordinal = j.at("ordinal").get<std::uint64_t>();
      s.key_mapping = ParseKeyMapping(j.at("key_mapping").get<std::string>());
      s.items = j.at("items").get<std::vector<std::string>>();
      s.created_at = j.at("created_at").get<std::string>();
      sessions_[s.session_id] = std::move(s);
    } else if (j.at("event") == "trial") {
      TrialRecord r = TrialFromJson(j.at("record"));
      Find(r.session_id).cursor = r.order + 1;
      records_.push_back(std::move(r));
    } else {
      throw std::runtime_error("unknown event in study log: " + line);
    }
    good = pos;
  }
  if (good < data.size()) std::filesystem::resize_file(options_.log_path, good);
}

void StudyStore::Append(const std::string& line) {
  if (fd_ < 0) return;
  const std::string data = line + "\n";
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd_, data.data() + done, data.size() - done);
    if (n < 0) throw StudyError(500, "io_error", "study log write failed");
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) throw StudyError(500, "io_error", "study log fsync failed");
}

std::vector<std::string> StudyStore::AssignItems(std::uint64_t ordinal) const {
  PortableRng rng(SessionSeed(options_.seed, ordinal));
  std::vector<std::string> forms;
  for (const auto& [form, _] : by_form_) forms.push_back(form);
  // Whole rounds over every form, then a random subset of forms for the remainder.
  std::vector<std::string> picks;
  while (picks.size() + forms.size() <= options_.items_per_session) picks.insert(picks.end(), forms.begin(), forms.end());
  std::vector<std::string> extra = forms;
  Shuffle(extra, rng);
  extra.resize(options_.items_per_session - picks.size());
  picks.insert(picks.end(), extra.begin(), extra.end());

  std::map<std::string, std::vector<std::size_t>> pool = by_form_;
  std::vector<std::string> out;
  for (const auto& form : picks) {
    auto& candidates = pool[form];
    if (candidates.empty()) throw StudyError(503, "dataset_too_small", "not enough items for form " + form);
    const std::size_t k = rng.Below(candidates.size());
    out.push_back(items_[candidates[k]].item_id);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(k));
  }
  Shuffle(out, rng);
  return out;
}

const QuestionItem& StudyStore::Item(const std::string& item_id) const { return items_.at(item_index_.at(item_id)); }

Session& StudyStore::Find(const std::string& session_id) {
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw StudyError(404, "unknown_session", "no session " + session_id);
  return it->second;
}

const Session& StudyStore::Find(const std::string& session_id) const {
  return const_cast<StudyStore*>(this)->Find(session_id);
}

Session StudyStore::CreateSession() {
  std::lock_guard lock(mu_);
  if (items_.empty()) throw StudyError(503, "no_dataset", "no dataset loaded");
  Session s;
  s.session_id = NewToken();
  s.ordinal = sessions_.size();
  s.key_mapping = s.ordinal % 2 == 0 ? KeyMapping::kFYes : KeyMapping::kFNo;
  s.items = AssignItems(s.ordinal);
  s.created_at = NowUtc();
  Append(SessionJson(s).dump());
  sessions_[s.session_id] = s;
  return s;
}

std::optional<TrialPayload> StudyStore::NextTrial(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  const Session& s = Find(session_id);
  if (s.cursor >= s.items.size()) return std::nullopt;
  TrialPayload p = PayloadFor(Item(s.items[s.cursor]), s.key_mapping);
  p.index = s.cursor;
  p.total = s.items.size();
  return p;
}

TrialRecord StudyStore::Submit(const std::string& session_id, const std::string& item_id, std::string_view key,
                               double rt_ms) {
  std::lock_guard lock(mu_);
  Session& s = Find(session_id);
  if (key != "F" && key != "J") throw StudyError(400, "invalid_key", "key must be F or J");
  if (!std::isfinite(rt_ms) || rt_ms <= kMinRtMs || rt_ms >= kMaxRtMs) {
    throw StudyError(400, "invalid_rt", "rt_ms must lie strictly between 50 and 600000");
  }
  if (s.cursor > 0 && s.items[s.cursor - 1] == item_id) {
    throw StudyError(409, "duplicate_submission", "trial " + item_id + " was already answered");
  }
  if (s.cursor >= s.items.size()) throw StudyError(409, "session_complete", "session has no trials left");
  if (s.items[s.cursor] != item_id) throw StudyError(409, "out_of_order", "expected item " + s.items[s.cursor]);

  const QuestionItem& item = Item(item_id);
  TrialRecord r;
  r.session_id = s.session_id;
  r.item_id = item.item_id;
  r.form_id = item.form_id;
  r.modality = item.modality;
  r.arg_form = item.arg_form;
  r.ground_truth = item.ground_truth;
  r.order = s.cursor;
  r.key_mapping = s.key_mapping;
  r.key_pressed = key[0];
  r.response = DecodeKey(s.key_mapping, r.key_pressed);
  r.correct = r.response == r.ground_truth;
  r.rt_ms = rt_ms;
  r.submitted_at = NowUtc();
  Append(json{{"event", "trial"}, {"record", TrialJson(r)}}.dump());
  records_.push_back(r);
  ++s.cursor;
  return r;
}

std::vector<TrialRecord> StudyStore::Records(const std::set<std::string>& sessions) const {
  std::lock_guard lock(mu_);
  std::vector<TrialRecord> out;
  for (const auto& r : records_) {
    if (sessions.empty() || sessions.count(r.session_id)) out.push_back(r);
  }
  return out;
}

std::string StudyStore::Export(const std::set<std::string>& sessions) const {
  std::string out;
  for (const auto& r : Records(sessions)) out += TrialToJsonLine(r) + "\n";
  return out;
}

Session StudyStore::GetSession(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  return Find(session_id);
}

std::size_t StudyStore::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

}  // namespace modalbench
