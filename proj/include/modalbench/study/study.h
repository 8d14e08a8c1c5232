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

#ifndef MODALBENCH_STUDY_STUDY_H_
#define MODALBENCH_STUDY_STUDY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modalbench/synthesis/realize.h"

namespace modalbench {

enum class KeyMapping { kFYes, kFNo };  // kFYes: F = Yes, J = No

std::string_view KeyMappingName(KeyMapping m);  // "FYes" / "FNo"
KeyMapping ParseKeyMapping(std::string_view name);
std::string_view Instructions(KeyMapping m);
std::string_view KeyLegend(KeyMapping m);
Answer DecodeKey(KeyMapping m, char key);  // key is 'F' or 'J'

// Carries an HTTP status and a short machine-readable reason.
class StudyError : public std::runtime_error {
 public:
  StudyError(int status, std::string reason, const std::string& message)
      : std::runtime_error(message), status_(status), reason_(std::move(reason)) {}
  int status() const { return status_; }
  const std::string& reason() const { return reason_; }

 private:
  int status_;
  std::string reason_;
};

struct Session {
  std::string session_id;
  std::uint64_t ordinal = 0;  // creation index, drives mapping and shuffle seed
  KeyMapping key_mapping = KeyMapping::kFYes;
  std::vector<std::string> items;  // presentation order
  std::size_t cursor = 0;
  std::string created_at;
};

struct TrialRecord {
  std::string session_id;
  std::string item_id;
  std::string form_id;
  Modality modality = Modality::kNone;
  ArgForm arg_form = ArgForm::kDisjL;
  Answer ground_truth = Answer::kYes;
  std::size_t order = 0;
  KeyMapping key_mapping = KeyMapping::kFYes;
  char key_pressed = 'F';
  Answer response = Answer::kYes;
  bool correct = false;
  double rt_ms = 0;
  std::string submitted_at;
};

std::string TrialToJsonLine(const TrialRecord& r);
TrialRecord TrialFromJsonLine(std::string_view line);

struct TrialPayload {
  std::size_t index = 0;
  std::size_t total = 0;
  std::string item_id;
  std::vector<std::string> statements;
  std::string question;
  std::string legend;
};

struct StudyOptions {
  std::size_t items_per_session = 24;
  std::uint64_t seed = 42;
  std::string log_path;  // append-only JSONL write-ahead log; empty keeps everything in memory
};

constexpr double kMinRtMs = 50;
constexpr double kMaxRtMs = 10 * 60 * 1000;

// Thread-safe session store. Every state change is appended (and fsynced) to
// the log before it is applied, and the log is replayed on construction.
class StudyStore {
 public:
  StudyStore(std::vector<QuestionItem> items, StudyOptions options);
  ~StudyStore();
  StudyStore(const StudyStore&) = delete;
  StudyStore& operator=(const StudyStore&) = delete;

  Session CreateSession();
  std::optional<TrialPayload> NextTrial(const std::string& session_id) const;
  TrialRecord Submit(const std::string& session_id, const std::string& item_id, std::string_view key, double rt_ms);
  // Records in submission order, optionally restricted to some sessions.
  std::vector<TrialRecord> Records(const std::set<std::string>& sessions = {}) const;
  std::string Export(const std::set<std::string>& sessions = {}) const;

  Session GetSession(const std::string& session_id) const;
  std::size_t session_count() const;

 private:
  void Replay();
  void Append(const std::string& line);
  std::vector<std::string> AssignItems(std::uint64_t ordinal) const;
  const QuestionItem& Item(const std::string& item_id) const;
  Session& Find(const std::string& session_id);
  const Session& Find(const std::string& session_id) const;

  std::vector<QuestionItem> items_;
  std::map<std::string, std::size_t> item_index_;
  std::map<std::string, std::vector<std::size_t>> by_form_;
  StudyOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, Session> sessions_;
  std::vector<TrialRecord> records_;
  int fd_ = -1;
};

// Splits a rendered prompt into its statement lines and question sentence.
TrialPayload PayloadFor(const QuestionItem& item, KeyMapping mapping);

}  // namespace modalbench

#endif  // MODALBENCH_STUDY_STUDY_H_
