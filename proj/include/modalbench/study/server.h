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

#ifndef MODALBENCH_STUDY_SERVER_H_
#define MODALBENCH_STUDY_SERVER_H_

#include <memory>
#include <string>

#include "modalbench/study/study.h"

namespace httplib {
class Server;
}

namespace modalbench {

// JSON HTTP API over a StudyStore:
//   POST /sessions                   -> {session_id, key_mapping, instructions, legend, total}
//   GET  /sessions/{id}/next         -> trial payload or {done: true}
//   POST /sessions/{id}/responses    {item_id, key, rt_ms} -> {accepted, order, done}
//   GET  /export[?sessions=a,b]      -> trial JSONL
// Errors are {error: <reason>, message} with a 4xx/5xx status.
class StudyServer {
 public:
  explicit StudyServer(StudyStore& store, std::string static_dir = "");
  ~StudyServer();

  // Binds to host:port (port 0 picks a free one) and returns the bound port.
  int Bind(const std::string& host, int port);
  void Listen();  // blocks until Stop()
  void Stop();

 private:
  StudyStore& store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace modalbench

#endif  // MODALBENCH_STUDY_SERVER_H_
