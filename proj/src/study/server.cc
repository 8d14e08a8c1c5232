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

#include "modalbench/study/server.h"

#include <sstream>

#include "httplib.h"
#include "json.hpp"

namespace modalbench {

namespace {

using nlohmann::json;

void SendError(httplib::Response& res, int status, const std::string& reason, const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", reason}, {"message", message}}.dump(), "application/json");
}

template <typename Handler>
httplib::Server::Handler Guard(Handler h) {
  return [h](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const StudyError& e) {
      SendError(res, e.status(), e.reason(), e.what());
    } catch (const json::exception& e) {
      SendError(res, 400, "invalid_json", e.what());
    } catch (const std::exception& e) {
      SendError(res, 500, "internal", e.what());
    }
  };
}

}  // namespace

StudyServer::StudyServer(StudyStore& store, std::string static_dir)
    : store_(store), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  s.Post("/sessions", Guard([this](const httplib::Request&, httplib::Response& res) {
           const Session session = store_.CreateSession();
           res.status = 201;
           res.set_content(json{{"session_id", session.session_id},
                                {"key_mapping", KeyMappingName(session.key_mapping)},
                                {"instructions", Instructions(session.key_mapping)},
                                {"legend", KeyLegend(session.key_mapping)},
                                {"total", session.items.size()}}
                               .dump(),
                           "application/json");
         }));
  s.Get("/sessions/:id/next", Guard([this](const httplib::Request& req, httplib::Response& res) {
          const auto trial = store_.NextTrial(req.path_params.at("id"));
          json body{{"done", !trial}};
          if (trial) {
            body["index"] = trial->index;
            body["total"] = trial->total;
            body["item_id"] = trial->item_id;
            body["statements"] = trial->statements;
            body["question"] = trial->question;
            body["legend"] = trial->legend;
          }
          res.set_content(body.dump(), "application/json");
        }));
  s.Post("/sessions/:id/responses", Guard([this](const httplib::Request& req, httplib::Response& res) {
           const json body = json::parse(req.body);
           const TrialRecord r = store_.Submit(req.path_params.at("id"), body.at("item_id").get<std::string>(),
                                               body.at("key").get<std::string>(), body.at("rt_ms").get<double>());
           const Session s = store_.GetSession(r.session_id);
           res.set_content(json{{"accepted", true}, {"order", r.order}, {"done", s.cursor >= s.items.size()}}.dump(),
                           "application/json");
         }));
  s.Get("/export", Guard([this](const httplib::Request& req, httplib::Response& res) {
          std::set<std::string> sessions;
          if (req.has_param("sessions")) {
            std::istringstream in(req.get_param_value("sessions"));
            for (std::string id; std::getline(in, id, ',');) {
              if (!id.empty()) sessions.insert(id);
            }
          }
          res.set_content(store_.Export(sessions), "application/x-ndjson");
        }));
  if (!static_dir.empty() && !s.set_mount_point("/", static_dir)) {
    throw std::invalid_argument("static directory not found: " + static_dir);
  }
}

StudyServer::~StudyServer() = default;

int StudyServer::Bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void StudyServer::Listen() { server_->listen_after_bind(); }

void StudyServer::Stop() { server_->stop(); }

}  // namespace modalbench
