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

#ifndef MODALBENCH_CLI_CLI_H_
#define MODALBENCH_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace modalbench {

// Runs the modalbench command line. Errors go to `err` as one JSON line
// {"error": kind, "message": text}; the return value is the exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modalbench

#endif  // MODALBENCH_CLI_CLI_H_
