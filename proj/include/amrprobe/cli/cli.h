// Copyright 2026 The Amrprobe Authors.
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


#ifndef AMRPROBE_CLI_CLI_H_
#define AMRPROBE_CLI_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace amrprobe {

inline constexpr char kToolVersion[] = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPartial = 2;  // finished, with warnings

// Written as manifest.json next to the outputs of every command.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;  // full argument list, without argv[0]
  std::vector<std::string> inputs;
  uint64_t seed = 0;
  std::map<std::string, std::string> overrides;  // options given explicitly
  std::string version = kToolVersion;
  std::string timestamp;  // UTC, ISO 8601

  std::string ToJson() const;
  static RunManifest FromJson(const std::string &text);
};

// Runs one command line (without the program name). Never throws; errors
// go to `err` and come back as kExitFatal.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

}  // namespace amrprobe

#endif  // AMRPROBE_CLI_CLI_H_
