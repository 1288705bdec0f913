// Copyright 2026 The Liftguard Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LIFTGUARD_CLI_HPP_
#define LIFTGUARD_CLI_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liftguard/distributions.hpp"
#include "liftguard/watchdog.hpp"

namespace liftguard {

// Exit codes shared by every command: 0 success, 1 property violation,
// 2 usage or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
  enum class Command { kSanitize, kSweep, kHistogram, kVerify };

  Command command = Command::kSanitize;
  std::string input_path;    // sanitize: joint JSON; verify: optional release
  std::string config_path;   // sweep/histogram
  std::string output_dir = "results";  // LIFTGUARD_OUT overrides
  std::optional<std::uint64_t> seed;
  int workers = 0;           // 0 = available parallelism
  std::vector<std::string> overrides;  // dotted key=value applied to config

  // sanitize / verify parameters
  double eps_l = 0.0;
  double eps_u = 0.0;
  Scheme scheme = Scheme::kCompleteMerge;
  std::vector<double> alphas;
  RandomDrawConfig draw{20, 30, 500, 1};
};

int cmd_sanitize(const CliConfig& cfg);
int cmd_sweep(const CliConfig& cfg);
int cmd_histogram(const CliConfig& cfg);
int cmd_verify(const CliConfig& cfg);

// Parses argv and dispatches; maps exceptions to exit codes.
int run_cli(int argc, const char* const* argv);

}  // namespace liftguard

#endif  // LIFTGUARD_CLI_HPP_
