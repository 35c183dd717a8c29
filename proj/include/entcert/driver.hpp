// Copyright 2026 The entcert authors
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

#pragma once

#include "entcert/correct.hpp"
#include "entcert/io.hpp"
#include "entcert/tomo.hpp"

// Command implementations shared by the C API and (through it) the CLI.
// Each returns the machine-readable report: {tool, command, seed, inputs,
// results, [timing_ms]}. Reports are byte-stable for a fixed seed unless
// timing is requested.

namespace entcert {

struct DriverOptions {
  std::uint64_t seed = 0;
  int restarts = 16;
  int max_iter = 2000;
  double tol = kDefaultCertifyTol;
  bool skip_eof = false;
  bool include_timing = false;
};

/// Coerce a loaded state into the pure reference|target input the analysis
/// operations expect: a two-subsystem pure state passes through, a
/// single-subsystem state (pure or mixed) is purified with a fresh
/// reference in front.
PureState normalize_input(const StateSpec& spec);

nlohmann::json run_analyze(const NamedChannel& channel, const StateSpec& state,
                           const DriverOptions& opts);
nlohmann::json run_certify(const NamedChannel& channel, const StateSpec& state,
                           const DriverOptions& opts, bool* correctable);
nlohmann::json run_recover(const NamedChannel& channel, const StateSpec& state,
                           const DriverOptions& opts, KrausChannel* recovery);
nlohmann::json run_sweep(const std::string& family, const std::vector<double>& params,
                         const StateSpec& state, const DriverOptions& opts);
nlohmann::json run_tomo(const StateSpec& state, const DriverOptions& opts);

}  // namespace entcert
