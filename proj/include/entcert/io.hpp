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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "entcert/channel.hpp"

// Versioned JSON file formats. Complex numbers are [re, im] pairs, matrices
// row-major arrays of rows; unknown fields are rejected.

namespace entcert {

inline constexpr const char* kToolName = "entcert";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kFormatVersion = 1;

struct NamedChannel {
  KrausChannel channel;
  std::optional<std::string> name;
};

/// A state-file payload: either a pure vector or a density matrix.
using StateSpec = std::variant<PureState, DensityMatrix>;

const SystemShape& state_shape(const StateSpec& spec);
bool state_is_pure(const StateSpec& spec);
DensityMatrix state_density(const StateSpec& spec);

NamedChannel channel_from_json(const nlohmann::json& j);
nlohmann::json channel_to_json(const KrausChannel& channel,
                               const std::optional<std::string>& name = std::nullopt);
NamedChannel load_channel_file(const std::string& path);
void save_channel_file(const KrausChannel& channel, const std::optional<std::string>& name,
                       const std::string& path);

StateSpec state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const StateSpec& spec);
StateSpec load_state_file(const std::string& path);

/// Built-in one-parameter qubit noise families: dephasing, bitflip,
/// depolarizing, amplitude-damping (parameter in [0, 1]).
KrausChannel builtin_channel(const std::string& family, double param);
std::vector<std::string> builtin_channel_families();

/// Built-in inputs: "bell" (maximally entangled two-qubit R|Q state) and
/// "repetition3" (a qubit reference entangled with a three-qubit
/// repetition codeword).
PureState builtin_state(const std::string& name);

}  // namespace entcert
