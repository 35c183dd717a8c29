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

#include <cstdint>
#include <functional>
#include <vector>

#include "entcert/linalg.hpp"

namespace entcert {

/// Knobs for the minimizations over the unitary group. Defaults: 16 random
/// restarts on top of the analytic warm start, stop a run once the value
/// has not improved by 1e-9 over 50 iterations, and call the result
/// converged when independent starts agree to 1e-5.
struct OptimizerConfig {
  int restarts = 16;
  int max_iter = 2000;
  double improve_tol = 1e-9;
  int stall_window = 50;
  double agreement_tol = 1e-5;
  std::uint64_t seed = 0;
};

/// Objective over U(m). Returns f(U); when `grad` is non-null it must be
/// filled with the Wirtinger gradient df/d(conj U), so that
/// df = 2 Re tr(grad^dag dU).
using UnitaryObjective = std::function<double(const Matrix&, Matrix*)>;

struct UnitaryMinimum {
  double value = 0.0;
  Matrix minimizer;
  int restarts_used = 0;
  bool converged = true;
};

/// exp(S) for anti-Hermitian S, via the spectrum of iS.
Matrix expm_antihermitian(const Matrix& s);

/// Riemannian gradient descent on the unitary group with backtracking line
/// search, run from every warm start plus cfg.restarts Haar-random starts;
/// returns the best final point. Deterministic for a fixed cfg.seed.
UnitaryMinimum minimize_over_unitaries(int dim, const UnitaryObjective& objective,
                                       const std::vector<Matrix>& warm_starts,
                                       const OptimizerConfig& cfg);

}  // namespace entcert
