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

#include <string>
#include <vector>

#include "entcert/channel.hpp"
#include "entcert/optimize.hpp"

namespace entcert {

/// Outcome of one of the ensemble/representation minimizations. The value
/// is always a certified upper bound on the true minimum: it is attained by
/// the reported feasible point (mixing unitary + ensemble).
struct MeasureResult {
  double value = 0.0;
  Matrix mixing_unitary;  // argmin V (identity when no search was needed)
  Ensemble ensemble;      // the achieved ensemble
  int restarts_used = 0;
  bool converged = true;
  int ensemble_cap = 0;  // m, the representation size the search ran at
};

/// Positive operators summing to the identity.
struct Povm {
  std::vector<Matrix> elements;

  explicit Povm(std::vector<Matrix> elements_);
  int dim() const { return static_cast<int>(elements.front().rows()); }
};

/// I = S(Q') - S(RQ'): purify rho_q with a reference, send the Q side
/// through the channel, take entropies. May be negative.
double coherent_information(const KrausChannel& channel, const DensityMatrix& rho_q);

/// I = S(Q') - min_V H(p(V)) over operator-sum representations; the
/// minimum is the environment output entropy, whose eigenbasis seeds the
/// search as an analytic warm start.
MeasureResult coherent_information_intrinsic(const KrausChannel& channel,
                                             const DensityMatrix& rho_q,
                                             const OptimizerConfig& cfg = {});

/// Entanglement of a pure bipartite state: entropy of the `cut` marginal.
double eof_pure(const PureState& psi, const std::vector<std::string>& cut);

/// Entanglement of formation: minimum average marginal entropy over
/// pure-state ensembles, parametrized as isometries applied to the
/// eigen-purification, ensemble size capped at rank^2.
MeasureResult eof_mixed(const DensityMatrix& rho, const std::vector<std::string>& cut,
                        const OptimizerConfig& cfg = {});

/// The same minimum expressed over operator-sum representations of the
/// channel: min_V sum_k p_k(V) S(rho_k(V)) for the output ensemble of the
/// mixed representation.
MeasureResult eof_intrinsic(const KrausChannel& channel, const DensityMatrix& rho_q,
                            const OptimizerConfig& cfg = {});

/// Wootters' closed form for two qubits: E = h((1+sqrt(1-C^2))/2) with C
/// the spin-flip concurrence. Independent of the optimizers.
double concurrence_2q(const DensityMatrix& rho);
double concurrence_eof_2q(const DensityMatrix& rho);

/// Ensemble of relative states induced on the non-ancilla side by
/// measuring `povm` on the ancilla of a purification. Outcomes with
/// probability below 1e-14 are dropped.
Ensemble hjw_ensemble(const PureState& purification, const std::string& ancilla,
                      const Povm& povm);

/// The converse: a POVM on the ancilla whose relative-state ensemble
/// reproduces `target` (pure states averaging to the marginal).
Povm hjw_measurement(const PureState& purification, const std::string& ancilla,
                     const Ensemble& target);

}  // namespace entcert
