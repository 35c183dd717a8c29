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

#include <utility>

#include "entcert/measures.hpp"

// Perfect-correctability certification and recovery synthesis. Throughout
// this module the input is a pure state on exactly two subsystems: the
// first is the untouched reference, the second is the channel target.

namespace entcert {

inline constexpr double kDefaultCertifyTol = 1e-7;  // bits
inline constexpr double kOrthonormalityTol = 1e-7;  // recovery block check

/// The full verdict record. The primary criterion is the coherent
/// information gap S^Q - I < tolerance; the entanglement-of-formation gap,
/// the reference-environment mutual information, and the Knill-Laflamme
/// residual are computed as corroborating evidence.
struct Certificate {
  double s_q = 0.0;
  double coherent_info = 0.0;
  double eof_value = 0.0;  // upper bound; NaN when skipped
  bool eof_converged = false;
  double re_mutual_info = 0.0;
  double kl_residual = 0.0;
  bool correctable = false;
  double tolerance = kDefaultCertifyTol;
};

enum class RecoveryMethod { SchmidtBlock, Petz, Optimized };

const char* recovery_method_name(RecoveryMethod m);

struct RecoveryMap {
  KrausChannel channel;
  RecoveryMethod method = RecoveryMethod::SchmidtBlock;
};

/// epsilon = S^Q - I together with the fidelity bound 1 - 2 sqrt(epsilon)
/// (floored at 0) and the best fidelity any of the implemented recoveries
/// achieved.
struct ApproxReport {
  double epsilon = 0.0;
  double paper_bound = 0.0;
  double achieved_fidelity = 0.0;
  RecoveryMethod method = RecoveryMethod::Petz;
};

struct CertifyOptions {
  bool compute_eof = true;
  OptimizerConfig optimizer;
};

/// Joint state of (reference, environment) after running the dilated
/// channel on the target and discarding the channel output.
DensityMatrix re_output(const KrausChannel& channel, const PureState& input);

Certificate certify(const KrausChannel& channel, const PureState& input,
                    double tol = kDefaultCertifyTol, const CertifyOptions& opts = {});

/// Explicit recovery from the product structure of the
/// (reference, environment) output: block vectors
/// q_ij = <r_i| <e_j| Psi' / sqrt(r_i s_j) are checked orthonormal and the
/// Kraus blocks D_j = sum_i |q_i0><q_ij| rotate each environment syndrome
/// back onto the input's Schmidt partners. Throws NotCorrectableError when
/// the orthonormality check fails.
RecoveryMap synthesize_recovery(const KrausChannel& channel, const PureState& input);

/// Transpose-channel recovery rho^(1/2) A_k^dag sigma^(-1/2) with
/// sigma = E(rho), pseudo-inverted on its support and completed on the
/// kernel. Exact whenever perfect correction is possible.
RecoveryMap petz_recovery(const KrausChannel& channel, const DensityMatrix& rho_q);

/// Fidelity of the input with recovery-after-channel applied to the target.
double verify_recovery(const KrausChannel& channel, const RecoveryMap& recovery,
                       const PureState& input);

/// Approximate-correction report; the achieved fidelity is the best of the
/// Petz map, the Schmidt-block construction when it applies, and (for
/// target dimension <= 4) an optimizer-refined recovery.
ApproxReport approx_report(const KrausChannel& channel, const PureState& input,
                           const OptimizerConfig& cfg = {});

/// Two-sided local noise E^R (x) E^Q, certified through the two one-sided
/// stages (I (x) E^Q then E^R (x) I); correctable iff the summed stage gaps
/// stay below tol. The certificate's coherent_info reports S^Q minus that
/// summed gap, and the corroborating fields the worse of the two stages.
Certificate certify_local(const KrausChannel& channel_r, const KrausChannel& channel_q,
                          const PureState& input, double tol = kDefaultCertifyTol,
                          const CertifyOptions& opts = {});

/// Per-side recoveries (D^R, D^Q) for two-sided noise, each synthesized
/// from its own stage; no classical communication anywhere.
std::pair<RecoveryMap, RecoveryMap> recover_local(const KrausChannel& channel_r,
                                                  const KrausChannel& channel_q,
                                                  const PureState& input,
                                                  double tol = kDefaultCertifyTol);

}  // namespace entcert
