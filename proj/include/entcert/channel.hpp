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

#include <random>
#include <vector>

#include "entcert/linalg.hpp"

namespace entcert {

inline constexpr double kCompletenessTol = 1e-9;
inline constexpr double kChoiEqualTol = 1e-9;
inline constexpr double kZeroKrausNorm = 1e-12;   // Frobenius cutoff for trimming
inline constexpr double kEnsembleWeightCut = 1e-14;

/// Trace-preserving completely positive map as a finite list of operators
/// A_k (each out_dim x in_dim) with sum_k A_k^dag A_k = 1.
struct KrausChannel {
  std::vector<Matrix> operators;
  int in_dim = 0;
  int out_dim = 0;

  KrausChannel() = default;
  /// Infers dimensions; requires at least one operator, all of equal size.
  explicit KrausChannel(std::vector<Matrix> ops);
};

/// Unitary realization of a channel on system (x) environment, with the
/// environment starting in basis state `env_init`. Joint indices are
/// system-major: (q, e) -> q * env_dim + e.
struct UnitaryDilation {
  Matrix joint_unitary;
  int sys_dim = 0;
  int env_dim = 0;
  int env_init = 0;
  std::vector<Vector> env_basis;
};

/// Choi operator (I (x) E)(|Omega><Omega|) with the unnormalized
/// |Omega> = sum_i |i>|i>; indices are (input, output) pairs, input-major.
/// Partial trace over the output slot gives identity(in_dim).
struct ChoiMatrix {
  Matrix matrix;
  int in_dim = 0;
  int out_dim = 0;
};

/// Weighted states averaging to a fixed density matrix.
struct Ensemble {
  std::vector<double> weights;
  std::vector<DensityMatrix> states;
};

DensityMatrix ensemble_average(const Ensemble& e);

/// Returns normally iff sum_k A_k^dag A_k = identity within 1e-9; otherwise
/// throws CompletenessViolation carrying the max-element deviation.
void validate(const KrausChannel& channel);

/// sum_k A_k rho A_k^dag.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

/// (I (x) E)(joint), the channel lifted to act on the `target` subsystem.
DensityMatrix apply_extended(const KrausChannel& channel, const DensityMatrix& joint,
                             const std::string& target);

/// Choi operator of the channel; also validates its PSD/trace invariants.
ChoiMatrix choi_matrix(const KrausChannel& channel);

/// Max-element distance of the two Choi operators (the library's notion of
/// channel equality is choi_distance < 1e-9).
double choi_distance(const KrausChannel& a, const KrausChannel& b);

/// B_k = sum_l V_kl A_l for a unitary V of size m >= #operators; the Kraus
/// list is padded with zero operators up to m. Same channel, new
/// representation.
KrausChannel mix_representation(const KrausChannel& channel, const Matrix& v);

/// Stinespring dilation with env_dim = #operators (zero operators trimmed):
/// U |psi>|0> = sum_k (A_k |psi>) |k>, completed to a unitary by
/// Gram-Schmidt over standard-basis candidates in a fixed order.
/// Requires in_dim == out_dim.
UnitaryDilation dilate(const KrausChannel& channel);

/// Kraus operators A_k |psi> = <k|U|psi 0> read out in the given
/// environment basis (must be orthonormal and complete).
KrausChannel kraus_from_dilation(const UnitaryDilation& d, const std::vector<Vector>& basis);

/// The channel to the environment: rho |-> Tr_Q[U(rho (x) |0><0|)U^dag],
/// with Kraus operators (F_j)_{k,i} = (A_k)_{j,i}.
KrausChannel complementary(const KrausChannel& channel);

/// Ensemble {p_k = Tr A_k rho A_k^dag, rho_k = A_k rho A_k^dag / p_k};
/// terms with p_k < 1e-14 are dropped.
Ensemble output_ensemble(const KrausChannel& channel, const DensityMatrix& rho);

/// The composition `second` after `first` (Kraus operators multiply out).
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

/// Haar-random channel with `num_ops` Kraus operators (random Stinespring
/// isometry).
KrausChannel random_kraus_channel(int dim, int num_ops, std::mt19937_64& rng);

}  // namespace entcert
