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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entcert/errors.hpp"

namespace entcert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numerical tolerances shared across the library. Entropies are in bits
// (log base 2) throughout.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;  // spectral noise allowance
inline constexpr double kEntropyClip = 1e-12;       // lambda*log(lambda) := 0 below this
inline constexpr double kRankCutoff = 1e-10;        // support / rank decisions

/// Ordered list of subsystem dimensions with unique names, e.g.
/// dims {2, 8}, labels {"R", "Q"}. Subsystem 0 is the most significant
/// index (Kronecker-product order).
struct SystemShape {
  std::vector<int> dims;
  std::vector<std::string> labels;

  SystemShape() = default;
  SystemShape(std::vector<int> dims_, std::vector<std::string> labels_);

  std::size_t size() const { return dims.size(); }
  int total_dim() const;
  bool has_label(const std::string& label) const;
  /// Position of `label`; throws DimensionError if unknown.
  int index_of(const std::string& label) const;
  /// Positions of the given labels, sorted into original subsystem order.
  std::vector<int> positions_of(const std::vector<std::string>& subset) const;
  /// Sub-shape of the given labels, in original subsystem order.
  SystemShape keep(const std::vector<std::string>& subset) const;
  /// Labels not contained in `subset`, in original order.
  std::vector<std::string> complement(const std::vector<std::string>& subset) const;

  bool operator==(const SystemShape&) const = default;
};

/// Normalized state vector on a labeled tensor-product space.
class PureState {
 public:
  PureState(Vector amplitudes, SystemShape shape);

  const Vector& amplitudes() const { return amplitudes_; }
  const SystemShape& shape() const { return shape_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

 private:
  Vector amplitudes_;
  SystemShape shape_;
};

/// Hermitian, positive-semidefinite, unit-trace operator on a labeled
/// tensor-product space. Invariants are checked at construction.
class DensityMatrix {
 public:
  DensityMatrix(Matrix matrix, SystemShape shape);

  const Matrix& matrix() const { return matrix_; }
  const SystemShape& shape() const { return shape_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
  SystemShape shape_;
};

/// Result of a Schmidt (singular value) decomposition across a bipartite
/// cut. Coefficients are nonincreasing and positive; basis vectors are
/// orthonormal, with the first nonzero amplitude of each left vector made
/// real positive. left_shape/right_shape record the cut and its complement.
struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;
  std::vector<Vector> left_basis;
  std::vector<Vector> right_basis;
  SystemShape left_shape;
  SystemShape right_shape;

  std::size_t rank() const { return left_basis.size(); }
};

// --- elementary constructions -------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);

/// |psi><psi| with the state's shape.
DensityMatrix projector(const PureState& psi);

/// Hermitian part (M + M^dag)/2.
Matrix hermitize(const Matrix& m);

/// Kronecker product; labels of `a` come first. Throws DimensionError if
/// the two shapes share a label.
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the `keep` subsystems (original order preserved).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// Partial trace of a raw operator (no density-matrix invariants checked).
Matrix partial_trace_matrix(const Matrix& m, const SystemShape& shape,
                            const std::vector<std::string>& keep);

/// I (x) op (x) I with `op` (square) acting on the `target` subsystem.
Matrix embed_at(const Matrix& op, const SystemShape& shape, const std::string& target);

/// `base` if unused in `shape`, else base0, base1, ...
std::string fresh_label(const SystemShape& shape, const std::string& base);

/// Von Neumann entropy in bits, -sum lambda log2 lambda over the spectrum.
double vn_entropy(const DensityMatrix& rho);

/// Shannon entropy in bits of a probability vector. Entries down to -1e-12
/// are clipped to zero and the vector renormalized; a sum further than 1e-9
/// from one is an InvariantError.
double shannon_entropy(const std::vector<double>& p);

/// Schmidt decomposition of `psi` across `cut` (a nonempty proper subset of
/// the labels); the cut subsystems form the left factor.
SchmidtDecomposition schmidt(const PureState& psi, const std::vector<std::string>& cut);

/// Rebuild sum_i c_i |l_i>|r_i> on left_shape (x) right_shape.
PureState schmidt_reconstruct(const SchmidtDecomposition& sd);

/// The same state with subsystems reordered to `new_order` (a permutation
/// of the labels).
PureState permute_subsystems(const PureState& psi, const std::vector<std::string>& new_order);

/// Eigen-purification sum_i sqrt(lambda_i) |v_i>|i_env>; the environment
/// dimension is the rank of rho and carries `env_label`.
PureState purify(const DensityMatrix& rho, const std::string& env_label);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0,1].
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// S(A) + S(B) - S(AB) in bits for the bipartition (cut | rest).
double mutual_information(const DensityMatrix& rho, const std::vector<std::string>& cut);

// --- spectral helpers shared by the higher modules -----------------------

/// Eigenvalues (descending) and matching eigenvectors of the Hermitian part
/// of `m`, with a deterministic phase convention on the vectors.
void hermitian_eigs(const Matrix& m, Eigen::VectorXd& values, Matrix& vectors);

/// Entropy in bits of a spectrum (negatives clipped).
double spectrum_entropy(const Eigen::VectorXd& eigenvalues);

/// Principal square root of a PSD matrix (negative spectral noise clipped).
Matrix psd_sqrt(const Matrix& m);

/// Projector onto the span of eigenvectors with eigenvalue > kRankCutoff.
Matrix support_projector(const Matrix& m);

}  // namespace entcert
