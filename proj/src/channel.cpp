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

#include "entcert/channel.hpp"

#include <algorithm>
#include <cmath>

#include "entcert/random.hpp"

namespace entcert {

KrausChannel::KrausChannel(std::vector<Matrix> ops) : operators(std::move(ops)) {
  if (operators.empty()) throw InvariantError("KrausChannel: no operators");
  out_dim = static_cast<int>(operators.front().rows());
  in_dim = static_cast<int>(operators.front().cols());
  if (in_dim < 1 || out_dim < 1) throw InvariantError("KrausChannel: empty operator");
  for (const auto& a : operators)
    if (a.rows() != out_dim || a.cols() != in_dim)
      throw InvariantError("KrausChannel: operators differ in shape");
}

DensityMatrix ensemble_average(const Ensemble& e) {
  if (e.states.empty() || e.states.size() != e.weights.size())
    throw InvariantError("Ensemble: weights and states differ in length");
  Matrix acc = Matrix::Zero(e.states.front().dim(), e.states.front().dim());
  for (std::size_t k = 0; k < e.states.size(); ++k) acc += e.weights[k] * e.states[k].matrix();
  return DensityMatrix(hermitize(acc), e.states.front().shape());
}

void validate(const KrausChannel& channel) {
  Matrix sum = Matrix::Zero(channel.in_dim, channel.in_dim);
  for (const auto& a : channel.operators) sum += a.adjoint() * a;
  double dev = (sum - Matrix::Identity(channel.in_dim, channel.in_dim)).cwiseAbs().maxCoeff();
  if (dev > kCompletenessTol)
    throw CompletenessViolation(
        "Kraus completeness sum deviates from identity by " + std::to_string(dev), dev);
}

namespace {

SystemShape output_shape(const KrausChannel& channel, const SystemShape& in_shape) {
  if (channel.out_dim == channel.in_dim) return in_shape;
  if (in_shape.size() != 1)
    throw DimensionError("apply: non-square channel requires a single-subsystem state");
  return SystemShape({channel.out_dim}, in_shape.labels);
}

}  // namespace

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.in_dim)
    throw DimensionError("apply: state dimension " + std::to_string(rho.dim()) +
                         " != channel input dimension " + std::to_string(channel.in_dim));
  Matrix out = Matrix::Zero(channel.out_dim, channel.out_dim);
  for (const auto& a : channel.operators) out += a * rho.matrix() * a.adjoint();
  return DensityMatrix(hermitize(out), output_shape(channel, rho.shape()));
}

DensityMatrix apply_extended(const KrausChannel& channel, const DensityMatrix& joint,
                             const std::string& target) {
  const auto& shape = joint.shape();
  const int pos = shape.index_of(target);
  if (shape.dims[static_cast<std::size_t>(pos)] != channel.in_dim)
    throw DimensionError("apply_extended: subsystem '" + target + "' has dimension " +
                         std::to_string(shape.dims[static_cast<std::size_t>(pos)]) +
                         " != channel input dimension " + std::to_string(channel.in_dim));
  long pre = 1, post = 1;
  for (int i = 0; i < pos; ++i) pre *= shape.dims[static_cast<std::size_t>(i)];
  for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < shape.size(); ++i)
    post *= shape.dims[i];
  const Matrix ipre = Matrix::Identity(pre, pre);
  const Matrix ipost = Matrix::Identity(post, post);

  const long dout = pre * channel.out_dim * post;
  Matrix out = Matrix::Zero(dout, dout);
  for (const auto& a : channel.operators) {
    Matrix lifted = kron(ipre, kron(a, ipost));
    out += lifted * joint.matrix() * lifted.adjoint();
  }
  SystemShape new_shape = shape;
  new_shape.dims[static_cast<std::size_t>(pos)] = channel.out_dim;
  return DensityMatrix(hermitize(out), std::move(new_shape));
}

ChoiMatrix choi_matrix(const KrausChannel& channel) {
  const long di = channel.in_dim, dj = channel.out_dim;
  Matrix j = Matrix::Zero(di * dj, di * dj);
  for (const auto& a : channel.operators) {
    Vector v(di * dj);
    for (long i = 0; i < di; ++i)
      for (long o = 0; o < dj; ++o) v[i * dj + o] = a(o, i);
    j += v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(j), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw InvariantError("ChoiMatrix: negative eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()));
  // Tracing the output slot must give the identity on the input.
  Matrix tr_out = Matrix::Zero(di, di);
  for (long i = 0; i < di; ++i)
    for (long i2 = 0; i2 < di; ++i2)
      for (long o = 0; o < dj; ++o) tr_out(i, i2) += j(i * dj + o, i2 * dj + o);
  double dev = (tr_out - Matrix::Identity(di, di)).cwiseAbs().maxCoeff();
  if (dev > 1e-9)
    throw InvariantError("ChoiMatrix: output partial trace deviates from identity by " +
                         std::to_string(dev));
  return ChoiMatrix{std::move(j), channel.in_dim, channel.out_dim};
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.in_dim != b.in_dim || a.out_dim != b.out_dim)
    throw DimensionError("choi_distance: channels have different dimensions");
  return (choi_matrix(a).matrix - choi_matrix(b).matrix).cwiseAbs().maxCoeff();
}

KrausChannel mix_representation(const KrausChannel& channel, const Matrix& v) {
  const long m = v.rows();
  if (v.cols() != m) throw DimensionError("mix_representation: V is not square");
  if (m < static_cast<long>(channel.operators.size()))
    throw DimensionError("mix_representation: V smaller than the operator list");
  double dev = (v.adjoint() * v - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
  if (dev > 1e-9)
    throw InvariantError("mix_representation: V deviates from unitary by " + std::to_string(dev));

  std::vector<Matrix> padded = channel.operators;
  padded.resize(static_cast<std::size_t>(m), Matrix::Zero(channel.out_dim, channel.in_dim));
  std::vector<Matrix> mixed;
  mixed.reserve(static_cast<std::size_t>(m));
  for (long k = 0; k < m; ++k) {
    Matrix b = Matrix::Zero(channel.out_dim, channel.in_dim);
    for (long l = 0; l < m; ++l) b += v(k, l) * padded[static_cast<std::size_t>(l)];
    mixed.push_back(std::move(b));
  }
  return KrausChannel(std::move(mixed));
}

namespace {

std::vector<Matrix> trimmed_operators(const KrausChannel& channel) {
  std::vector<Matrix> ops;
  for (const auto& a : channel.operators)
    if (a.norm() >= kZeroKrausNorm) ops.push_back(a);
  if (ops.empty()) throw InvariantError("channel has only zero operators");
  return ops;
}

}  // namespace

UnitaryDilation dilate(const KrausChannel& channel) {
  if (channel.in_dim != channel.out_dim)
    throw DimensionError("dilate: only square channels have a square joint unitary");
  auto ops = trimmed_operators(channel);
  const long d = channel.in_dim;
  const long k = static_cast<long>(ops.size());
  const long dj = d * k;

  Matrix u = Matrix::Zero(dj, dj);
  // Columns (i, env_init=0) are fixed by the channel action.
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < k; ++j)
      for (long a = 0; a < d; ++a) u(a * k + j, i * k + 0) = ops[static_cast<std::size_t>(j)](a, i);

  // Complete the remaining columns by Gram-Schmidt over standard basis
  // vectors taken in index order.
  std::vector<long> fixed_cols;
  for (long i = 0; i < d; ++i) fixed_cols.push_back(i * k);
  std::vector<long> free_cols;
  for (long c = 0; c < dj; ++c)
    if (c % k != 0) free_cols.push_back(c);

  std::size_t next_free = 0;
  for (long cand = 0; cand < dj && next_free < free_cols.size(); ++cand) {
    Vector v = Vector::Zero(dj);
    v[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (long c : fixed_cols) v -= u.col(c).dot(v) * u.col(c);
      for (std::size_t f = 0; f < next_free; ++f)
        v -= u.col(free_cols[f]).dot(v) * u.col(free_cols[f]);
    }
    double n = v.norm();
    if (n > 1e-6) {
      u.col(free_cols[next_free++]) = v / n;
    }
  }
  if (next_free != free_cols.size())
    throw InvariantError("dilate: unitary completion failed");

  UnitaryDilation dil;
  dil.joint_unitary = std::move(u);
  dil.sys_dim = static_cast<int>(d);
  dil.env_dim = static_cast<int>(k);
  dil.env_init = 0;
  for (long e = 0; e < k; ++e) {
    Vector b = Vector::Zero(k);
    b[e] = 1.0;
    dil.env_basis.push_back(std::move(b));
  }
  return dil;
}

KrausChannel kraus_from_dilation(const UnitaryDilation& d, const std::vector<Vector>& basis) {
  const long k = d.env_dim;
  if (static_cast<long>(basis.size()) != k)
    throw InvariantError("kraus_from_dilation: basis does not span the environment");
  Matrix gram(k, k);
  for (long a = 0; a < k; ++a)
    for (long b = 0; b < k; ++b)
      gram(a, b) = basis[static_cast<std::size_t>(a)].dot(basis[static_cast<std::size_t>(b)]);
  if ((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-9)
    throw InvariantError("kraus_from_dilation: basis is not orthonormal");

  const long ds = d.sys_dim;
  std::vector<Matrix> ops;
  for (long kk = 0; kk < k; ++kk) {
    Matrix a = Matrix::Zero(ds, ds);
    for (long row = 0; row < ds; ++row)
      for (long i = 0; i < ds; ++i) {
        Complex acc(0.0, 0.0);
        for (long e = 0; e < k; ++e)
          acc += std::conj(basis[static_cast<std::size_t>(kk)][e]) *
                 d.joint_unitary(row * k + e, i * k + d.env_init);
        a(row, i) = acc;
      }
    ops.push_back(std::move(a));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel complementary(const KrausChannel& channel) {
  auto ops = trimmed_operators(channel);
  const long k = static_cast<long>(ops.size());
  std::vector<Matrix> comp;
  for (long j = 0; j < channel.out_dim; ++j) {
    Matrix f(k, channel.in_dim);
    for (long kk = 0; kk < k; ++kk)
      for (long i = 0; i < channel.in_dim; ++i) f(kk, i) = ops[static_cast<std::size_t>(kk)](j, i);
    comp.push_back(std::move(f));
  }
  return KrausChannel(std::move(comp));
}

Ensemble output_ensemble(const KrausChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.in_dim)
    throw DimensionError("output_ensemble: state dimension mismatch");
  SystemShape shape = output_shape(channel, rho.shape());
  Ensemble e;
  for (const auto& a : channel.operators) {
    Matrix m = a * rho.matrix() * a.adjoint();
    double p = m.trace().real();
    if (p < kEnsembleWeightCut) continue;
    e.weights.push_back(p);
    e.states.emplace_back(hermitize(m / p), shape);
  }
  return e;
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.in_dim != first.out_dim)
    throw DimensionError("compose: inner dimensions do not match");
  std::vector<Matrix> ops;
  ops.reserve(second.operators.size() * first.operators.size());
  for (const auto& b : second.operators)
    for (const auto& a : first.operators) ops.push_back(b * a);
  return KrausChannel(std::move(ops));
}

KrausChannel random_kraus_channel(int dim, int num_ops, std::mt19937_64& rng) {
  const long d = dim, k = num_ops;
  Matrix g = ginibre(static_cast<int>(d * k), dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = Matrix(qr.householderQ()).leftCols(d);
  std::vector<Matrix> ops;
  for (long j = 0; j < k; ++j) {
    Matrix a(d, d);
    for (long row = 0; row < d; ++row)
      for (long col = 0; col < d; ++col) a(row, col) = q(row * k + j, col);
    ops.push_back(std::move(a));
  }
  return KrausChannel(std::move(ops));
}

}  // namespace entcert
