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

#include "entcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace entcert {

namespace {

// Row-major strides; subsystem 0 is the most significant index.
std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> s(dims.size());
  long acc = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = acc;
    acc *= dims[static_cast<std::size_t>(i)];
  }
  return s;
}

// Flat offsets contributed by the subsystems at `pos` as their joint
// multi-index runs through all values in row-major order.
std::vector<long> subsystem_offsets(const std::vector<int>& dims, const std::vector<int>& pos,
                                    const std::vector<long>& full_strides) {
  long n = 1;
  for (int p : pos) n *= dims[static_cast<std::size_t>(p)];
  std::vector<long> out(static_cast<std::size_t>(n));
  std::vector<int> idx(pos.size(), 0);
  for (long f = 0; f < n; ++f) {
    long off = 0;
    for (std::size_t s = 0; s < pos.size(); ++s)
      off += static_cast<long>(idx[s]) * full_strides[static_cast<std::size_t>(pos[s])];
    out[static_cast<std::size_t>(f)] = off;
    for (int s = static_cast<int>(pos.size()) - 1; s >= 0; --s) {
      auto us = static_cast<std::size_t>(s);
      if (++idx[us] < dims[static_cast<std::size_t>(pos[us])]) break;
      idx[us] = 0;
    }
  }
  return out;
}

// First-nonzero-entry-real-positive phase convention. Returns the factor
// applied to `v`.
Complex fix_phase(Vector& v) {
  for (long i = 0; i < v.size(); ++i) {
    double mag = std::abs(v[i]);
    if (mag > 1e-12) {
      Complex factor = std::conj(v[i]) / mag;
      v *= factor;
      return factor;
    }
  }
  return Complex(1.0, 0.0);
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::ostringstream os;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) os << ",";
    os << labels[i];
  }
  return os.str();
}

}  // namespace

SystemShape::SystemShape(std::vector<int> dims_, std::vector<std::string> labels_)
    : dims(std::move(dims_)), labels(std::move(labels_)) {
  if (dims.size() != labels.size())
    throw InvariantError("SystemShape: dims and labels differ in length");
  if (dims.empty()) throw InvariantError("SystemShape: empty shape");
  for (int d : dims)
    if (d < 1) throw InvariantError("SystemShape: subsystem dimension < 1");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw InvariantError("SystemShape: duplicate labels [" + join_labels(labels) + "]");
}

int SystemShape::total_dim() const {
  long d = 1;
  for (int x : dims) d *= x;
  return static_cast<int>(d);
}

bool SystemShape::has_label(const std::string& label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

int SystemShape::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw DimensionError("unknown subsystem label '" + label + "'");
  return static_cast<int>(it - labels.begin());
}

std::vector<int> SystemShape::positions_of(const std::vector<std::string>& subset) const {
  std::vector<int> pos;
  pos.reserve(subset.size());
  for (const auto& l : subset) pos.push_back(index_of(l));
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
    throw DimensionError("label subset [" + join_labels(subset) + "] repeats a label");
  return pos;
}

SystemShape SystemShape::keep(const std::vector<std::string>& subset) const {
  auto pos = positions_of(subset);
  std::vector<int> d;
  std::vector<std::string> l;
  for (int p : pos) {
    d.push_back(dims[static_cast<std::size_t>(p)]);
    l.push_back(labels[static_cast<std::size_t>(p)]);
  }
  return SystemShape(std::move(d), std::move(l));
}

std::vector<std::string> SystemShape::complement(const std::vector<std::string>& subset) const {
  auto pos = positions_of(subset);
  std::vector<std::string> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (k < pos.size() && static_cast<int>(i) == pos[k]) {
      ++k;
      continue;
    }
    out.push_back(labels[i]);
  }
  return out;
}

PureState::PureState(Vector amplitudes, SystemShape shape)
    : amplitudes_(std::move(amplitudes)), shape_(std::move(shape)) {
  if (amplitudes_.size() != shape_.total_dim())
    throw InvariantError("PureState: vector length does not match shape dimension");
  double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTol)
    throw InvariantError("PureState: norm deviates from 1 by " + std::to_string(std::abs(norm - 1.0)));
}

DensityMatrix::DensityMatrix(Matrix matrix, SystemShape shape)
    : matrix_(std::move(matrix)), shape_(std::move(shape)) {
  const long d = shape_.total_dim();
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw InvariantError("DensityMatrix: matrix size does not match shape dimension");
  double herm_dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol)
    throw InvariantError("DensityMatrix: non-Hermitian, deviation " + std::to_string(herm_dev));
  double trace_dev = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (trace_dev > kTraceTol)
    throw InvariantError("DensityMatrix: trace deviates from 1 by " + std::to_string(trace_dev));
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(matrix_), Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kEigenvalueFloor)
    throw InvariantError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
}

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b); }

DensityMatrix projector(const PureState& psi) {
  Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(std::move(m), psi.shape());
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

namespace {
SystemShape concat_shapes(const SystemShape& a, const SystemShape& b) {
  for (const auto& l : b.labels)
    if (a.has_label(l)) throw DimensionError("tensor: duplicate label '" + l + "'");
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  std::vector<std::string> labels = a.labels;
  labels.insert(labels.end(), b.labels.begin(), b.labels.end());
  return SystemShape(std::move(dims), std::move(labels));
}
}  // namespace

PureState tensor(const PureState& a, const PureState& b) {
  SystemShape shape = concat_shapes(a.shape(), b.shape());
  Vector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return PureState(std::move(v), std::move(shape));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  SystemShape shape = concat_shapes(a.shape(), b.shape());
  return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(shape));
}

Matrix partial_trace_matrix(const Matrix& m, const SystemShape& shape,
                            const std::vector<std::string>& keep) {
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  if (m.rows() != shape.total_dim() || m.cols() != shape.total_dim())
    throw DimensionError("partial_trace: matrix size does not match shape");
  auto keep_pos = shape.positions_of(keep);
  std::vector<int> trace_pos;
  for (int i = 0; i < static_cast<int>(shape.size()); ++i)
    if (!std::binary_search(keep_pos.begin(), keep_pos.end(), i)) trace_pos.push_back(i);

  auto fs = strides_of(shape.dims);
  auto keep_off = subsystem_offsets(shape.dims, keep_pos, fs);
  auto trace_off = subsystem_offsets(shape.dims, trace_pos, fs);

  const long dk = static_cast<long>(keep_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (long r = 0; r < dk; ++r)
    for (long c = 0; c < dk; ++c) {
      Complex acc(0.0, 0.0);
      for (long t : trace_off)
        acc += m(keep_off[static_cast<std::size_t>(r)] + t,
                 keep_off[static_cast<std::size_t>(c)] + t);
      out(r, c) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  Matrix out = partial_trace_matrix(rho.matrix(), rho.shape(), keep);
  return DensityMatrix(std::move(out), rho.shape().keep(keep));
}

Matrix embed_at(const Matrix& op, const SystemShape& shape, const std::string& target) {
  const int pos = shape.index_of(target);
  if (op.rows() != op.cols() || op.rows() != shape.dims[static_cast<std::size_t>(pos)])
    throw DimensionError("embed_at: operator does not fit subsystem '" + target + "'");
  long pre = 1, post = 1;
  for (int i = 0; i < pos; ++i) pre *= shape.dims[static_cast<std::size_t>(i)];
  for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < shape.size(); ++i)
    post *= shape.dims[i];
  return kron(Matrix::Identity(pre, pre), kron(op, Matrix::Identity(post, post)));
}

std::string fresh_label(const SystemShape& shape, const std::string& base) {
  if (!shape.has_label(base)) return base;
  for (int i = 0;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!shape.has_label(candidate)) return candidate;
  }
}

double vn_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho.matrix()), Eigen::EigenvaluesOnly);
  return spectrum_entropy(es.eigenvalues());
}

double shannon_entropy(const std::vector<double>& p) {
  double sum = 0.0;
  for (double x : p) {
    if (x < -1e-12)
      throw InvariantError("shannon_entropy: negative probability " + std::to_string(x));
    sum += std::max(x, 0.0);
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvariantError("shannon_entropy: probabilities sum to " + std::to_string(sum));
  double h = 0.0;
  for (double x : p) {
    double q = std::max(x, 0.0) / sum;
    if (q > kEntropyClip) h -= q * std::log2(q);
  }
  return h;
}

SchmidtDecomposition schmidt(const PureState& psi, const std::vector<std::string>& cut) {
  const auto& shape = psi.shape();
  if (cut.empty() || cut.size() >= shape.size())
    throw DimensionError("schmidt: cut must be a nonempty proper subset of the labels");
  auto left_pos = shape.positions_of(cut);
  std::vector<int> right_pos;
  for (int i = 0; i < static_cast<int>(shape.size()); ++i)
    if (!std::binary_search(left_pos.begin(), left_pos.end(), i)) right_pos.push_back(i);

  auto fs = strides_of(shape.dims);
  auto left_off = subsystem_offsets(shape.dims, left_pos, fs);
  auto right_off = subsystem_offsets(shape.dims, right_pos, fs);

  Matrix m(static_cast<long>(left_off.size()), static_cast<long>(right_off.size()));
  for (std::size_t a = 0; a < left_off.size(); ++a)
    for (std::size_t b = 0; b < right_off.size(); ++b)
      m(static_cast<long>(a), static_cast<long>(b)) = psi.amplitudes()[left_off[a] + right_off[b]];

  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();

  SchmidtDecomposition sd;
  sd.left_shape = shape.keep(cut);
  sd.right_shape = shape.keep(shape.complement(cut));
  long rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-12) ++rank;
  sd.coefficients.resize(rank);
  for (long i = 0; i < rank; ++i) {
    sd.coefficients[i] = sv[i];
    Vector u = svd.matrixU().col(i);
    Vector w = svd.matrixV().col(i).conjugate();
    Complex factor = fix_phase(u);
    w *= std::conj(factor);
    sd.left_basis.push_back(std::move(u));
    sd.right_basis.push_back(std::move(w));
  }
  return sd;
}

PureState schmidt_reconstruct(const SchmidtDecomposition& sd) {
  long dl = sd.left_shape.total_dim();
  long dr = sd.right_shape.total_dim();
  Vector v = Vector::Zero(dl * dr);
  for (std::size_t i = 0; i < sd.rank(); ++i)
    v += sd.coefficients[static_cast<long>(i)] *
         Eigen::kroneckerProduct(sd.left_basis[i], sd.right_basis[i]).eval();
  SystemShape shape = concat_shapes(sd.left_shape, sd.right_shape);
  return PureState(std::move(v), std::move(shape));
}

PureState permute_subsystems(const PureState& psi, const std::vector<std::string>& new_order) {
  const auto& shape = psi.shape();
  if (new_order.size() != shape.size())
    throw DimensionError("permute_subsystems: order must list every label exactly once");
  std::vector<int> src_pos;  // src_pos[s] = original position of new slot s
  std::vector<int> new_dims;
  for (const auto& l : new_order) {
    int p = shape.index_of(l);
    src_pos.push_back(p);
    new_dims.push_back(shape.dims[static_cast<std::size_t>(p)]);
  }
  {
    auto check = src_pos;
    std::sort(check.begin(), check.end());
    if (std::adjacent_find(check.begin(), check.end()) != check.end())
      throw DimensionError("permute_subsystems: repeated label in order");
  }
  auto old_strides = strides_of(shape.dims);
  auto new_strides = strides_of(new_dims);
  const long d = shape.total_dim();
  Vector out(d);
  std::vector<int> idx(shape.size(), 0);  // multi-index in original order
  for (long f = 0; f < d; ++f) {
    long nf = 0;
    for (std::size_t s = 0; s < src_pos.size(); ++s)
      nf += static_cast<long>(idx[static_cast<std::size_t>(src_pos[s])]) * new_strides[s];
    out[nf] = psi.amplitudes()[f];
    for (int s = static_cast<int>(shape.size()) - 1; s >= 0; --s) {
      auto us = static_cast<std::size_t>(s);
      if (++idx[us] < shape.dims[us]) break;
      idx[us] = 0;
    }
  }
  return PureState(std::move(out), SystemShape(std::move(new_dims), new_order));
}

PureState purify(const DensityMatrix& rho, const std::string& env_label) {
  if (rho.shape().has_label(env_label))
    throw DimensionError("purify: label '" + env_label + "' already present");
  Eigen::VectorXd vals;
  Matrix vecs;
  hermitian_eigs(rho.matrix(), vals, vecs);
  long rank = 0;
  for (long i = 0; i < vals.size(); ++i)
    if (vals[i] > 1e-12) ++rank;
  rank = std::max(rank, 1L);

  const long d = rho.dim();
  Vector v = Vector::Zero(d * rank);
  for (long j = 0; j < rank; ++j) {
    double c = std::sqrt(std::max(vals[j], 0.0));
    for (long i = 0; i < d; ++i) v[i * rank + j] = c * vecs(i, j);
  }
  std::vector<int> dims = rho.shape().dims;
  dims.push_back(static_cast<int>(rank));
  std::vector<std::string> labels = rho.shape().labels;
  labels.push_back(env_label);
  return PureState(std::move(v), SystemShape(std::move(dims), std::move(labels)));
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.shape() != sigma.shape())
    throw DimensionError("uhlmann_fidelity: states live on different shapes");
  Matrix s = psd_sqrt(rho.matrix());
  Matrix m = hermitize(s * sigma.matrix() * s);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    acc += std::sqrt(std::max(es.eigenvalues()[i], 0.0));
  double f = acc * acc;
  return std::clamp(f, 0.0, 1.0);
}

double mutual_information(const DensityMatrix& rho, const std::vector<std::string>& cut) {
  const auto& shape = rho.shape();
  if (cut.empty() || cut.size() >= shape.size())
    throw DimensionError("mutual_information: cut must be a nonempty proper subset");
  auto rest = shape.complement(cut);
  return vn_entropy(partial_trace(rho, cut)) + vn_entropy(partial_trace(rho, rest)) -
         vn_entropy(rho);
}

void hermitian_eigs(const Matrix& m, Eigen::VectorXd& values, Matrix& vectors) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
  const long n = m.rows();
  values.resize(n);
  vectors.resize(n, n);
  // Eigen sorts ascending; flip to descending and fix phases.
  for (long i = 0; i < n; ++i) {
    values[i] = es.eigenvalues()[n - 1 - i];
    Vector v = es.eigenvectors().col(n - 1 - i);
    fix_phase(v);
    vectors.col(i) = v;
  }
}

double spectrum_entropy(const Eigen::VectorXd& eigenvalues) {
  double h = 0.0;
  for (long i = 0; i < eigenvalues.size(); ++i) {
    double lam = eigenvalues[i];
    if (lam > kEntropyClip) h -= lam * std::log2(lam);
  }
  return h;
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::VectorXd vals;
  Matrix vecs;
  hermitian_eigs(m, vals, vecs);
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (long i = 0; i < vals.size(); ++i) {
    double lam = std::max(vals[i], 0.0);
    if (lam > 0.0) out += std::sqrt(lam) * vecs.col(i) * vecs.col(i).adjoint();
  }
  return out;
}

Matrix support_projector(const Matrix& m) {
  Eigen::VectorXd vals;
  Matrix vecs;
  hermitian_eigs(m, vals, vecs);
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (long i = 0; i < vals.size(); ++i)
    if (vals[i] > kRankCutoff) out += vecs.col(i) * vecs.col(i).adjoint();
  return out;
}

}  // namespace entcert
