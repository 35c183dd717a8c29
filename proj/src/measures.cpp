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

#include "entcert/measures.hpp"

#include <algorithm>
#include <cmath>

namespace entcert {

namespace {

constexpr double kLogClip = 1e-15;  // gradient-side floor inside log2
constexpr double kLn2Inv = 1.4426950408889634;

double log2_clipped(double x) { return std::log2(std::max(x, kLogClip)); }

std::vector<Matrix> trimmed_ops(const KrausChannel& ch) {
  std::vector<Matrix> ops;
  for (const auto& a : ch.operators)
    if (a.norm() >= kZeroKrausNorm) ops.push_back(a);
  if (ops.empty()) throw InvariantError("channel has only zero operators");
  return ops;
}

// Average ensemble entropy as a function of a unitary U whose first
// `active` columns mix the fixed operator block W:
//   rt_k = sum_{i,i'} U_ki conj(U_ki') W_ii',    k = 0..m-1
//   f(U) = sum_k [ -Tr rt_k log2 rt_k + p_k log2 p_k ],   p_k = Tr rt_k.
// The Wirtinger gradient follows from d(-Tr r log r + p log p)
// = Tr[(log2(p) - log2 r) dr].
class EnsembleEntropyObjective {
 public:
  EnsembleEntropyObjective(std::vector<Matrix> w, int active)
      : w_(std::move(w)), active_(active), da_(static_cast<int>(w_.front().rows())) {}

  double operator()(const Matrix& u, Matrix* grad) const {
    const long m = u.rows();
    const long r = active_;
    double total = 0.0;
    if (grad) grad->setZero(m, m);

    for (long k = 0; k < m; ++k) {
      Matrix rt = Matrix::Zero(da_, da_);
      for (long i = 0; i < r; ++i) {
        Complex uki = u(k, i);
        if (std::norm(uki) < 1e-32) continue;
        for (long i2 = 0; i2 < r; ++i2)
          rt += (uki * std::conj(u(k, i2))) * w_[static_cast<std::size_t>(i * r + i2)];
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rt));
      const auto& lam = es.eigenvalues();
      double p = 0.0;
      for (long a = 0; a < lam.size(); ++a) p += std::max(lam[a], 0.0);
      if (p < kEnsembleWeightCut) continue;

      double h = p * std::log2(p);
      for (long a = 0; a < lam.size(); ++a) {
        double l = lam[a];
        if (l > kEntropyClip) h -= l * std::log2(l);
      }
      // each element contributes p_k S(rho_k) >= 0; keep roundoff from
      // reporting an impossible below-minimum bound
      total += std::max(h, 0.0);

      if (grad) {
        const double lp = std::log2(p);
        Matrix x = Matrix::Zero(da_, da_);
        for (long a = 0; a < lam.size(); ++a)
          x += (lp - log2_clipped(lam[a])) * es.eigenvectors().col(a) *
               es.eigenvectors().col(a).adjoint();
        // G(k, i') = sum_i U_ki Tr[X W_ii']
        for (long i2 = 0; i2 < r; ++i2) {
          Complex acc(0.0, 0.0);
          for (long i = 0; i < r; ++i) {
            Complex uki = u(k, i);
            if (std::norm(uki) < 1e-32) continue;
            acc += uki * (x * w_[static_cast<std::size_t>(i * r + i2)]).trace();
          }
          (*grad)(k, i2) = acc;
        }
      }
    }
    return total;
  }

 private:
  std::vector<Matrix> w_;
  long active_;
  int da_;
};

// Shannon entropy of the diagonal of V M V^dag for a fixed PSD M.
class DiagonalEntropyObjective {
 public:
  explicit DiagonalEntropyObjective(Matrix m) : m_(std::move(m)) {}

  double operator()(const Matrix& v, Matrix* grad) const {
    const long k = v.rows();
    Matrix vm = v * m_;
    double h = 0.0;
    if (grad) grad->setZero(k, k);
    for (long i = 0; i < k; ++i) {
      // p_i = (V M V^dag)_ii = sum_j (VM)_ij conj(V_ij)
      double p = std::real((vm.row(i).array() * v.row(i).conjugate().array()).sum());
      if (p > kEntropyClip) h -= p * std::log2(p);
      if (grad) {
        double dfdp = -(log2_clipped(p) + kLn2Inv);
        grad->row(i) = dfdp * vm.row(i);
      }
    }
    return h;
  }

 private:
  Matrix m_;
};

// Environment Gram matrix M_kl = Tr[A_k rho A_l^dag]; equals the output
// state of the complementary channel.
Matrix env_gram(const std::vector<Matrix>& ops, const Matrix& rho) {
  const long k = static_cast<long>(ops.size());
  Matrix m(k, k);
  for (long a = 0; a < k; ++a)
    for (long b = 0; b < k; ++b)
      m(a, b) = (ops[static_cast<std::size_t>(a)] * rho *
                 ops[static_cast<std::size_t>(b)].adjoint())
                    .trace();
  return hermitize(m);
}

void check_bipartite_cut(const SystemShape& shape, const std::vector<std::string>& cut,
                         const char* who) {
  if (cut.empty() || cut.size() >= shape.size())
    throw DimensionError(std::string(who) + ": cut must be a nonempty proper subset");
  shape.positions_of(cut);  // throws on unknown labels
}

}  // namespace

Povm::Povm(std::vector<Matrix> elements_) : elements(std::move(elements_)) {
  if (elements.empty()) throw InvariantError("Povm: no elements");
  const long d = elements.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : elements) {
    if (e.rows() != d || e.cols() != d)
      throw InvariantError("Povm: elements differ in dimension");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(e), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw InvariantError("Povm: element has negative eigenvalue " +
                           std::to_string(es.eigenvalues().minCoeff()));
    sum += e;
  }
  double dev = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > 1e-9)
    throw InvariantError("Povm: elements sum deviates from identity by " + std::to_string(dev));
}

double coherent_information(const KrausChannel& channel, const DensityMatrix& rho_q) {
  if (rho_q.dim() != channel.in_dim)
    throw DimensionError("coherent_information: state dimension mismatch");
  DensityMatrix flat(rho_q.matrix(), SystemShape({rho_q.dim()}, {"Q"}));
  PureState purification = purify(flat, "R");  // shape (Q, R)
  DensityMatrix out = apply_extended(channel, projector(purification), "Q");
  double s_q_out = vn_entropy(partial_trace(out, {"Q"}));
  return s_q_out - vn_entropy(out);
}

MeasureResult coherent_information_intrinsic(const KrausChannel& channel,
                                             const DensityMatrix& rho_q,
                                             const OptimizerConfig& cfg) {
  if (rho_q.dim() != channel.in_dim)
    throw DimensionError("coherent_information_intrinsic: state dimension mismatch");
  auto ops = trimmed_ops(channel);
  KrausChannel trimmed(ops);
  double s_q_out = vn_entropy(apply(channel, rho_q));

  MeasureResult res;
  const int k = static_cast<int>(ops.size());
  res.ensemble_cap = k;
  if (k == 1) {
    res.value = s_q_out;
    res.mixing_unitary = Matrix::Identity(1, 1);
    res.ensemble = output_ensemble(trimmed, rho_q);
    res.restarts_used = 0;
    res.converged = true;
    return res;
  }

  Matrix m = env_gram(ops, rho_q.matrix());
  DiagonalEntropyObjective objective(m);

  // The minimum of H(diag(V M V^dag)) is S(M), reached when V diagonalizes
  // M; seed the search there.
  Eigen::VectorXd vals;
  Matrix vecs;
  hermitian_eigs(m, vals, vecs);
  std::vector<Matrix> warm = {vecs.adjoint(), Matrix::Identity(k, k)};

  UnitaryMinimum opt = minimize_over_unitaries(
      k, [&](const Matrix& v, Matrix* g) { return objective(v, g); }, warm, cfg);

  res.value = s_q_out - opt.value;
  res.mixing_unitary = opt.minimizer;
  res.ensemble = output_ensemble(mix_representation(trimmed, opt.minimizer), rho_q);
  res.restarts_used = opt.restarts_used;
  res.converged = opt.converged;
  return res;
}

double eof_pure(const PureState& psi, const std::vector<std::string>& cut) {
  check_bipartite_cut(psi.shape(), cut, "eof_pure");
  return vn_entropy(partial_trace(projector(psi), cut));
}

MeasureResult eof_mixed(const DensityMatrix& rho, const std::vector<std::string>& cut,
                        const OptimizerConfig& cfg) {
  check_bipartite_cut(rho.shape(), cut, "eof_mixed");

  Eigen::VectorXd vals;
  Matrix vecs;
  hermitian_eigs(rho.matrix(), vals, vecs);
  int r = 0;
  for (long i = 0; i < vals.size(); ++i)
    if (vals[i] > 1e-12) ++r;
  r = std::max(r, 1);

  MeasureResult res;
  if (r == 1) {
    PureState psi(vecs.col(0), rho.shape());
    res.value = eof_pure(psi, cut);
    res.mixing_unitary = Matrix::Identity(1, 1);
    res.ensemble.weights = {1.0};
    res.ensemble.states = {projector(psi)};
    res.restarts_used = 0;
    res.converged = true;
    res.ensemble_cap = 1;
    return res;
  }

  // Eigen-purification vectors |w_i> = sqrt(l_i)|v_i>; any size-m ensemble
  // of rho is |phi_k> = sum_i U_ki |w_i> for an isometric first-r column
  // block of U in U(m), m capped at r^2.
  const int m = r * r;
  std::vector<Vector> w(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) w[static_cast<std::size_t>(i)] = std::sqrt(vals[i]) * vecs.col(i);

  std::vector<Matrix> w_pairs;
  w_pairs.reserve(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int i2 = 0; i2 < r; ++i2)
      w_pairs.push_back(partial_trace_matrix(
          w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i2)].adjoint(),
          rho.shape(), cut));

  EnsembleEntropyObjective objective(std::move(w_pairs), r);
  std::vector<Matrix> warm = {Matrix::Identity(m, m)};
  UnitaryMinimum opt = minimize_over_unitaries(
      m, [&](const Matrix& u, Matrix* g) { return objective(u, g); }, warm, cfg);

  res.value = opt.value;
  res.mixing_unitary = opt.minimizer;
  res.restarts_used = opt.restarts_used;
  res.converged = opt.converged;
  res.ensemble_cap = m;
  for (int k = 0; k < m; ++k) {
    Vector phi = Vector::Zero(rho.dim());
    for (int i = 0; i < r; ++i) phi += opt.minimizer(k, i) * w[static_cast<std::size_t>(i)];
    double p = phi.squaredNorm();
    if (p < kEnsembleWeightCut) continue;
    res.ensemble.weights.push_back(p);
    res.ensemble.states.emplace_back((phi * phi.adjoint()) / p, rho.shape());
  }
  return res;
}

MeasureResult eof_intrinsic(const KrausChannel& channel, const DensityMatrix& rho_q,
                            const OptimizerConfig& cfg) {
  if (rho_q.dim() != channel.in_dim)
    throw DimensionError("eof_intrinsic: state dimension mismatch");
  auto ops = trimmed_ops(channel);
  KrausChannel trimmed(ops);
  const int k = static_cast<int>(ops.size());

  Matrix gram = env_gram(ops, rho_q.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  int r_env = 0;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > 1e-12) ++r_env;
  r_env = std::max(r_env, 1);
  const int m = std::max(k, r_env * r_env);

  MeasureResult res;
  res.ensemble_cap = m;
  if (m == 1) {
    res.value = vn_entropy(apply(trimmed, rho_q));
    res.mixing_unitary = Matrix::Identity(1, 1);
    res.ensemble = output_ensemble(trimmed, rho_q);
    res.restarts_used = 0;
    res.converged = true;
    return res;
  }

  std::vector<Matrix> w_pairs;
  w_pairs.reserve(static_cast<std::size_t>(m) * m);
  const Matrix zero = Matrix::Zero(channel.out_dim, channel.out_dim);
  for (int l = 0; l < m; ++l)
    for (int l2 = 0; l2 < m; ++l2) {
      if (l < k && l2 < k)
        w_pairs.push_back(ops[static_cast<std::size_t>(l)] * rho_q.matrix() *
                          ops[static_cast<std::size_t>(l2)].adjoint());
      else
        w_pairs.push_back(zero);
    }

  EnsembleEntropyObjective objective(std::move(w_pairs), m);
  std::vector<Matrix> warm = {Matrix::Identity(m, m)};
  UnitaryMinimum opt = minimize_over_unitaries(
      m, [&](const Matrix& u, Matrix* g) { return objective(u, g); }, warm, cfg);

  res.value = opt.value;
  res.mixing_unitary = opt.minimizer;
  res.ensemble = output_ensemble(mix_representation(trimmed, opt.minimizer), rho_q);
  res.restarts_used = opt.restarts_used;
  res.converged = opt.converged;
  return res;
}

double concurrence_2q(const DensityMatrix& rho) {
  const auto& shape = rho.shape();
  if (shape.size() != 2 || shape.dims[0] != 2 || shape.dims[1] != 2)
    throw DimensionError("concurrence_2q: state is not a two-qubit system");
  Matrix yy(4, 4);
  yy.setZero();
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  Matrix flipped = yy * rho.matrix().conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> es(rho.matrix() * flipped);
  std::vector<double> roots;
  for (long i = 0; i < 4; ++i)
    roots.push_back(std::sqrt(std::max(es.eigenvalues()[i].real(), 0.0)));
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double concurrence_eof_2q(const DensityMatrix& rho) {
  double c = concurrence_2q(rho);
  double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  double h = 0.0;
  if (x > kEntropyClip && x < 1.0 - kEntropyClip)
    h = -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
  return h;
}

Ensemble hjw_ensemble(const PureState& purification, const std::string& ancilla,
                      const Povm& povm) {
  const auto& shape = purification.shape();
  const int pos = shape.index_of(ancilla);
  if (shape.dims[static_cast<std::size_t>(pos)] != povm.dim())
    throw DimensionError("hjw_ensemble: POVM does not fit the ancilla dimension");
  auto keep = shape.complement({ancilla});
  if (keep.empty()) throw DimensionError("hjw_ensemble: nothing left after the ancilla");

  Matrix psi_proj = purification.amplitudes() * purification.amplitudes().adjoint();
  Ensemble e;
  for (const auto& elem : povm.elements) {
    Matrix lifted = embed_at(elem, shape, ancilla);
    double p = std::real((lifted * psi_proj).trace());
    if (p < -1e-12)
      throw InvariantError("hjw_ensemble: outcome probability " + std::to_string(p));
    if (p < kEnsembleWeightCut) continue;
    Matrix rel = partial_trace_matrix(lifted * psi_proj, shape, keep) / p;
    e.weights.push_back(p);
    e.states.emplace_back(hermitize(rel), shape.keep(keep));
  }
  double total = 0.0;
  for (double w : e.weights) total += w;
  for (double& w : e.weights) w /= total;
  return e;
}

Povm hjw_measurement(const PureState& purification, const std::string& ancilla,
                     const Ensemble& target) {
  const auto& shape = purification.shape();
  const int anc_dim = shape.dims[static_cast<std::size_t>(shape.index_of(ancilla))];
  auto a_labels = shape.complement({ancilla});
  if (a_labels.empty()) throw DimensionError("hjw_measurement: nothing left after the ancilla");

  DensityMatrix marginal = partial_trace(projector(purification), a_labels);
  DensityMatrix avg = ensemble_average(target);
  if (avg.dim() != marginal.dim())
    throw DimensionError("hjw_measurement: target states have the wrong dimension");
  double dev = (avg.matrix() - marginal.matrix()).cwiseAbs().maxCoeff();
  if (dev > 1e-9)
    throw InfeasibleEnsembleError(
        "hjw_measurement: target averages away from the marginal by " + std::to_string(dev));

  // Pure target vectors.
  std::vector<Vector> t;
  for (const auto& s : target.states) {
    Eigen::VectorXd vals;
    Matrix vecs;
    hermitian_eigs(s.matrix(), vals, vecs);
    if (1.0 - vals[0] > 1e-8)
      throw InvariantError("hjw_measurement: target states must be pure");
    t.push_back(vecs.col(0));
  }

  SchmidtDecomposition sd = schmidt(purification, a_labels);
  const int r = static_cast<int>(sd.rank());

  std::vector<Matrix> elements;
  Matrix sum = Matrix::Zero(anc_dim, anc_dim);
  for (std::size_t k = 0; k < t.size(); ++k) {
    Vector beta = Vector::Zero(anc_dim);
    const double q = target.weights[k];
    for (int i = 0; i < r; ++i) {
      Complex c = std::sqrt(q) * sd.left_basis[static_cast<std::size_t>(i)].dot(t[k]) /
                  sd.coefficients[i];
      beta += std::conj(c) * sd.right_basis[static_cast<std::size_t>(i)];
    }
    Matrix elem = beta * beta.adjoint();
    sum += elem;
    elements.push_back(std::move(elem));
  }

  // Complete on whatever the purification's ancilla support leaves over.
  Matrix rest = Matrix::Identity(anc_dim, anc_dim) - sum;
  Eigen::VectorXd vals;
  Matrix vecs;
  hermitian_eigs(rest, vals, vecs);
  if (vals.minCoeff() < -1e-9)
    throw InfeasibleEnsembleError("hjw_measurement: completion is not positive");
  if (vals.maxCoeff() > 1e-12) {
    Matrix completion = Matrix::Zero(anc_dim, anc_dim);
    for (long i = 0; i < vals.size(); ++i)
      if (vals[i] > 0.0) completion += vals[i] * vecs.col(i) * vecs.col(i).adjoint();
    elements.push_back(std::move(completion));
  }
  return Povm(std::move(elements));
}

}  // namespace entcert
