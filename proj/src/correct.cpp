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

#include "entcert/correct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entcert {

const char* recovery_method_name(RecoveryMethod m) {
  switch (m) {
    case RecoveryMethod::SchmidtBlock:
      return "schmidt_block";
    case RecoveryMethod::Petz:
      return "petz";
    case RecoveryMethod::Optimized:
      return "optimized";
  }
  return "unknown";
}

namespace {

struct Roles {
  std::string ref_label;
  std::string target_label;
  int target_dim = 0;
};

Roles make_roles(const KrausChannel& channel, const PureState& input, int target_pos) {
  const auto& shape = input.shape();
  if (shape.size() != 2)
    throw DimensionError("input must be a pure state on exactly two subsystems");
  Roles r;
  r.target_label = shape.labels[static_cast<std::size_t>(target_pos)];
  r.ref_label = shape.labels[static_cast<std::size_t>(1 - target_pos)];
  r.target_dim = shape.dims[static_cast<std::size_t>(target_pos)];
  if (channel.in_dim != r.target_dim)
    throw DimensionError("channel input dimension " + std::to_string(channel.in_dim) +
                         " does not match subsystem '" + r.target_label + "' of dimension " +
                         std::to_string(r.target_dim));
  return r;
}

// Pure joint output on (reference, target', environment) obtained from the
// channel's dilation.
PureState tripartite_output(const KrausChannel& channel, const PureState& input,
                            int target_pos, const Roles& roles) {
  UnitaryDilation dil = dilate(channel);
  PureState ordered =
      (target_pos == 1) ? input
                        : permute_subsystems(input, {roles.ref_label, roles.target_label});

  const long dr = ordered.shape().dims[0];
  const long dt = ordered.shape().dims[1];
  const long k = dil.env_dim;
  Vector ext = Vector::Zero(dr * dt * k);
  for (long f = 0; f < dr * dt; ++f) ext[f * k + dil.env_init] = ordered.amplitudes()[f];

  // The (target, env) block is the trailing contiguous index pair, so the
  // lifted unitary is I_ref (x) U.
  Matrix lifted = kron(Matrix::Identity(dr, dr), dil.joint_unitary);
  Vector out = lifted * ext;

  std::string env_label = fresh_label(ordered.shape(), "E");
  SystemShape shape({static_cast<int>(dr), static_cast<int>(dt), static_cast<int>(k)},
                    {roles.ref_label, roles.target_label, env_label});
  return PureState(std::move(out), std::move(shape));
}

double kl_residual(const KrausChannel& channel, const Matrix& rho_target) {
  Matrix p = support_projector(rho_target);
  double rank = std::max(p.trace().real(), 1.0);
  double worst = 0.0;
  const auto& ops = channel.operators;
  for (const auto& aj : ops)
    for (const auto& ak : ops) {
      Matrix m = p * aj.adjoint() * ak * p;
      Complex lam = m.trace() / rank;
      worst = std::max(worst, (m - lam * p).cwiseAbs().maxCoeff());
    }
  return worst;
}

Certificate certify_impl(const KrausChannel& channel, const PureState& input, int target_pos,
                         double tol, const CertifyOptions& opts) {
  if (tol <= 0.0) throw InvariantError("certify: tolerance must be positive");
  Roles roles = make_roles(channel, input, target_pos);
  PureState out = tripartite_output(channel, input, target_pos, roles);
  DensityMatrix out_proj = projector(out);

  DensityMatrix rho_joint = partial_trace(out_proj, {roles.ref_label, roles.target_label});
  DensityMatrix rho_target_in = partial_trace(projector(input), {roles.target_label});

  Certificate cert;
  cert.tolerance = tol;
  cert.s_q = vn_entropy(rho_target_in);
  cert.coherent_info =
      vn_entropy(partial_trace(out_proj, {roles.target_label})) - vn_entropy(rho_joint);
  cert.re_mutual_info = mutual_information(
      partial_trace(out_proj, {roles.ref_label, out.shape().labels[2]}), {roles.ref_label});
  cert.kl_residual = kl_residual(channel, rho_target_in.matrix());
  cert.correctable = (cert.s_q - cert.coherent_info) < tol;

  if (opts.compute_eof) {
    MeasureResult eof = eof_mixed(rho_joint, {roles.ref_label}, opts.optimizer);
    cert.eof_value = eof.value;
    cert.eof_converged = eof.converged;
  } else {
    cert.eof_value = std::numeric_limits<double>::quiet_NaN();
    cert.eof_converged = false;
  }
  return cert;
}

RecoveryMap synthesize_impl(const KrausChannel& channel, const PureState& input,
                            int target_pos) {
  Roles roles = make_roles(channel, input, target_pos);
  PureState ordered =
      (target_pos == 1) ? input
                        : permute_subsystems(input, {roles.ref_label, roles.target_label});
  // Schmidt pairing |r_i> <-> |q_i0> of the original input; the same |r_i>
  // are reused below (valid because the reference marginal is untouched).
  SchmidtDecomposition sd = schmidt(ordered, {roles.ref_label});

  PureState out = tripartite_output(channel, input, target_pos, roles);
  const auto& out_shape = out.shape();
  const std::string env_label = out_shape.labels[2];
  const long dr = out_shape.dims[0];
  const long dt = out_shape.dims[1];
  const long k = out_shape.dims[2];

  Matrix sigma_env = partial_trace_matrix(
      out.amplitudes() * out.amplitudes().adjoint(), out_shape, {env_label});
  Eigen::VectorXd s_vals;
  Matrix s_vecs;
  hermitian_eigs(sigma_env, s_vals, s_vecs);

  std::vector<int> kept_i;
  for (int i = 0; i < static_cast<int>(sd.rank()); ++i)
    if (sd.coefficients[i] * sd.coefficients[i] > kRankCutoff) kept_i.push_back(i);
  std::vector<int> kept_j;
  for (int j = 0; j < k; ++j)
    if (s_vals[j] > kRankCutoff) kept_j.push_back(j);

  // q_ij = (<r_i| (x) I (x) <e_j|) |Psi'> / sqrt(r_i s_j)
  std::vector<std::vector<Vector>> q(kept_i.size(), std::vector<Vector>(kept_j.size()));
  for (std::size_t a = 0; a < kept_i.size(); ++a) {
    const Vector& ri = sd.left_basis[static_cast<std::size_t>(kept_i[a])];
    const double rv = sd.coefficients[kept_i[a]] * sd.coefficients[kept_i[a]];
    for (std::size_t b = 0; b < kept_j.size(); ++b) {
      const Vector ej = s_vecs.col(kept_j[b]);
      const double sv = s_vals[kept_j[b]];
      Vector v = Vector::Zero(dt);
      for (long rr = 0; rr < dr; ++rr) {
        Complex cr = std::conj(ri[rr]);
        if (std::norm(cr) < 1e-32) continue;
        for (long e = 0; e < k; ++e) {
          Complex ce = std::conj(ej[e]);
          for (long t = 0; t < dt; ++t) v[t] += cr * ce * out.amplitudes()[(rr * dt + t) * k + e];
        }
      }
      q[a][b] = v / std::sqrt(rv * sv);
    }
  }

  // The product structure holds exactly when these are orthonormal.
  double worst = 0.0;
  for (std::size_t a = 0; a < kept_i.size(); ++a)
    for (std::size_t b = 0; b < kept_j.size(); ++b)
      for (std::size_t a2 = 0; a2 < kept_i.size(); ++a2)
        for (std::size_t b2 = 0; b2 < kept_j.size(); ++b2) {
          Complex g = q[a][b].dot(q[a2][b2]);
          double expect = (a == a2 && b == b2) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(g - Complex(expect, 0.0)));
        }
  if (worst > kOrthonormalityTol)
    throw NotCorrectableError("recovery blocks deviate from orthonormal by " +
                              std::to_string(worst));

  std::vector<Matrix> ops;
  Matrix coverage = Matrix::Zero(dt, dt);
  for (std::size_t b = 0; b < kept_j.size(); ++b) {
    Matrix d = Matrix::Zero(dt, dt);
    for (std::size_t a = 0; a < kept_i.size(); ++a) {
      const Vector& q0 = sd.right_basis[static_cast<std::size_t>(kept_i[a])];
      d += q0 * q[a][b].adjoint();
      coverage += q[a][b] * q[a][b].adjoint();
    }
    ops.push_back(std::move(d));
  }

  // One completing block on the uncovered subspace keeps the map
  // trace-preserving; its action never matters on the channel's output.
  Matrix rest = Matrix::Identity(dt, dt) - coverage;
  Eigen::VectorXd r_vals;
  Matrix r_vecs;
  hermitian_eigs(rest, r_vals, r_vecs);
  Matrix completion = Matrix::Zero(dt, dt);
  long filled = 0;
  for (long i = 0; i < r_vals.size(); ++i)
    if (r_vals[i] > 0.5) {
      Vector image = Vector::Zero(dt);
      image[filled++] = 1.0;
      completion += image * r_vecs.col(i).adjoint();
    }
  if (filled > 0) ops.push_back(std::move(completion));

  KrausChannel recovery(std::move(ops));
  validate(recovery);
  return RecoveryMap{std::move(recovery), RecoveryMethod::SchmidtBlock};
}

}  // namespace

DensityMatrix re_output(const KrausChannel& channel, const PureState& input) {
  Roles roles = make_roles(channel, input, 1);
  PureState out = tripartite_output(channel, input, 1, roles);
  return partial_trace(projector(out), {roles.ref_label, out.shape().labels[2]});
}

Certificate certify(const KrausChannel& channel, const PureState& input, double tol,
                    const CertifyOptions& opts) {
  return certify_impl(channel, input, 1, tol, opts);
}

RecoveryMap synthesize_recovery(const KrausChannel& channel, const PureState& input) {
  return synthesize_impl(channel, input, 1);
}

RecoveryMap petz_recovery(const KrausChannel& channel, const DensityMatrix& rho_q) {
  if (rho_q.dim() != channel.in_dim)
    throw DimensionError("petz_recovery: state dimension mismatch");
  DensityMatrix sigma = apply(channel, rho_q);

  Eigen::VectorXd vals;
  Matrix vecs;
  hermitian_eigs(sigma.matrix(), vals, vecs);
  Matrix sigma_inv_sqrt = Matrix::Zero(sigma.dim(), sigma.dim());
  for (long i = 0; i < vals.size(); ++i)
    if (vals[i] > kRankCutoff)
      sigma_inv_sqrt += (1.0 / std::sqrt(vals[i])) * vecs.col(i) * vecs.col(i).adjoint();

  Matrix rho_sqrt = psd_sqrt(rho_q.matrix());
  std::vector<Matrix> ops;
  for (const auto& a : channel.operators) ops.push_back(rho_sqrt * a.adjoint() * sigma_inv_sqrt);

  // Complete on the kernel of sigma, one term per kernel direction.
  Matrix covered = Matrix::Zero(sigma.dim(), sigma.dim());
  for (const auto& d : ops) covered += d.adjoint() * d;
  Matrix rest = Matrix::Identity(sigma.dim(), sigma.dim()) - covered;
  Eigen::VectorXd r_vals;
  Matrix r_vecs;
  hermitian_eigs(rest, r_vals, r_vecs);
  for (long i = 0; i < r_vals.size(); ++i)
    if (r_vals[i] > 0.5) {
      Vector image = Vector::Zero(channel.in_dim);
      image[static_cast<long>(i) % channel.in_dim] = 1.0;
      ops.push_back(image * r_vecs.col(i).adjoint());
    }

  KrausChannel recovery(std::move(ops));
  validate(recovery);
  return RecoveryMap{std::move(recovery), RecoveryMethod::Petz};
}

double verify_recovery(const KrausChannel& channel, const RecoveryMap& recovery,
                       const PureState& input) {
  Roles roles = make_roles(channel, input, 1);
  DensityMatrix original = projector(input);
  DensityMatrix noisy = apply_extended(channel, original, roles.target_label);
  DensityMatrix restored = apply_extended(recovery.channel, noisy, roles.target_label);
  return uhlmann_fidelity(original, restored);
}

namespace {

// Best-recovery refinement: recoveries parametrized by their Stinespring
// unitary U in U(dt * ne); D_e(a,b) = U(a*ne+e, b*ne). The entanglement
// fidelity is sum_{e,m} mu_m |<Psi|(I (x) D_e)|m>|^2 for the spectral
// decomposition of the channel output.
RecoveryMap optimized_recovery(const KrausChannel& channel, const PureState& input,
                               const Roles& roles, const OptimizerConfig& cfg) {
  const long dt = roles.target_dim;
  const long ne = dt * dt;
  const long du = dt * ne;

  DensityMatrix noisy = apply_extended(channel, projector(input), roles.target_label);
  Eigen::VectorXd mu;
  Matrix mvecs;
  hermitian_eigs(noisy.matrix(), mu, mvecs);

  PureState ordered = (input.shape().labels[1] == roles.target_label)
                          ? input
                          : permute_subsystems(input, {roles.ref_label, roles.target_label});
  const long dr = ordered.shape().dims[0];

  // (T_m)_{ab} = sum_r conj(Psi[(r,a)]) m[(r,b)]
  std::vector<Matrix> t;
  for (long m = 0; m < mu.size(); ++m) {
    if (mu[m] < 1e-14) continue;
    Matrix tm = Matrix::Zero(dt, dt);
    for (long a = 0; a < dt; ++a)
      for (long b = 0; b < dt; ++b) {
        Complex acc(0.0, 0.0);
        for (long r = 0; r < dr; ++r)
          acc += std::conj(ordered.amplitudes()[r * dt + a]) * mvecs(r * dt + b, m);
        tm(a, b) = acc;
      }
    t.push_back(std::sqrt(mu[m]) * tm);  // fold the weight into T
  }

  auto objective = [&](const Matrix& u, Matrix* grad) -> double {
    double f = 0.0;
    if (grad) grad->setZero(du, du);
    for (long e = 0; e < ne; ++e) {
      Matrix d(dt, dt);
      for (long a = 0; a < dt; ++a)
        for (long b = 0; b < dt; ++b) d(a, b) = u(a * ne + e, b * ne);
      for (const auto& tm : t) {
        Complex c = (d.array() * tm.array()).sum();
        f += std::norm(c);
        if (grad) {
          for (long a = 0; a < dt; ++a)
            for (long b = 0; b < dt; ++b)
              (*grad)(a * ne + e, b * ne) -= c * std::conj(tm(a, b));
        }
      }
    }
    return -f;
  };

  std::vector<Matrix> warm = {Matrix::Identity(du, du)};
  UnitaryMinimum opt = minimize_over_unitaries(static_cast<int>(du), objective, warm, cfg);

  // Re-orthonormalize before reading the Kraus blocks out of U.
  Eigen::HouseholderQR<Matrix> qr(opt.minimizer);
  Matrix uu = qr.householderQ();
  Matrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long i = 0; i < du; ++i) {
    Complex dd = rr(i, i);
    double mag = std::abs(dd);
    uu.col(i) *= (mag > 0.0) ? dd / mag : Complex(1.0, 0.0);
  }

  std::vector<Matrix> ops;
  for (long e = 0; e < ne; ++e) {
    Matrix d(dt, dt);
    for (long a = 0; a < dt; ++a)
      for (long b = 0; b < dt; ++b) d(a, b) = uu(a * ne + e, b * ne);
    if (d.norm() >= kZeroKrausNorm) ops.push_back(std::move(d));
  }
  KrausChannel recovery(std::move(ops));
  validate(recovery);
  return RecoveryMap{std::move(recovery), RecoveryMethod::Optimized};
}

}  // namespace

ApproxReport approx_report(const KrausChannel& channel, const PureState& input,
                           const OptimizerConfig& cfg) {
  Roles roles = make_roles(channel, input, 1);
  CertifyOptions lite;
  lite.compute_eof = false;
  Certificate cert = certify_impl(channel, input, 1, kDefaultCertifyTol, lite);

  ApproxReport report;
  report.epsilon = cert.s_q - cert.coherent_info;
  report.paper_bound = std::max(0.0, 1.0 - 2.0 * std::sqrt(std::max(report.epsilon, 0.0)));

  DensityMatrix rho_q = partial_trace(projector(input), {roles.target_label});
  RecoveryMap petz = petz_recovery(channel, rho_q);
  report.achieved_fidelity = verify_recovery(channel, petz, input);
  report.method = RecoveryMethod::Petz;

  try {
    RecoveryMap sb = synthesize_impl(channel, input, 1);
    double f = verify_recovery(channel, sb, input);
    if (f > report.achieved_fidelity) {
      report.achieved_fidelity = f;
      report.method = RecoveryMethod::SchmidtBlock;
    }
  } catch (const NotCorrectableError&) {
  }

  if (roles.target_dim <= 4) {
    RecoveryMap refined = optimized_recovery(channel, input, roles, cfg);
    double f = verify_recovery(channel, refined, input);
    if (f > report.achieved_fidelity) {
      report.achieved_fidelity = f;
      report.method = RecoveryMethod::Optimized;
    }
  }
  return report;
}

Certificate certify_local(const KrausChannel& channel_r, const KrausChannel& channel_q,
                          const PureState& input, double tol, const CertifyOptions& opts) {
  CertifyOptions lite;
  lite.compute_eof = false;
  Certificate stage_q = certify_impl(channel_q, input, 1, tol, lite);
  Certificate stage_r = certify_impl(channel_r, input, 0, tol, lite);
  double gap_q = stage_q.s_q - stage_q.coherent_info;
  double gap_r = stage_r.s_q - stage_r.coherent_info;

  Certificate cert;
  cert.tolerance = tol;
  cert.s_q = stage_q.s_q;
  cert.coherent_info = cert.s_q - (gap_q + gap_r);
  cert.re_mutual_info = std::max(stage_q.re_mutual_info, stage_r.re_mutual_info);
  cert.kl_residual = std::max(stage_q.kl_residual, stage_r.kl_residual);
  cert.correctable = (gap_q + gap_r) < tol;

  if (opts.compute_eof) {
    const auto& labels = input.shape().labels;
    DensityMatrix step = apply_extended(channel_r, projector(input), labels[0]);
    DensityMatrix out = apply_extended(channel_q, step, labels[1]);
    MeasureResult eof = eof_mixed(out, {labels[0]}, opts.optimizer);
    cert.eof_value = eof.value;
    cert.eof_converged = eof.converged;
  } else {
    cert.eof_value = std::numeric_limits<double>::quiet_NaN();
    cert.eof_converged = false;
  }
  return cert;
}

std::pair<RecoveryMap, RecoveryMap> recover_local(const KrausChannel& channel_r,
                                                  const KrausChannel& channel_q,
                                                  const PureState& input, double tol) {
  CertifyOptions lite;
  lite.compute_eof = false;
  Certificate cert = certify_local(channel_r, channel_q, input, tol, lite);
  if (!cert.correctable)
    throw NotCorrectableError("recover_local: the two-sided instance is not correctable");

  RecoveryMap d_q = synthesize_impl(channel_q, input, 1);
  RecoveryMap d_r = synthesize_impl(channel_r, input, 0);

  const auto& labels = input.shape().labels;
  DensityMatrix original = projector(input);
  DensityMatrix s1 = apply_extended(channel_r, original, labels[0]);
  DensityMatrix s2 = apply_extended(channel_q, s1, labels[1]);
  DensityMatrix s3 = apply_extended(d_r.channel, s2, labels[0]);
  DensityMatrix s4 = apply_extended(d_q.channel, s3, labels[1]);
  double f = uhlmann_fidelity(original, s4);
  if (f < 1.0 - 1e-8)
    throw NotCorrectableError("recover_local: composed recovery fidelity " + std::to_string(f));
  return {std::move(d_r), std::move(d_q)};
}

}  // namespace entcert
