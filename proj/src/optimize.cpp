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

#include "entcert/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entcert/random.hpp"

namespace entcert {

Matrix expm_antihermitian(const Matrix& s) {
  // s = i h with h Hermitian; exp(s) = V diag(exp(i lambda)) V^dag.
  Matrix h = Complex(0.0, -1.0) * s;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h));
  const auto& lam = es.eigenvalues();
  Vector phases(lam.size());
  for (long i = 0; i < lam.size(); ++i)
    phases[i] = std::exp(Complex(0.0, lam[i]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Re-orthonormalize a drifting unitary (QR with positive diagonal gauge).
Matrix polish_unitary(const Matrix& u) {
  Eigen::HouseholderQR<Matrix> qr(u);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long i = 0; i < u.cols(); ++i) {
    Complex d = r(i, i);
    double mag = std::abs(d);
    q.col(i) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

struct RunResult {
  double value;
  Matrix point;
};

RunResult run_descent(const Matrix& start, const UnitaryObjective& objective,
                      const OptimizerConfig& cfg) {
  Matrix u = start;
  Matrix grad(u.rows(), u.cols());
  double f = objective(u, &grad);
  double best = f;
  double step = 0.25;
  int stall = 0;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    Matrix omega = grad * u.adjoint() - u * grad.adjoint();
    double gn = omega.norm();
    if (gn < 1e-13) break;

    // Diagonalize i*omega once; each trial step is then just a rescaling
    // of the phases exp(-i step lambda).
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(Complex(0.0, 1.0) * omega));
    const auto& lam = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    auto retract = [&](double eta) -> Matrix {
      Vector phases(lam.size());
      for (long i = 0; i < lam.size(); ++i) phases[i] = std::exp(Complex(0.0, eta * lam[i]));
      return v * phases.asDiagonal() * v.adjoint() * u;
    };

    bool accepted = false;
    Matrix u_try;
    for (int half = 0; half < 40; ++half) {
      u_try = retract(step);
      double f_try = objective(u_try, nullptr);
      if (f_try < f) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    u = std::move(u_try);
    if ((iter + 1) % 64 == 0) u = polish_unitary(u);
    f = objective(u, &grad);
    step = std::min(step * 1.5, 2.0);

    if (f < best - cfg.improve_tol) {
      best = f;
      stall = 0;
    } else if (++stall >= cfg.stall_window) {
      break;
    }
  }
  return {std::min(f, best), std::move(u)};
}

}  // namespace

UnitaryMinimum minimize_over_unitaries(int dim, const UnitaryObjective& objective,
                                       const std::vector<Matrix>& warm_starts,
                                       const OptimizerConfig& cfg) {
  UnitaryMinimum out;
  if (dim <= 1) {
    out.minimizer = Matrix::Identity(std::max(dim, 1), std::max(dim, 1));
    out.value = objective(out.minimizer, nullptr);
    out.restarts_used = 1;
    out.converged = true;
    return out;
  }

  std::vector<Matrix> starts = warm_starts;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r) + 1));
    starts.push_back(haar_unitary(dim, rng));
  }
  if (starts.empty()) starts.push_back(Matrix::Identity(dim, dim));

  std::vector<double> finals;
  finals.reserve(starts.size());
  double best = std::numeric_limits<double>::infinity();
  Matrix best_u;
  for (const auto& s : starts) {
    RunResult r = run_descent(s, objective, cfg);
    finals.push_back(r.value);
    if (r.value < best) {
      best = r.value;
      best_u = std::move(r.point);
    }
  }

  int agree = 0;
  for (double v : finals)
    if (v <= best + cfg.agreement_tol) ++agree;

  out.value = best;
  out.minimizer = std::move(best_u);
  out.restarts_used = static_cast<int>(starts.size());
  out.converged = (finals.size() == 1) || (agree >= 2);
  return out;
}

}  // namespace entcert
