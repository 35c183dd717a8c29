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

#include "entcert/tomo.hpp"

#include <cmath>

namespace entcert {

double& Statistics::at(int sa, int sb, int oa, int ob) {
  return table[static_cast<std::size_t>(((sa * b_settings + sb) * a_outcomes + oa) * b_outcomes +
                                        ob)];
}

double Statistics::at(int sa, int sb, int oa, int ob) const {
  return table[static_cast<std::size_t>(((sa * b_settings + sb) * a_outcomes + oa) * b_outcomes +
                                        ob)];
}

namespace {

Matrix basis_projector(const Vector& v) { return v * v.adjoint(); }

// Eigenbases of the generalized Gell-Mann observables: for each pair j<k
// the (e_j +- e_k)/sqrt2 basis and the (e_j +- i e_k)/sqrt2 basis, plus the
// computational basis once (the diagonal observables share it).
std::vector<std::vector<Matrix>> gell_mann_settings(int d) {
  std::vector<std::vector<Matrix>> settings;
  const double inv = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      std::vector<Matrix> sym, anti;
      Vector plus = Vector::Zero(d), minus = Vector::Zero(d);
      plus[j] = inv;
      plus[k] = inv;
      minus[j] = inv;
      minus[k] = -inv;
      sym.push_back(basis_projector(plus));
      sym.push_back(basis_projector(minus));
      Vector iplus = Vector::Zero(d), iminus = Vector::Zero(d);
      iplus[j] = inv;
      iplus[k] = Complex(0.0, inv);
      iminus[j] = inv;
      iminus[k] = Complex(0.0, -inv);
      anti.push_back(basis_projector(iplus));
      anti.push_back(basis_projector(iminus));
      for (int l = 0; l < d; ++l) {
        if (l == j || l == k) continue;
        Vector e = Vector::Zero(d);
        e[l] = 1.0;
        sym.push_back(basis_projector(e));
        anti.push_back(basis_projector(e));
      }
      settings.push_back(std::move(sym));
      settings.push_back(std::move(anti));
    }
  std::vector<Matrix> computational;
  for (int l = 0; l < d; ++l) {
    Vector e = Vector::Zero(d);
    e[l] = 1.0;
    computational.push_back(basis_projector(e));
  }
  settings.push_back(std::move(computational));
  return settings;
}

// Row of the inversion system: Tr[F rho] as a linear functional of
// vec(rho) (column-major), i.e. row entries F(c, r).
void effect_row(Matrix& system, long row, const Matrix& f) {
  const long d = f.rows();
  for (long c = 0; c < d; ++c)
    for (long r = 0; r < d; ++r) system(row, r + c * d) = f(c, r);
}

}  // namespace

ProductMeasurementSet ic_product_set(int dim_a, int dim_b) {
  if (dim_a < 2 || dim_b < 2) throw DimensionError("ic_product_set: dimensions must be >= 2");
  ProductMeasurementSet ms;
  ms.dim_a = dim_a;
  ms.dim_b = dim_b;
  ms.a_settings = gell_mann_settings(dim_a);
  ms.b_settings = gell_mann_settings(dim_b);
  const int want = dim_a * dim_a * dim_b * dim_b;
  if (gram_rank(ms) != want)
    throw InvariantError("ic_product_set: product effects do not span the operator space");
  return ms;
}

int gram_rank(const ProductMeasurementSet& ms) {
  const long d = static_cast<long>(ms.dim_a) * ms.dim_b;
  long rows = 0;
  for (const auto& sa : ms.a_settings)
    for (const auto& sb : ms.b_settings) rows += static_cast<long>(sa.size() * sb.size());
  Matrix system(rows, d * d);
  long r = 0;
  for (const auto& sa : ms.a_settings)
    for (const auto& sb : ms.b_settings)
      for (const auto& ma : sa)
        for (const auto& mb : sb) effect_row(system, r++, kron(ma, mb));
  Eigen::JacobiSVD<Matrix> svd(system);
  const auto& sv = svd.singularValues();
  double cut = 1e-9 * sv[0];
  int rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  return rank;
}

Statistics exact_statistics(const DensityMatrix& rho, const ProductMeasurementSet& ms) {
  const auto& shape = rho.shape();
  if (shape.size() != 2 || shape.dims[0] != ms.dim_a || shape.dims[1] != ms.dim_b)
    throw DimensionError("exact_statistics: state shape does not match the measurement set");

  Statistics st;
  st.a_settings = static_cast<int>(ms.a_settings.size());
  st.b_settings = static_cast<int>(ms.b_settings.size());
  st.a_outcomes = ms.dim_a;
  st.b_outcomes = ms.dim_b;
  st.shape = shape;
  st.table.assign(static_cast<std::size_t>(st.a_settings) * st.b_settings * st.a_outcomes *
                      st.b_outcomes,
                  0.0);
  for (int sa = 0; sa < st.a_settings; ++sa)
    for (int sb = 0; sb < st.b_settings; ++sb) {
      double total = 0.0;
      for (int oa = 0; oa < st.a_outcomes; ++oa)
        for (int ob = 0; ob < st.b_outcomes; ++ob) {
          Matrix f = kron(ms.a_settings[static_cast<std::size_t>(sa)][static_cast<std::size_t>(oa)],
                          ms.b_settings[static_cast<std::size_t>(sb)][static_cast<std::size_t>(ob)]);
          double p = std::real((f * rho.matrix()).trace());
          p = std::max(p, 0.0);
          st.at(sa, sb, oa, ob) = p;
          total += p;
        }
      if (std::abs(total - 1.0) > 1e-9)
        throw InvariantError("exact_statistics: outcome slice sums to " + std::to_string(total));
    }
  return st;
}

DensityMatrix reconstruct(const Statistics& stats, const ProductMeasurementSet& ms) {
  const long d = static_cast<long>(ms.dim_a) * ms.dim_b;
  long rows = 0;
  for (const auto& sa : ms.a_settings)
    for (const auto& sb : ms.b_settings) rows += static_cast<long>(sa.size() * sb.size());

  Matrix system(rows, d * d);
  Vector rhs(rows);
  long r = 0;
  for (int sa = 0; sa < stats.a_settings; ++sa)
    for (int sb = 0; sb < stats.b_settings; ++sb)
      for (int oa = 0; oa < stats.a_outcomes; ++oa)
        for (int ob = 0; ob < stats.b_outcomes; ++ob) {
          effect_row(
              system, r,
              kron(ms.a_settings[static_cast<std::size_t>(sa)][static_cast<std::size_t>(oa)],
                   ms.b_settings[static_cast<std::size_t>(sb)][static_cast<std::size_t>(ob)]));
          rhs[r++] = stats.at(sa, sb, oa, ob);
        }

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(system);
  cod.setThreshold(1e-9);
  if (cod.rank() < d * d)
    throw InvariantError("reconstruct: measurement set is rank deficient (" +
                         std::to_string(cod.rank()) + " of " + std::to_string(d * d) + ")");
  Vector x = cod.solve(rhs);
  Matrix rho = Eigen::Map<Matrix>(x.data(), d, d);
  return DensityMatrix(hermitize(rho), stats.shape);
}

double correlation_test(const Statistics& stats) {
  double worst = 0.0;
  for (int sa = 0; sa < stats.a_settings; ++sa)
    for (int sb = 0; sb < stats.b_settings; ++sb) {
      std::vector<double> pa(static_cast<std::size_t>(stats.a_outcomes), 0.0);
      std::vector<double> pb(static_cast<std::size_t>(stats.b_outcomes), 0.0);
      for (int oa = 0; oa < stats.a_outcomes; ++oa)
        for (int ob = 0; ob < stats.b_outcomes; ++ob) {
          double p = stats.at(sa, sb, oa, ob);
          pa[static_cast<std::size_t>(oa)] += p;
          pb[static_cast<std::size_t>(ob)] += p;
        }
      for (int oa = 0; oa < stats.a_outcomes; ++oa)
        for (int ob = 0; ob < stats.b_outcomes; ++ob)
          worst = std::max(worst, std::abs(stats.at(sa, sb, oa, ob) -
                                           pa[static_cast<std::size_t>(oa)] *
                                               pb[static_cast<std::size_t>(ob)]));
    }
  return worst;
}

}  // namespace entcert
