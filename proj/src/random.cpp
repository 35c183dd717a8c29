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

#include "entcert/random.hpp"

#include <cmath>

namespace entcert {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 step on base + odd-multiplied stream
  std::uint64_t z = base + stream * 0x9e3779b97f4a7c15ull + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

Matrix haar_unitary(int dim, std::mt19937_64& rng) {
  Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the distribution is Haar, not QR-convention-dependent.
  for (long i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    double mag = std::abs(d);
    q.col(i) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

PureState random_pure_state(const SystemShape& shape, std::mt19937_64& rng) {
  Vector v = ginibre(shape.total_dim(), 1, rng).col(0);
  v.normalize();
  return PureState(std::move(v), shape);
}

DensityMatrix random_density_matrix(const SystemShape& shape, std::mt19937_64& rng) {
  const int d = shape.total_dim();
  Matrix g = ginibre(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitize(rho), shape);
}

}  // namespace entcert
