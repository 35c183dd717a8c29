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

#include <vector>

#include "entcert/linalg.hpp"

namespace entcert {

/// Informationally complete product measurements on a bipartite system:
/// per side, the eigenbases of the generalized Gell-Mann observables (the
/// three Pauli bases for qubits), with the shared computational basis
/// listed once.
struct ProductMeasurementSet {
  std::vector<std::vector<Matrix>> a_settings;  // each setting: dim_a rank-1 effects
  std::vector<std::vector<Matrix>> b_settings;
  int dim_a = 0;
  int dim_b = 0;
};

/// Exact Born-rule outcome table indexed by
/// (a_setting, b_setting, a_outcome, b_outcome).
struct Statistics {
  int a_settings = 0;
  int b_settings = 0;
  int a_outcomes = 0;
  int b_outcomes = 0;
  std::vector<double> table;
  SystemShape shape;  // shape of the measured state, for reconstruction

  double& at(int sa, int sb, int oa, int ob);
  double at(int sa, int sb, int oa, int ob) const;
};

ProductMeasurementSet ic_product_set(int dim_a, int dim_b);

/// Rank of the Gram system of all product effects; d_a^2 d_b^2 iff the set
/// is informationally complete.
int gram_rank(const ProductMeasurementSet& ms);

/// Exact outcome probabilities Tr[(M_a (x) M_b) rho]; no sampling.
Statistics exact_statistics(const DensityMatrix& rho, const ProductMeasurementSet& ms);

/// Linear inversion through the pseudo-inverse of the effect system;
/// Hermitized, no positivity projection (exact statistics only).
DensityMatrix reconstruct(const Statistics& stats, const ProductMeasurementSet& ms);

/// max |p(a,b) - p(a) p(b)| over settings and outcome pairs; zero exactly
/// for product states.
double correlation_test(const Statistics& stats);

}  // namespace entcert
