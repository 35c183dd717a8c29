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

#include <cstdint>
#include <random>

#include "entcert/linalg.hpp"

namespace entcert {

/// Derive a decorrelated child seed from a base seed and a stream index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Matrix of i.i.d. standard complex Gaussians.
Matrix ginibre(int rows, int cols, std::mt19937_64& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase-fixed R).
Matrix haar_unitary(int dim, std::mt19937_64& rng);

/// Haar-random state vector on the given shape.
PureState random_pure_state(const SystemShape& shape, std::mt19937_64& rng);

/// Hilbert-Schmidt-distributed density matrix, full rank almost surely.
DensityMatrix random_density_matrix(const SystemShape& shape, std::mt19937_64& rng);

}  // namespace entcert
