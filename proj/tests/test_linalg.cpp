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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entcert/linalg.hpp"
#include "entcert/random.hpp"
#include "test_support.hpp"

using namespace entcert;
namespace ts = test_support;

TEST_CASE("shape invariants") {
  CHECK_THROWS_AS(SystemShape({2, 2}, {"A", "A"}), InvariantError);
  CHECK_THROWS_AS(SystemShape({2}, {"A", "B"}), InvariantError);
  CHECK_THROWS_AS(SystemShape({0}, {"A"}), InvariantError);
  SystemShape s({2, 3, 4}, {"A", "B", "C"});
  CHECK(s.total_dim() == 24);
  CHECK(s.index_of("B") == 1);
  CHECK_THROWS_AS(s.index_of("Z"), DimensionError);
  CHECK(s.complement({"B"}) == std::vector<std::string>{"A", "C"});
}

TEST_CASE("state invariants are enforced") {
  Vector bad = Vector::Ones(4);
  CHECK_THROWS_AS(PureState(bad, SystemShape({2, 2}, {"A", "B"})), InvariantError);

  Matrix not_herm(2, 2);
  not_herm << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix(not_herm, SystemShape({2}, {"Q"})), InvariantError);

  Matrix not_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(not_trace, SystemShape({2}, {"Q"})), InvariantError);

  Matrix not_psd(2, 2);
  not_psd << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(not_psd, SystemShape({2}, {"Q"})), InvariantError);
}

TEST_CASE("tensor of computational kets") {
  PureState zero(ts::basis_ket(2, 0), SystemShape({2}, {"A"}));
  PureState zero_b(ts::basis_ket(2, 0), SystemShape({2}, {"B"}));
  PureState joint = tensor(zero, zero_b);
  CHECK(joint.amplitudes()[0] == Complex(1.0, 0.0));
  CHECK(joint.amplitudes().tail(3).norm() == 0.0);

  // |+> (x) |0> -> (1,0,1,0)/sqrt2
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  PureState p(plus, SystemShape({2}, {"A"}));
  PureState pj = tensor(p, zero_b);
  CHECK(std::abs(pj.amplitudes()[0] - Complex(1 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(pj.amplitudes()[2] - Complex(1 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(pj.amplitudes()[1]) < 1e-15);

  CHECK_THROWS_AS(tensor(zero, zero), DimensionError);  // duplicate label
}

TEST_CASE("tensor of maximally mixed states") {
  DensityMatrix a(Matrix::Identity(2, 2) / 2.0, SystemShape({2}, {"A"}));
  DensityMatrix b(Matrix::Identity(2, 2) / 2.0, SystemShape({2}, {"B"}));
  DensityMatrix ab = tensor(a, b);
  CHECK(ts::max_abs_diff(ab.matrix(), Matrix::Identity(4, 4) / 4.0) < 1e-15);
  CHECK(ab.shape().labels == std::vector<std::string>{"A", "B"});
}

TEST_CASE("partial trace basics") {
  DensityMatrix bell = projector(ts::bell_state());
  DensityMatrix marginal = partial_trace(bell, {"Q"});
  CHECK(ts::max_abs_diff(marginal.matrix(), Matrix::Identity(2, 2) / 2.0) < 1e-12);

  // Tr_B of a product recovers the first factor.
  auto rng = ts::rng_for(1);
  DensityMatrix rho = random_density_matrix(SystemShape({3}, {"A"}), rng);
  DensityMatrix sigma = random_density_matrix(SystemShape({2}, {"B"}), rng);
  DensityMatrix both = tensor(rho, sigma);
  CHECK(ts::max_abs_diff(partial_trace(both, {"A"}).matrix(), rho.matrix()) < 1e-12);

  CHECK_THROWS_AS(partial_trace(both, {"X"}), DimensionError);
  CHECK_THROWS_AS(partial_trace(both, {}), DimensionError);
}

TEST_CASE("partial trace against the quadruple-loop oracle") {
  for (std::uint64_t c = 0; c < 6; ++c) {
    auto rng = ts::rng_for(100 + c);
    SystemShape shape({2, 3, 2}, {"R", "Q", "E"});
    PureState psi = random_pure_state(shape, rng);
    DensityMatrix rho = projector(psi);
    // keep (R, Q) = prefix of the dims list
    Matrix expected = ts::naive_partial_trace_prefix(rho.matrix(), shape.dims, 2);
    CHECK(ts::max_abs_diff(partial_trace(rho, {"R", "Q"}).matrix(), expected) < 1e-12);
  }
}

TEST_CASE("partial trace keeps a non-contiguous middle subsystem") {
  auto rng = ts::rng_for(7);
  SystemShape shape({2, 2, 2}, {"A", "B", "C"});
  PureState psi = random_pure_state(shape, rng);
  DensityMatrix rho = projector(psi);
  // Oracle via permuting B to the front and tracing the rest.
  PureState permuted = permute_subsystems(psi, {"B", "A", "C"});
  Matrix expected =
      ts::naive_partial_trace_prefix(projector(permuted).matrix(), permuted.shape().dims, 1);
  CHECK(ts::max_abs_diff(partial_trace(rho, {"B"}).matrix(), expected) < 1e-12);
}

TEST_CASE("entropies") {
  DensityMatrix pure = projector(ts::bell_state());
  CHECK(vn_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));

  DensityMatrix mixed(Matrix::Identity(2, 2) / 2.0, SystemShape({2}, {"Q"}));
  CHECK(vn_entropy(mixed) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.25;
  diag(1, 1) = 0.75;
  DensityMatrix rho(diag, SystemShape({2}, {"Q"}));
  CHECK(vn_entropy(rho) == doctest::Approx(0.8112781244591328).epsilon(1e-12));

  CHECK(shannon_entropy({1.0, 0.0}) == doctest::Approx(0.0));
  CHECK(shannon_entropy({0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(shannon_entropy({0.1, 0.9}) == doctest::Approx(0.4689955935892812).epsilon(1e-12));
  CHECK_THROWS_AS(shannon_entropy({0.5, 0.6}), InvariantError);
  CHECK_THROWS_AS(shannon_entropy({-0.1, 1.1}), InvariantError);
}

TEST_CASE("vn_entropy is basis invariant") {
  for (std::uint64_t c = 0; c < 5; ++c) {
    auto rng = ts::rng_for(200 + c);
    SystemShape shape({4}, {"Q"});
    DensityMatrix rho = random_density_matrix(shape, rng);
    Matrix u = haar_unitary(4, rng);
    DensityMatrix rotated(u * rho.matrix() * u.adjoint(), shape);
    CHECK(std::abs(vn_entropy(rotated) - vn_entropy(rho)) < 1e-9);
  }
}

TEST_CASE("schmidt decomposition") {
  SUBCASE("bell state") {
    SchmidtDecomposition sd = schmidt(ts::bell_state(), {"R"});
    REQUIRE(sd.rank() == 2);
    CHECK(sd.coefficients[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sd.coefficients[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("product state has rank 1") {
    PureState zero(ts::basis_ket(2, 0), SystemShape({2}, {"A"}));
    PureState one(ts::basis_ket(3, 1), SystemShape({3}, {"B"}));
    SchmidtDecomposition sd = schmidt(tensor(zero, one), {"A"});
    REQUIRE(sd.rank() == 1);
    CHECK(sd.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("random 3x3 state reconstructs") {
    auto rng = ts::rng_for(42);
    PureState psi = random_pure_state(SystemShape({3, 3}, {"A", "B"}), rng);
    SchmidtDecomposition sd = schmidt(psi, {"A"});
    PureState rebuilt = schmidt_reconstruct(sd);
    CHECK((rebuilt.amplitudes() - psi.amplitudes()).norm() < 1e-10);
    // orthonormality of both bases
    for (std::size_t i = 0; i < sd.rank(); ++i)
      for (std::size_t j = 0; j < sd.rank(); ++j) {
        Complex gl = sd.left_basis[i].dot(sd.left_basis[j]);
        Complex gr = sd.right_basis[i].dot(sd.right_basis[j]);
        double expect = i == j ? 1.0 : 0.0;
        CHECK(std::abs(gl - Complex(expect, 0)) < 1e-10);
        CHECK(std::abs(gr - Complex(expect, 0)) < 1e-10);
      }
  }
  SUBCASE("cut across the second subsystem of three") {
    auto rng = ts::rng_for(43);
    PureState psi = random_pure_state(SystemShape({2, 3, 2}, {"A", "B", "C"}), rng);
    SchmidtDecomposition sd = schmidt(psi, {"B"});
    PureState rebuilt = schmidt_reconstruct(sd);  // lives on (B, A, C)
    PureState reference = permute_subsystems(psi, {"B", "A", "C"});
    CHECK((rebuilt.amplitudes() - reference.amplitudes()).norm() < 1e-10);
  }
  CHECK_THROWS_AS(schmidt(ts::bell_state(), {}), DimensionError);
  CHECK_THROWS_AS(schmidt(ts::bell_state(), {"R", "Q"}), DimensionError);
}

TEST_CASE("purification") {
  SUBCASE("maximally mixed qubit purifies to maximal entanglement") {
    DensityMatrix rho(Matrix::Identity(2, 2) / 2.0, SystemShape({2}, {"Q"}));
    PureState psi = purify(rho, "E");
    CHECK(psi.shape().dims == std::vector<int>{2, 2});
    DensityMatrix marginal = partial_trace(projector(psi), {"Q"});
    CHECK(ts::max_abs_diff(marginal.matrix(), rho.matrix()) < 1e-10);
    CHECK(vn_entropy(marginal) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("pure state purifies trivially") {
    PureState zero(ts::basis_ket(2, 0), SystemShape({2}, {"Q"}));
    PureState psi = purify(projector(zero), "E");
    CHECK(psi.shape().dims == std::vector<int>{2, 1});
    CHECK(std::abs(std::abs(psi.amplitudes()[0]) - 1.0) < 1e-12);
  }
  SUBCASE("random rank-3 qutrit state round-trips") {
    auto rng = ts::rng_for(44);
    DensityMatrix rho = random_density_matrix(SystemShape({3}, {"Q"}), rng);
    PureState psi = purify(rho, "E");
    CHECK(psi.shape().dims == std::vector<int>{3, 3});
    CHECK(ts::max_abs_diff(partial_trace(projector(psi), {"Q"}).matrix(), rho.matrix()) <
          1e-10);
  }
  SUBCASE("both marginals of any purification have equal entropy") {
    for (std::uint64_t c = 0; c < 5; ++c) {
      auto rng = ts::rng_for(300 + c);
      DensityMatrix rho = random_density_matrix(SystemShape({4}, {"Q"}), rng);
      PureState psi = purify(rho, "E");
      double sa = vn_entropy(partial_trace(projector(psi), {"Q"}));
      double sb = vn_entropy(partial_trace(projector(psi), {"E"}));
      CHECK(std::abs(sa - sb) < 1e-9);
    }
  }
  CHECK_THROWS_AS(
      purify(DensityMatrix(Matrix::Identity(2, 2) / 2.0, SystemShape({2}, {"Q"})), "Q"),
      DimensionError);
}

TEST_CASE("uhlmann fidelity") {
  auto rng = ts::rng_for(45);
  DensityMatrix rho = random_density_matrix(SystemShape({3}, {"Q"}), rng);
  CHECK(uhlmann_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

  DensityMatrix zero(ts::basis_ket(2, 0) * ts::basis_ket(2, 0).adjoint(),
                     SystemShape({2}, {"Q"}));
  DensityMatrix one(ts::basis_ket(2, 1) * ts::basis_ket(2, 1).adjoint(),
                    SystemShape({2}, {"Q"}));
  CHECK(uhlmann_fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-12));

  DensityMatrix mixed(Matrix::Identity(2, 2) / 2.0, SystemShape({2}, {"Q"}));
  CHECK(uhlmann_fidelity(zero, mixed) == doctest::Approx(0.5).epsilon(1e-10));

  // symmetric in its arguments
  DensityMatrix sigma = random_density_matrix(SystemShape({3}, {"Q"}), rng);
  CHECK(uhlmann_fidelity(rho, sigma) == doctest::Approx(uhlmann_fidelity(sigma, rho)).epsilon(1e-9));
}

TEST_CASE("mutual information") {
  auto rng = ts::rng_for(46);
  DensityMatrix rho = random_density_matrix(SystemShape({2}, {"A"}), rng);
  DensityMatrix sigma = random_density_matrix(SystemShape({2}, {"B"}), rng);
  CHECK(mutual_information(tensor(rho, sigma), {"A"}) ==
        doctest::Approx(0.0).epsilon(1e-9));

  CHECK(mutual_information(projector(ts::bell_state()), {"R"}) ==
        doctest::Approx(2.0).epsilon(1e-9));

  // classically correlated (|00><00| + |11><11|)/2
  Matrix cc = Matrix::Zero(4, 4);
  cc(0, 0) = 0.5;
  cc(3, 3) = 0.5;
  DensityMatrix classical(cc, SystemShape({2, 2}, {"A", "B"}));
  CHECK(mutual_information(classical, {"A"}) == doctest::Approx(1.0).epsilon(1e-9));

  // nonnegative on random states
  for (std::uint64_t c = 0; c < 5; ++c) {
    auto r2 = ts::rng_for(400 + c);
    DensityMatrix joint = random_density_matrix(SystemShape({2, 3}, {"A", "B"}), r2);
    CHECK(mutual_information(joint, {"A"}) >= -1e-9);
  }
}

TEST_CASE("concavity of the entropy") {
  for (std::uint64_t c = 0; c < 5; ++c) {
    auto rng = ts::rng_for(500 + c);
    SystemShape shape({3}, {"Q"});
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    std::vector<double> w = {unif(rng), unif(rng), unif(rng)};
    double total = w[0] + w[1] + w[2];
    Matrix avg = Matrix::Zero(3, 3);
    double avg_s = 0.0;
    for (int k = 0; k < 3; ++k) {
      DensityMatrix rho = random_density_matrix(shape, rng);
      avg += (w[static_cast<std::size_t>(k)] / total) * rho.matrix();
      avg_s += (w[static_cast<std::size_t>(k)] / total) * vn_entropy(rho);
    }
    CHECK(vn_entropy(DensityMatrix(hermitize(avg), shape)) >= avg_s - 1e-9);
  }
  // equality when all ensemble members coincide
  auto rng = ts::rng_for(510);
  DensityMatrix rho = random_density_matrix(SystemShape({3}, {"Q"}), rng);
  Matrix avg = 0.3 * rho.matrix() + 0.7 * rho.matrix();
  CHECK(std::abs(vn_entropy(DensityMatrix(hermitize(avg), rho.shape())) - vn_entropy(rho)) <
        1e-9);
}

TEST_CASE("partial trace undoes tensor") {
  for (std::uint64_t c = 0; c < 5; ++c) {
    auto rng = ts::rng_for(600 + c);
    DensityMatrix rho = random_density_matrix(SystemShape({4}, {"A"}), rng);
    DensityMatrix sigma = random_density_matrix(SystemShape({2}, {"B"}), rng);
    CHECK(ts::max_abs_diff(partial_trace(tensor(rho, sigma), {"A"}).matrix(), rho.matrix()) <
          1e-12);
  }
}

TEST_CASE("mutual information vanishes exactly on products") {
  // Constructed product: zero MI. Constructed correlated: strictly positive.
  auto rng = ts::rng_for(700);
  DensityMatrix a = random_density_matrix(SystemShape({2}, {"A"}), rng);
  DensityMatrix b = random_density_matrix(SystemShape({3}, {"B"}), rng);
  CHECK(mutual_information(tensor(a, b), {"B"}) < 1e-9);

  PureState entangled = random_pure_state(SystemShape({2, 3}, {"A", "B"}), rng);
  double mi = mutual_information(projector(entangled), {"A"});
  CHECK(mi > 1e-3);  // Haar-random bipartite pure states are entangled
}
