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

#include "entcert/random.hpp"
#include "entcert/tomo.hpp"
#include "test_support.hpp"

using namespace entcert;
namespace ts = test_support;

TEST_CASE("informationally complete product sets") {
  SUBCASE("two qubits: three Pauli settings per side") {
    ProductMeasurementSet ms = ic_product_set(2, 2);
    CHECK(ms.a_settings.size() == 3);
    CHECK(ms.b_settings.size() == 3);
    int effects = 0;
    for (const auto& sa : ms.a_settings)
      for (const auto& sb : ms.b_settings)
        effects += static_cast<int>(sa.size() * sb.size());
    CHECK(effects == 36);
    CHECK(gram_rank(ms) == 16);
  }
  SUBCASE("qubit times qutrit") { CHECK(gram_rank(ic_product_set(2, 3)) == 36); }
  SUBCASE("two qutrits") { CHECK(gram_rank(ic_product_set(3, 3)) == 81); }
  CHECK_THROWS_AS(ic_product_set(1, 2), DimensionError);
}

TEST_CASE("exact statistics") {
  ProductMeasurementSet ms = ic_product_set(2, 2);
  SUBCASE("maximally mixed: uniform outcomes everywhere") {
    DensityMatrix rho(Matrix::Identity(4, 4) / 4.0, SystemShape({2, 2}, {"A", "B"}));
    Statistics st = exact_statistics(rho, ms);
    for (int sa = 0; sa < st.a_settings; ++sa)
      for (int sb = 0; sb < st.b_settings; ++sb)
        for (int oa = 0; oa < 2; ++oa)
          for (int ob = 0; ob < 2; ++ob)
            CHECK(st.at(sa, sb, oa, ob) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("bell state correlates the computational setting perfectly") {
    Statistics st = exact_statistics(projector(ts::bell_state()), ms);
    // computational bases are the last setting on each side
    int za = static_cast<int>(ms.a_settings.size()) - 1;
    int zb = static_cast<int>(ms.b_settings.size()) - 1;
    CHECK(st.at(za, zb, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(st.at(za, zb, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(st.at(za, zb, 0, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(st.at(za, zb, 1, 0) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("product states factorize in every slice") {
    auto rng = ts::rng_for(1);
    DensityMatrix a = random_density_matrix(SystemShape({2}, {"A"}), rng);
    DensityMatrix b = random_density_matrix(SystemShape({2}, {"B"}), rng);
    Statistics st = exact_statistics(tensor(a, b), ms);
    for (int sa = 0; sa < st.a_settings; ++sa)
      for (int sb = 0; sb < st.b_settings; ++sb) {
        for (int oa = 0; oa < 2; ++oa)
          for (int ob = 0; ob < 2; ++ob) {
            double pa = st.at(sa, sb, oa, 0) + st.at(sa, sb, oa, 1);
            double pb = st.at(sa, sb, 0, ob) + st.at(sa, sb, 1, ob);
            CHECK(std::abs(st.at(sa, sb, oa, ob) - pa * pb) < 1e-12);
          }
      }
  }
  SUBCASE("shape mismatch is rejected") {
    DensityMatrix rho(Matrix::Identity(6, 6) / 6.0, SystemShape({2, 3}, {"A", "B"}));
    CHECK_THROWS_AS(exact_statistics(rho, ms), DimensionError);
  }
}

TEST_CASE("linear-inversion reconstruction") {
  SUBCASE("bell state round-trips") {
    ProductMeasurementSet ms = ic_product_set(2, 2);
    DensityMatrix bell = projector(ts::bell_state());
    DensityMatrix rec = reconstruct(exact_statistics(bell, ms), ms);
    CHECK(ts::max_abs_diff(rec.matrix(), bell.matrix()) < 1e-8);
  }
  SUBCASE("maximally mixed round-trips tightly") {
    ProductMeasurementSet ms = ic_product_set(2, 2);
    DensityMatrix rho(Matrix::Identity(4, 4) / 4.0, SystemShape({2, 2}, {"A", "B"}));
    DensityMatrix rec = reconstruct(exact_statistics(rho, ms), ms);
    CHECK(ts::max_abs_diff(rec.matrix(), rho.matrix()) < 1e-12);
  }
  SUBCASE("random states round-trip in mixed dimensions") {
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
      ProductMeasurementSet ms = ic_product_set(da, db);
      for (std::uint64_t c = 0; c < 4; ++c) {
        auto rng = ts::rng_for(100 * static_cast<std::uint64_t>(da * db) + c);
        DensityMatrix rho =
            random_density_matrix(SystemShape({da, db}, {"A", "B"}), rng);
        DensityMatrix rec = reconstruct(exact_statistics(rho, ms), ms);
        CHECK(ts::max_abs_diff(rec.matrix(), rho.matrix()) < 1e-8);
      }
    }
  }
}

TEST_CASE("correlation test") {
  ProductMeasurementSet ms = ic_product_set(2, 2);
  SUBCASE("products show no correlation") {
    auto rng = ts::rng_for(2);
    DensityMatrix a = random_density_matrix(SystemShape({2}, {"A"}), rng);
    DensityMatrix b = random_density_matrix(SystemShape({2}, {"B"}), rng);
    CHECK(correlation_test(exact_statistics(tensor(a, b), ms)) < 1e-12);
  }
  SUBCASE("bell state shows 1/4 at the computational setting") {
    CHECK(correlation_test(exact_statistics(projector(ts::bell_state()), ms)) ==
          doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("classical correlation also shows 1/4") {
    Matrix cc = Matrix::Zero(4, 4);
    cc(0, 0) = 0.5;
    cc(3, 3) = 0.5;
    DensityMatrix rho(cc, SystemShape({2, 2}, {"A", "B"}));
    CHECK(correlation_test(exact_statistics(rho, ms)) == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("no correlation iff product, on constructed corpora") {
  ProductMeasurementSet ms = ic_product_set(2, 2);
  // direction 1: uncorrelated statistics imply a product reconstruction
  for (std::uint64_t c = 0; c < 5; ++c) {
    auto rng = ts::rng_for(300 + c);
    DensityMatrix a = random_density_matrix(SystemShape({2}, {"A"}), rng);
    DensityMatrix b = random_density_matrix(SystemShape({2}, {"B"}), rng);
    Statistics st = exact_statistics(tensor(a, b), ms);
    REQUIRE(correlation_test(st) < 1e-9);
    DensityMatrix rec = reconstruct(st, ms);
    CHECK(mutual_information(rec, {"A"}) < 1e-8);
  }
  // direction 2: product states (zero mutual information) never correlate
  for (std::uint64_t c = 0; c < 5; ++c) {
    auto rng = ts::rng_for(400 + c);
    DensityMatrix a = random_density_matrix(SystemShape({2}, {"A"}), rng);
    DensityMatrix b = random_density_matrix(SystemShape({2}, {"B"}), rng);
    DensityMatrix prod = tensor(a, b);
    REQUIRE(mutual_information(prod, {"A"}) < 1e-12);
    CHECK(correlation_test(exact_statistics(prod, ms)) < 1e-9);
  }
  // and correlated states do correlate
  for (std::uint64_t c = 0; c < 5; ++c) {
    auto rng = ts::rng_for(500 + c);
    PureState psi = random_pure_state(SystemShape({2, 2}, {"A", "B"}), rng);
    CHECK(correlation_test(exact_statistics(projector(psi), ms)) > 1e-6);
  }
}
