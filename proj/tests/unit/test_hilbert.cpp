// Copyright 2026 The qnogo Authors
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


#include <doctest.h>

#include <cmath>
#include <vector>

#include "qnogo/hilbert.hpp"
#include "support.hpp"

using namespace qnogo;
using namespace qtest;

TEST_SUITE("hilbert") {

TEST_CASE("state vectors carry their normalization") {
  CHECK_THROWS_AS(StateVector(Vec::Constant(2, 1.0)), Error);
  const StateVector u = StateVector::unnormalized(Vec::Constant(2, 1.0));
  CHECK_FALSE(u.is_normalized());
  CHECK(StateVector::normalize(Vec::Constant(2, 1.0)).is_normalized());
  CHECK_THROWS_AS(StateVector::normalize(Vec::Zero(3)), Error);
  CHECK(StateVector::basis(3, 2)[2] == Complex(1.0));
}

TEST_CASE("ray_from_vector") {
  const Ray r0 = ray_from_vector(zero());
  CHECK(max_entry(r0.projector() - Mat(Eigen::Vector2cd(1.0, 0.0).asDiagonal())) < 1e-15);

  const StateVector phased = rephase(zero(), M_PI / 3.0);
  CHECK(max_entry(ray_from_vector(phased).projector() - r0.projector()) < 1e-15);

  const Ray rp = ray_from_vector(plus());
  CHECK(max_entry(rp.projector() - Mat::Constant(2, 2, 0.5)) < 1e-15);

  CHECK_THROWS_AS(ray_from_vector(StateVector::unnormalized(Vec::Constant(2, 1.0))), Error);
  CHECK_THROWS_AS(ray_from_vector(StateVector::unnormalized(Vec::Zero(2))), Error);
}

TEST_CASE("Ray rejects non-projectors") {
  CHECK_THROWS_AS(Ray(Mat::Identity(2, 2)), Error);  // trace 2
  Mat skew(2, 2);
  skew << 0.5, 0.5, -0.5, 0.5;
  CHECK_THROWS_AS(Ray{skew}, Error);
  CHECK_THROWS_AS(Ray(Mat(Eigen::Vector2cd(0.7, 0.3).asDiagonal())), Error);  // not idempotent
}

TEST_CASE("overlap_probability") {
  CHECK(overlap_probability(ray_from_vector(zero()), ray_from_vector(one())) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(overlap_probability(ray_from_vector(zero()), ray_from_vector(zero())) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(overlap_probability(ray_from_vector(zero()), ray_from_vector(plus())) - 0.5) <
        1e-15);
  CHECK_THROWS_AS(overlap_probability(ray_from_vector(zero()),
                                      ray_from_vector(StateVector::basis(3, 0))),
                  Error);
}

TEST_CASE("rephase") {
  CHECK(max_entry(Mat(rephase(zero(), M_PI).amplitudes() + zero().amplitudes())) < 1e-15);
  CHECK(max_entry(Mat(rephase(plus(), 0.0).amplitudes() - plus().amplitudes())) < 1e-15);
  const StateVector ip = rephase(plus(), M_PI / 2.0);
  CHECK(max_entry(Mat(ip.amplitudes() - Complex(0.0, 1.0) * plus().amplitudes())) < 1e-15);
  CHECK(max_entry(ray_from_vector(ip).projector() - ray_from_vector(plus()).projector()) < 1e-15);
}

TEST_CASE("representative is deterministic and rephase-independent") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const StateVector v = random_state(4, s);
    const StateVector a = ray_from_vector(v).representative();
    const StateVector b = ray_from_vector(rephase(v, 0.1 * static_cast<double>(s))).representative();
    CHECK(max_entry(Mat(a.amplitudes() - b.amplitudes())) < 1e-12);
    CHECK(naive_fidelity(a.amplitudes(), v.amplitudes()) == doctest::Approx(1.0).epsilon(1e-12));
    int first = 0;
    while (std::abs(a[first]) < 1e-12) ++first;
    CHECK(std::abs(a[first].imag()) < 1e-12);
    CHECK(a[first].real() > 0.0);
  }
}

TEST_CASE("gram_matrix") {
  std::vector<StateVector> ortho{zero(), one()};
  CHECK(max_entry(gram_matrix(ortho).entries() - Mat::Identity(2, 2)) < 1e-15);

  std::vector<StateVector> dup{zero(), zero()};
  const GramMatrix g_dup = gram_matrix(dup);
  CHECK(max_entry(g_dup.entries() - Mat::Ones(2, 2)) < 1e-15);
  CHECK(g_dup.rank() == 1);

  std::vector<StateVector> pair{zero(), plus()};
  Mat expected(2, 2);
  expected << 1.0, kInvSqrt2, kInvSqrt2, 1.0;
  CHECK(max_entry(gram_matrix(pair).entries() - expected) < 1e-15);

  std::vector<StateVector> empty;
  CHECK_THROWS_AS(gram_matrix(empty), Error);
  std::vector<StateVector> mixed{zero(), StateVector::basis(3, 0)};
  CHECK_THROWS_AS(gram_matrix(mixed), Error);
}

TEST_CASE("linear_independence") {
  std::vector<StateVector> ortho{zero(), one()};
  IndependenceReport r = linear_independence(ortho);
  CHECK(r.independent);
  CHECK(r.rank == 2);
  CHECK(r.smallest_singular_value == doctest::Approx(1.0).epsilon(1e-14));

  std::vector<StateVector> triple{zero(), one(), plus()};
  r = linear_independence(triple);
  CHECK_FALSE(r.independent);
  CHECK(r.rank == 2);
  CHECK(r.smallest_singular_value == 0.0);

  std::vector<StateVector> pair{zero(), plus()};
  r = linear_independence(pair);
  CHECK(r.independent);
  CHECK(r.rank == 2);
  CHECK(std::abs(r.smallest_singular_value - std::sqrt(1.0 - kInvSqrt2)) < 1e-14);

  std::vector<StateVector> empty;
  CHECK_THROWS_AS(linear_independence(empty), Error);
}

TEST_CASE("random_state") {
  const StateVector a = random_state(2, 42);
  const StateVector b = random_state(2, 42);
  CHECK(a.amplitudes() == b.amplitudes());
  CHECK(std::abs(random_state(4, 9).norm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(random_state(0, 1), Error);

  // Haar average of |v><v| over C^2 is I/2; per-entry standard error is
  // below 0.3/sqrt(n).
  constexpr int n = 20000;
  Mat mean = Mat::Zero(2, 2);
  for (int s = 0; s < n; ++s) mean += proj(random_state(2, mix_seed(5, s)));
  mean /= n;
  CHECK(max_entry(mean - 0.5 * Mat::Identity(2, 2)) < 5.0 * 0.3 / std::sqrt(double(n)));
}

TEST_CASE("DensityOperator validation") {
  CHECK_NOTHROW(DensityOperator::maximally_mixed(3));
  CHECK(DensityOperator::maximally_mixed(3).trace() == doctest::Approx(1.0));
  CHECK_THROWS_AS(DensityOperator(0.25 * Mat::Identity(2, 2), false), Error);
  CHECK_NOTHROW(DensityOperator(0.25 * Mat::Identity(2, 2), true));
  Mat neg(2, 2);
  neg << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityOperator(neg, false), Error);
  CHECK_THROWS_AS(DensityOperator(Mat::Identity(2, 2), true), Error);  // trace 2
}

TEST_CASE("numerical helpers agree with plain-loop oracles") {
  const Mat a = proj(random_state(2, 1)) + Complex(0.0, 0.3) * Mat::Identity(2, 2);
  const Mat b = proj(random_state(3, 2));
  CHECK(max_entry(kron(a, b) - naive_kron(a, b)) < 1e-15);

  const Mat rho = proj(random_state(6, 3));
  Mat tr_b = Mat::Zero(2, 2);
  Mat tr_a = Mat::Zero(3, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k) tr_b(i, j) += rho(i * 3 + k, j * 3 + k);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k) tr_a(i, j) += rho(k * 3 + i, k * 3 + j);
  CHECK(max_entry(partial_trace_second(rho, 2, 3) - tr_b) < 1e-14);
  CHECK(max_entry(partial_trace_first(rho, 2, 3) - tr_a) < 1e-14);

  // Orthogonal pure states are at trace distance 1.
  CHECK(trace_distance(proj(zero()), proj(one())) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mix_seed(7, 0) != mix_seed(7, 1));
  CHECK(mix_seed(7, 3) == mix_seed(7, 3));
}

TEST_CASE("property: rephasing never changes the ray") {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const int dim = 2 + static_cast<int>(s % 5);
    const StateVector v = random_state(dim, mix_seed(11, s));
    const double gamma = 0.37 * static_cast<double>(s);
    CHECK(max_entry(ray_from_vector(rephase(v, gamma)).projector() -
                    ray_from_vector(v).projector()) < 1e-12);
  }
}

TEST_CASE("property: Gram matrices are PSD and their rank matches the SVD rank") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const int dim = 2 + static_cast<int>(s % 4);
    const int m = 1 + static_cast<int>((s / 4) % 6);
    std::vector<StateVector> vs;
    for (int i = 0; i < m; ++i) vs.push_back(random_state(dim, mix_seed(s, i)));
    if (s % 3 == 0 && m >= 2) vs.back() = vs.front();  // force a dependency
    const GramMatrix g = gram_matrix(vs);
    CHECK(g.smallest_eigenvalue() >= -1e-10);
    const IndependenceReport r = linear_independence(vs);
    CHECK(g.rank() == r.rank);
    CHECK(r.independent == (r.rank == m));
  }
}

TEST_CASE("property: overlap_probability is the squared inner product") {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const int dim = 2 + static_cast<int>(s % 5);
    const StateVector a = random_state(dim, mix_seed(21, s));
    const StateVector b = random_state(dim, mix_seed(22, s));
    const double expected = std::norm(naive_inner(a.amplitudes(), b.amplitudes()));
    CHECK(std::abs(overlap_probability(ray_from_vector(a), ray_from_vector(b)) - expected) <
          1e-12);
  }
}

}  // TEST_SUITE
