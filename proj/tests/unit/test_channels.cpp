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

#include "qnogo/channels.hpp"
#include "qnogo/superposer.hpp"
#include "support.hpp"

using namespace qnogo;
using namespace qtest;

namespace {

// Kraus action by explicit sums, independent of KrausChannel::apply_raw.
Mat naive_apply(const std::vector<Mat>& ops, const Mat& x) {
  Mat out = Mat::Zero(ops.front().rows(), ops.front().rows());
  for (const Mat& k : ops) {
    for (Eigen::Index i = 0; i < k.rows(); ++i)
      for (Eigen::Index j = 0; j < k.rows(); ++j)
        for (Eigen::Index a = 0; a < k.cols(); ++a)
          for (Eigen::Index b = 0; b < k.cols(); ++b)
            out(i, j) += k(i, a) * x(a, b) * std::conj(k(j, b));
  }
  return out;
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("construction checks shapes") {
  CHECK_THROWS_AS(KrausChannel(2, 2, {}), Error);
  CHECK_THROWS_AS(KrausChannel(2, 3, {Mat::Identity(2, 2)}), Error);
  CHECK_THROWS_AS(KrausChannel(0, 2, {Mat::Zero(2, 0)}), Error);
  CHECK_NOTHROW(KrausChannel(2, 2, {1.1 * Mat::Identity(2, 2)}));
  CHECK_THROWS_AS(KrausChannel::cptni(2, 2, {1.1 * Mat::Identity(2, 2)}), Error);
  CHECK_THROWS_AS(KrausChannel::cptni(2, 2, {Mat::Zero(2, 2)}), Error);
}

TEST_CASE("apply") {
  const DensityOperator rho = random_density(3, 4);
  CHECK(max_entry(apply(KrausChannel::identity(3), rho).matrix() - rho.matrix()) < 1e-15);

  const KrausChannel p0 = KrausChannel::cptni(2, 2, {proj(zero())});
  const DensityOperator out = apply(p0, DensityOperator::from_vector(plus()));
  CHECK(out.subnormalized());
  CHECK(max_entry(out.matrix() - 0.5 * proj(zero())) < 1e-15);

  const KrausChannel padded = KrausChannel::cptni(2, 2, {proj(zero()), Mat::Zero(2, 2)});
  CHECK(padded.size() == 2);  // the zero operator is kept
  const DensityOperator q = random_density(2, 4);
  CHECK(max_entry(apply(padded, q).matrix() - apply(p0, q).matrix()) < 1e-15);

  CHECK_THROWS_AS(apply(p0, rho), Error);
}

TEST_CASE("success_probability") {
  const DensityOperator plus_rho = DensityOperator::from_vector(plus());
  CHECK(success_probability(KrausChannel::identity(2), plus_rho) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(success_probability(KrausChannel::cptni(2, 2, {proj(zero())}), plus_rho) ==
        doctest::Approx(0.5).epsilon(1e-15));
  const KrausChannel half(2, 2, {0.5 * Mat::Identity(2, 2)});
  for (std::uint64_t s = 0; s < 5; ++s) {
    CHECK(success_probability(half, random_density(2, s)) ==
          doctest::Approx(0.25).epsilon(1e-14));
  }
}

TEST_CASE("is_cptni") {
  CptniReport r = is_cptni(KrausChannel::identity(2));
  CHECK(r.ok);
  CHECK(r.max_eigenvalue == doctest::Approx(1.0).epsilon(1e-15));

  r = is_cptni(KrausChannel(2, 2, {1.1 * Mat::Identity(2, 2)}));
  CHECK_FALSE(r.ok);
  CHECK(std::abs(r.max_eigenvalue - 1.21) < 1e-14);

  const SuperpositionWeights w = SuperpositionWeights::balanced();
  const OverlapPromise promise(ray_from_vector(zero()), 1.0, 0.5);
  r = is_cptni(build_reference_protocol(zero(), promise, w));
  CHECK(r.ok);
  CHECK(r.max_eigenvalue <= 1.0 + 1e-10);
}

TEST_CASE("choi_matrix") {
  const ChoiMatrix id = choi_matrix(KrausChannel::identity(2));
  const Vec omega = (Vec(4) << 1.0, 0.0, 0.0, 1.0).finished();
  CHECK(max_entry(id.matrix() - outer(omega, omega)) < 1e-15);
  CHECK(std::abs(id.matrix().trace() - Complex(2.0)) < 1e-15);
  CHECK(singular_values(id.matrix())(1) < 1e-14);  // rank one

  const ChoiMatrix deph = choi_matrix(KrausChannel::cptni(2, 2, {proj(zero()), proj(one())}));
  CHECK(max_entry(deph.matrix() - Mat(Eigen::Vector4cd(1, 0, 0, 1).asDiagonal())) < 1e-15);

  for (std::uint64_t s = 0; s < 50; ++s) {
    const int din = 1 + static_cast<int>(s % 3);
    const int dout = 1 + static_cast<int>((s / 3) % 3);
    const ChoiMatrix c = choi_matrix(random_channel(din, dout, 1 + int(s % 4), 0.9, s));
    CHECK(c.smallest_eigenvalue() >= -1e-10);
    CHECK(c.is_psd());
  }
}

TEST_CASE("Choi PSD iff completely positive: transpose map is rejected") {
  // The transpose is positive but not completely positive; its Choi matrix
  // is the swap, with eigenvalue -1.
  Mat swap = Mat::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  const ChoiMatrix t(2, 2, swap);
  CHECK(t.smallest_eigenvalue() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK_FALSE(t.is_psd());
}

TEST_CASE("tensor and compose") {
  const KrausChannel id4 = tensor(KrausChannel::identity(2), KrausChannel::identity(2));
  CHECK(id4.dim_in() == 4);
  CHECK(id4.dim_out() == 4);
  const DensityOperator rho = random_density(4, 8);
  CHECK(max_entry(apply(id4, rho).matrix() - rho.matrix()) < 1e-14);

  const KrausChannel ch = random_channel(3, 2, 2, 0.8, 17);
  const KrausChannel same = compose(ch, KrausChannel::identity(3));
  const DensityOperator r3 = random_density(3, 9);
  CHECK(max_entry(apply(same, r3).matrix() - apply(ch, r3).matrix()) < 1e-14);

  // Kraus sets are the pairwise products.
  const KrausChannel a = random_channel(2, 2, 2, 1.0, 1);
  const KrausChannel b = random_channel(2, 3, 3, 1.0, 2);
  const KrausChannel ab = tensor(a, b);
  CHECK(ab.size() == a.size() * b.size());
  CHECK(max_entry(ab.kraus_ops()[1] - naive_kron(a.kraus_ops()[0], b.kraus_ops()[1])) < 1e-15);
  const KrausChannel ba = compose(b, a);
  CHECK(ba.size() == 6);
  CHECK(max_entry(ba.kraus_ops()[1] - b.kraus_ops()[0] * a.kraus_ops()[1]) < 1e-15);
  CHECK(max_entry(ba.kraus_ops()[2] - b.kraus_ops()[1] * a.kraus_ops()[0]) < 1e-15);

  CHECK_THROWS_AS(compose(a, b), Error);

  for (std::uint64_t s = 0; s < 100; ++s) {
    const KrausChannel f = random_channel(2, 3, 2, 0.95, mix_seed(30, s));
    const KrausChannel g = random_channel(3, 2, 3, 0.95, mix_seed(31, s));
    CHECK(is_cptni(compose(g, f)).ok);
    CHECK(is_cptni(tensor(f, g)).ok);
  }
}

TEST_CASE("random generators") {
  const KrausChannel ch = random_channel(3, 2, 4, 0.5, 3);
  CHECK(ch.size() == 4);
  // 8 >= 3 rows: the stacked blocks form an isometry, so the effect is 0.5 I.
  CHECK(max_entry(ch.effect() - 0.5 * Mat::Identity(3, 3)) < 1e-12);
  CHECK(is_cptni(ch).max_eigenvalue == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_entry(random_channel(3, 2, 4, 0.5, 3).kraus_ops()[2] - ch.kraus_ops()[2]) == 0.0);

  const std::vector<Mat> povm = random_povm(3, 4, 5);
  Mat sum = Mat::Zero(3, 3);
  for (const Mat& e : povm) {
    CHECK(hermitian_eigenvalues(e)(0) >= -1e-12);
    sum += e;
  }
  CHECK(max_entry(sum - Mat::Identity(3, 3)) < 1e-12);
}

TEST_CASE("property: trace never increases under verified channels") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const int din = 1 + static_cast<int>(s % 4);
    const int dout = 1 + static_cast<int>((s / 4) % 4);
    const KrausChannel ch = random_channel(din, dout, 1 + int(s % 3), 1.0, mix_seed(40, s));
    REQUIRE(is_cptni(ch).ok);
    const DensityOperator rho = random_density(din, mix_seed(41, s));
    CHECK(apply(ch, rho).trace() <= rho.trace() + 1e-10);
  }
}

TEST_CASE("property: Choi round trip and Kraus action agree with the oracle") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int din = 1 + static_cast<int>(s % 3);
    const int dout = 1 + static_cast<int>((s / 3) % 3);
    const KrausChannel ch = random_channel(din, dout, 1 + int(s % 4), 0.9, mix_seed(50, s));
    const Mat x = Mat::Random(din, din);  // arbitrary, not Hermitian
    const Mat direct = ch.apply_raw(x);
    CHECK(max_entry(direct - naive_apply(ch.kraus_ops(), x)) < 1e-12);
    CHECK(max_entry(choi_matrix(ch).apply(x) - direct) < 1e-10);
  }
}

TEST_CASE("property: linearity on unnormalized operators") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const KrausChannel ch = random_channel(3, 2, 3, 1.0, mix_seed(60, s));
    const Mat r1 = random_density(3, mix_seed(61, s)).matrix();
    const Mat r2 = random_density(3, mix_seed(62, s)).matrix();
    const Complex a(0.3, -1.2);
    const Complex b(-2.0, 0.5);
    CHECK(max_entry(ch.apply_raw(a * r1 + b * r2) - (a * ch.apply_raw(r1) + b * ch.apply_raw(r2))) <
          1e-10);
  }
}

}  // TEST_SUITE
