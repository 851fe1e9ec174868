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

#pragma once

#include <cstdint>
#include <vector>

#include "qnogo/hilbert.hpp"

namespace qnogo {

/// A completely positive map in operator-sum form, rho -> sum_k M_k rho M_k^+.
///
/// The Kraus list is kept exactly as given: no canonicalization, no rank
/// reduction, zero operators are retained. Callers that analyze individual
/// branches rely on that.
///
/// The plain constructor checks shapes only, so that diagnostic inputs
/// (an overscaled identity, the zero map) can be represented and inspected
/// with is_cptni(). Use `KrausChannel::cptni` to get a value that is
/// guaranteed trace-nonincreasing and nonzero.
class KrausChannel {
 public:
  KrausChannel(int dim_in, int dim_out, std::vector<Mat> kraus_ops);

  /// Same as the constructor, then enforces sum M^+M <= I and a nonzero
  /// Kraus operator.
  static KrausChannel cptni(int dim_in, int dim_out, std::vector<Mat> kraus_ops,
                            double tol = kDefaultTol);
  static KrausChannel identity(int dim);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<Mat>& kraus_ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

  /// sum_k M_k^+ M_k
  Mat effect() const;

  /// Action on an arbitrary (possibly unnormalized, non-Hermitian) operator;
  /// the map is linear on all of B(H).
  Mat apply_raw(const Mat& x) const;

 private:
  int dim_in_;
  int dim_out_;
  std::vector<Mat> ops_;
};

/// Choi matrix sum_ij |i><j| (x) Lambda(|i><j|), input factor first.
class ChoiMatrix {
 public:
  ChoiMatrix(int dim_in, int dim_out, Mat matrix)
      : dim_in_(dim_in), dim_out_(dim_out), m_(std::move(matrix)) {}

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const Mat& matrix() const { return m_; }

  double smallest_eigenvalue() const;
  bool is_psd(double tol = kDefaultTol) const { return smallest_eigenvalue() >= -tol; }
  /// Lambda(x) = Tr_in[(x^T (x) I) C]
  Mat apply(const Mat& x) const;

 private:
  int dim_in_;
  int dim_out_;
  Mat m_;
};

struct CptniReport {
  bool ok = false;
  double max_eigenvalue = 0.0;
};

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho);
double success_probability(const KrausChannel& ch, const DensityOperator& rho);
CptniReport is_cptni(const KrausChannel& ch, double tol = kDefaultTol);
ChoiMatrix choi_matrix(const KrausChannel& ch);

/// Kraus set {A_i (x) B_j}, A_i (x) B_j at index i * b.size() + j.
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);
/// second after first: Kraus set {S_j F_i}, S_j F_i at index j * first.size() + i.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

/// Random CPTNI channel: `n_kraus` blocks of a Haar-like isometry
/// C^dim_in -> C^(n_kraus*dim_out), each operator scaled by sqrt(scale) with
/// scale in (0, 1]. When n_kraus * dim_out >= dim_in the effect is scale * I.
KrausChannel random_channel(int dim_in, int dim_out, int n_kraus, double scale,
                            std::uint64_t seed);

/// Random full-rank density operator (Ginibre ensemble).
DensityOperator random_density(int dim, std::uint64_t seed);

/// Random POVM with `outcomes` elements: F_i = S^{-1/2} A_i S^{-1/2} with
/// A_i = G_i G_i^+ Ginibre and S = sum_i A_i.
std::vector<Mat> random_povm(int dim, int outcomes, std::uint64_t seed);

}  // namespace qnogo
