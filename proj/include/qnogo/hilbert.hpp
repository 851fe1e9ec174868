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

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qnogo {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

/// Absolute tolerance on unit-scale quantities used when a call does not
/// supply its own.
inline constexpr double kDefaultTol = 1e-10;

/// Raised for every contract violation in the library (bad dimensions,
/// broken promises, unnormalized inputs, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector in C^dim. Normalized vectors are the default; unnormalized ones
/// must be requested explicitly and carry the flag with them.
class StateVector {
 public:
  /// Throws unless `amplitudes` has unit norm within `tol`.
  explicit StateVector(Vec amplitudes, double tol = kDefaultTol);

  static StateVector unnormalized(Vec amplitudes);
  static StateVector basis(int dim, int index);
  /// Normalizes `amplitudes`; throws on the zero vector.
  static StateVector normalize(const Vec& amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vec& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_(i); }
  bool is_normalized() const { return normalized_; }
  double norm() const { return amps_.norm(); }

  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  StateVector(Vec amplitudes, bool normalized)
      : amps_(std::move(amplitudes)), normalized_(normalized) {}

  Vec amps_;
  bool normalized_ = true;
};

/// Rank-one orthogonal projector |v><v| for a unit vector v.
class Ray {
 public:
  /// Validates Hermiticity, idempotence and unit trace within `tol`.
  explicit Ray(Mat projector, double tol = kDefaultTol);

  int dim() const { return static_cast<int>(proj_.rows()); }
  const Mat& projector() const { return proj_; }

  /// Deterministic representative: top eigenvector with its first nonzero
  /// amplitude rotated onto the positive real axis.
  StateVector representative() const;

 private:
  Mat proj_;
};

/// Positive operator with trace <= 1. Trace strictly below one is allowed
/// only when the subnormalized flag is set.
class DensityOperator {
 public:
  DensityOperator(Mat matrix, bool subnormalized, double tol = kDefaultTol);

  static DensityOperator from_ray(const Ray& r);
  static DensityOperator from_vector(const StateVector& v);
  static DensityOperator maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }
  bool subnormalized() const { return subnormalized_; }
  double trace() const { return m_.trace().real(); }

 private:
  Mat m_;
  bool subnormalized_ = false;
};

class GramMatrix {
 public:
  explicit GramMatrix(Mat entries) : g_(std::move(entries)) {}
  int size() const { return static_cast<int>(g_.rows()); }
  const Mat& entries() const { return g_; }
  Complex operator()(int i, int j) const { return g_(i, j); }
  double smallest_eigenvalue() const;
  /// Eigenvalues above tol * largest eigenvalue. Roundoff in G is of order
  /// eps * |G|, so squaring the singular-value cutoff would count noise.
  int rank(double tol = kDefaultTol) const;

 private:
  Mat g_;
};

struct IndependenceReport {
  bool independent = false;
  int rank = 0;
  /// Smallest of the `count` singular values of the column matrix; zero
  /// when there are more vectors than dimensions.
  double smallest_singular_value = 0.0;
};

Ray ray_from_vector(const StateVector& v, double tol = kDefaultTol);
double overlap_probability(const Ray& p, const Ray& q);
StateVector rephase(const StateVector& v, double gamma);
GramMatrix gram_matrix(std::span<const StateVector> vectors);

/// Rank and independence from the singular values of [v_1 ... v_m]. A
/// singular value counts toward the rank when it exceeds tol * sigma_max.
IndependenceReport linear_independence(std::span<const StateVector> vectors,
                                       double tol = kDefaultTol);

/// Haar-random unit vector from normalized complex Gaussian amplitudes.
StateVector random_state(int dim, std::uint64_t seed);

// Shared numerical helpers.

/// Eigenvalues (ascending) of the Hermitian part (A + A^dagger)/2.
RealVec hermitian_eigenvalues(const Mat& a);
/// Singular values (descending) of `a`.
RealVec singular_values(const Mat& a);
/// Columns are the amplitudes of `vectors`; all must share one dimension.
Mat column_matrix(std::span<const StateVector> vectors);
/// Kronecker product a (x) b.
Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);
/// max |a_ij - b_ij|
double max_abs_diff(const Mat& a, const Mat& b);
/// Largest singular value of a - b.
double operator_norm_diff(const Mat& a, const Mat& b);
/// |<a|b>|^2 for unit vectors (rays compared by fidelity).
double fidelity(const StateVector& a, const StateVector& b);
/// Trace norm distance (1/2)||a - b||_1 for Hermitian operators.
double trace_distance(const Mat& a, const Mat& b);
/// Tr_A or Tr_B of an operator on C^da (x) C^db.
Mat partial_trace_first(const Mat& rho, int da, int db);
Mat partial_trace_second(const Mat& rho, int da, int db);

/// SplitMix64 finalizer; used to derive independent sub-seeds from a master
/// seed and a counter (seed_i = mix(master + (i + 1) * golden)).
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t counter);

}  // namespace qnogo
