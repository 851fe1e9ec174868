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

#include "qnogo/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace qnogo {

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(Vec amplitudes, double tol)
    : amps_(std::move(amplitudes)), normalized_(true) {
  if (amps_.size() == 0) throw Error("StateVector: dimension must be positive");
  const double dev = std::abs(amps_.norm() - 1.0);
  if (!(dev <= tol)) {
    throw Error("StateVector: norm deviates from 1 by " + fmt_double(dev));
  }
}

StateVector StateVector::unnormalized(Vec amplitudes) {
  if (amplitudes.size() == 0) {
    throw Error("StateVector: dimension must be positive");
  }
  return StateVector(std::move(amplitudes), false);
}

StateVector StateVector::basis(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) {
    throw Error("StateVector::basis: index out of range");
  }
  Vec v = Vec::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v), true);
}

StateVector StateVector::normalize(const Vec& amplitudes) {
  const double n = amplitudes.norm();
  if (amplitudes.size() == 0 || !(n > 1e-300)) {
    throw Error("StateVector::normalize: zero vector");
  }
  return StateVector(amplitudes / n, true);
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw Error("inner: dimension mismatch");
  return amps_.dot(other.amps_);  // Eigen's dot conjugates the left operand
}

// ------------------------------------------------------------------------ Ray

Ray::Ray(Mat projector, double tol) : proj_(std::move(projector)) {
  if (proj_.rows() == 0 || proj_.rows() != proj_.cols()) {
    throw Error("Ray: projector must be square and non-empty");
  }
  if (max_abs_diff(proj_, proj_.adjoint()) > tol) {
    throw Error("Ray: projector is not Hermitian");
  }
  if (max_abs_diff(proj_ * proj_, proj_) > tol) {
    throw Error("Ray: projector is not idempotent");
  }
  if (std::abs(proj_.trace() - Complex(1.0)) > tol) {
    throw Error("Ray: projector trace is not 1");
  }
}

StateVector Ray::representative() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (proj_ + proj_.adjoint()));
  Vec v = es.eigenvectors().col(dim() - 1);
  // Rotate the first amplitude that is clearly nonzero onto the real axis.
  const double cut = 1e-8 * v.cwiseAbs().maxCoeff();
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cut) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      break;
    }
  }
  return StateVector::normalize(v);
}

// ------------------------------------------------------------ DensityOperator

DensityOperator::DensityOperator(Mat matrix, bool subnormalized, double tol)
    : m_(std::move(matrix)), subnormalized_(subnormalized) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw Error("DensityOperator: matrix must be square and non-empty");
  }
  if (max_abs_diff(m_, m_.adjoint()) > tol) {
    throw Error("DensityOperator: matrix is not Hermitian");
  }
  const double lo = hermitian_eigenvalues(m_)(0);
  if (lo < -tol) {
    throw Error("DensityOperator: negative eigenvalue " + fmt_double(lo));
  }
  const double tr = m_.trace().real();
  if (tr > 1.0 + tol) throw Error("DensityOperator: trace exceeds 1");
  if (!subnormalized_ && tr < 1.0 - tol) {
    throw Error("DensityOperator: trace below 1 without subnormalized flag");
  }
}

DensityOperator DensityOperator::from_ray(const Ray& r) {
  return DensityOperator(r.projector(), false);
}

DensityOperator DensityOperator::from_vector(const StateVector& v) {
  const Vec& a = v.amplitudes();
  return DensityOperator(a * a.adjoint(), !v.is_normalized());
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  if (dim <= 0) throw Error("maximally_mixed: dimension must be positive");
  return DensityOperator(Mat::Identity(dim, dim) / double(dim), false);
}

// ----------------------------------------------------------------- GramMatrix

double GramMatrix::smallest_eigenvalue() const {
  return hermitian_eigenvalues(g_)(0);
}

int GramMatrix::rank(double tol) const {
  const RealVec ev = hermitian_eigenvalues(g_);
  const double top = std::max(ev(ev.size() - 1), 0.0);
  const double cut = tol * top;
  return static_cast<int>((ev.array() > cut).count());
}

// ----------------------------------------------------------------- operations

Ray ray_from_vector(const StateVector& v, double tol) {
  if (!(std::abs(v.norm() - 1.0) <= tol)) {
    throw Error("ray_from_vector: input is zero or unnormalized");
  }
  const Vec& a = v.amplitudes();
  return Ray(a * a.adjoint(), std::max(tol, 1e-12));
}

double overlap_probability(const Ray& p, const Ray& q) {
  if (p.dim() != q.dim()) throw Error("overlap_probability: dimension mismatch");
  const double t = (p.projector() * q.projector()).trace().real();
  return std::clamp(t, 0.0, 1.0);
}

StateVector rephase(const StateVector& v, double gamma) {
  const Vec out = v.amplitudes() * std::polar(1.0, gamma);
  return v.is_normalized() ? StateVector(out, 1e-9) : StateVector::unnormalized(out);
}

GramMatrix gram_matrix(std::span<const StateVector> vectors) {
  if (vectors.empty()) throw Error("gram_matrix: empty sequence");
  const Mat cols = column_matrix(vectors);
  return GramMatrix(cols.adjoint() * cols);
}

IndependenceReport linear_independence(std::span<const StateVector> vectors,
                                       double tol) {
  if (vectors.empty()) throw Error("linear_independence: empty sequence");
  const Mat cols = column_matrix(vectors);
  const RealVec sv = singular_values(cols);
  const int m = static_cast<int>(vectors.size());
  const double top = sv.size() ? sv(0) : 0.0;

  IndependenceReport rep;
  rep.rank = static_cast<int>((sv.array() > tol * top).count());
  rep.smallest_singular_value = (sv.size() < m) ? 0.0 : sv(sv.size() - 1);
  rep.independent = rep.rank == m && rep.smallest_singular_value > tol;
  return rep;
}

StateVector random_state(int dim, std::uint64_t seed) {
  if (dim <= 0) throw Error("random_state: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return StateVector::normalize(v);
}

// -------------------------------------------------------------------- helpers

RealVec hermitian_eigenvalues(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.adjoint()),
                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

RealVec singular_values(const Mat& a) {
  if (a.size() == 0) return RealVec();
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues();
}

Mat column_matrix(std::span<const StateVector> vectors) {
  if (vectors.empty()) return Mat();
  const int d = vectors.front().dim();
  Mat cols(d, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].dim() != d) throw Error("dimension mismatch in vector family");
    cols.col(static_cast<Eigen::Index>(j)) = vectors[j].amplitudes();
  }
  return cols;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double operator_norm_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error("operator_norm_diff: shape mismatch");
  }
  const RealVec sv = singular_values(a - b);
  return sv.size() ? sv(0) : 0.0;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(a.inner(b));
}

double trace_distance(const Mat& a, const Mat& b) {
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

Mat partial_trace_first(const Mat& rho, int da, int db) {
  if (rho.rows() != da * db || rho.cols() != da * db) {
    throw Error("partial_trace_first: shape mismatch");
  }
  Mat out = Mat::Zero(db, db);
  for (int a = 0; a < da; ++a) out += rho.block(a * db, a * db, db, db);
  return out;
}

Mat partial_trace_second(const Mat& rho, int da, int db) {
  if (rho.rows() != da * db || rho.cols() != da * db) {
    throw Error("partial_trace_second: shape mismatch");
  }
  Mat out(da, da);
  for (int a = 0; a < da; ++a) {
    for (int c = 0; c < da; ++c) {
      out(a, c) = rho.block(a * db, c * db, db, db).trace();
    }
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace qnogo
