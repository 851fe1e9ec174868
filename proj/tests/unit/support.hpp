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


// Small independent oracles shared by the unit suites. Nothing here calls
// into the library's numerical helpers; expected values are computed with
// plain loops so that a bug in the library cannot hide behind itself.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qnogo/hilbert.hpp"

namespace qtest {

using qnogo::Complex;
using qnogo::Mat;
using qnogo::StateVector;
using qnogo::Vec;

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline StateVector ket(std::initializer_list<Complex> amps) {
  Vec v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (Complex a : amps) v(i++) = a;
  return StateVector::normalize(v);
}

inline StateVector zero() { return ket({1.0, 0.0}); }
inline StateVector one() { return ket({0.0, 1.0}); }
inline StateVector plus() { return ket({1.0, 1.0}); }
inline StateVector minus() { return ket({1.0, -1.0}); }

inline Mat outer(const Vec& a, const Vec& b) {
  Mat m(a.size(), b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) m(i, j) = a(i) * std::conj(b(j));
  }
  return m;
}

inline Mat proj(const StateVector& v) { return outer(v.amplitudes(), v.amplitudes()); }

inline Mat naive_kron(const Mat& a, const Mat& b) {
  Mat m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

inline double max_entry(const Mat& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out = std::max(out, std::abs(m(i, j)));
  return out;
}

inline Complex naive_inner(const Vec& a, const Vec& b) {
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::conj(a(i)) * b(i);
  return s;
}

inline double naive_fidelity(const Vec& a, const Vec& b) {
  return std::norm(naive_inner(a, b)) / (naive_inner(a, a).real() * naive_inner(b, b).real());
}

// Eigenvalues of a 2x2 Hermitian matrix in ascending order.
inline std::pair<double, double> eig2(const Mat& m) {
  const double t = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const double d = 0.5 * (m(0, 0).real() - m(1, 1).real());
  const double r = std::sqrt(d * d + std::norm(m(0, 1)));
  return {t - r, t + r};
}

}  // namespace qtest
