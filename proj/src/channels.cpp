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

#include "qnogo/channels.hpp"

#include <cmath>
#include <random>

namespace qnogo {

namespace {

Mat ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

KrausChannel::KrausChannel(int dim_in, int dim_out, std::vector<Mat> kraus_ops)
    : dim_in_(dim_in), dim_out_(dim_out), ops_(std::move(kraus_ops)) {
  if (dim_in_ <= 0 || dim_out_ <= 0) {
    throw Error("KrausChannel: dimensions must be positive");
  }
  if (ops_.empty()) throw Error("KrausChannel: empty Kraus list");
  for (const Mat& m : ops_) {
    if (m.rows() != dim_out_ || m.cols() != dim_in_) {
      throw Error("KrausChannel: Kraus operator has wrong shape");
    }
  }
}

KrausChannel KrausChannel::cptni(int dim_in, int dim_out,
                                 std::vector<Mat> kraus_ops, double tol) {
  KrausChannel ch(dim_in, dim_out, std::move(kraus_ops));
  bool nonzero = false;
  for (const Mat& m : ch.ops_) nonzero = nonzero || m.cwiseAbs().maxCoeff() > 0.0;
  if (!nonzero) throw Error("KrausChannel: all Kraus operators are zero");
  const CptniReport rep = is_cptni(ch, tol);
  if (!rep.ok) throw Error("KrausChannel: sum of M^+M exceeds identity");
  return ch;
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel(dim, dim, {Mat::Identity(dim, dim)});
}

Mat KrausChannel::effect() const {
  Mat e = Mat::Zero(dim_in_, dim_in_);
  for (const Mat& m : ops_) e += m.adjoint() * m;
  return e;
}

Mat KrausChannel::apply_raw(const Mat& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    throw Error("KrausChannel::apply: dimension mismatch");
  }
  Mat out = Mat::Zero(dim_out_, dim_out_);
  for (const Mat& m : ops_) out += m * x * m.adjoint();
  return out;
}

double ChoiMatrix::smallest_eigenvalue() const {
  return hermitian_eigenvalues(m_)(0);
}

Mat ChoiMatrix::apply(const Mat& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    throw Error("ChoiMatrix::apply: dimension mismatch");
  }
  Mat out = Mat::Zero(dim_out_, dim_out_);
  // Tr_in[(x^T (x) I) C] = sum_ij x_ij C_ij where C_ij is the (i,j) block.
  for (int i = 0; i < dim_in_; ++i) {
    for (int j = 0; j < dim_in_; ++j) {
      out += x(i, j) * m_.block(i * dim_out_, j * dim_out_, dim_out_, dim_out_);
    }
  }
  return out;
}

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.dim_in()) throw Error("apply: dimension mismatch");
  Mat out = ch.apply_raw(rho.matrix());
  out = 0.5 * (out + out.adjoint()).eval();
  // Throws when the channel increases the trace of rho (not CPTNI).
  return DensityOperator(std::move(out), true, 1e-9);
}

double success_probability(const KrausChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.dim_in()) throw Error("success_probability: dimension mismatch");
  return ch.apply_raw(rho.matrix()).trace().real();
}

CptniReport is_cptni(const KrausChannel& ch, double tol) {
  const RealVec ev = hermitian_eigenvalues(ch.effect());
  CptniReport rep;
  rep.max_eigenvalue = ev(ev.size() - 1);
  rep.ok = rep.max_eigenvalue <= 1.0 + tol;
  return rep;
}

ChoiMatrix choi_matrix(const KrausChannel& ch) {
  const int din = ch.dim_in();
  const int dout = ch.dim_out();
  // C = sum_k vec(M_k) vec(M_k)^+ with vec stacking input index first.
  Mat c = Mat::Zero(din * dout, din * dout);
  Vec v(din * dout);
  for (const Mat& m : ch.kraus_ops()) {
    for (int i = 0; i < din; ++i) v.segment(i * dout, dout) = m.col(i);
    c += v * v.adjoint();
  }
  return ChoiMatrix(din, dout, std::move(c));
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<Mat> ops;
  ops.reserve(a.size() * b.size());
  for (const Mat& x : a.kraus_ops()) {
    for (const Mat& y : b.kraus_ops()) ops.push_back(kron(x, y));
  }
  return KrausChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(),
                      std::move(ops));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (first.dim_out() != second.dim_in()) throw Error("compose: dimension mismatch");
  std::vector<Mat> ops;
  ops.reserve(first.size() * second.size());
  for (const Mat& s : second.kraus_ops()) {
    for (const Mat& f : first.kraus_ops()) ops.push_back(s * f);
  }
  return KrausChannel(first.dim_in(), second.dim_out(), std::move(ops));
}

KrausChannel random_channel(int dim_in, int dim_out, int n_kraus, double scale,
                            std::uint64_t seed) {
  if (n_kraus <= 0 || !(scale > 0.0 && scale <= 1.0)) {
    throw Error("random_channel: need n_kraus >= 1 and scale in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  const int rows = n_kraus * dim_out;
  const Mat g = ginibre(rows, dim_in, rng);
  // Polar factor of g is an isometry when rows >= dim_in; otherwise it is a
  // co-isometry, still contractive, so the channel stays trace-nonincreasing.
  Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Mat iso = svd.matrixU() * svd.matrixV().adjoint();
  std::vector<Mat> ops;
  ops.reserve(n_kraus);
  for (int k = 0; k < n_kraus; ++k) {
    ops.push_back(std::sqrt(scale) * iso.block(k * dim_out, 0, dim_out, dim_in));
  }
  return KrausChannel(dim_in, dim_out, std::move(ops));
}

DensityOperator random_density(int dim, std::uint64_t seed) {
  if (dim <= 0) throw Error("random_density: dimension must be positive");
  std::mt19937_64 rng(seed);
  const Mat g = ginibre(dim, dim, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(0.5 * (rho + rho.adjoint()), false);
}

std::vector<Mat> random_povm(int dim, int outcomes, std::uint64_t seed) {
  if (dim <= 0 || outcomes <= 0) throw Error("random_povm: bad arguments");
  std::mt19937_64 rng(seed);
  std::vector<Mat> a;
  Mat s = Mat::Zero(dim, dim);
  for (int i = 0; i < outcomes; ++i) {
    const Mat g = ginibre(dim, dim, rng);
    a.push_back(g * g.adjoint());
    s += a.back();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (s + s.adjoint()));
  const Mat inv_sqrt = es.eigenvectors() *
                       es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                       es.eigenvectors().adjoint();
  for (Mat& x : a) {
    x = inv_sqrt * x * inv_sqrt;
    x = 0.5 * (x + x.adjoint()).eval();
  }
  return a;
}

}  // namespace qnogo
