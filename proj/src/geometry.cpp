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

#include "qnogo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

#include "qnogo/parallel.hpp"

namespace qnogo {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kThetaGrid = 64;
constexpr double kRankOneRatio = 1e6;
constexpr double kSignFloor = 1e-8;

Eigen::Vector3d features(const BlochPoint& pt) {
  return {std::cos(pt.x), std::sin(pt.x) * std::cos(pt.y), std::sin(pt.x) * std::sin(pt.y)};
}

void check_range(const BlochPoint& pt) {
  if (!(pt.x >= 0.0 && pt.x <= M_PI) || !(pt.y >= 0.0 && pt.y < kTwoPi)) {
    throw Error("bloch_state: angles out of range");
  }
}

double family_fidelity(const Vec& v, const Vec& psi, const Vec& phi, Complex alpha,
                       Complex beta, double theta) {
  const Vec m = alpha * psi + beta * std::polar(1.0, theta) * phi;
  const double n2 = m.squaredNorm();
  if (n2 < 1e-24) return 0.0;
  return std::norm(v.dot(m)) / (n2 * v.squaredNorm());
}

}  // namespace

CircleConstraint::CircleConstraint(double a, double b, double c, double d) {
  const double n = std::sqrt(a * a + b * b + c * c);
  if (!(n > kSignFloor)) throw Error("CircleConstraint: A, B, C all vanish");
  a_ = a / n;
  b_ = b / n;
  c_ = c / n;
  d_ = d / n;
  for (double v : {a_, b_, c_}) {
    if (std::abs(v) > kSignFloor) {
      if (v < 0.0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
      }
      break;
    }
  }
}

double CircleConstraint::residual(const BlochPoint& pt) const {
  const Eigen::Vector3d f = features(pt);
  return a_ * f(0) + b_ * f(1) + c_ * f(2) + d_;
}

StateVector bloch_state(const BlochPoint& pt) {
  check_range(pt);
  Vec v(2);
  v << std::cos(pt.x / 2.0), std::polar(std::sin(pt.x / 2.0), -pt.y);
  return StateVector(std::move(v), 1e-12);
}

BlochPoint bloch_point(const StateVector& v) {
  if (v.dim() != 2 || !v.is_normalized()) throw Error("bloch_point: need a normalized qubit");
  const double x = 2.0 * std::acos(std::clamp(std::abs(v[0]), 0.0, 1.0));
  if (std::abs(v[0]) < 1e-15 || std::abs(v[1]) < 1e-15) return {x, 0.0};
  double y = -std::arg(v[1] / v[0]);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y = 0.0;
  return {x, y};
}

Eigen::Vector3d bloch_vector(const StateVector& v) {
  if (v.dim() != 2 || !v.is_normalized()) throw Error("bloch_vector: need a normalized qubit");
  const Complex c = std::conj(v[0]) * v[1];
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(v[0]) - std::norm(v[1])};
}

double best_family_fidelity(const StateVector& v, const StateVector& psi,
                            const StateVector& phi, const SuperpositionWeights& w) {
  const Vec& vv = v.amplitudes();
  const Vec& p = psi.amplitudes();
  const Vec& q = phi.amplitudes();
  const double step = kTwoPi / kThetaGrid;
  int best = 0;
  double best_f = -1.0;
  for (int k = 0; k < kThetaGrid; ++k) {
    const double f = family_fidelity(vv, p, q, w.alpha(), w.beta(), k * step);
    if (f > best_f) {
      best_f = f;
      best = k;
    }
  }
  auto deficit = [&](double t) { return 1.0 - family_fidelity(vv, p, q, w.alpha(), w.beta(), t); };
  const auto refined = boost::math::tools::brent_find_minima(
      deficit, (best - 1) * step, (best + 1) * step, std::numeric_limits<double>::digits / 2);
  return std::max(best_f, 1.0 - refined.second);
}

std::vector<BlochPoint> success_set_scan(const KrausChannel& ch, const StateVector& anchor,
                                         const SuperpositionWeights& w, ScanGrid grid,
                                         double tol, unsigned workers) {
  if (ch.dim_in() != 4 || ch.dim_out() != 2) {
    throw Error("success_set_scan: channel must map dimension 4 to 2");
  }
  if (anchor.dim() != 2 || !anchor.is_normalized()) {
    throw Error("success_set_scan: anchor must be a normalized qubit");
  }
  if (grid.nx <= 0 || grid.ny <= 0) throw Error("success_set_scan: empty grid");
  const Mat anchor_proj = anchor.amplitudes() * anchor.amplitudes().adjoint();

  const auto rows = parallel_map(
      static_cast<std::size_t>(grid.nx),
      [&](std::size_t i) {
        std::vector<BlochPoint> hits;
        const double x = M_PI * static_cast<double>(i) / grid.nx;
        for (int j = 0; j < grid.ny; ++j) {
          const BlochPoint pt{x, kTwoPi * j / grid.ny};
          const StateVector psi = bloch_state(pt);
          if (std::norm(anchor.inner(psi)) > 1.0 - tol) continue;

          const Mat out =
              ch.apply_raw(kron(Mat(psi.amplitudes() * psi.amplitudes().adjoint()), anchor_proj));
          const double tr = out.trace().real();
          if (!(tr > tol)) continue;
          Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(
              Eigen::Matrix2cd(0.5 * (out + out.adjoint())));
          const Eigen::Vector2d lam = es.eigenvalues();
          if (lam(0) * kRankOneRatio > lam(1)) continue;

          const StateVector v(Vec(es.eigenvectors().col(1)), 1e-9);
          if (best_family_fidelity(v, psi, anchor, w) > 1.0 - tol) hits.push_back(pt);
        }
        return hits;
      },
      workers);

  std::vector<BlochPoint> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

CircleFit fit_circle_constraint(std::span<const BlochPoint> points) {
  if (points.size() < 4) throw Error("fit_circle_constraint: need at least 4 points");
  const bool identical = std::all_of(points.begin(), points.end(), [&](const BlochPoint& p) {
    return (features(p) - features(points.front())).norm() < 1e-12;
  });
  if (identical) throw Error("fit_circle_constraint: all points coincide");

  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const BlochPoint& p : points) mean += features(p);
  mean /= static_cast<double>(points.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const BlochPoint& p : points) {
    const Eigen::Vector3d f = features(p) - mean;
    cov += f * f.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  const Eigen::Vector3d n = es.eigenvectors().col(0);

  CircleFit fit{CircleConstraint(n(0), n(1), n(2), -n.dot(mean)), 0.0};
  for (const BlochPoint& p : points) {
    fit.max_residual = std::max(fit.max_residual, std::abs(fit.constraint.residual(p)));
  }
  return fit;
}

CircleConstraint fixed_overlap_circle(const StateVector& chi, double c) {
  if (!(c > 0.0 && c < 1.0)) throw Error("fixed_overlap_circle: c must lie in (0, 1)");
  const Eigen::Vector3d r = bloch_vector(chi);
  // |<chi|psi>|^2 = (1 + r_chi . r_psi) / 2, r_psi = (sin x cos y, -sin x sin y, cos x).
  return {r(2), r(0), -r(1), -(2.0 * c - 1.0)};
}

std::vector<BlochPoint> sample_circle(const CircleConstraint& k, int count) {
  if (count <= 0) throw Error("sample_circle: count must be positive");
  const Eigen::Vector3d n(k.a(), k.b(), k.c());
  const double radius_sq = 1.0 - k.d() * k.d();
  if (radius_sq < 0.0) throw Error("sample_circle: plane misses the sphere");
  const double radius = std::sqrt(radius_sq);

  Eigen::Vector3d helper = std::abs(n(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (helper - helper.dot(n) * n).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);

  std::vector<BlochPoint> out;
  out.reserve(count);
  for (int t = 0; t < count; ++t) {
    const double phi = kTwoPi * t / count;
    const Eigen::Vector3d u = -k.d() * n + radius * (std::cos(phi) * e1 + std::sin(phi) * e2);
    const double x = std::acos(std::clamp(u(0), -1.0, 1.0));
    double y = std::atan2(u(2), u(1));
    if (y < 0.0) y += kTwoPi;
    if (y >= kTwoPi) y = 0.0;
    out.push_back({x, y});
  }
  return out;
}

}  // namespace qnogo
