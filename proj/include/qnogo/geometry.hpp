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

#include <span>
#include <vector>

#include "qnogo/channels.hpp"
#include "qnogo/hilbert.hpp"
#include "qnogo/superposer.hpp"

namespace qnogo {

/// Polar angle x in [0, pi], azimuth y in [0, 2 pi).
struct BlochPoint {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const BlochPoint&) const = default;
};

/// A cos x + B sin x cos y + C sin x sin y + D = 0, stored with
/// A^2 + B^2 + C^2 = 1 and the first non-negligible of (A, B, C) positive.
class CircleConstraint {
 public:
  CircleConstraint(double a, double b, double c, double d);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  /// Signed residual at a point.
  double residual(const BlochPoint& pt) const;

 private:
  double a_, b_, c_, d_;
};

/// cos(x/2)|0> + e^{-iy} sin(x/2)|1>
StateVector bloch_state(const BlochPoint& pt);

/// Angles of a normalized qubit, inverse of bloch_state up to global phase.
BlochPoint bloch_point(const StateVector& v);

/// (r_x, r_y, r_z) of a normalized qubit.
Eigen::Vector3d bloch_vector(const StateVector& v);

struct ScanGrid {
  int nx = 400;  ///< x_i = pi i / nx, i in [0, nx)
  int ny = 800;  ///< y_j = 2 pi j / ny, j in [0, ny)
};

/// Grid points where the channel maps P_psi (x) P_anchor to a nonzero,
/// rank-one output lying in the family alpha psi + beta e^{i theta} anchor.
/// Inputs whose ray coincides with the anchor are skipped: there the family
/// collapses to a single ray and every psi-preserving map "succeeds".
/// Rows are scanned in parallel; the returned order is row-major.
std::vector<BlochPoint> success_set_scan(const KrausChannel& ch, const StateVector& anchor,
                                         const SuperpositionWeights& w, ScanGrid grid,
                                         double tol, unsigned workers = 0);

/// max_theta fidelity between `v` and alpha psi + beta e^{i theta} phi, by a
/// theta grid refined with Brent's method.
double best_family_fidelity(const StateVector& v, const StateVector& psi,
                            const StateVector& phi, const SuperpositionWeights& w);

struct CircleFit {
  CircleConstraint constraint;
  double max_residual = 0.0;
};

/// Total-least-squares plane through the points in (cos x, sin x cos y,
/// sin x sin y) coordinates. Throws for fewer than 4 points or when all
/// points coincide.
CircleFit fit_circle_constraint(std::span<const BlochPoint> points);

/// The circle of qubits psi with |<chi|psi>|^2 = c, 0 < c < 1.
CircleConstraint fixed_overlap_circle(const StateVector& chi, double c);

/// `count` evenly spaced points on the circle cut by the constraint.
std::vector<BlochPoint> sample_circle(const CircleConstraint& k, int count);

}  // namespace qnogo
