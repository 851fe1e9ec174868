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

#include "qnogo/superposer.hpp"

#include <algorithm>
#include <cmath>

namespace qnogo {

namespace {

constexpr double kOverlapFloor = 1e-12;

Complex unit_phase(Complex z) { return z / std::abs(z); }

}  // namespace

SuperpositionWeights::SuperpositionWeights(Complex alpha, Complex beta, double tol)
    : alpha_(alpha), beta_(beta) {
  if (std::abs(alpha) <= kOverlapFloor || std::abs(beta) <= kOverlapFloor) {
    throw Error("SuperpositionWeights: alpha and beta must be nonzero");
  }
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol) {
    throw Error("SuperpositionWeights: |alpha|^2 + |beta|^2 != 1");
  }
}

SuperpositionWeights SuperpositionWeights::balanced() {
  return {Complex(M_SQRT1_2), Complex(M_SQRT1_2)};
}

OverlapPromise::OverlapPromise(Ray chi, double c1, double c2)
    : chi_(std::move(chi)), c1_(c1), c2_(c2) {
  if (!(c1 > kOverlapFloor && c1 <= 1.0) || !(c2 > kOverlapFloor && c2 <= 1.0)) {
    throw Error("OverlapPromise: c1 and c2 must lie in (0, 1]");
  }
}

void OverlapPromise::check(const StateVector& psi, const StateVector& phi,
                           double tol) const {
  const double o1 = overlap_probability(chi_, ray_from_vector(psi, 1e-9));
  const double o2 = overlap_probability(chi_, ray_from_vector(phi, 1e-9));
  if (std::abs(o1 - c1_) > tol || std::abs(o2 - c2_) > tol) {
    throw Error("OverlapPromise: inputs violate the promised overlaps");
  }
}

PhaseConvention::PhaseConvention(StateVector chi, double threshold)
    : chi_(std::move(chi)), threshold_(threshold) {
  if (!chi_.is_normalized()) throw Error("PhaseConvention: reference must be normalized");
}

bool PhaseConvention::in_domain(const Ray& rho) const {
  if (rho.dim() != chi_.dim()) return false;
  const Vec& c = chi_.amplitudes();
  return c.dot(rho.projector() * c).real() > threshold_;
}

Ray superposition_family_member(const Ray& p, const Ray& q,
                                const SuperpositionWeights& w, double theta) {
  if (p.dim() != q.dim()) throw Error("superposition_family_member: dimension mismatch");
  const Vec psi = p.representative().amplitudes();
  const Vec phi = q.representative().amplitudes();
  const Vec v = w.alpha() * psi + w.beta() * std::polar(1.0, theta) * phi;
  if (v.norm() < kOverlapFloor) {
    throw Error("superposition_family_member: degenerate normalization");
  }
  return ray_from_vector(StateVector::normalize(v), 1e-9);
}

InterferenceTerms interference_expansion(const StateVector& psi,
                                         const StateVector& phi,
                                         const SuperpositionWeights& w,
                                         double theta) {
  if (psi.dim() != phi.dim()) throw Error("interference_expansion: dimension mismatch");
  const Vec& a = psi.amplitudes();
  const Vec& b = phi.amplitudes();
  const Complex ab = w.alpha() * std::conj(w.beta()) * std::polar(1.0, -theta);

  InterferenceTerms t;
  t.diagonal = std::norm(w.alpha()) * (a * a.adjoint()) +
               std::norm(w.beta()) * (b * b.adjoint());
  const Mat half = ab * (a * b.adjoint());
  t.cross = half + half.adjoint();
  t.norm_sq = 1.0 + 2.0 * (std::conj(w.alpha()) * w.beta() *
                           std::polar(1.0, theta) * psi.inner(phi))
                              .real();
  return t;
}

StateVector lift(const PhaseConvention& conv, const Ray& rho) {
  if (rho.dim() != conv.chi().dim()) throw Error("lift: dimension mismatch");
  const Vec& c = conv.chi().amplitudes();
  const Vec proj = rho.projector() * c;
  const double weight = c.dot(proj).real();
  if (!(weight > conv.threshold())) {
    throw Error("lift: ray has vanishing overlap with the reference");
  }
  return StateVector::normalize(proj / std::sqrt(weight));
}

Complex convention_overlap(const PhaseConvention& conv, const Ray& rho1,
                           const Ray& rho2) {
  return lift(conv, rho1).inner(lift(conv, rho2));
}

ReferenceSuperposition reference_superposition(const StateVector& chi,
                                               const StateVector& psi,
                                               const StateVector& phi,
                                               const SuperpositionWeights& w) {
  if (chi.dim() != psi.dim() || chi.dim() != phi.dim()) {
    throw Error("reference_superposition: dimension mismatch");
  }
  const Complex o_psi = chi.inner(psi);
  const Complex o_phi = chi.inner(phi);
  if (std::abs(o_psi) <= kOverlapFloor || std::abs(o_phi) <= kOverlapFloor) {
    throw Error("reference_superposition: zero overlap with the reference");
  }
  const Vec v = w.alpha() * unit_phase(o_phi) * psi.amplitudes() +
                w.beta() * unit_phase(o_psi) * phi.amplitudes();
  if (v.norm() <= kOverlapFloor) {
    throw Error("reference_superposition: superposition vector vanishes");
  }
  return {ray_from_vector(StateVector::normalize(v), 1e-9),
          StateVector::unnormalized(v)};
}

Mat reference_superposition_projector(const Ray& chi, const Ray& p, const Ray& q,
                                      const SuperpositionWeights& w) {
  if (chi.dim() != p.dim() || chi.dim() != q.dim()) {
    throw Error("reference_superposition_projector: dimension mismatch");
  }
  const double cp = overlap_probability(p, chi);
  const double cq = overlap_probability(q, chi);
  if (cp <= kOverlapFloor || cq <= kOverlapFloor) {
    throw Error("reference_superposition_projector: vanishing reference overlap");
  }
  const Mat& pp = p.projector();
  const Mat& pq = q.projector();
  const Mat half = (w.alpha() * std::conj(w.beta()) / std::sqrt(cp * cq)) *
                   (pp * chi.projector() * pq);
  return std::norm(w.alpha()) * pp + std::norm(w.beta()) * pq + half +
         half.adjoint();
}

KrausChannel build_reference_protocol(const StateVector& chi,
                                      const OverlapPromise& promise,
                                      const SuperpositionWeights& w) {
  if (!chi.is_normalized()) throw Error("build_reference_protocol: chi unnormalized");
  const int d = chi.dim();
  if (promise.chi().dim() != d ||
      max_abs_diff(ray_from_vector(chi).projector(), promise.chi().projector()) > 1e-9) {
    throw Error("build_reference_protocol: chi does not match the promise");
  }
  const double c1 = promise.c1();
  const double c2 = promise.c2();
  const double s = std::sqrt(c1 * c2 / (c1 + c2));
  const Complex a = w.alpha() / std::sqrt(c2);
  const Complex b = w.beta() / std::sqrt(c1);

  // Input index i*d + j for |i>|j>.
  Mat k = Mat::Zero(d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      k(i, i * d + j) += a * std::conj(chi[j]);  // I (x) <chi|
      k(j, i * d + j) += b * std::conj(chi[i]);  // <chi| (x) I
    }
  }
  return KrausChannel(d * d, d, {s * k});
}

double reference_protocol_max_eigenvalue(const OverlapPromise& promise,
                                         const SuperpositionWeights& w) {
  const double c1 = promise.c1();
  const double c2 = promise.c2();
  const Complex a = w.alpha() / std::sqrt(c2);
  const Complex b = w.beta() / std::sqrt(c1);
  const double s2 = c1 * c2 / (c1 + c2);
  return s2 * std::max(std::norm(a) + std::norm(b), std::norm(a + b));
}

ProtocolProbabilities protocol_success_probability(
    const KrausChannel& ch, const StateVector& psi, const StateVector& phi,
    const OverlapPromise& promise, const SuperpositionWeights& w) {
  promise.check(psi, phi);
  const Vec joint = kron(psi.amplitudes(), phi.amplitudes());
  const DensityOperator input(joint * joint.adjoint(), false, 1e-9);

  // ||Psi|| does not depend on which representative of chi is used.
  const StateVector chi = promise.chi().representative();
  const ReferenceSuperposition ref = reference_superposition(chi, psi, phi, w);
  const double norm_sq = ref.unnormalized_vector.amplitudes().squaredNorm();

  ProtocolProbabilities out;
  out.simulated = success_probability(ch, input);
  out.formula = promise.c1() * promise.c2() / (promise.c1() + promise.c2()) * norm_sq;
  return out;
}

}  // namespace qnogo
