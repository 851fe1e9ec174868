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

#include "qnogo/channels.hpp"
#include "qnogo/hilbert.hpp"

namespace qnogo {

/// Branch amplitudes (alpha, beta): both nonzero, |alpha|^2 + |beta|^2 = 1.
class SuperpositionWeights {
 public:
  SuperpositionWeights(Complex alpha, Complex beta, double tol = kDefaultTol);
  static SuperpositionWeights balanced();

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }

 private:
  Complex alpha_;
  Complex beta_;
};

/// Known reference ray chi and the promised overlaps c1 = |<chi|psi>|^2,
/// c2 = |<chi|phi>|^2, both in (0, 1].
class OverlapPromise {
 public:
  OverlapPromise(Ray chi, double c1, double c2);

  const Ray& chi() const { return chi_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }

  /// Throws unless psi and phi meet the promised overlaps within `tol`.
  void check(const StateVector& psi, const StateVector& phi,
             double tol = 1e-9) const;

 private:
  Ray chi_;
  double c1_;
  double c2_;
};

/// The chi-lift: rho -> rho|chi> / sqrt(<chi|rho|chi>). Makes <chi|lift> real
/// and positive, which fixes one representative per ray on the domain
/// {rho : <chi|rho|chi> > threshold}.
class PhaseConvention {
 public:
  explicit PhaseConvention(StateVector chi, double threshold = 1e-12);

  const StateVector& chi() const { return chi_; }
  double threshold() const { return threshold_; }
  bool in_domain(const Ray& rho) const;

 private:
  StateVector chi_;
  double threshold_;
};

struct InterferenceTerms {
  Mat diagonal;  ///< |alpha|^2 P_psi + |beta|^2 P_phi
  Mat cross;     ///< alpha beta* e^{-i theta} |psi><phi| + h.c.
  double norm_sq = 0.0;
};

struct ReferenceSuperposition {
  Ray ray;
  StateVector unnormalized_vector;
};

struct ProtocolProbabilities {
  double simulated = 0.0;
  double formula = 0.0;
};

/// Ray of (alpha|psi> + beta e^{i theta}|phi>)/N_theta with psi, phi the
/// deterministic representatives of p and q.
Ray superposition_family_member(const Ray& p, const Ray& q,
                                const SuperpositionWeights& w, double theta);

InterferenceTerms interference_expansion(const StateVector& psi,
                                         const StateVector& phi,
                                         const SuperpositionWeights& w,
                                         double theta);

StateVector lift(const PhaseConvention& conv, const Ray& rho);

/// <lift(rho1)|lift(rho2)>
Complex convention_overlap(const PhaseConvention& conv, const Ray& rho1,
                           const Ray& rho2);

/// alpha kappa_phi |psi> + beta kappa_psi |phi> with kappa_x = <chi|x>/|<chi|x>|.
ReferenceSuperposition reference_superposition(const StateVector& chi,
                                               const StateVector& psi,
                                               const StateVector& phi,
                                               const SuperpositionWeights& w);

/// The same operator written with projectors only:
///   |a|^2 P_psi + |b|^2 P_phi + a b* P_psi P_chi P_phi / sqrt(c_psi c_phi) + h.c.
Mat reference_superposition_projector(const Ray& chi, const Ray& p, const Ray& q,
                                      const SuperpositionWeights& w);

/// Single-Kraus channel H (x) H -> H,
///   K = s [ (alpha/sqrt c2)(I (x) <chi|) + (beta/sqrt c1)(<chi| (x) I) ],
///   s = sqrt(c1 c2 / (c1 + c2)),
/// whose output on |psi>|phi> is s times the reference superposition.
KrausChannel build_reference_protocol(const StateVector& chi,
                                      const OverlapPromise& promise,
                                      const SuperpositionWeights& w);

/// Exact largest eigenvalue of K^+K for the compiled protocol:
/// s^2 max(|a|^2 + |b|^2, |a + b|^2) with a = alpha/sqrt c2, b = beta/sqrt c1.
double reference_protocol_max_eigenvalue(const OverlapPromise& promise,
                                         const SuperpositionWeights& w);

ProtocolProbabilities protocol_success_probability(
    const KrausChannel& ch, const StateVector& psi, const StateVector& phi,
    const OverlapPromise& promise, const SuperpositionWeights& w);

}  // namespace qnogo
