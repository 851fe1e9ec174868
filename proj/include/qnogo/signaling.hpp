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
#include <optional>
#include <span>
#include <vector>

#include "qnogo/channels.hpp"
#include "qnogo/hilbert.hpp"

namespace qnogo {

/// Pure-state decomposition sum_i w_i |v_i><v_i| of a mixed state.
class Ensemble {
 public:
  Ensemble(std::vector<double> weights, std::vector<StateVector> states);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<StateVector>& states() const { return states_; }
  int size() const { return static_cast<int>(states_.size()); }
  int dim() const { return states_.front().dim(); }
  Mat average() const;

 private:
  std::vector<double> weights_;
  std::vector<StateVector> states_;
};

enum class OffSetPolicy {
  zero,              ///< never succeeds off the set
  overlap_weighted,  ///< succeeds with max_j p_j |<psi_j|state>|^2
};

/// Counterfactual probabilistic cloner for a known finite set S: on a
/// member psi_j it maps |psi_j>|0> -> |psi_j>|psi_j> with probability p_j.
class CloneOracle {
 public:
  CloneOracle(std::vector<Ray> set, std::vector<double> success_probs,
              OffSetPolicy policy = OffSetPolicy::zero);

  const std::vector<Ray>& set() const { return set_; }
  const std::vector<double>& success_probs() const { return probs_; }
  OffSetPolicy policy() const { return policy_; }

  /// Exact success probability on `state`; membership means fidelity
  /// above 1 - 1e-9 with some element of S.
  double success_probability(const Ray& state) const;

 private:
  std::vector<Ray> set_;
  std::vector<double> probs_;
  OffSetPolicy policy_;
};

struct CloneOutcome {
  bool success = false;
  std::optional<Ray> doubled;  ///< |psi>|psi> on success
};

CloneOutcome clone_attempt(const CloneOracle& oracle, const Ray& state,
                           std::uint64_t seed);

/// |Omega> in C^dim_a (x) C^dim_b, amplitude index a * dim_b + b.
struct Purification {
  int dim_a = 0;
  int dim_b = 0;
  Vec amplitudes;

  /// Omega_{ab} as a dim_a x dim_b matrix.
  Mat coefficient_matrix() const;
  Mat reduced_b() const;
};

/// sum_i sqrt(l_i) |i>_A |e_i>_B over the nonzero eigenpairs of rho_B, so
/// dim_a equals the rank of rho_B.
Purification purify(const DensityOperator& rho_b);

/// Alice POVM steering Bob to `target` (HJW construction).
///
/// Convention: write M = Omega^T (dim_b x dim_a). Alice's element E leaves
/// Bob in M E^T M^+ (unnormalized), so Bob's states are reached through the
/// transpose of Alice's effect. Equivalently, measuring A in a basis {|a_i>}
/// on sum_i sqrt(l_i)|i>|e_i> steers B through the complex-conjugated
/// amplitudes of |a_i>. We take E_k^T = M^+ (w_k |v_k><v_k|) M^{+dagger}.
std::vector<Mat> steering_measurement(const Purification& omega, const Ensemble& target);

/// Bob's unnormalized conditional states M E_k^T M^+, one per POVM element.
std::vector<Mat> conditional_states(const Purification& omega, std::span<const Mat> povm);

struct SteeringScenario {
  DensityOperator rho_b;
  Ensemble ensemble0;
  Ensemble ensemble1;
  Purification purification;
  std::vector<Mat> povm0;
  std::vector<Mat> povm1;
};

struct SteeringCheck {
  double max_average_error = 0.0;       ///< |avg(ensemble_b) - rho_B|
  double max_completeness_error = 0.0;  ///< |sum E - I|
  double min_element_eigenvalue = 0.0;
  double max_weight_error = 0.0;
  double max_fidelity_deficit = 0.0;  ///< 1 - <v_k|rho_k|v_k>/tr rho_k

  bool ok() const {
    return max_average_error <= 1e-10 && max_completeness_error <= 1e-10 &&
           min_element_eigenvalue >= -1e-10 && max_weight_error <= 1e-9 &&
           max_fidelity_deficit <= 1e-9;
  }
};

/// Builds rho_B from ensemble0, purifies it and derives both Alice POVMs.
/// Throws if the ensembles do not share an average or steering fails.
SteeringScenario make_steering_scenario(Ensemble ensemble0, Ensemble ensemble1);
SteeringCheck check_steering(const SteeringScenario& s);

/// rho_B = I/2 with ensemble0 = {1/2: |0>, 1/2: |1>}, ensemble1 = {1/2: |+>, 1/2: |->}.
SteeringScenario canonical_steering_scenario();
/// S = {|0>, |1>, |+>}, p = 1/2 each, zero off-set policy.
CloneOracle canonical_clone_oracle();

struct SignalingGap {
  double p0 = 0.0;
  double p1 = 0.0;
  /// Trace distance between Bob's unconditional states under the two
  /// Alice measurements.
  double bob_state_distance = 0.0;
};

SignalingGap signaling_gap(const SteeringScenario& s, const CloneOracle& oracle);

/// Fraction of successful clone attempts over `rounds` simulated runs in
/// which Alice measures povm_bit and Bob feeds his conditional state to
/// the oracle.
double simulate_success_rate(const SteeringScenario& s, const CloneOracle& oracle,
                             int bit, int rounds, std::uint64_t seed);

struct DecodeResult {
  int repetitions = 0;
  int trials = 0;
  double error_rate = 0.0;      ///< empirical
  double exact_error = 0.0;     ///< binomial evaluation of the same decoder
  double chernoff_bound = 0.0;  ///< exp(-R (P0 - P1)^2 / 2)
};

/// Repetition decoder: per trial a uniformly random hidden bit, R rounds,
/// and a threshold of R (P0 + P1)/2 on Bob's success count. Trials run in
/// parallel with per-trial seeds mix_seed(seed, t); the result does not
/// depend on the worker count.
DecodeResult decode_bit(const SteeringScenario& s, const CloneOracle& oracle,
                        int repetitions, int trials, std::uint64_t seed,
                        unsigned workers = 0);

/// Error of the midpoint-threshold decoder for success rates (p0, p1).
double decode_error_exact(double p0, double p1, int repetitions);

/// Total-variation distance between Bob's outcome statistics under Alice's
/// two measurements when Bob applies `ch` and then measures `bob_povm`.
double no_signaling_gap(const SteeringScenario& s, const KrausChannel& ch,
                        std::span<const Mat> bob_povm);

}  // namespace qnogo
