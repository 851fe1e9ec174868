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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qnogo/channels.hpp"
#include "qnogo/hilbert.hpp"
#include "qnogo/superposer.hpp"

namespace qnogo {

/// sigma_min threshold below which a family is treated as linearly
/// dependent when deciding feasibility. Kept above the 1e-10 assertion
/// tolerance so decisions do not flap near the boundary.
inline constexpr double kDependenceThreshold = 1e-8;

/// Unambiguous-discrimination POVM {E_1..E_m, E_inconclusive} with
/// E_i = lambda_i |r_i><r_i| built from the reciprocal family r_i.
struct UdPovm {
  std::vector<Mat> elements;
  Mat inconclusive;
  std::vector<double> lambdas;

  int size() const { return static_cast<int>(elements.size()); }
  int dim() const { return static_cast<int>(inconclusive.rows()); }
};

/// Result of attempting to build a UD POVM. Exactly one of `povm` and the
/// dependency witness is meaningful, depending on `feasible`.
struct UdConstruction {
  bool feasible = false;
  std::optional<UdPovm> povm;
  double smallest_singular_value = 0.0;
  /// Unit-norm coefficients c with sum_j c_j |v_j> ~ 0 (infeasible only).
  Vec null_vector;
  /// || sum_j c_j |v_j> || for the reported null vector.
  double null_residual = 0.0;
};

struct UdDiagnostics {
  double max_cross = 0.0;           ///< max_{i != j} <v_j|E_i|v_j>
  double min_diagonal = 0.0;        ///< min_i <v_i|E_i|v_i>
  double completeness_error = 0.0;  ///< max |sum E + E_? - I|
  double min_element_eigenvalue = 0.0;
};

/// Biorthogonal partners r_i = sum_j (G^-1)_{ji} v_j, <r_i|v_j> = delta_ij.
/// Throws if sigma_min <= kDependenceThreshold.
std::vector<StateVector> reciprocal_family(std::span<const StateVector> vectors);

/// Uniform lambda = 1 / lambda_max(sum_i |r_i><r_i|), the largest common
/// weight that keeps the inconclusive element positive.
UdConstruction build_ud_povm(std::span<const StateVector> vectors);

UdDiagnostics check_ud_povm(const UdPovm& povm, std::span<const StateVector> family);

/// (tr E_1 rho, ..., tr E_m rho, tr E_? rho)
std::vector<double> ud_outcome_distribution(const UdPovm& povm,
                                            const DensityOperator& state);
std::vector<double> ud_outcome_distribution(const UdPovm& povm, const Mat& state);

/// Inputs psi, psi_perp, psi3 = a psi + b psi_perp (linearly dependent) and
/// a partner phi orthogonal to both, together with the output phases.
class LdliScenario {
 public:
  LdliScenario(Complex a, Complex b, std::array<double, 3> thetas,
               SuperpositionWeights weights, StateVector psi,
               StateVector psi_perp, StateVector phi, double tol = kDefaultTol);

  /// Basis |0>, |1>, |2> of C^3.
  static LdliScenario standard(Complex a, Complex b, std::array<double, 3> thetas,
                               SuperpositionWeights weights);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  const std::array<double, 3>& thetas() const { return thetas_; }
  const SuperpositionWeights& weights() const { return weights_; }
  const StateVector& psi() const { return psi_; }
  const StateVector& psi_perp() const { return psi_perp_; }
  const StateVector& phi() const { return phi_; }
  /// a psi + b psi_perp
  StateVector psi3() const;

 private:
  Complex a_;
  Complex b_;
  std::array<double, 3> thetas_;
  SuperpositionWeights weights_;
  StateVector psi_;
  StateVector psi_perp_;
  StateVector phi_;
};

/// Rephases psi -> e^{i g1} psi and psi_perp -> e^{i g2} psi_perp. The input
/// rays, including psi3, are unchanged; the coefficients become
/// a e^{-i g1}, b e^{-i g2}; the output phases stay fixed.
LdliScenario gauge_shift(const LdliScenario& s, double gamma1, double gamma2);

struct LdliOutputs {
  std::array<StateVector, 3> outputs;
  /// |det| of the 3x3 coefficient matrix of the (unnormalized) outputs in
  /// the basis (psi, psi_perp, phi).
  double gram_det = 0.0;
  double smallest_singular_value = 0.0;
};

LdliOutputs construct_ldli(const LdliScenario& s);

/// |e^{i t3} - a e^{i t1} - b e^{i t2}|; zero iff the outputs are dependent.
double phase_condition_residual(const LdliScenario& s);

/// Scenario whose output phases satisfy the dependence condition exactly:
/// t2 is chosen so that |a e^{i t1} + b e^{i t2}| = 1, then t3 is its phase.
LdliScenario on_phase_condition(Complex a, Complex b, double theta1, bool branch,
                                SuperpositionWeights weights);

/// A tabulated success branch: output_j is the unnormalized operator the
/// branch produces on input_j. Used for the counterfactual superposer, which
/// no linear map realizes on a dependent input triple.
struct CounterfactualBranch {
  std::vector<Ray> inputs;
  std::vector<Mat> outputs;
};

/// The success branch a universal superposer would need on the LD->LI
/// triple: (psi_j (x) phi) -> p |Psi_j><Psi_j|.
CounterfactualBranch hypothetical_superposer_branch(const LdliScenario& s,
                                                    double success = 1.0);

struct PipelineReport {
  /// Row j: end-to-end outcome probabilities (E_1..E_m, E_?) for input j.
  Eigen::MatrixXd confusion;
  bool unambiguous = false;
  bool inputs_independent = false;
  bool outputs_independent = false;
  /// Dependent inputs discriminated unambiguously: impossible for any
  /// CPTNI map followed by a POVM.
  bool violation_witness = false;
  double inputs_smallest_singular_value = 0.0;
  double outputs_smallest_singular_value = 0.0;
};

/// Applies the branch, builds a UD POVM on the normalized outputs, and
/// reports the composite statistics. Throws if a nonzero output is not
/// rank one (largest/second eigenvalue ratio below 1e6).
PipelineReport discrimination_pipeline(const KrausChannel& ch,
                                       std::span<const Ray> inputs);
PipelineReport discrimination_pipeline(const CounterfactualBranch& branch);

/// max_ij |<in_i|in_j> - <out_i|out_j>|
double gram_deviation(std::span<const StateVector> in_states,
                      std::span<const StateVector> out_states);
/// gram_deviation(in, iso * in)
double isometry_gram_witness(const Mat& iso, std::span<const StateVector> in_states);

/// Probabilistic cloning is possible iff the family is linearly independent.
bool clone_feasibility(std::span<const StateVector> vectors);

}  // namespace qnogo
