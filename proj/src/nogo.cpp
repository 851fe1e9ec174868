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

#include "qnogo/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qnogo {

namespace {

constexpr double kRankOneRatio = 1e6;
constexpr double kAssertTol = 1e-10;

double smallest_sv(const Mat& cols) {
  const RealVec sv = singular_values(cols);
  if (sv.size() < cols.cols()) return 0.0;
  return sv(sv.size() - 1);
}

// Rotates the first clearly nonzero entry onto the positive real axis.
void fix_phase(Vec& v) {
  const double cut = 1e-8 * v.cwiseAbs().maxCoeff();
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cut) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

}  // namespace

std::vector<StateVector> reciprocal_family(std::span<const StateVector> vectors) {
  if (vectors.empty()) throw Error("reciprocal_family: empty sequence");
  const Mat cols = column_matrix(vectors);
  const double smin = smallest_sv(cols);
  if (!(smin > kDependenceThreshold)) {
    throw Error("reciprocal_family: family is linearly dependent (sigma_min = " +
                std::to_string(smin) + ")");
  }
  const Mat gram = cols.adjoint() * cols;
  const Mat ginv = gram.inverse();
  // r_i = sum_j (G^-1)_{ji} v_j, i.e. R = V G^-1 column-wise.
  const Mat recip = cols * ginv;
  std::vector<StateVector> out;
  out.reserve(vectors.size());
  for (Eigen::Index i = 0; i < recip.cols(); ++i) {
    out.push_back(StateVector::unnormalized(recip.col(i)));
  }
  return out;
}

UdConstruction build_ud_povm(std::span<const StateVector> vectors) {
  if (vectors.empty()) throw Error("build_ud_povm: empty sequence");
  const Mat cols = column_matrix(vectors);
  const int m = static_cast<int>(cols.cols());
  const int d = static_cast<int>(cols.rows());

  UdConstruction out;
  out.smallest_singular_value = smallest_sv(cols);
  if (!(out.smallest_singular_value > kDependenceThreshold)) {
    Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeFullV);
    Vec c = svd.matrixV().col(m - 1);
    fix_phase(c);
    out.null_vector = c.normalized();
    out.null_residual = (cols * out.null_vector).norm();
    return out;
  }

  const std::vector<StateVector> recip = reciprocal_family(vectors);
  Mat total = Mat::Zero(d, d);
  for (const StateVector& r : recip) total += r.amplitudes() * r.amplitudes().adjoint();
  const RealVec ev = hermitian_eigenvalues(total);
  const double lambda = 1.0 / ev(ev.size() - 1);

  UdPovm povm;
  povm.inconclusive = Mat::Identity(d, d);
  for (const StateVector& r : recip) {
    Mat e = lambda * (r.amplitudes() * r.amplitudes().adjoint());
    povm.inconclusive -= e;
    povm.elements.push_back(std::move(e));
    povm.lambdas.push_back(lambda);
  }
  povm.inconclusive = 0.5 * (povm.inconclusive + povm.inconclusive.adjoint()).eval();
  out.feasible = true;
  out.povm = std::move(povm);
  return out;
}

UdDiagnostics check_ud_povm(const UdPovm& povm, std::span<const StateVector> family) {
  if (static_cast<int>(family.size()) != povm.size()) {
    throw Error("check_ud_povm: family size does not match the POVM");
  }
  UdDiagnostics diag;
  diag.min_diagonal = std::numeric_limits<double>::infinity();
  diag.min_element_eigenvalue = hermitian_eigenvalues(povm.inconclusive)(0);
  Mat sum = povm.inconclusive;
  for (int i = 0; i < povm.size(); ++i) {
    const Mat& e = povm.elements[i];
    sum += e;
    diag.min_element_eigenvalue =
        std::min(diag.min_element_eigenvalue, hermitian_eigenvalues(e)(0));
    for (int j = 0; j < povm.size(); ++j) {
      const Vec& v = family[j].amplitudes();
      const double p = v.dot(e * v).real();
      if (i == j) {
        diag.min_diagonal = std::min(diag.min_diagonal, p);
      } else {
        diag.max_cross = std::max(diag.max_cross, std::abs(p));
      }
    }
  }
  diag.completeness_error = max_abs_diff(sum, Mat::Identity(povm.dim(), povm.dim()));
  return diag;
}

std::vector<double> ud_outcome_distribution(const UdPovm& povm, const Mat& state) {
  if (state.rows() != povm.dim() || state.cols() != povm.dim()) {
    throw Error("ud_outcome_distribution: dimension mismatch");
  }
  std::vector<double> probs;
  probs.reserve(povm.size() + 1);
  for (const Mat& e : povm.elements) probs.push_back((e * state).trace().real());
  probs.push_back((povm.inconclusive * state).trace().real());
  return probs;
}

std::vector<double> ud_outcome_distribution(const UdPovm& povm,
                                            const DensityOperator& state) {
  return ud_outcome_distribution(povm, state.matrix());
}

// --------------------------------------------------------------- LD -> LI

LdliScenario::LdliScenario(Complex a, Complex b, std::array<double, 3> thetas,
                           SuperpositionWeights weights, StateVector psi,
                           StateVector psi_perp, StateVector phi, double tol)
    : a_(a),
      b_(b),
      thetas_(thetas),
      weights_(weights),
      psi_(std::move(psi)),
      psi_perp_(std::move(psi_perp)),
      phi_(std::move(phi)) {
  if (std::abs(a) <= 1e-12 || std::abs(b) <= 1e-12) {
    throw Error("LdliScenario: coefficients a and b must both be nonzero");
  }
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > tol) {
    throw Error("LdliScenario: |a|^2 + |b|^2 != 1");
  }
  if (psi_.dim() < 3 || psi_perp_.dim() != psi_.dim() || phi_.dim() != psi_.dim()) {
    throw Error("LdliScenario: need three vectors of one dimension >= 3");
  }
  if (!psi_.is_normalized() || !psi_perp_.is_normalized() || !phi_.is_normalized()) {
    throw Error("LdliScenario: basis vectors must be normalized");
  }
  if (std::abs(psi_.inner(psi_perp_)) > tol || std::abs(phi_.inner(psi_)) > tol ||
      std::abs(phi_.inner(psi_perp_)) > tol) {
    throw Error("LdliScenario: psi, psi_perp, phi must be mutually orthogonal");
  }
}

LdliScenario LdliScenario::standard(Complex a, Complex b,
                                    std::array<double, 3> thetas,
                                    SuperpositionWeights weights) {
  return LdliScenario(a, b, thetas, weights, StateVector::basis(3, 0),
                      StateVector::basis(3, 1), StateVector::basis(3, 2));
}

StateVector LdliScenario::psi3() const {
  return StateVector(a_ * psi_.amplitudes() + b_ * psi_perp_.amplitudes(), 1e-9);
}

LdliScenario gauge_shift(const LdliScenario& s, double gamma1, double gamma2) {
  return LdliScenario(s.a() * std::polar(1.0, -gamma1), s.b() * std::polar(1.0, -gamma2),
                      s.thetas(), s.weights(), rephase(s.psi(), gamma1),
                      rephase(s.psi_perp(), gamma2), s.phi(), 1e-9);
}

LdliOutputs construct_ldli(const LdliScenario& s) {
  const Complex al = s.weights().alpha();
  const Complex be = s.weights().beta();
  const auto& th = s.thetas();
  const Vec& psi = s.psi().amplitudes();
  const Vec& perp = s.psi_perp().amplitudes();
  const Vec& phi = s.phi().amplitudes();

  // Coordinates in (psi, psi_perp, phi), one row per output.
  Mat coeff(3, 3);
  coeff << al, 0.0, be * std::polar(1.0, th[0]),
           0.0, al, be * std::polar(1.0, th[1]),
           al * s.a(), al * s.b(), be * std::polar(1.0, th[2]);

  Mat basis(psi.size(), 3);
  basis << psi, perp, phi;
  const Mat vecs = basis * coeff.transpose();

  LdliOutputs out{{StateVector::normalize(vecs.col(0)),
                   StateVector::normalize(vecs.col(1)),
                   StateVector::normalize(vecs.col(2))},
                  std::abs(coeff.determinant()),
                  0.0};
  out.smallest_singular_value = smallest_sv(column_matrix(out.outputs));
  return out;
}

double phase_condition_residual(const LdliScenario& s) {
  const auto& th = s.thetas();
  return std::abs(std::polar(1.0, th[2]) - s.a() * std::polar(1.0, th[0]) -
                  s.b() * std::polar(1.0, th[1]));
}

LdliScenario on_phase_condition(Complex a, Complex b, double theta1, bool branch,
                                SuperpositionWeights weights) {
  // |a e^{it1} + b e^{it2}|^2 = 1 + 2 Re(a b* e^{i(t1 - t2)}) = 1 requires
  // t1 - t2 + arg(a b*) = +-pi/2.
  const double shift = branch ? M_PI_2 : -M_PI_2;
  const double theta2 = theta1 + std::arg(a * std::conj(b)) - shift;
  const double theta3 = std::arg(a * std::polar(1.0, theta1) + b * std::polar(1.0, theta2));
  return LdliScenario::standard(a, b, {theta1, theta2, theta3}, weights);
}

CounterfactualBranch hypothetical_superposer_branch(const LdliScenario& s,
                                                    double success) {
  if (!(success > 0.0 && success <= 1.0)) {
    throw Error("hypothetical_superposer_branch: success must lie in (0, 1]");
  }
  const LdliOutputs out = construct_ldli(s);
  const Vec& phi = s.phi().amplitudes();
  const std::array<StateVector, 3> ins{s.psi(), s.psi_perp(), s.psi3()};
  CounterfactualBranch br;
  for (int j = 0; j < 3; ++j) {
    const Vec joint = kron(ins[j].amplitudes(), phi);
    br.inputs.emplace_back(joint * joint.adjoint(), 1e-9);
    const Vec& o = out.outputs[j].amplitudes();
    br.outputs.push_back(success * (o * o.adjoint()));
  }
  return br;
}

PipelineReport discrimination_pipeline(const CounterfactualBranch& branch) {
  const std::size_t m = branch.inputs.size();
  if (m == 0 || branch.outputs.size() != m) {
    throw Error("discrimination_pipeline: inputs and outputs must pair up");
  }
  PipelineReport rep;

  std::vector<StateVector> in_vecs;
  for (const Ray& r : branch.inputs) in_vecs.push_back(r.representative());
  rep.inputs_smallest_singular_value = smallest_sv(column_matrix(in_vecs));
  rep.inputs_independent = rep.inputs_smallest_singular_value > kDependenceThreshold;

  // Normalized output vectors; zero outputs mean the branch never fires.
  std::vector<StateVector> out_vecs;
  bool all_fire = true;
  for (const Mat& o : branch.outputs) {
    const double tr = o.trace().real();
    if (!(tr > kAssertTol)) {
      all_fire = false;
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (o + o.adjoint()));
    const RealVec& ev = es.eigenvalues();
    const int n = static_cast<int>(ev.size());
    if (n > 1 && ev(n - 1) < kRankOneRatio * std::max(ev(n - 2), 0.0)) {
      throw Error("discrimination_pipeline: branch output is not rank one");
    }
    out_vecs.push_back(StateVector::normalize(es.eigenvectors().col(n - 1)));
  }

  const int d_out = static_cast<int>(branch.outputs.front().rows());
  rep.confusion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                        static_cast<Eigen::Index>(m + 1));
  std::optional<UdPovm> povm;
  if (all_fire) {
    rep.outputs_smallest_singular_value = smallest_sv(column_matrix(out_vecs));
    UdConstruction ud = build_ud_povm(out_vecs);
    rep.outputs_independent = ud.feasible;
    povm = std::move(ud.povm);
  }
  if (!povm) {
    // Without a UD measurement the only unambiguous strategy is to always
    // declare the result inconclusive.
    UdPovm trivial;
    trivial.inconclusive = Mat::Identity(d_out, d_out);
    trivial.elements.assign(m, Mat::Zero(d_out, d_out));
    trivial.lambdas.assign(m, 0.0);
    povm = std::move(trivial);
  }

  bool unambiguous = true;
  for (std::size_t j = 0; j < m; ++j) {
    const std::vector<double> p = ud_outcome_distribution(*povm, branch.outputs[j]);
    for (std::size_t i = 0; i <= m; ++i) {
      rep.confusion(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = p[i];
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == j) {
        unambiguous = unambiguous && p[i] > kAssertTol;
      } else {
        unambiguous = unambiguous && std::abs(p[i]) < kAssertTol;
      }
    }
  }
  rep.unambiguous = unambiguous;
  rep.violation_witness = unambiguous && !rep.inputs_independent;
  return rep;
}

PipelineReport discrimination_pipeline(const KrausChannel& ch,
                                       std::span<const Ray> inputs) {
  CounterfactualBranch br;
  for (const Ray& r : inputs) {
    if (r.dim() != ch.dim_in()) throw Error("discrimination_pipeline: dimension mismatch");
    br.inputs.push_back(r);
    br.outputs.push_back(ch.apply_raw(r.projector()));
  }
  return discrimination_pipeline(br);
}

double gram_deviation(std::span<const StateVector> in_states,
                      std::span<const StateVector> out_states) {
  if (in_states.size() != out_states.size()) {
    throw Error("gram_deviation: length mismatch");
  }
  if (in_states.empty()) return 0.0;
  const Mat gi = column_matrix(in_states).adjoint() * column_matrix(in_states);
  const Mat go = column_matrix(out_states).adjoint() * column_matrix(out_states);
  return max_abs_diff(gi, go);
}

double isometry_gram_witness(const Mat& iso, std::span<const StateVector> in_states) {
  std::vector<StateVector> outs;
  outs.reserve(in_states.size());
  for (const StateVector& v : in_states) {
    if (iso.cols() != v.dim()) throw Error("isometry_gram_witness: dimension mismatch");
    outs.push_back(StateVector::unnormalized(iso * v.amplitudes()));
  }
  return gram_deviation(in_states, outs);
}

bool clone_feasibility(std::span<const StateVector> vectors) {
  if (vectors.empty()) return false;
  return smallest_sv(column_matrix(vectors)) > kDependenceThreshold;
}

}  // namespace qnogo
