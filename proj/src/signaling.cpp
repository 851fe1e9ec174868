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

#include "qnogo/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qnogo/parallel.hpp"

namespace qnogo {

namespace {

constexpr double kMembershipTol = 1e-9;
constexpr double kRankFloor = 1e-12;

// Platform-independent uniform draw in [0, 1).
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Mat pseudo_inverse(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVec& s = svd.singularValues();
  const double cut = s.size() > 0 ? kRankFloor * std::max(1.0, s(0)) : 0.0;
  RealVec inv = RealVec::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Top eigenvector of a (numerically) rank-one PSD operator, as a ray.
Ray dominant_ray(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()));
  const Vec v = es.eigenvectors().col(rho.rows() - 1);
  return ray_from_vector(StateVector::normalize(v), 1e-9);
}

// Per-outcome (weight, clone success probability) for one Alice POVM.
struct BranchTable {
  std::vector<double> weights;
  std::vector<double> success;
};

BranchTable branch_table(const SteeringScenario& s, const CloneOracle& oracle, int bit) {
  const std::vector<Mat>& povm = bit == 0 ? s.povm0 : s.povm1;
  const std::vector<Mat> cond = conditional_states(s.purification, povm);
  BranchTable t;
  for (const Mat& rho : cond) {
    const double w = rho.trace().real();
    t.weights.push_back(std::max(0.0, w));
    t.success.push_back(w > kRankFloor ? oracle.success_probability(dominant_ray(rho / w))
                                       : 0.0);
  }
  return t;
}

// One round: sample Alice's outcome, then Bob's clone attempt.
bool run_round(const BranchTable& t, std::mt19937_64& rng) {
  double u = uniform01(rng);
  std::size_t k = 0;
  for (; k + 1 < t.weights.size(); ++k) {
    if (u < t.weights[k]) break;
    u -= t.weights[k];
  }
  return uniform01(rng) < t.success[k];
}

bool guess_is_zero(int count, double threshold, bool zero_succeeds_more) {
  return zero_succeeds_more ? count > threshold : count < threshold;
}

// P(Bin(n, p) = k) via log-gamma; exact enough for the sizes used here.
double binomial_pmf(int n, int k, double p) {
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(lc + k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace

Ensemble::Ensemble(std::vector<double> weights, std::vector<StateVector> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (states_.empty() || weights_.size() != states_.size()) {
    throw Error("Ensemble: need one weight per state and at least one state");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (weights_[i] < 0.0) throw Error("Ensemble: negative weight");
    if (!states_[i].is_normalized()) throw Error("Ensemble: states must be normalized");
    if (states_[i].dim() != states_.front().dim()) throw Error("Ensemble: dimension mismatch");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("Ensemble: weights must sum to 1");
  DensityOperator(average(), false, kDefaultTol);
}

Mat Ensemble::average() const {
  const int d = dim();
  Mat avg = Mat::Zero(d, d);
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const Vec& v = states_[i].amplitudes();
    avg += weights_[i] * (v * v.adjoint());
  }
  return avg;
}

CloneOracle::CloneOracle(std::vector<Ray> set, std::vector<double> success_probs,
                         OffSetPolicy policy)
    : set_(std::move(set)), probs_(std::move(success_probs)), policy_(policy) {
  if (set_.empty() || set_.size() != probs_.size()) {
    throw Error("CloneOracle: need a nonempty set with one probability per member");
  }
  for (double p : probs_) {
    if (!(p > 0.0 && p <= 1.0)) throw Error("CloneOracle: success probabilities must lie in (0, 1]");
  }
}

double CloneOracle::success_probability(const Ray& state) const {
  double weighted = 0.0;
  for (std::size_t j = 0; j < set_.size(); ++j) {
    if (set_[j].dim() != state.dim()) continue;
    const double f = overlap_probability(set_[j], state);
    if (f > 1.0 - kMembershipTol) return probs_[j];
    weighted = std::max(weighted, probs_[j] * f);
  }
  return policy_ == OffSetPolicy::overlap_weighted ? weighted : 0.0;
}

CloneOutcome clone_attempt(const CloneOracle& oracle, const Ray& state,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CloneOutcome out;
  out.success = uniform01(rng) < oracle.success_probability(state);
  if (out.success) {
    const Vec v = state.representative().amplitudes();
    out.doubled = ray_from_vector(StateVector::normalize(kron(v, v)), 1e-9);
  }
  return out;
}

Mat Purification::coefficient_matrix() const {
  Mat c(dim_a, dim_b);
  for (int a = 0; a < dim_a; ++a) {
    for (int b = 0; b < dim_b; ++b) c(a, b) = amplitudes(a * dim_b + b);
  }
  return c;
}

Mat Purification::reduced_b() const {
  const Mat c = coefficient_matrix();
  return c.transpose() * c.conjugate();
}

Purification purify(const DensityOperator& rho_b) {
  if (rho_b.subnormalized()) throw Error("purify: state must have unit trace");
  const Mat& m = rho_b.matrix();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  const RealVec& lam = es.eigenvalues();
  const int d = rho_b.dim();

  std::vector<int> keep;
  for (int i = d - 1; i >= 0; --i) {
    if (lam(i) > kRankFloor) keep.push_back(i);
  }
  Purification p;
  p.dim_a = static_cast<int>(keep.size());
  p.dim_b = d;
  p.amplitudes = Vec::Zero(p.dim_a * d);
  for (int a = 0; a < p.dim_a; ++a) {
    Vec e = es.eigenvectors().col(keep[a]);
    for (int k = 0; k < d; ++k) {
      if (std::abs(e(k)) > 1e-12) {
        e *= std::conj(e(k)) / std::abs(e(k));
        break;
      }
    }
    p.amplitudes.segment(a * d, d) = std::sqrt(lam(keep[a])) * e;
  }
  return p;
}

std::vector<Mat> steering_measurement(const Purification& omega, const Ensemble& target) {
  if (target.dim() != omega.dim_b) throw Error("steering_measurement: dimension mismatch");
  if (max_abs_diff(target.average(), omega.reduced_b()) > 1e-9) {
    throw Error("steering_measurement: ensemble does not average to the marginal");
  }
  const Mat m = omega.coefficient_matrix().transpose();
  const Mat m_pinv = pseudo_inverse(m);

  std::vector<Mat> povm;
  povm.reserve(target.size());
  for (int k = 0; k < target.size(); ++k) {
    const Vec u = m_pinv * target.states()[k].amplitudes();
    povm.push_back((target.weights()[k] * (u * u.adjoint())).transpose());
  }
  // Support complement of M; vanishes when A-dim equals the rank.
  const Mat complement = Mat::Identity(omega.dim_a, omega.dim_a) - m_pinv * m;
  povm.front() += complement.transpose();
  return povm;
}

std::vector<Mat> conditional_states(const Purification& omega, std::span<const Mat> povm) {
  const Mat m = omega.coefficient_matrix().transpose();
  std::vector<Mat> out;
  out.reserve(povm.size());
  for (const Mat& e : povm) {
    if (e.rows() != omega.dim_a || e.cols() != omega.dim_a) {
      throw Error("conditional_states: POVM element has the wrong shape");
    }
    out.push_back(m * e.transpose() * m.adjoint());
  }
  return out;
}

SteeringScenario make_steering_scenario(Ensemble ensemble0, Ensemble ensemble1) {
  if (ensemble0.dim() != ensemble1.dim()) {
    throw Error("make_steering_scenario: ensembles differ in dimension");
  }
  const Mat avg0 = ensemble0.average();
  if (max_abs_diff(avg0, ensemble1.average()) > 1e-10) {
    throw Error("make_steering_scenario: ensembles have different averages");
  }
  DensityOperator rho(0.5 * (avg0 + avg0.adjoint()), false, kDefaultTol);
  Purification omega = purify(rho);
  std::vector<Mat> m0 = steering_measurement(omega, ensemble0);
  std::vector<Mat> m1 = steering_measurement(omega, ensemble1);
  SteeringScenario s{std::move(rho),       std::move(ensemble0), std::move(ensemble1),
                     std::move(omega),     std::move(m0),        std::move(m1)};
  if (!check_steering(s).ok()) throw Error("make_steering_scenario: steering check failed");
  return s;
}

SteeringCheck check_steering(const SteeringScenario& s) {
  SteeringCheck c;
  c.min_element_eigenvalue = std::numeric_limits<double>::infinity();
  const Mat& rho = s.rho_b.matrix();
  const Mat eye = Mat::Identity(s.purification.dim_a, s.purification.dim_a);
  for (int b = 0; b < 2; ++b) {
    const Ensemble& ens = b == 0 ? s.ensemble0 : s.ensemble1;
    const std::vector<Mat>& povm = b == 0 ? s.povm0 : s.povm1;
    c.max_average_error = std::max(c.max_average_error, max_abs_diff(ens.average(), rho));

    Mat sum = Mat::Zero(eye.rows(), eye.cols());
    for (const Mat& e : povm) {
      sum += e;
      c.min_element_eigenvalue =
          std::min(c.min_element_eigenvalue, hermitian_eigenvalues(e)(0));
    }
    c.max_completeness_error = std::max(c.max_completeness_error, max_abs_diff(sum, eye));

    const std::vector<Mat> cond = conditional_states(s.purification, povm);
    if (static_cast<int>(cond.size()) != ens.size()) {
      c.max_weight_error = std::numeric_limits<double>::infinity();
      continue;
    }
    for (int k = 0; k < ens.size(); ++k) {
      const double w = cond[k].trace().real();
      c.max_weight_error = std::max(c.max_weight_error, std::abs(w - ens.weights()[k]));
      if (ens.weights()[k] <= kRankFloor) continue;
      const Vec& v = ens.states()[k].amplitudes();
      const double f = v.dot(cond[k] * v).real() / w;
      c.max_fidelity_deficit = std::max(c.max_fidelity_deficit, 1.0 - f);
    }
  }
  return c;
}

SteeringScenario canonical_steering_scenario() {
  const StateVector zero = StateVector::basis(2, 0);
  const StateVector one = StateVector::basis(2, 1);
  const StateVector plus = StateVector::normalize((zero.amplitudes() + one.amplitudes()).eval());
  const StateVector minus = StateVector::normalize((zero.amplitudes() - one.amplitudes()).eval());
  return make_steering_scenario(Ensemble({0.5, 0.5}, {zero, one}),
                                Ensemble({0.5, 0.5}, {plus, minus}));
}

CloneOracle canonical_clone_oracle() {
  const StateVector zero = StateVector::basis(2, 0);
  const StateVector one = StateVector::basis(2, 1);
  const StateVector plus = StateVector::normalize((zero.amplitudes() + one.amplitudes()).eval());
  return CloneOracle({ray_from_vector(zero), ray_from_vector(one), ray_from_vector(plus)},
                     {0.5, 0.5, 0.5}, OffSetPolicy::zero);
}

SignalingGap signaling_gap(const SteeringScenario& s, const CloneOracle& oracle) {
  SignalingGap g;
  for (int b = 0; b < 2; ++b) {
    const Ensemble& ens = b == 0 ? s.ensemble0 : s.ensemble1;
    double p = 0.0;
    for (int k = 0; k < ens.size(); ++k) {
      p += ens.weights()[k] * oracle.success_probability(ray_from_vector(ens.states()[k], 1e-9));
    }
    (b == 0 ? g.p0 : g.p1) = p;
  }
  Mat bob[2];
  for (int b = 0; b < 2; ++b) {
    const std::vector<Mat> cond = conditional_states(s.purification, b == 0 ? s.povm0 : s.povm1);
    bob[b] = Mat::Zero(s.purification.dim_b, s.purification.dim_b);
    for (const Mat& r : cond) bob[b] += r;
  }
  g.bob_state_distance = trace_distance(bob[0], bob[1]);
  return g;
}

double simulate_success_rate(const SteeringScenario& s, const CloneOracle& oracle,
                             int bit, int rounds, std::uint64_t seed) {
  if (bit != 0 && bit != 1) throw Error("simulate_success_rate: bit must be 0 or 1");
  if (rounds <= 0) throw Error("simulate_success_rate: rounds must be positive");
  const BranchTable t = branch_table(s, oracle, bit);
  std::mt19937_64 rng(seed);
  long hits = 0;
  for (int r = 0; r < rounds; ++r) hits += run_round(t, rng) ? 1 : 0;
  return static_cast<double>(hits) / rounds;
}

DecodeResult decode_bit(const SteeringScenario& s, const CloneOracle& oracle,
                        int repetitions, int trials, std::uint64_t seed,
                        unsigned workers) {
  if (repetitions < 0 || trials <= 0) throw Error("decode_bit: invalid repetition or trial count");
  const SignalingGap gap = signaling_gap(s, oracle);
  if (std::abs(gap.p0 - gap.p1) <= 1e-12) throw Error("decode_bit: zero signaling gap");

  const BranchTable tables[2] = {branch_table(s, oracle, 0), branch_table(s, oracle, 1)};
  const double threshold = repetitions * (gap.p0 + gap.p1) / 2.0;
  const bool zero_more = gap.p0 > gap.p1;

  const std::vector<char> errors = parallel_map(
      static_cast<std::size_t>(trials),
      [&](std::size_t t) -> char {
        std::mt19937_64 rng(mix_seed(seed, t));
        const int bit = uniform01(rng) < 0.5 ? 0 : 1;
        int count = 0;
        for (int r = 0; r < repetitions; ++r) count += run_round(tables[bit], rng) ? 1 : 0;
        const int guess = guess_is_zero(count, threshold, zero_more) ? 0 : 1;
        return guess != bit ? 1 : 0;
      },
      workers);

  long wrong = 0;
  for (char e : errors) wrong += e;
  DecodeResult out;
  out.repetitions = repetitions;
  out.trials = trials;
  out.error_rate = static_cast<double>(wrong) / trials;
  out.exact_error = decode_error_exact(gap.p0, gap.p1, repetitions);
  out.chernoff_bound = std::exp(-repetitions * (gap.p0 - gap.p1) * (gap.p0 - gap.p1) / 2.0);
  return out;
}

double decode_error_exact(double p0, double p1, int repetitions) {
  if (repetitions < 0) throw Error("decode_error_exact: negative repetition count");
  const double threshold = repetitions * (p0 + p1) / 2.0;
  const bool zero_more = p0 > p1;
  double err = 0.0;
  for (int k = 0; k <= repetitions; ++k) {
    const bool says_zero = guess_is_zero(k, threshold, zero_more);
    err += 0.5 * (says_zero ? binomial_pmf(repetitions, k, p1)
                            : binomial_pmf(repetitions, k, p0));
  }
  return err;
}

double no_signaling_gap(const SteeringScenario& s, const KrausChannel& ch,
                        std::span<const Mat> bob_povm) {
  if (ch.dim_in() != s.purification.dim_b) throw Error("no_signaling_gap: channel input dimension");
  std::vector<double> dist[2];
  for (int b = 0; b < 2; ++b) {
    Mat out = Mat::Zero(ch.dim_out(), ch.dim_out());
    for (const Mat& r : conditional_states(s.purification, b == 0 ? s.povm0 : s.povm1)) {
      out += ch.apply_raw(r);
    }
    for (const Mat& f : bob_povm) {
      if (f.rows() != ch.dim_out()) throw Error("no_signaling_gap: POVM dimension");
      dist[b].push_back((f * out).trace().real());
    }
  }
  double tv = 0.0;
  for (std::size_t i = 0; i < dist[0].size(); ++i) tv += std::abs(dist[0][i] - dist[1][i]);
  return 0.5 * tv;
}

}  // namespace qnogo
