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

#include "qnogo/grover.hpp"

#include <cmath>
#include <limits>

namespace qnogo {

namespace {

constexpr int kMaxSubspaceQubits = 62;
constexpr int kMaxStatevectorQubits = 24;

void require_statevector_size(const GroverInstance& inst) {
  if (inst.qubits() > kMaxStatevectorQubits) {
    throw Error("grover: statevector mode supports at most 24 qubits");
  }
}

void require_dim(const GroverInstance& inst, const StateVector& v) {
  if (static_cast<std::uint64_t>(v.dim()) != inst.size()) {
    throw Error("grover: state dimension does not match N");
  }
}

int ceil_log4(std::uint64_t n) {
  int r = 0;
  for (std::uint64_t v = 1; v < n; v *= 4) ++r;
  return r;
}

GroverRound make_round(int r, Complex a, std::int64_t queries) {
  return {r, a, std::norm(a), queries};
}

}  // namespace

GroverInstance::GroverInstance(int n, std::uint64_t marked) : n_(n), w_(marked) {
  if (n < 1 || n > kMaxSubspaceQubits) throw Error("GroverInstance: qubit count out of range");
  if (marked >= size()) throw Error("GroverInstance: marked index out of range");
}

TwoDimState::TwoDimState(Complex a, Complex b, double tol) : a_(a), b_(b) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > tol) {
    throw Error("TwoDimState: |a|^2 + |b|^2 != 1");
  }
}

TwoDimState TwoDimState::uniform(const GroverInstance& inst) {
  const double n = static_cast<double>(inst.size());
  return {Complex(1.0 / std::sqrt(n)), Complex(std::sqrt((n - 1.0) / n))};
}

StateVector uniform_state(const GroverInstance& inst) {
  require_statevector_size(inst);
  const auto n = static_cast<Eigen::Index>(inst.size());
  return StateVector(Vec::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(n)))), 1e-12);
}

StateVector to_statevector(const GroverInstance& inst, const TwoDimState& s) {
  require_statevector_size(inst);
  const auto n = static_cast<Eigen::Index>(inst.size());
  Vec v = Vec::Constant(n, s.b() / std::sqrt(static_cast<double>(n - 1)));
  v(static_cast<Eigen::Index>(inst.marked())) = s.a();
  return StateVector(std::move(v), 1e-10);
}

TwoDimState to_subspace(const GroverInstance& inst, const StateVector& v) {
  require_dim(inst, v);
  const auto w = static_cast<Eigen::Index>(inst.marked());
  const double rest = std::sqrt(static_cast<double>(inst.size() - 1));
  const Complex a = v[static_cast<int>(w)];
  const Complex b = (v.amplitudes().sum() - a) / rest;
  if (std::abs(std::norm(a) + std::norm(b) - v.norm() * v.norm()) > 1e-9) {
    throw Error("to_subspace: state leaves the (|w>, |u>) plane");
  }
  return {a, b, 1e-9};
}

StateVector PhaseOracle::apply(const StateVector& state) {
  require_dim(inst_, state);
  Vec v = state.amplitudes();
  v(static_cast<Eigen::Index>(inst_.marked())) *= -1.0;
  ++queries_;
  return state.is_normalized() ? StateVector(std::move(v), 1e-9)
                               : StateVector::unnormalized(std::move(v));
}

TwoDimState PhaseOracle::apply(const TwoDimState& state) {
  ++queries_;
  return {-state.a(), state.b()};
}

Reflection::Reflection(StateVector axis) : axis_(std::move(axis)) {
  if (!axis_.is_normalized()) throw Error("Reflection: axis must be normalized");
}

StateVector Reflection::apply(const StateVector& t) const {
  if (t.dim() != axis_.dim()) throw Error("Reflection: dimension mismatch");
  const Vec out = 2.0 * axis_.inner(t) * axis_.amplitudes() - t.amplitudes();
  return t.is_normalized() ? StateVector(out, 1e-9) : StateVector::unnormalized(out);
}

Mat Reflection::matrix() const {
  const Vec& v = axis_.amplitudes();
  return 2.0 * (v * v.adjoint()) - Mat::Identity(v.size(), v.size());
}

Reflection reflect_about(const StateVector& state) { return Reflection(state); }

TwoDimState reflect_about(const TwoDimState& axis, const TwoDimState& t) {
  const Complex c = 2.0 * axis.inner(t);
  return {c * axis.a() - t.a(), c * axis.b() - t.b(), 1e-10};
}

StateVector grover_iterate(PhaseOracle& oracle, const StateVector& state) {
  const StateVector marked = oracle.apply(state);
  return Reflection(uniform_state(oracle.instance())).apply(marked);
}

TwoDimState grover_iterate(PhaseOracle& oracle, const TwoDimState& state) {
  const TwoDimState marked = oracle.apply(state);
  return reflect_about(TwoDimState::uniform(oracle.instance()), marked);
}

GroverTrace standard_grover_run(const GroverInstance& inst, int iterations,
                                SimulationMode mode) {
  if (iterations < 0) throw Error("standard_grover_run: negative iteration count");
  PhaseOracle oracle(inst);
  GroverTrace trace;
  const auto w = static_cast<int>(inst.marked());
  if (mode == SimulationMode::subspace) {
    TwoDimState s = TwoDimState::uniform(inst);
    trace.rounds.push_back(make_round(0, s.a(), 0));
    for (int r = 1; r <= iterations; ++r) {
      s = grover_iterate(oracle, s);
      trace.rounds.push_back(make_round(r, s.a(), oracle.queries()));
    }
  } else {
    StateVector s = uniform_state(inst);
    trace.rounds.push_back(make_round(0, s[w], 0));
    for (int r = 1; r <= iterations; ++r) {
      s = grover_iterate(oracle, s);
      trace.rounds.push_back(make_round(r, s[w], oracle.queries()));
    }
  }
  trace.queries = oracle.queries();
  return trace;
}

double standard_success_closed_form(std::uint64_t n_items, int r) {
  const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n_items)));
  const double s = std::sin((2.0 * r + 1.0) * theta);
  return s * s;
}

GroverTrace super_grover_run(const GroverInstance& inst, double target_p,
                             SimulationMode mode, int round_cap) {
  const double p0 = 1.0 / static_cast<double>(inst.size());
  if (!(target_p > p0 && target_p <= 1.0)) {
    throw Error("super_grover_run: target probability must lie in (1/N, 1]");
  }
  if (round_cap <= 0) round_cap = 10 * std::max(1, ceil_log4(inst.size()));

  PhaseOracle oracle(inst);
  GroverTrace trace;
  const auto w = static_cast<int>(inst.marked());
  auto done = [&] { return trace.rounds.back().p >= target_p; };

  if (mode == SimulationMode::subspace) {
    TwoDimState s = TwoDimState::uniform(inst);
    trace.rounds.push_back(make_round(0, s.a(), 0));
    for (int r = 1; r <= round_cap && !done(); ++r) {
      s = reflect_about(s, oracle.apply(s));
      trace.rounds.push_back(make_round(r, s.a(), oracle.queries()));
    }
  } else {
    StateVector s = uniform_state(inst);
    trace.rounds.push_back(make_round(0, s[w], 0));
    for (int r = 1; r <= round_cap && !done(); ++r) {
      s = Reflection(s).apply(oracle.apply(s));
      trace.rounds.push_back(make_round(r, s[w], oracle.queries()));
    }
  }
  if (!done()) throw Error("super_grover_run: target not reached within the round cap");
  trace.queries = oracle.queries();
  return trace;
}

Complex overlap_recursion_step(Complex a) { return (3.0 - 4.0 * std::norm(a)) * a; }

int round_bound(std::uint64_t n_items) {
  if (n_items < 4) throw Error("round_bound: N must be at least 4");
  int r = 0;
  for (std::uint64_t v = 4; v < n_items; v *= 4) ++r;
  return r;
}

QueryComparison query_comparison(const GroverInstance& inst) {
  QueryComparison q;
  q.n_items = inst.size();
  q.round_bound = inst.size() >= 4 ? round_bound(inst.size()) : 0;

  PhaseOracle oracle(inst);
  TwoDimState s = TwoDimState::uniform(inst);
  // N = 2 sits at exactly 1/2 forever; the margin keeps roundoff from
  // counting that as a crossing, the cap keeps the loop finite.
  constexpr double kHalfMargin = 1e-12;
  const auto above = [&] { return s.success_probability() > 0.5 + kHalfMargin; };
  const auto cap = static_cast<std::int64_t>(4.0 * std::sqrt(static_cast<double>(inst.size()))) + 4;
  while (!above() && oracle.queries() < cap) s = grover_iterate(oracle, s);
  q.standard_queries_to_half = above() ? oracle.queries() : -1;

  const double p0 = 1.0 / static_cast<double>(inst.size());
  q.super_rounds_to_quarter =
      p0 >= 0.25 ? 0
                 : static_cast<int>(
                       super_grover_run(inst, 0.25, SimulationMode::subspace).queries);
  const double above_half = std::nextafter(0.5, 1.0);
  try {
    q.super_queries_to_half = super_grover_run(inst, above_half, SimulationMode::subspace).queries;
  } catch (const Error&) {
    q.super_queries_to_half = -1;
  }
  return q;
}

}  // namespace qnogo
