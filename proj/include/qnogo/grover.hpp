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
#include <vector>

#include "qnogo/hilbert.hpp"

namespace qnogo {

/// Unstructured search over N = 2^n items with one marked index w.
class GroverInstance {
 public:
  GroverInstance(int n, std::uint64_t marked);

  int qubits() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }
  std::uint64_t marked() const { return w_; }

 private:
  int n_;
  std::uint64_t w_;
};

/// Amplitudes on the orthonormal pair |w> and |u> (uniform over unmarked
/// items). Every operator used here maps this plane to itself.
class TwoDimState {
 public:
  TwoDimState(Complex a, Complex b, double tol = 1e-12);

  /// The uniform superposition: a = 1/sqrt(N), b = sqrt((N-1)/N).
  static TwoDimState uniform(const GroverInstance& inst);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  double success_probability() const { return std::norm(a_); }
  Complex inner(const TwoDimState& other) const {
    return std::conj(a_) * other.a_ + std::conj(b_) * other.b_;
  }

 private:
  Complex a_;
  Complex b_;
};

StateVector uniform_state(const GroverInstance& inst);
StateVector to_statevector(const GroverInstance& inst, const TwoDimState& s);
/// Coordinates of `v` in the (|w>, |u>) plane; throws if v leaves the
/// plane by more than 1e-9.
TwoDimState to_subspace(const GroverInstance& inst, const StateVector& v);

/// The phase oracle O_f = I - 2|w><w|. The only way to query f; every
/// application, in either representation, adds exactly one to queries().
class PhaseOracle {
 public:
  explicit PhaseOracle(GroverInstance inst) : inst_(inst) {}

  StateVector apply(const StateVector& state);
  TwoDimState apply(const TwoDimState& state);

  const GroverInstance& instance() const { return inst_; }
  std::int64_t queries() const { return queries_; }

 private:
  GroverInstance inst_;
  std::int64_t queries_ = 0;
};

/// R = 2|psi><psi| - I about a normalized axis. Reflections do not query
/// the oracle and are not metered.
class Reflection {
 public:
  explicit Reflection(StateVector axis);

  const StateVector& axis() const { return axis_; }
  /// 2 <psi|t> |psi> - |t>
  StateVector apply(const StateVector& t) const;
  Mat matrix() const;

 private:
  StateVector axis_;
};

Reflection reflect_about(const StateVector& state);
/// 2 <axis|t> axis - t in plane coordinates.
TwoDimState reflect_about(const TwoDimState& axis, const TwoDimState& t);

/// (2|psi_0><psi_0| - I) O_f with psi_0 uniform; one query.
StateVector grover_iterate(PhaseOracle& oracle, const StateVector& state);
TwoDimState grover_iterate(PhaseOracle& oracle, const TwoDimState& state);

enum class SimulationMode { statevector, subspace };

struct GroverRound {
  int r = 0;
  Complex a;             ///< <w|psi_r>
  double p = 0.0;        ///< |a|^2
  std::int64_t queries = 0;  ///< cumulative oracle queries after round r
};

struct GroverTrace {
  std::vector<GroverRound> rounds;
  std::int64_t queries = 0;
};

/// Standard Grover from the uniform state for a fixed number of iterations.
GroverTrace standard_grover_run(const GroverInstance& inst, int iterations,
                                SimulationMode mode);

/// sin^2((2r + 1) arcsin(1/sqrt(N)))
double standard_success_closed_form(std::uint64_t n_items, int r);

/// psi_{r+1} = R_{psi_r} O_f psi_r from the uniform state until
/// p_r >= target_p. round_cap <= 0 selects 10 * ceil(log_4 N). Throws if
/// target_p is outside (1/N, 1] or is not reached within the cap.
GroverTrace super_grover_run(const GroverInstance& inst, double target_p,
                             SimulationMode mode, int round_cap = 0);

/// (3 - 4|a|^2) a
Complex overlap_recursion_step(Complex a);

/// ceil(log_4(N / 4)) for N >= 4.
int round_bound(std::uint64_t n_items);

struct QueryComparison {
  std::uint64_t n_items = 0;
  std::int64_t standard_queries_to_half = 0;  ///< first p > 1/2
  int super_rounds_to_quarter = 0;            ///< first p >= 1/4
  std::int64_t super_queries_to_half = 0;     ///< first p > 1/2
  int round_bound = 0;
};

/// Instrumented subspace runs of both algorithms.
QueryComparison query_comparison(const GroverInstance& inst);

}  // namespace qnogo
