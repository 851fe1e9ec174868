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


// Acceptance run: one PASS/FAIL line per criterion. Each criterion is also
// bounded in wall-clock time. Exit status 0 iff every line passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qnogo/channels.hpp"
#include "qnogo/geometry.hpp"
#include "qnogo/grover.hpp"
#include "qnogo/hilbert.hpp"
#include "qnogo/lab.hpp"
#include "qnogo/nogo.hpp"
#include "qnogo/signaling.hpp"
#include "qnogo/superposer.hpp"

namespace {

using namespace qnogo;

constexpr double kTwoPi = 2.0 * M_PI;
constexpr std::uint64_t kSeed = 1;

// One measured quantity and its pinned limit.
struct Item {
  std::string what;
  double measured;
  double limit;
  const char* relation;  ///< measured <relation> limit must hold
  bool pass;
};

Item below(std::string what, double measured, double limit) {
  return {std::move(what), measured, limit, "<", measured < limit};
}
Item at_most(std::string what, double measured, double limit) {
  return {std::move(what), measured, limit, "<=", measured <= limit};
}
Item above(std::string what, double measured, double limit) {
  return {std::move(what), measured, limit, ">", measured > limit};
}
Item equals(std::string what, double measured, double expected) {
  return {std::move(what), measured, expected, "==", measured == expected};
}

struct Criterion {
  int number;
  std::string title;
  double seconds_limit;
  std::function<std::vector<Item>()> body;
};

double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

struct Triple {
  StateVector chi, psi, phi;
  SuperpositionWeights w;
};

// Random (chi, psi, phi, weights) in dims 2..6; the promise values are the
// actual overlaps, so it is satisfied by construction.
Triple random_triple(std::uint64_t s) {
  std::mt19937_64 g(mix_seed(kSeed, s));
  const int dim = 2 + static_cast<int>(g() % 5);
  const double t = 0.1 + (M_PI / 2.0 - 0.2) * uniform01(g);
  return {random_state(dim, g()), random_state(dim, g()), random_state(dim, g()),
          SuperpositionWeights(std::cos(t), std::polar(std::sin(t), kTwoPi * uniform01(g)))};
}

// ---------------------------------------------------------------- criteria

std::vector<Item> gauge_invariance() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Triple x = random_triple(s);
    std::mt19937_64 g(mix_seed(kSeed + 1, s));
    const Ray base = reference_superposition(x.chi, x.psi, x.phi, x.w).ray;
    const Ray moved = reference_superposition(rephase(x.chi, kTwoPi * uniform01(g)),
                                              rephase(x.psi, kTwoPi * uniform01(g)),
                                              rephase(x.phi, kTwoPi * uniform01(g)), x.w)
                          .ray;
    worst = std::max(worst, 1.0 - overlap_probability(base, moved));
  }
  return {below("max fidelity deviation over 1000 rephased triples", worst, 1e-10)};
}

std::vector<Item> formula_equivalence() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Triple x = random_triple(s);
    const Vec v = reference_superposition(x.chi, x.psi, x.phi, x.w).unnormalized_vector.amplitudes();
    const Mat m = reference_superposition_projector(ray_from_vector(x.chi), ray_from_vector(x.psi),
                                                    ray_from_vector(x.phi), x.w);
    worst = std::max(worst, operator_norm_diff(m, v * v.adjoint()));
  }
  return {below("max operator-norm gap, projector vs vector form", worst, 1e-10)};
}

std::vector<Item> protocol_law() {
  double worst = 0.0;
  double worst_eig = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Triple x = random_triple(s);
    const double c1 = std::norm(x.chi.inner(x.psi));
    const double c2 = std::norm(x.chi.inner(x.phi));
    const OverlapPromise promise(ray_from_vector(x.chi), c1, c2);
    const KrausChannel ch = build_reference_protocol(x.chi, promise, x.w);
    worst_eig = std::max(worst_eig, is_cptni(ch).max_eigenvalue);
    const ProtocolProbabilities p = protocol_success_probability(ch, x.psi, x.phi, promise, x.w);
    worst = std::max(worst, std::abs(p.simulated - p.formula));
  }
  const StateVector zero = StateVector::basis(2, 0);
  const StateVector plus = StateVector::normalize(Vec::Ones(2));
  const SuperpositionWeights bal = SuperpositionWeights::balanced();
  const OverlapPromise canon(ray_from_vector(zero), 1.0, 0.5);
  const KrausChannel ch = build_reference_protocol(zero, canon, bal);
  const ProtocolProbabilities p = protocol_success_probability(ch, zero, plus, canon, bal);
  // (c1 c2 / (c1 + c2)) |Psi|^2 with |Psi|^2 = 1 + 1/sqrt2: (1 + 1/sqrt2) / 3 = 0.5690...
  const double expected = (1.0 + 1.0 / std::sqrt(2.0)) / 3.0;
  return {below("max |simulated - formula| over 1000 promise inputs", worst, 1e-9),
          below("canonical triple |P_succ - (1 + 1/sqrt2)/3|", std::abs(p.simulated - expected), 1e-9),
          at_most("largest eigenvalue of K^+K (CPTNI)", std::max(worst_eig, is_cptni(ch).max_eigenvalue),
                  1.0 + kDefaultTol)};
}

std::vector<Item> ud_lemma() {
  double cross = 0.0;
  double completeness = 0.0;
  double min_eig = 0.0;
  double null_res = 0.0;
  double min_diag = 1.0;
  int wrong = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    std::mt19937_64 g(mix_seed(kSeed + 2, s));
    const int d = 2 + static_cast<int>(g() % 5);
    const int m = 1 + static_cast<int>(g() % d);
    std::vector<StateVector> fam;
    for (int i = 0; i < m; ++i) fam.push_back(random_state(d, g()));
    const UdConstruction c = build_ud_povm(fam);
    if (!c.feasible) {
      ++wrong;
      continue;
    }
    const UdDiagnostics dg = check_ud_povm(*c.povm, fam);
    cross = std::max(cross, dg.max_cross);
    completeness = std::max(completeness, dg.completeness_error);
    min_eig = std::min(min_eig, dg.min_element_eigenvalue);
    min_diag = std::min(min_diag, dg.min_diagonal);
  }
  for (std::uint64_t s = 0; s < 500; ++s) {
    std::mt19937_64 g(mix_seed(kSeed + 3, s));
    const int d = 2 + static_cast<int>(g() % 5);
    const int m = 2 + static_cast<int>(g() % d);  // 2..d+1 vectors
    std::vector<StateVector> fam;
    for (int i = 0; i < m - 1; ++i) fam.push_back(random_state(d, g()));
    if (m <= d) {
      Vec v = Vec::Zero(d);
      for (const StateVector& x : fam) v += std::polar(uniform01(g) + 0.1, kTwoPi * uniform01(g)) * x.amplitudes();
      fam.push_back(StateVector::normalize(v));
    } else {
      fam.push_back(random_state(d, g()));  // d+1 vectors in C^d
    }
    const UdConstruction c = build_ud_povm(fam);
    if (c.feasible) ++wrong;
    null_res = std::max(null_res, c.null_residual);
  }
  const std::vector<StateVector> pair{StateVector::basis(2, 0), StateVector::normalize(Vec::Ones(2))};
  const double lambda = build_ud_povm(pair).povm->lambdas[0];
  return {equals("families classified wrongly (500 LI + 500 LD)", wrong, 0.0),
          below("max cross term <v_j|E_i|v_j>", cross, 1e-10),
          above("min diagonal <v_i|E_i|v_i>", min_diag, 0.0),
          above("min eigenvalue over E_i and E_? (PSD)", min_eig, -1e-10),
          below("max completeness error", completeness, 1e-10),
          below("max Gram null-vector residual (dependent)", null_res, 1e-8),
          below("{|0>,|+>}: |lambda - 1/(2 + sqrt2)|", std::abs(lambda - 1.0 / (2.0 + std::sqrt(2.0))), 1e-10)};
}

std::vector<Item> ldli_condition() {
  const SuperpositionWeights bal = SuperpositionWeights::balanced();
  int counterexamples = 0;
  int dependent = 0;
  int fragile = 0;
  int draws = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    std::mt19937_64 g(mix_seed(kSeed + 4, s));
    const double t = 0.05 + (M_PI / 2.0 - 0.1) * uniform01(g);
    const Complex a = std::polar(std::cos(t), kTwoPi * uniform01(g));
    const Complex b = std::polar(std::sin(t), kTwoPi * uniform01(g));
    const LdliScenario sc =
        s % 2 == 0 ? LdliScenario::standard(a, b, {kTwoPi * uniform01(g), kTwoPi * uniform01(g),
                                                   kTwoPi * uniform01(g)},
                                            bal)
                   : on_phase_condition(a, b, kTwoPi * uniform01(g), (g() & 1) != 0, bal);
    const bool dep = construct_ldli(sc).smallest_singular_value < 1e-10;
    const bool cond = phase_condition_residual(sc) < 1e-8;
    if (dep != cond) ++counterexamples;
    if (dep) ++dependent;
    if (s % 2 == 1 && cond) {
      for (int k = 0; k < 2; ++k) {
        ++draws;
        if (phase_condition_residual(gauge_shift(sc, kTwoPi * uniform01(g), kTwoPi * uniform01(g))) > 1e-3) {
          ++fragile;
        }
      }
    }
  }
  return {equals("counterexamples to sigma_min < 1e-10 <=> residual < 1e-8 (10^4 scenarios)",
                 counterexamples, 0.0),
          above("dependent scenarios exercised", dependent, 1000.0),
          above("fraction of gauge shifts with residual > 1e-3", double(fragile) / draws, 0.99)};
}

std::vector<Item> signaling() {
  const SteeringScenario s = canonical_steering_scenario();
  const CloneOracle oracle = canonical_clone_oracle();
  const SignalingGap g = signaling_gap(s, oracle);
  const DecodeResult d = decode_bit(s, oracle, 100, 1000, kSeed);
  double tv = 0.0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const int dout = 1 + static_cast<int>(k % 3);
    const KrausChannel ch = random_channel(2, dout, 1 + static_cast<int>(k % 3), 1.0, mix_seed(kSeed + 5, k));
    if (!is_cptni(ch).ok) return {equals("random channel failed CPTNI", 1.0, 0.0)};
    const std::vector<Mat> povm = random_povm(dout, 2 + static_cast<int>(k % 3), mix_seed(kSeed + 6, k));
    tv = std::max(tv, no_signaling_gap(s, ch, povm));
  }
  return {equals("P0", g.p0, 0.5),
          equals("P1", g.p1, 0.25),
          below("trace distance of Bob's unconditional states", g.bob_state_distance, 1e-12),
          below("decode error at R = 100 over 1000 trials", d.error_rate, 0.01),
          below("max TV gap with the oracle replaced by CPTNI channels", tv, 1e-10)};
}

std::vector<Item> super_grover() {
  double recursion_dev = 0.0;
  std::int64_t query_mismatch = 0;
  for (int n = 2; n <= 14; ++n) {
    const GroverInstance inst(n, (std::uint64_t{1} << n) / 3);
    const GroverTrace sv = super_grover_run(inst, 0.25 + 1e-12, SimulationMode::statevector);
    const GroverTrace sub = super_grover_run(inst, 0.25 + 1e-12, SimulationMode::subspace);
    if (sv.rounds.size() != sub.rounds.size()) return {equals("mode round counts differ", 1.0, 0.0)};
    for (std::size_t r = 0; r < sv.rounds.size(); ++r) {
      recursion_dev = std::max(recursion_dev, std::abs(sv.rounds[r].a - sub.rounds[r].a));
      if (r > 0) {
        recursion_dev = std::max(recursion_dev,
                                 std::abs(sv.rounds[r].a - overlap_recursion_step(sv.rounds[r - 1].a)));
      }
      query_mismatch += std::abs(sv.rounds[r].queries - static_cast<std::int64_t>(r));
    }
  }
  double growth = 0.0;  // worst 4 p - p'
  for (int k = 0; k <= 100000; ++k) {
    const double p = 0.25 * k / 100000.0;
    growth = std::max(growth, 4.0 * p - std::norm(overlap_recursion_step(std::sqrt(p))));
  }

  const GroverTrace t = super_grover_run(GroverInstance(10, 0), 0.25, SimulationMode::statevector);
  double p = 1.0 / 1024.0;  // independent recursion p -> p (3 - 4p)^2
  for (int r = 0; r < 3; ++r) p *= (3.0 - 4.0 * p) * (3.0 - 4.0 * p);

  const GroverTrace n4 = standard_grover_run(GroverInstance(2, 2), 1, SimulationMode::statevector);
  PhaseOracle meter(GroverInstance(4, 1));
  StateVector x = uniform_state(meter.instance());
  for (int i = 0; i < 7; ++i) x = grover_iterate(meter, x);
  return {below("max |a_r| deviation statevector vs recursion, N <= 2^14", recursion_dev, 1e-9),
          at_most("max (4 p_r - p_{r+1}) for p_r <= 1/4", growth, 1e-12),
          at_most("N = 1024 rounds to p >= 1/4 (round_bound = 4)", t.rounds.back().r, round_bound(1024)),
          equals("N = 1024 observed rounds", t.rounds.back().r, 3.0),
          below("N = 1024 |p_3 - recursion value 0.5583559|", std::abs(t.rounds[3].p - p), 1e-9),
          below("N = 4 standard Grover |p_1 - 1|", std::abs(n4.rounds[1].p - 1.0), 1e-12),
          equals("N = 4 standard Grover queries", n4.queries, 1.0),
          equals("query counter mismatches (instrumented runs)",
                 query_mismatch + std::abs(meter.queries() - 7), 0.0)};
}

std::vector<Item> circle_geometry() {
  const StateVector zero = StateVector::basis(2, 0);
  const SuperpositionWeights bal = SuperpositionWeights::balanced();
  const KrausChannel ch =
      build_reference_protocol(zero, OverlapPromise(ray_from_vector(zero), 0.5, 1.0), bal);
  const std::vector<BlochPoint> pts = success_set_scan(ch, zero, bal, ScanGrid{400, 800}, 1e-9);
  if (pts.size() < 4) return {above("success points", pts.size(), 3.0)};
  const CircleFit f = fit_circle_constraint(pts);
  const double dev = std::max({std::abs(f.constraint.a() - 1.0), std::abs(f.constraint.b()),
                               std::abs(f.constraint.c()), std::abs(f.constraint.d())});
  std::vector<BlochPoint> haar;
  for (std::uint64_t s = 0; s < 200; ++s) haar.push_back(bloch_point(random_state(2, mix_seed(kSeed + 7, s))));
  return {above("success points on the 400 x 800 grid", static_cast<double>(pts.size()), 3.0),
          below("fit residual", f.max_residual, 1e-6),
          below("max |(A, B, C, D) - (1, 0, 0, 0)|", dev, 1e-6),
          above("Haar points fit residual", fit_circle_constraint(haar).max_residual, 0.1)};
}

std::vector<Item> channel_algebra() {
  double min_choi = 0.0;
  double roundtrip = 0.0;
  double increase = -1.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    std::mt19937_64 g(mix_seed(kSeed + 8, s));
    const int din = 1 + static_cast<int>(g() % 4);
    const int dout = 1 + static_cast<int>(g() % 4);
    const int nk = 1 + static_cast<int>(g() % 4);
    const KrausChannel ch = random_channel(din, dout, nk, 0.5 + 0.5 * uniform01(g), g());
    const ChoiMatrix c = choi_matrix(ch);
    min_choi = std::min(min_choi, c.smallest_eigenvalue());
    const DensityOperator rho = random_density(din, g());
    roundtrip = std::max(roundtrip, max_abs_diff(c.apply(rho.matrix()), apply(ch, rho).matrix()));
    increase = std::max(increase, apply(ch, rho).trace() - rho.trace());
  }
  // A Kraus list whose Choi matrix is checked against a known non-CP map.
  Mat swap = Mat::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  const bool transpose_rejected = !ChoiMatrix(2, 2, swap).is_psd();
  return {above("min Choi eigenvalue over 1000 random Kraus channels", min_choi, -1e-10),
          below("max Choi-Kraus round-trip error", roundtrip, 1e-10),
          at_most("max trace increase over 1000 (channel, state) pairs", increase, 1e-10),
          equals("transpose map rejected as not CP", transpose_rejected ? 1.0 : 0.0, 1.0)};
}

std::vector<Item> determinism() {
  int differing = 0;
  for (const std::string& name : lab::experiment_names()) {
    lab::ExperimentConfig cfg = lab::parse_config(lab::Json{{"experiment", name}});
    cfg.seed = kSeed;
    const lab::RunReport a = lab::run(cfg, 1);
    const lab::RunReport b = lab::run(cfg, 0);
    if (lab::emit_json(a) != lab::emit_json(b)) ++differing;
    if (lab::emit_csv(a) != lab::emit_csv(b)) ++differing;
  }
  return {equals("report files differing between reruns (6 experiments x json, csv)", differing, 0.0)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "gauge invariance of the reference superposition", 10.0, gauge_invariance},
      {2, "projector and vector forms agree", 10.0, formula_equivalence},
      {3, "protocol success law", 10.0, protocol_law},
      {4, "unambiguous discrimination iff linear independence", 30.0, ud_lemma},
      {5, "LD->LI phase condition and gauge fragility", 30.0, ldli_condition},
      {6, "steering-to-signaling counterfactual", 60.0, signaling},
      {7, "super-Grover collapse", 60.0, super_grover},
      {8, "circle geometry of the success set", 120.0, circle_geometry},
      {9, "channel algebra", 10.0, channel_algebra},
      {10, "reports are byte-identical across reruns", 600.0, determinism},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Item> items;
    std::string error;
    try {
      items = c.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = error.empty() && secs < c.seconds_limit;
    for (const Item& it : items) ok = ok && it.pass;
    if (!ok) ++failed;

    std::printf("%s criterion %d: %s (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", c.number,
                c.title.c_str(), secs, c.seconds_limit);
    for (const Item& it : items) {
      std::printf("    %s %s: %.17g %s %.17g\n", it.pass ? "ok  " : "miss", it.what.c_str(),
                  it.measured, it.relation, it.limit);
    }
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
