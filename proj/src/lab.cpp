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

#include "qnogo/lab.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "qnogo/channels.hpp"
#include "qnogo/geometry.hpp"
#include "qnogo/grover.hpp"
#include "qnogo/hilbert.hpp"
#include "qnogo/nogo.hpp"
#include "qnogo/parallel.hpp"
#include "qnogo/signaling.hpp"
#include "qnogo/superposer.hpp"

namespace qnogo::lab {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Stream numbering: per-sample streams use mix_seed(seed, k) for k below
// the sample count; fixed single-use streams sit at kFixedStream + i.
constexpr std::uint64_t kFixedStream = std::uint64_t{1} << 40;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n) { return g_() % n; }

 private:
  std::mt19937_64 g_;
};

SuperpositionWeights random_weights(Rng& rng) {
  const double t = rng.uniform(0.1, M_PI / 2.0 - 0.1);
  return {Complex(std::cos(t)), std::polar(std::sin(t), rng.uniform(0.0, kTwoPi))};
}

StateVector qubit(double a0, double a1) {
  Vec v(2);
  v << a0, a1;
  return StateVector::normalize(v);
}

bool holds(double measured, double tol, Relation r) {
  switch (r) {
    case Relation::less: return measured < tol;
    case Relation::less_equal: return measured <= tol;
    case Relation::greater: return measured > tol;
    case Relation::greater_equal: return measured >= tol;
  }
  return false;
}

const char* relation_text(Relation r) {
  switch (r) {
    case Relation::less: return "<";
    case Relation::less_equal: return "<=";
    case Relation::greater: return ">";
    case Relation::greater_equal: return ">=";
  }
  return "?";
}

class ReportBuilder {
 public:
  ReportBuilder(RunReport& report, std::optional<double> override)
      : report_(report), override_(override) {}

  // `exact` marks floating-point agreement checks whose tolerance the
  // global override replaces; statistical and counting thresholds keep
  // theirs.
  void check(std::string id, std::string invariant, std::string description,
             double measured, double tol, Relation rel = Relation::less_equal,
             bool exact = false) {
    if (exact && override_) tol = *override_;
    report_.checks.push_back({std::move(id), std::move(invariant), std::move(description),
                              measured, tol, rel, holds(measured, tol, rel)});
  }

  Table& table(std::string name, std::vector<std::string> columns) {
    report_.tables.push_back({std::move(name), std::move(columns), {}});
    return report_.tables.back();
  }

  template <class F>
  auto timed(const std::string& phase, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    report_.timings.emplace_back(phase, dt.count());
    return result;
  }

 private:
  RunReport& report_;
  std::optional<double> override_;
};

int get_int(const Json& p, const char* key) { return p.at(key).get<int>(); }
double get_double(const Json& p, const char* key) { return p.at(key).get<double>(); }

// ---------------------------------------------------------------- superpose

void run_superpose(const ExperimentConfig& cfg, const Json& p, unsigned workers,
                   RunReport& report) {
  ReportBuilder b(report, cfg.tolerance);
  const int samples = get_int(p, "samples");
  const int min_dim = get_int(p, "min_dim");
  const int max_dim = get_int(p, "max_dim");
  if (samples <= 0 || min_dim < 2 || max_dim < min_dim) {
    throw Error("superpose: need samples > 0 and 2 <= min_dim <= max_dim");
  }
  const std::uint64_t seed = *cfg.seed;

  struct Sample {
    int dim = 0;
    bool skipped = false;
    double gauge = 0.0, formula = 0.0, law = 0.0, max_eig = 0.0;
  };

  const auto results = b.timed("samples", [&] {
    return parallel_map(
        static_cast<std::size_t>(samples),
        [&](std::size_t k) {
          const std::uint64_t s = mix_seed(seed, k);
          Rng rng(mix_seed(s, 0));
          Sample out;
          out.dim = min_dim + static_cast<int>(rng.below(max_dim - min_dim + 1));
          const StateVector chi = random_state(out.dim, mix_seed(s, 1));
          const StateVector psi = random_state(out.dim, mix_seed(s, 2));
          const StateVector phi = random_state(out.dim, mix_seed(s, 3));
          const SuperpositionWeights w = random_weights(rng);
          const double g1 = rng.uniform(0.0, kTwoPi);
          const double g2 = rng.uniform(0.0, kTwoPi);
          const double g3 = rng.uniform(0.0, kTwoPi);

          const ReferenceSuperposition ref = reference_superposition(chi, psi, phi, w);
          const Vec& psi_vec = ref.unnormalized_vector.amplitudes();
          if (psi_vec.squaredNorm() < 1e-6) {
            out.skipped = true;
            return out;
          }
          const ReferenceSuperposition shifted = reference_superposition(
              rephase(chi, g3), rephase(psi, g1), rephase(phi, g2), w);
          out.gauge = std::abs(1.0 - overlap_probability(ref.ray, shifted.ray));

          const Mat proj = reference_superposition_projector(
              ray_from_vector(chi), ray_from_vector(psi), ray_from_vector(phi), w);
          out.formula = operator_norm_diff(proj, psi_vec * psi_vec.adjoint());

          const OverlapPromise promise(ray_from_vector(chi), std::norm(chi.inner(psi)),
                                       std::norm(chi.inner(phi)));
          const KrausChannel ch = build_reference_protocol(chi, promise, w);
          const ProtocolProbabilities pr =
              protocol_success_probability(ch, psi, phi, promise, w);
          out.law = std::abs(pr.simulated - pr.formula);
          out.max_eig = is_cptni(ch).max_eigenvalue;
          return out;
        },
        workers);
  });

  double gauge = 0.0, formula = 0.0, law = 0.0, max_eig = 0.0;
  int skipped = 0;
  std::map<int, std::array<double, 5>> by_dim;  // count, gauge, formula, law, max_eig
  for (const Sample& s : results) {
    if (s.skipped) {
      ++skipped;
      continue;
    }
    gauge = std::max(gauge, s.gauge);
    formula = std::max(formula, s.formula);
    law = std::max(law, s.law);
    max_eig = std::max(max_eig, s.max_eig);
    auto& row = by_dim[s.dim];
    row[0] += 1.0;
    row[1] = std::max(row[1], s.gauge);
    row[2] = std::max(row[2], s.formula);
    row[3] = std::max(row[3], s.law);
    row[4] = std::max(row[4], s.max_eig);
  }

  // Canonical triple: chi = |0>, psi = |0>, phi = |+>, balanced weights.
  const StateVector zero = StateVector::basis(2, 0);
  const StateVector plus = qubit(1.0, 1.0);
  const SuperpositionWeights bal = SuperpositionWeights::balanced();
  const OverlapPromise canon_promise(ray_from_vector(zero), 1.0, 0.5);
  const KrausChannel canon = build_reference_protocol(zero, canon_promise, bal);
  const ProtocolProbabilities cp =
      protocol_success_probability(canon, zero, plus, canon_promise, bal);
  const double expected = (1.0 + M_SQRT1_2) / 3.0;

  b.check("gauge_invariance", "superposer.reference_superposition.gauge_invariance",
          "max fidelity deviation of the reference-superposition ray under independent "
          "rephasings of chi, psi, phi",
          gauge, 1e-10, Relation::less, true);
  b.check("formula_equivalence", "superposer.reference_superposition.projector_form",
          "max operator-norm gap between the projector formula and |Psi><Psi|", formula,
          1e-10, Relation::less, true);
  b.check("protocol_success_law", "superposer.protocol.success_probability",
          "max |simulated - c1 c2/(c1+c2) ||Psi||^2| over promise-satisfying inputs", law,
          1e-9, Relation::less_equal, true);
  b.check("protocol_cptni", "channels.cptni",
          "max eigenvalue of sum K^dagger K over compiled protocols", max_eig, 1.0 + 1e-10,
          Relation::less_equal);
  b.check("canonical_success_probability", "superposer.protocol.success_probability",
          "|P_succ - (1 + 1/sqrt 2)/3| on chi=|0>, psi=|0>, phi=|+>", std::abs(cp.simulated - expected),
          1e-9, Relation::less_equal, true);
  b.check("skipped_samples", "superposer.reference_superposition.nonvanishing",
          "samples skipped because ||Psi||^2 < 1e-6", skipped, 0.01 * samples,
          Relation::less_equal);

  Table& t = b.table("by_dimension", {"dim", "count", "max_gauge_deviation",
                                      "max_formula_gap", "max_law_gap", "max_effect_eigenvalue"});
  for (const auto& [dim, row] : by_dim) {
    t.rows.push_back({static_cast<double>(dim), row[0], row[1], row[2], row[3], row[4]});
  }
  Table& c = b.table("canonical", {"c1", "c2", "p_simulated", "p_formula", "p_expected"});
  c.rows.push_back({1.0, 0.5, cp.simulated, cp.formula, expected});
}

// --------------------------------------------------------------------- ldli

LdliScenario random_ldli(std::uint64_t s, bool on_condition) {
  Rng rng(mix_seed(s, 0));
  const StateVector ab = random_state(2, mix_seed(s, 1));
  const SuperpositionWeights w = random_weights(rng);
  const double t1 = rng.uniform(0.0, kTwoPi);
  if (on_condition) return on_phase_condition(ab[0], ab[1], t1, rng.below(2) == 1, w);
  const double t2 = rng.uniform(0.0, kTwoPi);
  const double t3 = rng.uniform(0.0, kTwoPi);
  return LdliScenario::standard(ab[0], ab[1], {t1, t2, t3}, w);
}

void run_ldli(const ExperimentConfig& cfg, const Json& p, unsigned workers, RunReport& report) {
  ReportBuilder b(report, cfg.tolerance);
  const int samples = get_int(p, "samples");
  const int gauge_draws = get_int(p, "gauge_draws");
  if (samples <= 0 || gauge_draws <= 0) throw Error("ldli: counts must be positive");
  const std::uint64_t seed = *cfg.seed;

  struct Sample {
    bool dependent = false;
    bool small_residual = false;
    double sigma = 0.0;
    double residual = 0.0;
  };
  // Odd samples sit on the phase condition, even samples are unconstrained.
  const auto results = b.timed("sweep", [&] {
    return parallel_map(
        static_cast<std::size_t>(samples),
        [&](std::size_t k) {
          const LdliScenario sc = random_ldli(mix_seed(seed, k), k % 2 == 1);
          const LdliOutputs out = construct_ldli(sc);
          Sample s;
          s.sigma = out.smallest_singular_value;
          s.residual = phase_condition_residual(sc);
          s.dependent = s.sigma < 1e-10;
          s.small_residual = s.residual < 1e-8;
          return s;
        },
        workers);
  });

  int dependent = 0, counterexamples = 0;
  double max_sigma_dependent = 0.0, min_sigma_independent = 1.0;
  for (const Sample& s : results) {
    dependent += s.dependent ? 1 : 0;
    counterexamples += s.dependent != s.small_residual ? 1 : 0;
    if (s.dependent) max_sigma_dependent = std::max(max_sigma_dependent, s.sigma);
    else min_sigma_independent = std::min(min_sigma_independent, s.sigma);
  }

  const auto shifted = b.timed("gauge", [&] {
    return parallel_map(
        static_cast<std::size_t>(gauge_draws),
        [&](std::size_t j) {
          const std::uint64_t s = mix_seed(seed, samples + j);
          const LdliScenario sc = random_ldli(s, true);
          Rng rng(mix_seed(s, 2));
          const double g1 = rng.uniform(0.0, kTwoPi);
          const double g2 = rng.uniform(0.0, kTwoPi);
          return phase_condition_residual(gauge_shift(sc, g1, g2));
        },
        workers);
  });
  const double broken =
      static_cast<double>(std::count_if(shifted.begin(), shifted.end(),
                                        [](double r) { return r > 1e-3; })) /
      gauge_draws;

  // a = b = alpha = beta = 1/sqrt 2, all thetas 0.
  const SuperpositionWeights bal = SuperpositionWeights::balanced();
  const LdliScenario ex =
      LdliScenario::standard(Complex(M_SQRT1_2), Complex(M_SQRT1_2), {0.0, 0.0, 0.0}, bal);
  const LdliOutputs ex_out = construct_ldli(ex);
  const double ex_closed = std::abs(bal.alpha() * bal.alpha() * bal.beta() *
                                    (1.0 - ex.a() - ex.b()));

  b.check("phase_condition_equivalence", "nogo.ldli.phase_condition",
          "scenarios where sigma_min < 1e-10 disagrees with residual < 1e-8", counterexamples,
          0.0, Relation::less_equal);
  b.check("dependent_cases_present", "nogo.ldli.phase_condition",
          "scenarios with dependent outputs in the sweep", dependent, 0.0, Relation::greater);
  b.check("gauge_breaks_condition", "nogo.ldli.gauge_transformation",
          "fraction of gauge-shifted on-condition scenarios with residual > 1e-3", broken, 0.99,
          Relation::greater);
  b.check("example_determinant", "nogo.ldli.construct",
          "| |det| - |alpha^2 beta (1 - a - b)| | for a = b = alpha = beta = 1/sqrt 2",
          std::abs(ex_out.gram_det - ex_closed), 1e-12, Relation::less_equal, true);

  Table& t = b.table("summary", {"samples", "dependent", "counterexamples",
                                 "max_sigma_dependent", "min_sigma_independent",
                                 "gauge_draws", "gauge_broken_fraction"});
  t.rows.push_back({static_cast<double>(samples), static_cast<double>(dependent),
                    static_cast<double>(counterexamples), max_sigma_dependent,
                    min_sigma_independent, static_cast<double>(gauge_draws), broken});
  Table& e = b.table("example", {"gram_det", "closed_form", "smallest_singular_value",
                                 "phase_residual"});
  e.rows.push_back({ex_out.gram_det, ex_closed, ex_out.smallest_singular_value,
                    phase_condition_residual(ex)});
}

// ----------------------------------------------------------------------- ud

void run_ud(const ExperimentConfig& cfg, const Json& p, unsigned workers, RunReport& report) {
  ReportBuilder b(report, cfg.tolerance);
  const int independent = get_int(p, "independent");
  const int dependent = get_int(p, "dependent");
  const int max_dim = get_int(p, "max_dim");
  if (independent < 0 || dependent < 0 || max_dim < 2) {
    throw Error("ud: need non-negative counts and max_dim >= 2");
  }
  const std::uint64_t seed = *cfg.seed;

  struct Sample {
    bool expected_feasible = true;
    bool feasible = false;
    int dim = 0, size = 0;
    double cross = 0.0, completeness = 0.0, min_eig = 0.0, min_diag = 0.0;
    double null_residual = 0.0;
  };
  const auto results = b.timed("families", [&] {
    return parallel_map(
        static_cast<std::size_t>(independent + dependent),
        [&](std::size_t k) {
          const std::uint64_t s = mix_seed(seed, k);
          Rng rng(mix_seed(s, 0));
          Sample out;
          out.expected_feasible = static_cast<int>(k) < independent;
          out.dim = 2 + static_cast<int>(rng.below(max_dim - 1));
          std::vector<StateVector> fam;
          if (out.expected_feasible) {
            out.size = 1 + static_cast<int>(rng.below(out.dim));
          } else if (k % 2 == 0) {
            out.size = out.dim + 1;
          } else {
            out.size = 2 + static_cast<int>(rng.below(out.dim - 1));
          }
          const int drawn = (!out.expected_feasible && k % 2 == 1) ? out.size - 1 : out.size;
          for (int i = 0; i < drawn; ++i) fam.push_back(random_state(out.dim, mix_seed(s, 10 + i)));
          if (drawn < out.size) {
            const StateVector c = random_state(drawn, mix_seed(s, 1));
            Vec v = Vec::Zero(out.dim);
            for (int i = 0; i < drawn; ++i) v += c[i] * fam[i].amplitudes();
            fam.push_back(StateVector::normalize(v));
          }
          const UdConstruction con = build_ud_povm(fam);
          out.feasible = con.feasible;
          if (con.feasible) {
            const UdDiagnostics d = check_ud_povm(*con.povm, fam);
            out.cross = d.max_cross;
            out.completeness = d.completeness_error;
            out.min_eig = d.min_element_eigenvalue;
            out.min_diag = d.min_diagonal;
          } else {
            out.null_residual = con.null_residual;
          }
          return out;
        },
        workers);
  });

  int mismatched = 0;
  double cross = 0.0, completeness = 0.0, min_eig = 0.0, min_diag = 1.0, null_res = 0.0;
  for (const Sample& s : results) {
    if (s.feasible != s.expected_feasible) ++mismatched;
    if (s.feasible) {
      cross = std::max(cross, s.cross);
      completeness = std::max(completeness, s.completeness);
      min_eig = std::min(min_eig, s.min_eig);
      min_diag = std::min(min_diag, s.min_diag);
    } else {
      null_res = std::max(null_res, s.null_residual);
    }
  }

  const std::vector<StateVector> pair = {StateVector::basis(2, 0), qubit(1.0, 1.0)};
  const UdConstruction canon = build_ud_povm(pair);
  const double lambda = canon.feasible ? canon.povm->lambdas.front() : 0.0;
  const double expected = 1.0 / (2.0 + M_SQRT2);

  b.check("feasibility_matches_independence", "nogo.ud.lemma",
          "families whose feasibility disagrees with linear independence", mismatched, 0.0,
          Relation::less_equal);
  b.check("cross_terms", "nogo.ud.construction", "max <v_j|E_i|v_j>, i != j", cross, 1e-10,
          Relation::less, true);
  b.check("completeness", "nogo.ud.construction", "max |sum E - I|", completeness, 1e-10,
          Relation::less, true);
  b.check("elements_psd", "nogo.ud.construction", "min eigenvalue over all POVM elements",
          min_eig, -1e-10, Relation::greater_equal);
  b.check("positive_success", "nogo.ud.construction", "min <v_i|E_i|v_i>", min_diag, 0.0,
          Relation::greater);
  b.check("null_vector_residual", "nogo.ud.lemma",
          "max || sum_j c_j v_j || for dependent families", null_res, 1e-8, Relation::less);
  b.check("canonical_lambda", "nogo.ud.construction",
          "|lambda - 1/(2 + sqrt 2)| for {|0>, |+>}", std::abs(lambda - expected), 1e-10,
          Relation::less_equal, true);

  Table& t = b.table("summary", {"independent", "dependent", "mismatched", "max_cross",
                                 "max_completeness_error", "min_element_eigenvalue",
                                 "max_null_residual", "canonical_lambda"});
  t.rows.push_back({static_cast<double>(independent), static_cast<double>(dependent),
                    static_cast<double>(mismatched), cross, completeness, min_eig, null_res,
                    lambda});
}

// ------------------------------------------------------------------- signal

StateVector parse_state(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("signal: a state must be a nonempty array");
  return StateVector::normalize(vector_from_json(j));
}

Ensemble parse_ensemble(const Json& j) {
  if (!j.is_array()) throw Error("signal: an ensemble must be an array");
  std::vector<double> weights;
  std::vector<StateVector> states;
  for (const Json& e : j) {
    for (const auto& [key, value] : e.items()) {
      if (key != "weight" && key != "state") throw Error("signal: unknown ensemble key " + key);
    }
    weights.push_back(e.at("weight").get<double>());
    states.push_back(parse_state(e.at("state")));
  }
  return Ensemble(std::move(weights), std::move(states));
}

std::pair<SteeringScenario, CloneOracle> parse_scenario(const Json& j) {
  if (j.is_null()) return {canonical_steering_scenario(), canonical_clone_oracle()};
  for (const auto& [key, value] : j.items()) {
    if (key != "ensemble0" && key != "ensemble1" && key != "oracle") {
      throw Error("signal: unknown scenario key " + key);
    }
  }
  const Json& o = j.at("oracle");
  for (const auto& [key, value] : o.items()) {
    if (key != "set" && key != "probs" && key != "policy") {
      throw Error("signal: unknown oracle key " + key);
    }
  }
  std::vector<Ray> set;
  for (const Json& s : o.at("set")) set.push_back(ray_from_vector(parse_state(s)));
  const std::string policy = o.value("policy", std::string("zero"));
  if (policy != "zero" && policy != "overlap_weighted") {
    throw Error("signal: policy must be zero or overlap_weighted");
  }
  CloneOracle oracle(std::move(set), o.at("probs").get<std::vector<double>>(),
                     policy == "zero" ? OffSetPolicy::zero : OffSetPolicy::overlap_weighted);
  return {make_steering_scenario(parse_ensemble(j.at("ensemble0")),
                                 parse_ensemble(j.at("ensemble1"))),
          std::move(oracle)};
}

void run_signal(const ExperimentConfig& cfg, const Json& p, unsigned workers,
                RunReport& report) {
  ReportBuilder b(report, cfg.tolerance);
  const auto reps = p.at("repetitions").get<std::vector<int>>();
  const int trials = get_int(p, "trials");
  const int bob_povms = get_int(p, "bob_povms");
  const int mc_rounds = get_int(p, "mc_rounds");
  if (trials <= 0 || bob_povms <= 0 || mc_rounds <= 0) throw Error("signal: counts must be positive");
  const bool canonical = p.at("scenario").is_null();
  const auto [scenario, oracle] = parse_scenario(p.at("scenario"));
  const std::uint64_t seed = *cfg.seed;

  const SteeringCheck sc = check_steering(scenario);
  const SignalingGap gap = signaling_gap(scenario, oracle);
  const double steering_err = std::max({sc.max_average_error, sc.max_completeness_error,
                                        sc.max_weight_error, sc.max_fidelity_deficit,
                                        std::max(0.0, -sc.min_element_eigenvalue)});
  b.check("steering_soundness", "signaling.steering_soundness",
          "max steering-consistency error of both Alice measurements", steering_err, 1e-9,
          Relation::less_equal, true);
  if (canonical) {
    b.check("p0_exact", "signaling.signaling_gap", "|P0 - 1/2| on the canonical scenario",
            std::abs(gap.p0 - 0.5), 1e-12, Relation::less_equal, true);
    b.check("p1_exact", "signaling.signaling_gap", "|P1 - 1/4| on the canonical scenario",
            std::abs(gap.p1 - 0.25), 1e-12, Relation::less_equal, true);
  }
  b.check("bob_state_identical", "signaling.signaling_gap",
          "trace distance of Bob's unconditional states under the two measurements",
          gap.bob_state_distance, 1e-12, Relation::less, true);

  // Gap exactness: Monte-Carlo success rates against the closed form.
  double max_z = 0.0;
  for (int bit = 0; bit < 2; ++bit) {
    const double pb = bit == 0 ? gap.p0 : gap.p1;
    const double rate = simulate_success_rate(scenario, oracle, bit, mc_rounds,
                                              mix_seed(seed, kFixedStream + bit));
    const double sigma = std::sqrt(std::max(pb * (1.0 - pb), 1e-300) / mc_rounds);
    max_z = std::max(max_z, std::abs(rate - pb) / sigma);
  }
  b.check("gap_exactness", "signaling.gap_exactness",
          "max |empirical - exact| success rate in binomial standard deviations", max_z, 3.0,
          Relation::less_equal);

  const bool has_gap = std::abs(gap.p0 - gap.p1) > 1e-12;
  Table& curve = b.table("decode", {"repetitions", "empirical_error", "exact_error", "bound"});
  std::map<int, double> err;
  if (has_gap) {
    b.timed("decode", [&] {
      for (std::size_t i = 0; i < reps.size(); ++i) {
        const DecodeResult d = decode_bit(scenario, oracle, reps[i], trials,
                                          mix_seed(seed, kFixedStream + 16 + i), workers);
        err[reps[i]] = d.error_rate;
        curve.rows.push_back({static_cast<double>(reps[i]), d.error_rate, d.exact_error,
                              d.chernoff_bound});
      }
      return 0;
    });
    double worst_increase = -1.0, worst_ratio = 0.0;
    bool have_pair = false, have_large = false;
    for (const auto& [r, e] : err) {
      if (r > 0 && err.count(2 * r)) {
        worst_increase = have_pair ? std::max(worst_increase, err[2 * r] - e) : err[2 * r] - e;
        have_pair = true;
      }
      if (r >= 100) {
        const double bound = std::exp(-r * (gap.p0 - gap.p1) * (gap.p0 - gap.p1) / 2.0);
        worst_ratio = std::max(worst_ratio, e / bound);
        have_large = true;
      }
    }
    if (have_pair) {
      b.check("decode_monotone", "signaling.decode_bit",
              "max increase of the error rate from R to 2R", worst_increase,
              3.0 * std::sqrt(2.0 * 0.25 / trials), Relation::less_equal);
    }
    if (have_large) {
      b.check("decode_chernoff", "signaling.decode_bit",
              "max error / exp(-R (P0 - P1)^2 / 2) over R >= 100", worst_ratio, 3.0,
              Relation::less);
    }
    if (err.count(100)) {
      b.check("decode_r100", "signaling.decode_bit", "empirical error rate at R = 100",
              err[100], 0.01, Relation::less);
    }
  }

  // No-signaling restoration: any CPTNI map on B, then any POVM.
  const auto gaps = b.timed("no_signaling", [&] {
    return parallel_map(
        static_cast<std::size_t>(bob_povms),
        [&](std::size_t k) {
          const std::uint64_t s = mix_seed(seed, k);
          Rng rng(mix_seed(s, 0));
          const int d = scenario.purification.dim_b;
          const int dout = 2 + static_cast<int>(rng.below(2));
          const int nk = 1 + static_cast<int>(rng.below(3));
          const double scale = rng.uniform(0.05, 1.0);
          const KrausChannel ch = random_channel(d, dout, nk, scale, mix_seed(s, 1));
          const int outcomes = 2 + static_cast<int>(rng.below(3));
          const std::vector<Mat> povm = random_povm(dout, outcomes, mix_seed(s, 2));
          return std::make_pair(is_cptni(ch).ok, no_signaling_gap(scenario, ch, povm));
        },
        workers);
  });
  double max_tv = 0.0;
  int not_cptni = 0;
  for (const auto& [ok, tv] : gaps) {
    not_cptni += ok ? 0 : 1;
    max_tv = std::max(max_tv, tv);
  }
  b.check("replacement_channels_cptni", "channels.cptni",
          "random replacement channels failing the CPTNI check", not_cptni, 0.0,
          Relation::less_equal);
  b.check("no_signaling_restoration", "signaling.no_signaling_restoration",
          "max total-variation distance of Bob's statistics across Alice's measurements",
          max_tv, 1e-10, Relation::less, true);

  Table& g = b.table("gap", {"p0", "p1", "bob_state_distance", "no_signaling_max_tv"});
  g.rows.push_back({gap.p0, gap.p1, gap.bob_state_distance, max_tv});
}

// ------------------------------------------------------------------- grover

void run_grover(const ExperimentConfig& cfg, const Json& p, unsigned /*workers*/,
                RunReport& report) {
  ReportBuilder b(report, cfg.tolerance);
  const int n = get_int(p, "n");
  const int cross_max = get_int(p, "crosscheck_max_n");
  if (n < 2 || cross_max < 3 || cross_max > 20) {
    throw Error("grover: need n >= 2 and 3 <= crosscheck_max_n <= 20");
  }
  const auto marked = static_cast<std::uint64_t>(p.at("marked").get<std::int64_t>());
  const GroverInstance inst(n, marked % (std::uint64_t{1} << n));
  const std::uint64_t big_n = inst.size();
  const SimulationMode mode =
      n <= 20 ? SimulationMode::statevector : SimulationMode::subspace;

  // Standard Grover for floor(pi/4 sqrt N) iterations.
  const int iters = static_cast<int>(std::floor(M_PI / 4.0 * std::sqrt(static_cast<double>(big_n))));
  const GroverTrace std_trace =
      b.timed("standard", [&] { return standard_grover_run(inst, iters, mode); });
  Table& st = b.table("standard_trace", {"r", "p", "closed_form", "queries"});
  double closed_dev = 0.0;
  for (const GroverRound& r : std_trace.rounds) {
    const double cf = standard_success_closed_form(big_n, r.r);
    closed_dev = std::max(closed_dev, std::abs(r.p - cf));
    st.rows.push_back({static_cast<double>(r.r), r.p, cf, static_cast<double>(r.queries)});
  }
  b.check("standard_closed_form", "grover.standard_success_law",
          "max |p_r - sin^2((2r+1) arcsin(1/sqrt N))|", closed_dev, 1e-10, Relation::less_equal,
          true);
  b.check("standard_final_probability", "grover.grover_iterate",
          "success probability after floor(pi/4 sqrt N) iterations",
          std_trace.rounds.back().p, big_n == 4 ? 1.0 - 1e-12 : 0.99, Relation::greater);
  b.check("standard_query_count", "grover.query_accounting",
          "|oracle queries - iterations| for standard Grover",
          std::abs(static_cast<double>(std_trace.queries - iters)), 0.0, Relation::less_equal);

  // Super-Grover to p >= 1/4.
  const int bound = round_bound(big_n);
  Table& sp = b.table("super_trace", {"r", "a_re", "a_im", "p", "queries"});
  if (big_n > 4) {
    const GroverTrace sup =
        b.timed("super", [&] { return super_grover_run(inst, 0.25, mode); });
    double rec_dev = 0.0;
    for (std::size_t i = 0; i < sup.rounds.size(); ++i) {
      const GroverRound& r = sup.rounds[i];
      sp.rows.push_back({static_cast<double>(r.r), r.a.real(), r.a.imag(), r.p,
                         static_cast<double>(r.queries)});
      if (i > 0) {
        rec_dev = std::max(rec_dev, std::abs(r.a - overlap_recursion_step(sup.rounds[i - 1].a)));
      }
    }
    const int rounds = sup.rounds.back().r;
    b.check("super_rounds_within_bound", "grover.round_bound",
            "super-Grover rounds to reach p >= 1/4 (limit: round_bound(N))", rounds, bound,
            Relation::less_equal);
    b.check("super_query_count", "grover.query_accounting",
            "|oracle queries - rounds| for super-Grover",
            std::abs(static_cast<double>(sup.queries - rounds)), 0.0, Relation::less_equal);
    b.check("super_recursion_fidelity", "grover.recursion_fidelity",
            "max |a_{r+1} - (3 - 4|a_r|^2) a_r| along the run", rec_dev, 1e-9,
            Relation::less, true);
  }

  // Mode cross-check and growth bound over 2^3 .. 2^cross_max.
  Table& cc = b.table("mode_crosscheck", {"n", "rounds", "max_mode_deviation",
                                          "max_recursion_deviation"});
  double mode_dev = 0.0, rec_dev = 0.0, growth = -1.0;
  b.timed("crosscheck", [&] {
    for (int q = 3; q <= cross_max; ++q) {
      const GroverInstance gi(q, (std::uint64_t{1} << q) / 3);
      const GroverTrace sv = super_grover_run(gi, 0.25, SimulationMode::statevector);
      const GroverTrace ss = super_grover_run(gi, 0.25, SimulationMode::subspace);
      double md = 0.0, rd = 0.0;
      Complex a = sv.rounds.front().a;
      for (std::size_t i = 0; i < sv.rounds.size(); ++i) {
        md = std::max(md, std::abs(sv.rounds[i].a - ss.rounds[i].a));
        rd = std::max(rd, std::abs(sv.rounds[i].a - a));
        if (sv.rounds[i].p <= 0.25 && i + 1 < sv.rounds.size()) {
          growth = std::max(growth, 4.0 * sv.rounds[i].p - sv.rounds[i + 1].p);
        }
        a = overlap_recursion_step(a);
      }
      if (sv.rounds.size() != ss.rounds.size()) md = std::numeric_limits<double>::infinity();
      mode_dev = std::max(mode_dev, md);
      rec_dev = std::max(rec_dev, rd);
      cc.rows.push_back({static_cast<double>(q), static_cast<double>(sv.rounds.back().r), md, rd});
    }
    return 0;
  });
  for (int k = 1; k <= 10000; ++k) {
    const double p0 = 0.25 * k / 10000.0;
    const double p1 = std::norm(overlap_recursion_step(Complex(std::sqrt(p0))));
    growth = std::max(growth, 4.0 * p0 - p1);
  }
  b.check("mode_crosscheck", "grover.recursion_fidelity",
          "max |a_r(statevector) - a_r(subspace)| for N up to 2^crosscheck_max_n", mode_dev,
          1e-9, Relation::less, true);
  b.check("recursion_fidelity", "grover.recursion_fidelity",
          "max |a_r(statevector) - recursion iterate| for N up to 2^crosscheck_max_n", rec_dev,
          1e-9, Relation::less, true);
  b.check("growth_bound", "grover.growth_bound", "max (4 p_r - p_{r+1}) over p_r <= 1/4",
          growth, 1e-12, Relation::less_equal, true);

  const QueryComparison qc = query_comparison(inst);
  b.check("super_rounds_vs_bound", "grover.query_comparison",
          "super rounds to p >= 1/4 (limit: round_bound(N))", qc.super_rounds_to_quarter, bound,
          Relation::less_equal);
  Table& cmp = b.table("query_comparison",
                       {"N", "standard_queries_to_half", "standard_iterations",
                        "standard_final_p", "super_rounds_to_quarter", "super_queries_to_half",
                        "round_bound"});
  cmp.rows.push_back({static_cast<double>(big_n), static_cast<double>(qc.standard_queries_to_half),
                      static_cast<double>(iters), std_trace.rounds.back().p,
                      static_cast<double>(qc.super_rounds_to_quarter),
                      static_cast<double>(qc.super_queries_to_half), static_cast<double>(bound)});
}

// ------------------------------------------------------------------- circle

void run_circle(const ExperimentConfig& cfg, const Json& p, unsigned workers,
                RunReport& report) {
  ReportBuilder b(report, cfg.tolerance);
  const ScanGrid grid{get_int(p, "nx"), get_int(p, "ny")};
  const double c = get_double(p, "c");
  const int haar = get_int(p, "haar_points");
  const double tol = cfg.tolerance.value_or(get_double(p, "scan_tol"));
  if (!(c > 0.0 && c < 1.0) || haar < 4) throw Error("circle: need 0 < c < 1 and haar_points >= 4");
  const std::uint64_t seed = *cfg.seed;

  const StateVector zero = StateVector::basis(2, 0);
  const SuperpositionWeights bal = SuperpositionWeights::balanced();
  // Unknown psi with promised overlap c; the anchor |0> is chi itself.
  const OverlapPromise promise(ray_from_vector(zero), c, 1.0);
  const KrausChannel ch = build_reference_protocol(zero, promise, bal);
  const std::vector<BlochPoint> pts =
      b.timed("scan", [&] { return success_set_scan(ch, zero, bal, grid, tol, workers); });

  const CircleConstraint expected = fixed_overlap_circle(zero, c);
  b.check("success_set_size", "geometry.success_set_scan", "points in the success set",
          static_cast<double>(pts.size()), 4.0, Relation::greater_equal);
  Table& fit_t = b.table("fit", {"A", "B", "C", "D", "max_residual", "points"});
  if (pts.size() >= 4) {
    const CircleFit fit = fit_circle_constraint(pts);
    const double coeff_dev = std::max({std::abs(fit.constraint.a() - expected.a()),
                                       std::abs(fit.constraint.b() - expected.b()),
                                       std::abs(fit.constraint.c() - expected.c()),
                                       std::abs(fit.constraint.d() - expected.d())});
    b.check("circle_law_residual", "geometry.circle_law", "max residual of the planar fit",
            fit.max_residual, 1e-6, Relation::less);
    b.check("fixed_overlap_constraint", "geometry.fixed_overlap_circle",
            "max |fitted - expected| over (A, B, C, D)", coeff_dev, 1e-6, Relation::less);
    fit_t.rows.push_back({fit.constraint.a(), fit.constraint.b(), fit.constraint.c(),
                          fit.constraint.d(), fit.max_residual, static_cast<double>(pts.size())});
  }

  std::vector<BlochPoint> haar_pts;
  for (int i = 0; i < haar; ++i) haar_pts.push_back(bloch_point(random_state(2, mix_seed(seed, i))));
  const CircleFit haar_fit = fit_circle_constraint(haar_pts);
  b.check("haar_points_fail_fit", "geometry.circle_law",
          "max residual of a planar fit to Haar-random points", haar_fit.max_residual, 0.1,
          Relation::greater);

  double overlap_dev = 0.0;
  for (const BlochPoint& pt : sample_circle(expected, 64)) {
    overlap_dev = std::max(overlap_dev, std::abs(std::norm(zero.inner(bloch_state(pt))) - c));
  }
  b.check("fixed_overlap_points", "geometry.fixed_overlap_circle",
          "max | |<chi|psi>|^2 - c | over points sampled on the fixed-overlap circle",
          overlap_dev, 1e-10, Relation::less, true);

  // Controls on a coarse grid: nothing succeeds.
  const ScanGrid coarse{40, 80};
  const KrausChannel zero_ch(4, 2, {Mat::Zero(2, 4)});
  std::vector<Mat> trace_ops;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 4; ++j) {
      Mat k = Mat::Zero(2, 4);
      k(i, j) = M_SQRT1_2;
      trace_ops.push_back(k);
    }
  }
  const KrausChannel full_rank(4, 2, trace_ops);
  const std::size_t control_hits =
      success_set_scan(zero_ch, zero, bal, coarse, tol, workers).size() +
      success_set_scan(full_rank, zero, bal, coarse, tol, workers).size();
  b.check("control_channels_empty", "geometry.success_set_scan",
          "success points for the zero and maximally mixing channels",
          static_cast<double>(control_hits), 0.0, Relation::less_equal);

  Table& pt_t = b.table("points", {"x", "y", "residual"});
  for (const BlochPoint& pt : pts) pt_t.rows.push_back({pt.x, pt.y, expected.residual(pt)});
}

// ---------------------------------------------------------------- registry

struct Experiment {
  Json defaults;
  bool stochastic;
  std::function<void(const ExperimentConfig&, const Json&, unsigned, RunReport&)> run;
};

const std::map<std::string, Experiment>& registry() {
  static const std::map<std::string, Experiment> r = {
      {"superpose",
       {{{"samples", 1000}, {"min_dim", 2}, {"max_dim", 6}}, true, run_superpose}},
      {"ldli", {{{"samples", 10000}, {"gauge_draws", 1000}}, true, run_ldli}},
      {"ud", {{{"independent", 500}, {"dependent", 500}, {"max_dim", 6}}, true, run_ud}},
      {"signal",
       {{{"repetitions", {0, 1, 2, 5, 10, 20, 50, 100, 200}},
         {"trials", 1000},
         {"bob_povms", 1000},
         {"mc_rounds", 100000},
         {"scenario", nullptr}},
        true,
        run_signal}},
      {"grover", {{{"n", 10}, {"marked", 0}, {"crosscheck_max_n", 14}}, false, run_grover}},
      {"circle",
       {{{"nx", 400}, {"ny", 800}, {"c", 0.5}, {"haar_points", 200}, {"scan_tol", 1e-9}},
        true,
        run_circle}},
  };
  return r;
}

bool same_kind(const Json& a, const Json& b) {
  if (a.is_null()) return true;
  if (a.is_number_integer()) return b.is_number_integer();
  if (a.is_number()) return b.is_number();
  return a.type() == b.type();
}

// ----------------------------------------------------------------- emitters

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write_json(const Json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (j.is_number_float()) {
    out += format_double(j.get<double>());
  } else if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      write_json(value, indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else if (j.is_array()) {
    if (std::all_of(j.begin(), j.end(), is_scalar)) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        write_json(j[i], indent, out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write_json(j[i], indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "]";
  } else {
    out += j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string csv_value(const Json& j) {
  if (j.is_number_float()) return format_double(j.get<double>());
  if (j.is_string()) return csv_field(j.get<std::string>());
  return csv_field(j.dump());
}

void flatten(const Json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array() && !std::all_of(j.begin(), j.end(), is_scalar)) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += "config," + csv_field(path) + "," + std::to_string(i) + ",value," + csv_value(j[i]) + "\n";
    }
  } else {
    out += "config," + csv_field(path) + ",0,value," + csv_value(j) + "\n";
  }
}

}  // namespace

bool RunReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"superpose", "ldli",   "ud",
                                                 "signal",    "grover", "circle"};
  return names;
}

bool is_stochastic(const std::string& experiment) {
  const auto it = registry().find(experiment);
  if (it == registry().end()) throw Error("unknown experiment: " + experiment);
  return it->second.stochastic;
}

ExperimentConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw Error("config: document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "experiment" && key != "seed" && key != "tolerance" && key != "params") {
      throw Error("config: unknown key '" + key + "'");
    }
  }
  ExperimentConfig cfg;
  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    throw Error("config: 'experiment' must be a string");
  }
  cfg.experiment = doc["experiment"].get<std::string>();
  const auto it = registry().find(cfg.experiment);
  if (it == registry().end()) throw Error("unknown experiment: " + cfg.experiment);

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<std::int64_t>() >= 0)) {
      throw Error("config: 'seed' must be a non-negative integer");
    }
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("tolerance")) {
    if (!doc["tolerance"].is_number() || !(doc["tolerance"].get<double>() > 0.0)) {
      throw Error("config: 'tolerance' must be a positive number");
    }
    cfg.tolerance = doc["tolerance"].get<double>();
  }
  cfg.params = it->second.defaults;
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) throw Error("config: 'params' must be an object");
    for (const auto& [key, value] : doc["params"].items()) {
      if (!cfg.params.contains(key)) {
        throw Error("config: unknown parameter '" + key + "' for " + cfg.experiment);
      }
      if (!same_kind(cfg.params[key], value)) {
        throw Error("config: parameter '" + key + "' has the wrong type");
      }
      cfg.params[key] = value;
    }
  }
  return cfg;
}

RunReport run(const ExperimentConfig& config, unsigned workers) {
  const auto it = registry().find(config.experiment);
  if (it == registry().end()) throw Error("unknown experiment: " + config.experiment);
  if (it->second.stochastic && !config.seed) {
    throw Error("experiment '" + config.experiment + "' is stochastic and needs a seed");
  }
  RunReport report;
  report.experiment = config.experiment;
  report.config = {{"experiment", config.experiment}, {"params", config.params}};
  if (config.seed) report.config["seed"] = *config.seed;
  if (config.tolerance) report.config["tolerance"] = *config.tolerance;
  const auto t0 = std::chrono::steady_clock::now();
  it->second.run(config, config.params, workers, report);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  report.timings.emplace_back("total", dt.count());
  return report;
}

Json vector_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vec vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an array of amplitudes");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& e = j[i];
    if (e.is_number()) {
      v(i) = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      v(i) = Complex(e[0].get<double>(), e[1].get<double>());
    } else {
      throw Error("amplitudes must be numbers or [re, im] pairs");
    }
  }
  return v;
}

Json matrix_to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("expected a nonempty array of rows");
  const Vec first = vector_from_json(j[0]);
  Mat m(static_cast<Eigen::Index>(j.size()), first.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vec row = r == 0 ? first : vector_from_json(j[r]);
    if (row.size() != m.cols()) throw Error("matrix rows differ in length");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Json channel_to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const Mat& k : ch.kraus_ops()) ops.push_back(matrix_to_json(k));
  return Json{{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", ops}};
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object()) throw Error("a channel must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "dim_in" && key != "dim_out" && key != "kraus") {
      throw Error("unknown channel key " + key);
    }
  }
  std::vector<Mat> ops;
  for (const Json& k : j.at("kraus")) ops.push_back(matrix_from_json(k));
  return KrausChannel(j.at("dim_in").get<int>(), j.at("dim_out").get<int>(), std::move(ops));
}

std::string canonical_json(const Json& doc) {
  std::string out;
  write_json(doc, 0, out);
  out += "\n";
  return out;
}

std::string emit_json(const RunReport& report) {
  Json doc = Json::object();
  doc["experiment"] = report.experiment;
  doc["config"] = report.config;
  doc["pass"] = report.all_pass();
  Json checks = Json::array();
  for (const Check& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"invariant", c.invariant},
                      {"description", c.description},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"relation", relation_text(c.relation)},
                      {"pass", c.pass}});
  }
  doc["checks"] = checks;
  Json tables = Json::object();
  for (const Table& t : report.tables) tables[t.name] = {{"columns", t.columns}, {"rows", t.rows}};
  doc["tables"] = tables;
  return canonical_json(doc);
}

std::string emit_csv(const RunReport& report) {
  std::string out = "section,name,row,column,value\n";
  flatten(report.config, "", out);
  for (const Check& c : report.checks) {
    const std::string id = csv_field(c.id);
    out += "check," + id + ",0,measured," + format_double(c.measured) + "\n";
    out += "check," + id + ",0,tolerance," + format_double(c.tolerance) + "\n";
    out += "check," + id + ",0,relation," + csv_field(relation_text(c.relation)) + "\n";
    out += "check," + id + ",0,pass," + (c.pass ? "true" : "false") + "\n";
  }
  for (const Table& t : report.tables) {
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      for (std::size_t k = 0; k < t.columns.size(); ++k) {
        out += "table," + csv_field(t.name) + "," + std::to_string(r) + "," +
               csv_field(t.columns[k]) + "," + format_double(t.rows[r][k]) + "\n";
      }
    }
  }
  out += std::string("summary,pass,0,value,") + (report.all_pass() ? "true" : "false") + "\n";
  return out;
}

std::string emit_timings(const RunReport& report) {
  Json doc = Json::object();
  for (const auto& [phase, seconds] : report.timings) doc[phase] = seconds;
  return canonical_json(Json{{"experiment", report.experiment}, {"seconds", doc}});
}

}  // namespace qnogo::lab
