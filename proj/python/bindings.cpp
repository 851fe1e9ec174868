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

// Thin numpy-facing layer over the C++ library. States cross the boundary
// as complex 1-d arrays; every call validates through the library types.

#include <cstdint>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnogo/channels.hpp"
#include "qnogo/geometry.hpp"
#include "qnogo/grover.hpp"
#include "qnogo/hilbert.hpp"
#include "qnogo/lab.hpp"
#include "qnogo/nogo.hpp"
#include "qnogo/signaling.hpp"
#include "qnogo/superposer.hpp"

namespace py = pybind11;
using namespace qnogo;

namespace {

StateVector state(const Vec& v) { return StateVector::normalize(v); }

std::vector<StateVector> states(const std::vector<Vec>& vs) {
  std::vector<StateVector> out;
  out.reserve(vs.size());
  for (const Vec& v : vs) out.push_back(state(v));
  return out;
}

SimulationMode parse_mode(const std::string& mode) {
  if (mode == "statevector") return SimulationMode::statevector;
  if (mode == "subspace") return SimulationMode::subspace;
  throw Error("mode must be 'statevector' or 'subspace'");
}

py::list rounds_to_list(const GroverTrace& t) {
  py::list out;
  for (const GroverRound& r : t.rounds) {
    py::dict d;
    d["r"] = r.r;
    d["a"] = r.a;
    d["p"] = r.p;
    d["queries"] = r.queries;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_qnogo, m) {
  m.doc() = "Numerical laboratory for quantum no-go constructions";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("mix_seed", &mix_seed, py::arg("master"), py::arg("counter"));

  m.def(
      "random_state",
      [](int dim, std::uint64_t seed) { return Vec(random_state(dim, seed).amplitudes()); },
      py::arg("dim"), py::arg("seed"));

  m.def(
      "linear_independence",
      [](const std::vector<Vec>& vs, double tol) {
        const std::vector<StateVector> s = states(vs);
        const IndependenceReport r = linear_independence(s, tol);
        py::dict d;
        d["independent"] = r.independent;
        d["rank"] = r.rank;
        d["smallest_singular_value"] = r.smallest_singular_value;
        return d;
      },
      py::arg("vectors"), py::arg("tol") = kDefaultTol);

  m.def(
      "reference_superposition",
      [](const Vec& chi, const Vec& psi, const Vec& phi, Complex alpha, Complex beta) {
        const ReferenceSuperposition r =
            reference_superposition(state(chi), state(psi), state(phi),
                                    SuperpositionWeights(alpha, beta));
        return py::make_tuple(Mat(r.ray.projector()), Vec(r.unnormalized_vector.amplitudes()));
      },
      py::arg("chi"), py::arg("psi"), py::arg("phi"), py::arg("alpha") = Complex(M_SQRT1_2),
      py::arg("beta") = Complex(M_SQRT1_2));

  m.def(
      "protocol_success_probability",
      [](const Vec& chi_v, const Vec& psi_v, const Vec& phi_v, Complex alpha, Complex beta) {
        const StateVector chi = state(chi_v);
        const StateVector psi = state(psi_v);
        const StateVector phi = state(phi_v);
        const SuperpositionWeights w(alpha, beta);
        const OverlapPromise promise(ray_from_vector(chi), std::norm(chi.inner(psi)),
                                     std::norm(chi.inner(phi)));
        const KrausChannel ch = build_reference_protocol(chi, promise, w);
        const ProtocolProbabilities p = protocol_success_probability(ch, psi, phi, promise, w);
        return py::make_tuple(p.simulated, p.formula);
      },
      py::arg("chi"), py::arg("psi"), py::arg("phi"), py::arg("alpha") = Complex(M_SQRT1_2),
      py::arg("beta") = Complex(M_SQRT1_2),
      "(simulated, formula) success probability of the compiled protocol; the "
      "promise is taken from the actual overlaps.");

  m.def(
      "build_ud_povm",
      [](const std::vector<Vec>& vs) {
        const std::vector<StateVector> s = states(vs);
        const UdConstruction c = build_ud_povm(s);
        py::dict d;
        d["feasible"] = c.feasible;
        d["smallest_singular_value"] = c.smallest_singular_value;
        if (c.feasible) {
          d["elements"] = c.povm->elements;
          d["inconclusive"] = c.povm->inconclusive;
          d["lambdas"] = c.povm->lambdas;
        } else {
          d["null_vector"] = c.null_vector;
          d["null_residual"] = c.null_residual;
        }
        return d;
      },
      py::arg("vectors"));

  m.def("canonical_signaling_gap", [] {
    const SignalingGap g = signaling_gap(canonical_steering_scenario(), canonical_clone_oracle());
    py::dict d;
    d["p0"] = g.p0;
    d["p1"] = g.p1;
    d["bob_state_distance"] = g.bob_state_distance;
    return d;
  });

  m.def("decode_error_exact", &decode_error_exact, py::arg("p0"), py::arg("p1"),
        py::arg("repetitions"));

  m.def(
      "standard_grover_run",
      [](int n, std::uint64_t marked, int iterations, const std::string& mode) {
        return rounds_to_list(standard_grover_run(GroverInstance(n, marked), iterations,
                                                  parse_mode(mode)));
      },
      py::arg("n"), py::arg("marked"), py::arg("iterations"), py::arg("mode") = "subspace");

  m.def(
      "super_grover_run",
      [](int n, std::uint64_t marked, double target_p, const std::string& mode) {
        return rounds_to_list(
            super_grover_run(GroverInstance(n, marked), target_p, parse_mode(mode)));
      },
      py::arg("n"), py::arg("marked"), py::arg("target_p") = 0.25, py::arg("mode") = "subspace");

  m.def(
      "query_comparison",
      [](int n, std::uint64_t marked) {
        const QueryComparison q = query_comparison(GroverInstance(n, marked));
        py::dict d;
        d["n_items"] = q.n_items;
        d["standard_queries_to_half"] = q.standard_queries_to_half;
        d["super_rounds_to_quarter"] = q.super_rounds_to_quarter;
        d["super_queries_to_half"] = q.super_queries_to_half;
        d["round_bound"] = q.round_bound;
        return d;
      },
      py::arg("n"), py::arg("marked"));

  m.def("round_bound", &round_bound, py::arg("n_items"));

  m.def(
      "bloch_state",
      [](double x, double y) { return Vec(bloch_state({x, y}).amplitudes()); }, py::arg("x"),
      py::arg("y"));

  m.def(
      "fixed_overlap_circle",
      [](const Vec& chi, double c) {
        const CircleConstraint k = fixed_overlap_circle(state(chi), c);
        return py::make_tuple(k.a(), k.b(), k.c(), k.d());
      },
      py::arg("chi"), py::arg("c"), "(A, B, C, D) of the circle |<chi|psi>|^2 = c.");

  m.def("experiment_names", &lab::experiment_names);

  m.def(
      "run_experiment",
      [](const std::string& config_json, unsigned workers, const std::string& format) {
        if (format != "json" && format != "csv") throw Error("format must be 'json' or 'csv'");
        const lab::ExperimentConfig cfg = lab::parse_config(lab::Json::parse(config_json));
        lab::RunReport report;
        {
          py::gil_scoped_release release;
          report = lab::run(cfg, workers);
        }
        return format == "csv" ? lab::emit_csv(report) : lab::emit_json(report);
      },
      py::arg("config_json"), py::arg("workers") = 0, py::arg("format") = "json",
      "Runs one experiment from a JSON config document and returns the emitted report.");
}
