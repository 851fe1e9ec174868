# Copyright 2026 The qnogo Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the qnogo numerical laboratory."""

import json

from ._qnogo import (
    Error,
    bloch_state,
    build_ud_povm,
    canonical_signaling_gap,
    decode_error_exact,
    experiment_names,
    fixed_overlap_circle,
    linear_independence,
    mix_seed,
    protocol_success_probability,
    query_comparison,
    random_state,
    reference_superposition,
    round_bound,
    standard_grover_run,
    super_grover_run,
)
from ._qnogo import run_experiment as _run_experiment

__all__ = [
    "Error",
    "bloch_state",
    "build_ud_povm",
    "canonical_signaling_gap",
    "decode_error_exact",
    "experiment_names",
    "fixed_overlap_circle",
    "linear_independence",
    "mix_seed",
    "protocol_success_probability",
    "query_comparison",
    "random_state",
    "reference_superposition",
    "round_bound",
    "run_experiment",
    "standard_grover_run",
    "super_grover_run",
]


def run_experiment(config, workers=0, format="json"):
    """Run one experiment.

    `config` is a dict or a JSON string with keys experiment, seed,
    tolerance and params. Returns the parsed report for format "json" and
    the CSV text for format "csv".
    """
    text = config if isinstance(config, str) else json.dumps(config)
    out = _run_experiment(text, workers, format)
    return json.loads(out) if format == "json" else out
