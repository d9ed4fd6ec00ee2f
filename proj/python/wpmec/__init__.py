# Copyright 2026 The wpmec Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS-IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the wpmec scheduling simulator."""

from wpmec._core import (
    INFINITE_PRICE,
    RESULTS_HEADER,
    BoundViolation,
    ConfigError,
    Distribution,
    ExperimentPlan,
    Policy,
    RunOptions,
    SystemConfig,
    ThroughputAccounting,
    allocate_weighted,
    allocation_objective,
    compute_bounds,
    decide_admission,
    decide_discard,
    jain,
    kkt_residuals,
    lambert_w0,
    load_plan_file,
    offload_weight,
    parse_plan,
    parse_policy,
    simulate_run,
    sweep,
    verify,
    xi,
    xi_inverse,
)

__all__ = [
    "INFINITE_PRICE",
    "RESULTS_HEADER",
    "BoundViolation",
    "ConfigError",
    "Distribution",
    "ExperimentPlan",
    "Policy",
    "RunOptions",
    "SystemConfig",
    "ThroughputAccounting",
    "allocate_weighted",
    "allocation_objective",
    "compute_bounds",
    "decide_admission",
    "decide_discard",
    "jain",
    "kkt_residuals",
    "lambert_w0",
    "load_plan_file",
    "offload_weight",
    "parse_plan",
    "parse_policy",
    "simulate_run",
    "sweep",
    "verify",
    "xi",
    "xi_inverse",
]
