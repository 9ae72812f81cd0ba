# Copyright 2026 The metavqe Authors
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

"""meta-VQE workbench: statevector VQE, meta-VQE training and exact references."""

from ._core import (  # noqa: F401
    BindingError,
    Circuit,
    ConfigError,
    DimensionError,
    Encoding,
    Error,
    HamiltonianFamily,
    InvalidSizeError,
    ParseError,
    PauliSum,
    RangeError,
    TrainResult,
    UnsupportedGeneratorError,
    bind_and_run,
    build_xxz,
    energy,
    equispaced,
    evaluate_profile,
    expectation,
    ground_energy,
    ground_energy_lanczos,
    meta_vqe_circuit,
    param_shift_gradient,
    parse_hamiltonian,
    parse_hamiltonian_family,
    processing_circuit,
    run_experiment,
    train_ga_vqe,
    train_meta_vqe,
    validate_config,
    xxz_family,
)

__version__ = "0.1.0"
