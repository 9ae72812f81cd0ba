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

import math
import os
import pathlib

import pytest

import metavqe

DATA = pathlib.Path(os.environ.get("METAVQE_TEST_DATA", pathlib.Path(__file__).parents[1] / "data"))


def test_xxz_zero_state_energy():
    h = metavqe.build_xxz(4, 0.3, 0.75)
    c = metavqe.processing_circuit(4, 1)
    e = metavqe.energy(c, h, {}, [0.0] * c.num_parameters)
    assert e == pytest.approx(4 * 0.3 + 4 * 0.75, abs=1e-12)


def test_parameter_counts():
    assert metavqe.meta_vqe_circuit(8, 2, 2).num_parameters == 96
    assert metavqe.processing_circuit(8, 4).num_parameters == 64


def test_bind_and_run_is_normalised():
    c = metavqe.meta_vqe_circuit(3, 1, 1)
    params = [0.1 * (i + 1) for i in range(c.num_parameters)]
    amps = metavqe.bind_and_run(c, {"delta": 0.4}, params)
    assert len(amps) == 8
    assert sum(abs(a) ** 2 for a in amps) == pytest.approx(1.0, abs=1e-12)
    h = metavqe.build_xxz(3, 0.4, 0.75)
    assert metavqe.expectation(amps, h) == pytest.approx(
        metavqe.energy(c, h, {"delta": 0.4}, params), abs=1e-12)


def test_gradient_matches_finite_differences():
    c = metavqe.meta_vqe_circuit(2, 1, 1)
    h = metavqe.build_xxz(2, -0.2, 0.75)
    params = [0.3 - 0.05 * i for i in range(c.num_parameters)]
    meta = {"delta": -0.2}
    value, grad = metavqe.param_shift_gradient(c, h, meta, params)
    assert value == pytest.approx(metavqe.energy(c, h, meta, params), abs=1e-12)
    step = 1e-5
    for i in range(len(params)):
        up = list(params)
        down = list(params)
        up[i] += step
        down[i] -= step
        fd = (metavqe.energy(c, h, meta, up) - metavqe.energy(c, h, meta, down)) / (2 * step)
        assert grad[i] == pytest.approx(fd, abs=1e-7)


def test_ground_energy_two_site_pair():
    h = metavqe.parse_hamiltonian("qubits 2\n1.0 X0 X1\n1.0 Y0 Y1\n")
    assert metavqe.ground_energy(h) == pytest.approx(-2.0, abs=1e-12)
    assert metavqe.ground_energy_lanczos(h) == pytest.approx(-2.0, abs=1e-10)


def test_train_and_profile_on_family_file():
    family = metavqe.parse_hamiltonian_family((DATA / "toy_family.txt").read_text())
    result = metavqe.train_meta_vqe(family, "d", [-1.0, 0.0, 1.0], L1=1, L2=1, seed=2,
                                    max_iterations=200)
    rows = metavqe.evaluate_profile(result, family, [-1.0, 0.0, 1.0])
    assert sum(r["energy"] for r in rows) == pytest.approx(result.final_loss, abs=1e-10)
    for r in rows:
        assert r["energy"] >= r["exact"] - 1e-8
        assert math.isfinite(r["rel_err"])
    assert '"algorithm":"meta"' in result.to_json()


def test_errors_are_python_exceptions():
    with pytest.raises(metavqe.ParseError):
        metavqe.parse_hamiltonian("qubits 2\n1.0 Q0\n")
    with pytest.raises(metavqe.ConfigError):
        metavqe.validate_config("n = 4\nbogus = 1\n")
    with pytest.raises(metavqe.ConfigError):
        metavqe.train_meta_vqe(metavqe.xxz_family(2), "delta", [0.0], {"field": 0.75},
                               L1=0, L2=1)
    with pytest.raises(metavqe.DimensionError):
        metavqe.bind_and_run(metavqe.processing_circuit(2, 1), {}, [0.0])


def test_run_experiment(tmp_path):
    text = (DATA / "toy_run.cfg").read_text()
    text += f"\nhamiltonian_file = {DATA / 'toy_family.txt'}\noutput_dir = {tmp_path}\n"
    text += "algorithms = meta,exact\n"
    code, log = metavqe.run_experiment(text)
    assert code == 0, log
    assert (tmp_path / "profile_meta.csv").exists()
    assert (tmp_path / "summary.json").exists()
