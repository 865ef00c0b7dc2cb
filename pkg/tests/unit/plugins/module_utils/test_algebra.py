# -*- coding: utf-8 -*-

# Copyright 2024 qpoincare.lab contributors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from __future__ import absolute_import, division, print_function

__metaclass__ = type

import math

import numpy as np
import pytest

from ansible_collections.qpoincare.lab.plugins.module_utils.algebra import (
    ConditionalExpectation,
    DensityState,
    SubalgebraBasis,
    check_expectation_axioms,
    fixed_point_projection,
    identity_expectation,
    modular_flow,
    normalized_trace,
    random_state,
    relative_entropy,
    thermal_state,
    trace_expectation,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import random_matrix, vec
from ansible_collections.qpoincare.lab.plugins.module_utils.models import (
    birth_death,
    depolarizing,
    rademacher,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import (
    QpError,
    SingularStateError,
)


def test_density_state_unit_trace():
    with pytest.raises(QpError, match="unit trace"):
        DensityState(np.diag([0.5, 0.6]))


def test_density_state_faithful():
    with pytest.raises(SingularStateError) as e:
        DensityState(np.diag([1.0, 0.0]))
    assert e.value.violations["lambda_min"] == pytest.approx(0.0)


def test_density_state_tracial():
    assert DensityState.maximally_mixed(3).is_tracial
    assert not DensityState.from_populations([1, 2]).is_tracial


def test_thermal_state_populations():
    state = thermal_state([1, 2, 3], 1.0)
    populations = np.real(np.diag(state.matrix))
    assert populations[1] / populations[0] == pytest.approx(math.exp(-1.0))
    assert populations.sum() == pytest.approx(1.0)


def test_density_state_power_memoized():
    state = DensityState.from_populations([1, 3])
    assert state.power(0.5) is state.power(0.5)
    assert np.allclose(state.power(0.5) @ state.power(0.5), state.matrix)


def test_modular_flow(rng):
    state = random_state(3, 4)
    x = random_matrix(rng, 3)
    assert np.allclose(modular_flow(state, x, 0), x)
    assert np.allclose(modular_flow(state, state.matrix, 0.7), state.matrix)
    # sigma_s o sigma_t = sigma_{s+t}
    assert np.allclose(
        modular_flow(state, modular_flow(state, x, 0.3), 0.4), modular_flow(state, x, 0.7)
    )


def test_relative_entropy():
    state = DensityState.maximally_mixed(2)
    assert relative_entropy(state.matrix, state) == pytest.approx(0.0, abs=1e-12)
    assert relative_entropy(np.diag([1.0, 0.0]), state) == pytest.approx(math.log(2.0))


def test_trace_expectation_axioms():
    E = trace_expectation(random_state(3, 1))
    report = check_expectation_axioms(E, samples=5, seed=2)
    assert report.passed
    assert report.to_dict()["passed"]


def test_perturbed_expectation_is_flagged(rng):
    E = rademacher(1, 2, seed=0).expectation
    assert check_expectation_axioms(E, samples=3).closure < 1e-9
    noise = rng.standard_normal(E.projector.shape) + 1j * rng.standard_normal(E.projector.shape)
    broken = ConditionalExpectation(E.projector + 0.05 * noise, E.range, E.state)
    report = check_expectation_axioms(broken, samples=3, seed=1)
    assert report.bimodularity > 1e-3
    assert report.closure > 1e-3
    assert not report.passed
    assert not report.to_dict()["passed"]


def test_closure_flags_non_algebra():
    unit = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    span = (np.eye(2, dtype=complex) / math.sqrt(2.0), unit)
    projector = sum(np.outer(vec(b), vec(b).conj()) for b in span)
    E = ConditionalExpectation(
        projector, SubalgebraBasis(span, span), DensityState.maximally_mixed(2)
    )
    report = check_expectation_axioms(E, samples=2)
    assert report.closure == pytest.approx(1.0)
    assert not report.passed


def test_trace_expectation_is_state(rng):
    state = random_state(3, 5)
    E = trace_expectation(state)
    x = random_matrix(rng, 3)
    assert np.allclose(E(x), state.expectation(x) * np.eye(3))


def test_identity_expectation():
    E = identity_expectation(None, 2)
    x = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.allclose(E(x), x)
    assert E.is_modular_invariant


def test_fixed_point_projection_primitive():
    model = birth_death(3, 1.0)
    E = fixed_point_projection(model.generator, model.state)
    assert E.range.size == 1
    assert check_expectation_axioms(E, samples=3).passed


def test_fixed_point_projection_tracial(rng):
    model = depolarizing(3)
    E = fixed_point_projection(model.generator)
    x = random_matrix(rng, 3)
    assert np.allclose(E(x), normalized_trace(x) * np.eye(3))
