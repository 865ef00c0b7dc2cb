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

import numpy as np
import pytest

from ansible_collections.qpoincare.lab.plugins.module_utils.algebra import (
    random_state,
    trace_expectation,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.lpspaces import (
    KosakiIndex,
    KosakiVector,
    check_gf_identification,
    eta_dependence_residual,
    gamma_p,
    kosaki_embed,
    kosaki_extract,
    kosaki_norm,
    lipschitz_seminorm,
    lp_conditional,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import (
    INF,
    operator_norm,
    random_matrix,
    schatten_norm,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.models import (
    birth_death,
    depolarizing,
    kms_only,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import QpError


@pytest.fixture
def state():
    return random_state(3, 7)


def test_index_bounds(state):
    with pytest.raises(QpError, match="p >= 1"):
        KosakiIndex(0.5, 0.5, state)
    with pytest.raises(QpError, match="Interpolation"):
        KosakiIndex(2, 1.5, state)
    assert KosakiIndex("inf", 0.5, state).p is INF


def test_embed_extract_inverse(state, rng):
    x = random_matrix(rng, 3)
    for eta in (0.0, 0.3, 1.0):
        idx = KosakiIndex(4, eta, state)
        assert np.allclose(kosaki_extract(kosaki_embed(x, idx), idx), x)


def test_norm_interpolates_between_endpoints(state, rng):
    x = random_matrix(rng, 3)
    assert kosaki_norm(x, KosakiIndex(INF, 0.5, state)) == pytest.approx(operator_norm(x))
    vector = KosakiVector(x, KosakiIndex(2, 1.0, state))
    # eta = 1 at p = 2 is the GNS norm
    gns = np.sqrt(np.trace(state.matrix @ x @ x.conj().T).real)
    assert vector.norm == pytest.approx(gns)


def test_norm_of_identity_is_one(state):
    for p in (1, 2, 4):
        for eta in (0.0, 0.5, 1.0):
            assert kosaki_norm(np.eye(3), KosakiIndex(p, eta, state)) == pytest.approx(1.0)


def test_lp_conditional_contracts(state, rng):
    E = trace_expectation(state)
    idx = KosakiIndex(3, 0.5, state)
    a = kosaki_embed(random_matrix(rng, 3), idx)
    assert schatten_norm(lp_conditional(a, idx, E, verify=True), 3) <= schatten_norm(a, 3) + 1e-12


def test_eta_independence_gns():
    model = birth_death(3, 1.0)
    a = random_matrix(np.random.default_rng(1), 3)
    assert eta_dependence_residual(model.generator, a, 2, model.state) < 1e-9


def test_eta_dependence_kms_only():
    model = kms_only([0.7, 0.2, 0.1], seed=2)
    a = random_matrix(np.random.default_rng(1), 3)
    assert eta_dependence_residual(model.generator, a, 2, model.state) > 1e-6


def test_gradient_form_identification(rng):
    model = birth_death(3, 1.0)
    for eta in (0.0, 0.5, 1.0):
        idx = KosakiIndex(4, eta, model.state)
        x, y = random_matrix(rng, 3), random_matrix(rng, 3)
        assert check_gf_identification(model.generator, x, y, idx) < 1e-9


def test_gamma_p_range(state):
    L = depolarizing(3).generator
    with pytest.raises(QpError):
        gamma_p(L, np.eye(3), np.eye(3), KosakiIndex(INF, 0.5, state))
    with pytest.raises(QpError):
        gamma_p(L, np.eye(3), np.eye(3), KosakiIndex(1.5, 0.5, state))


def test_lipschitz_seminorm():
    L = depolarizing(2).generator
    assert lipschitz_seminorm(L, np.eye(2)) == pytest.approx(0.0, abs=1e-12)
    assert lipschitz_seminorm(L, np.diag([1.0, -1.0])) == pytest.approx(1.0)
