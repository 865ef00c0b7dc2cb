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

hypothesis = pytest.importorskip("hypothesis")

from hypothesis import given, settings, strategies as st  # noqa: E402

from ansible_collections.qpoincare.lab.plugins.module_utils.inequalities import (  # noqa: E402
    certify,
    klein_check,
    verify_pi,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import (  # noqa: E402
    herm_eig,
    random_matrix,
    schatten_norm,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.models import (  # noqa: E402
    depolarizing,
)

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
dims = st.integers(min_value=1, max_value=5)


@settings(max_examples=30, deadline=None)
@given(seed=seeds, dim=dims)
def test_herm_eig_reconstructs(seed, dim):
    A = random_matrix(np.random.default_rng(seed), dim, hermitian=True)
    spectrum = herm_eig(A)
    assert np.allclose(spectrum.reconstruct(), A, atol=1e-10)
    assert np.all(np.diff(spectrum.eigenvalues) >= 0)


@settings(max_examples=30, deadline=None)
@given(seed=seeds, dim=dims, p=st.floats(min_value=1.0, max_value=8.0))
def test_schatten_norm_decreases_in_p(seed, dim, p):
    A = random_matrix(np.random.default_rng(seed), dim)
    assert schatten_norm(A, p + 1.0) <= schatten_norm(A, p) * (1.0 + 1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=seeds, p=st.sampled_from([2, 3, 4, 6]))
def test_klein_holds(seed, p):
    rng = np.random.default_rng(seed)
    x, y = (random_matrix(rng, 3, hermitian=True) for _ in range(2))
    assert klein_check(x, y, p).passed


@settings(max_examples=20, deadline=None)
@given(seed=seeds, p=st.sampled_from([2, 3, 4]))
def test_tracial_poincare_holds(seed, p):
    L = depolarizing(2).generator
    x = random_matrix(np.random.default_rng(seed), 2, hermitian=True)
    assert verify_pi(L, None, x, p).passed


@given(
    lhs=st.floats(min_value=0.0, max_value=1e6),
    rhs=st.floats(min_value=1e-6, max_value=1e6),
)
def test_certificate_margins(lhs, rhs):
    cert = certify("property", lhs, rhs)
    assert cert.margin == pytest.approx(rhs - lhs)
    assert cert.passed == (lhs <= rhs * (1.0 + cert.tol) + 1e-12)
