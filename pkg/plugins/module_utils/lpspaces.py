#!/usr/bin/env python
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

"""
Weighted noncommutative L^p spaces over a faithful state.

Elements of L^p are matrices ``a = D^{eta/p} x D^{(1-eta)/p}``; the norm is
the unnormalized Schatten-p norm of ``a``.
"""

import logging

from dataclasses import dataclass

import numpy as np

from ansible_collections.qpoincare.lab.plugins.module_utils.algebra import (
    DensityState,
    as_state,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import (
    INF,
    as_exponent,
    as_matrix,
    dagger,
    operator_norm,
    schatten_norm,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qms import (
    SymmetryTag,
    gradient_form,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import QpError


LOG = logging.getLogger(__name__)

ETA_GRID = (0.0, 0.5, 1.0)


@dataclass(frozen=True)
class KosakiIndex:
    p: object
    eta: float
    state: DensityState

    def __post_init__(self):
        p = as_exponent(self.p)
        if p is not INF and p < 1:
            raise QpError("L^p index needs p >= 1", violations=dict(p=p))
        if not 0.0 <= self.eta <= 1.0:
            raise QpError("Interpolation parameter must lie in [0, 1]", violations=dict(eta=self.eta))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "state", as_state(self.state))

    @property
    def left(self):
        """Exponent of the left density factor."""
        return 0.0 if self.p is INF else self.eta / self.p

    @property
    def right(self):
        return 0.0 if self.p is INF else (1.0 - self.eta) / self.p

    def at(self, p=None, eta=None):
        return KosakiIndex(
            self.p if p is None else p, self.eta if eta is None else eta, self.state
        )


@dataclass(frozen=True)
class KosakiVector:
    raw: np.ndarray
    index: KosakiIndex

    @property
    def embedded(self):
        return kosaki_embed(self.raw, self.index)

    @property
    def norm(self):
        return kosaki_norm(self.raw, self.index)


def kosaki_embed(x, idx):
    """``iota_eta(x) = D^{eta/p} x D^{(1-eta)/p}``."""
    x = as_matrix(x)
    if idx.p is INF:
        return x.copy()
    D = idx.state
    return D.power(idx.left) @ x @ D.power(idx.right)


def kosaki_extract(a, idx):
    """Inverse of ``kosaki_embed``."""
    a = as_matrix(a)
    if idx.p is INF:
        return a.copy()
    D = idx.state
    return D.power(-idx.left) @ a @ D.power(-idx.right)


def kosaki_norm(x, idx):
    """``||iota_eta(x)||_{p, phi, eta}``; the operator norm of x when p is infinite."""
    if idx.p is INF:
        return operator_norm(x)
    return schatten_norm(kosaki_embed(x, idx), idx.p)


def lp_lindbladian(L, a, idx):
    """``L_p(D^{eta/p} x D^{(1-eta)/p}) = D^{eta/p} L(x) D^{(1-eta)/p}``."""
    if SymmetryTag.GNS_DB not in L.tags:
        LOG.warning(
            "Generator is not tagged GNS detailed balanced; the L^p Lindbladian may depend on eta=%s",
            idx.eta,
        )
    return kosaki_embed(L(kosaki_extract(a, idx)), idx)


def eta_dependence_residual(L, a, p, D, etas=ETA_GRID):
    """Largest Frobenius spread of ``L_p(a)`` across interpolation parameters."""
    state = as_state(D, L.dim)
    values = [
        kosaki_embed(L(kosaki_extract(a, KosakiIndex(p, eta, state))), KosakiIndex(p, eta, state))
        for eta in etas
    ]
    worst = 0.0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            worst = max(worst, float(np.linalg.norm(values[i] - values[j])))
    return worst


def lp_conditional(a, idx, E, verify=False):
    """``E_p(D^{eta/p} x D^{(1-eta)/p}) = D^{eta/p} E(x) D^{(1-eta)/p}``."""
    if not E.is_modular_invariant:
        raise QpError(
            "Range of the conditional expectation is not invariant under the modular flow",
            violations=dict(residual=E.modular_residual()),
        )
    result = kosaki_embed(E(kosaki_extract(a, idx)), idx)
    if verify and idx.p is not INF:
        before = schatten_norm(a, idx.p)
        after = schatten_norm(result, idx.p)
        if after > before * (1.0 + 1e-9) + 1e-12:
            LOG.warning("L^p conditional expectation expanded a norm: %.12g > %.12g", after, before)
    return result


def gamma_p(L, a, b, idx):
    """``Gamma_p(a, b) = (L_p(a†) b + a† L_p(b) - L_{p/2}(a† b)) / 2``.

    ``a†`` lives at interpolation parameter ``1 - eta``; ``a† b`` is read
    symmetrically at ``p/2``.
    """
    if idx.p is INF or idx.p < 2:
        raise QpError("Gradient form in L^p needs 2 <= p < inf", violations=dict(p=str(idx.p)))
    a = as_matrix(a)
    b = as_matrix(b)
    ad = dagger(a)
    half = KosakiIndex(idx.p / 2.0, 0.5, idx.state)
    return 0.5 * (
        lp_lindbladian(L, ad, idx.at(eta=1.0 - idx.eta)) @ b
        + ad @ lp_lindbladian(L, b, idx)
        - lp_lindbladian(L, ad @ b, half)
    )


def complex_time_flow(x, idx):
    """``sigma_{-i eta/p}(x) = D^{eta/p} x D^{-eta/p}``."""
    if idx.p is INF:
        return as_matrix(x).copy()
    D = idx.state
    return D.power(idx.left) @ as_matrix(x) @ D.power(-idx.left)


def gamma_eta_p(L, x, y, idx):
    """``Gamma^{(p)}_eta(x, y) = Gamma(sigma_{-i eta/p}(x), sigma_{-i eta/p}(y))``."""
    return gradient_form(L, complex_time_flow(x, idx), complex_time_flow(y, idx))


def check_gf_identification(L, x, y, idx):
    """Frobenius residual of ``Gamma_p(iota(x), iota(y)) = D^{1/p} Gamma^{(p)}_eta(x, y) D^{1/p}``."""
    lhs = gamma_p(L, kosaki_embed(x, idx), kosaki_embed(y, idx), idx)
    weight = idx.state.power(1.0 / idx.p)
    rhs = weight @ gamma_eta_p(L, x, y, idx) @ weight
    return float(np.linalg.norm(lhs - rhs))


def lipschitz_seminorm(L, x):
    """``max(||Gamma(x, x)||^(1/2), ||Gamma(x†, x†)||^(1/2))``."""
    x = as_matrix(x)
    values = []
    for y in (x, dagger(x)):
        G = gradient_form(L, y, y)
        top = float(np.max(np.linalg.eigvalsh((G + dagger(G)) / 2.0)))
        values.append(np.sqrt(max(top, 0.0)))
    return float(max(values))
