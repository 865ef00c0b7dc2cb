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
Canonical model constructors: birth-death chain, Rademacher model,
depolarizing semigroup, random GNS detailed-balanced generators, and a
KMS-only counterexample.
"""

import logging

import numpy as np

from ansible_collections.qpoincare.lab.plugins.module_utils.algebra import (
    DensityState,
    as_state,
    fixed_point_projection,
    thermal_state,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import (
    InnerProductForm,
    dagger,
    herm_eig,
    kernel_split,
    random_matrix,
    random_unitary,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qms import (
    JumpTerm,
    SymmetryTag,
    generator_to_dict,
    gksl_generator,
    spectral_gap,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import QpError


LOG = logging.getLogger(__name__)

RADEMACHER_BUDGET = 128
DENSE_WARNING_DIM = 32
# off-diagonal blocks decay at this rate, above the Rademacher gap of 1
BLOCK_DEPHASING_RATE = 2.0
MAX_RESAMPLES = 100

ALL_TAGS = (SymmetryTag.TAU_SYMMETRIC, SymmetryTag.GNS_DB, SymmetryTag.KMS_DB)
GNS_TAGS = (SymmetryTag.GNS_DB, SymmetryTag.KMS_DB)


class ModelSpec(object):
    """A realized model: generator, reference state, and cached derived data."""

    def __init__(self, kind, params, generator, label=None, observables=None,
                 form=InnerProductForm.GNS, algebra=None):
        self.kind = kind
        self.params = dict(params)
        self.generator = generator
        self.state = generator.state
        self.label = label or default_label(kind, params)
        self.observables = dict(observables or {})
        self.form = form
        self.algebra = algebra
        self._expectation = None
        self._gap = None

    @property
    def dim(self):
        return self.generator.dim

    @property
    def expectation(self):
        if self._expectation is None:
            self._expectation = fixed_point_projection(self.generator, self.state, self.form)
        return self._expectation

    @property
    def gap(self):
        if self._gap is None:
            self._gap = spectral_gap(self.generator, self.state, self.form)
        return self._gap

    def has_tag(self, tag):
        return self.generator.has_tag(tag)

    def restrict(self, x):
        """Projects ``x`` onto the model's observable algebra."""
        x = np.asarray(x, dtype=complex)
        return self.algebra(x) if self.algebra is not None else x

    def random_element(self, rng, hermitian=False):
        return self.restrict(random_matrix(rng, self.dim, hermitian))

    def to_dict(self):
        out = generator_to_dict(self.generator)
        out.update(kind=self.kind, label=self.label, params=_plain(self.params))
        return out

    def __repr__(self):
        return "ModelSpec(%s)" % self.label


def _plain(value):
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, complex):
        return dict(re=value.real, im=value.imag)
    return value


def default_label(kind, params):
    parts = ["%s=%s" % (k, params[k]) for k in sorted(params)
             if isinstance(params[k], (int, float, str))]
    return "%s(%s)" % (kind, ",".join(parts))


def _unit(d, i, j):
    e = np.zeros((d, d), dtype=complex)
    e[i, j] = 1.0
    return e


def birth_death(n, beta, label=None):
    """Birth-death chain on M_n with thermal state ``mu_k ~ exp(-beta k)``."""
    if n < 2:
        raise QpError("Birth-death chain needs n >= 2", violations=dict(n=n))
    beta = float(beta)
    jumps = []
    for j in range(n - 1):
        jumps.append(JumpTerm(_unit(n, j, j + 1), np.exp(beta / 2.0)))
        jumps.append(JumpTerm(_unit(n, j + 1, j), np.exp(-beta / 2.0)))
    state = thermal_state(np.arange(1, n + 1), beta)
    tags = ALL_TAGS if beta == 0 else GNS_TAGS
    generator = gksl_generator(jumps, n, tags, state)

    levels = np.arange(1, n + 1) / np.sqrt(2.0 * n * np.cosh(beta / 2.0))
    observables = dict(f=np.diag(levels).astype(complex))
    return ModelSpec("birth_death", dict(n=n, beta=beta), generator, label, observables)


def diagonal_gap(model):
    """Gap of the generator restricted to the diagonal subalgebra."""
    L = model.generator
    d = L.dim
    idx = np.arange(d) * (d + 1)
    block = np.asarray(L.superop)[np.ix_(idx, idx)]
    populations = np.real(np.diag(as_state(model.state, d).matrix))
    root = np.sqrt(populations)
    symmetric = (root[:, None] * block) / root[None, :]
    w = np.linalg.eigvalsh((symmetric + dagger(symmetric)) / 2.0)
    zero, nonzero = kernel_split(w, 1e-9)
    return float(np.min(w[nonzero])) if nonzero.size else 0.0


def _bit_flip(n, i):
    size = 2 ** n
    P = np.zeros((size, size), dtype=complex)
    for omega in range(size):
        P[omega ^ (1 << i), omega] = 1.0
    return P


def _rademacher_sign(n, i):
    omega = np.arange(2 ** n)
    return np.diag(1.0 - 2.0 * ((omega >> i) & 1)).astype(complex)


def block_pinching(blocks, d):
    """Keeps the ``d x d`` diagonal blocks of a ``blocks*d`` square matrix."""

    def pinch(x):
        out = np.zeros_like(x)
        for b in range(blocks):
            s = slice(b * d, (b + 1) * d)
            out[s, s] = x[s, s]
        return out

    return pinch


def rademacher(n, d=1, coefficients=None, state=None, seed=0, label=None,
               budget=RADEMACHER_BUDGET):
    """``L = sum_i (Id - E_i)`` on ``L_inf({-1,1}^n) (x) M_d``.

    Realized inside ``M_{2^n} (x) M_d`` as the 2^n diagonal ``d x d`` blocks.
    The jumps are ``P_i (x) 1`` of weight 1/4, ``P_i`` the flip of coordinate
    i, plus the block projectors ``Q_w (x) 1`` that dephase everything off the
    block diagonal at ``BLOCK_DEPHASING_RATE``. The fixed-point algebra is
    ``1 (x) M_d`` and ``E = (coordinate average) (x) Id``.
    """
    if n < 1 or d < 1:
        raise QpError("Rademacher model needs n >= 1 and d >= 1", violations=dict(n=n, d=d))
    size = (2 ** n) * d
    if size > budget:
        raise QpError(
            "Rademacher model exceeds the dimension budget",
            violations=dict(dimension=size, budget=budget),
        )
    if size > DENSE_WARNING_DIM:
        LOG.warning("Rademacher model of dimension %d has a %d x %d superoperator",
                    size, size * size, size * size)
    if coefficients is None:
        rng = np.random.default_rng(seed)
        coefficients = [random_matrix(rng, d) for _ in range(n)]
    coefficients = [np.asarray(x, dtype=complex).reshape(d, d) for x in coefficients]
    if len(coefficients) != n:
        raise QpError(
            "Rademacher model needs one coefficient per coordinate",
            violations=dict(n=n, coefficients=len(coefficients)),
        )

    inner = as_state(state, d)
    eye_d = np.eye(d)
    jumps = [JumpTerm(np.kron(_bit_flip(n, i), eye_d), 0.25) for i in range(n)]
    for omega in range(2 ** n):
        jumps.append(JumpTerm(np.kron(_unit(2 ** n, omega, omega), eye_d),
                              BLOCK_DEPHASING_RATE / 2.0))
    D = DensityState(np.kron(np.eye(2 ** n) / 2 ** n, inner.matrix))
    tags = ALL_TAGS if inner.is_tracial else GNS_TAGS
    generator = gksl_generator(jumps, size, tags, D)

    degree_one = sum(np.kron(_rademacher_sign(n, i), x) for i, x in enumerate(coefficients))
    observables = dict(degree_one=degree_one)
    for i in range(n):
        observables["epsilon_%d" % i] = np.kron(_rademacher_sign(n, i), eye_d)
    model = ModelSpec("rademacher", dict(n=n, d=d, seed=seed), generator, label, observables,
                      algebra=block_pinching(2 ** n, d))
    model.coefficients = tuple(coefficients)
    model.inner_state = inner
    return model


def depolarizing(d, label=None):
    """``L = Id - tau(.) 1`` on M_d, from the jumps ``e_ab`` of weight 1/(2d)."""
    if d < 2:
        raise QpError("Depolarizing model needs d >= 2", violations=dict(d=d))
    jumps = [JumpTerm(_unit(d, a, b), 1.0 / (2.0 * d)) for a in range(d) for b in range(d)]
    generator = gksl_generator(jumps, d, ALL_TAGS, DensityState.maximally_mixed(d))
    return ModelSpec("depolarizing", dict(d=d), generator, label)


def _connected(d, edges):
    parent = list(range(d))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(a) for a in range(d)}) == 1


def random_gns_db(D, k, seed, label=None):
    """Random generator built from modular eigenvectors of ``D``.

    Picks ``k`` off-diagonal matrix units ``c`` of D's eigenbasis; with
    ``D c D^-1 = e^w c`` the pair is ``(c, e^{w/2} v)`` and ``(c†, e^{-w/2} v)``.
    """
    state = D if isinstance(D, DensityState) else (
        DensityState.from_populations(D) if np.ndim(D) == 1 else DensityState(D)
    )
    d = state.dim
    pairs = [(a, b) for a in range(d) for b in range(a + 1, d)]
    if k > len(pairs):
        raise QpError(
            "Not enough matrix units for the requested jumps",
            violations=dict(k=k, available=len(pairs)),
        )
    if k < 0:
        raise QpError("Jump count must be nonnegative", violations=dict(k=k))

    rng = np.random.default_rng(seed)
    chosen = []
    for attempt in range(MAX_RESAMPLES):
        picks = rng.choice(len(pairs), size=k, replace=False) if k else []
        chosen = [pairs[i] for i in sorted(picks)]
        if k < d - 1 or _connected(d, chosen):
            break
        LOG.info("Resampling disconnected jump graph (seed %s, attempt %d)", seed, attempt + 1)
    else:
        LOG.warning("Jump graph still disconnected after %d resamples", MAX_RESAMPLES)

    U = state.spectrum.eigenvectors
    lam = state.spectrum.eigenvalues
    weights = rng.uniform(0.5, 1.5, size=len(chosen))
    jumps = []
    for (a, b), v in zip(chosen, weights):
        c = np.outer(U[:, a], np.conj(U[:, b]))
        omega = np.log(lam[a] / lam[b])
        jumps.append(JumpTerm(c, np.exp(omega / 2.0) * v))
        jumps.append(JumpTerm(dagger(c), np.exp(-omega / 2.0) * v))

    tags = ALL_TAGS if state.is_tracial else GNS_TAGS
    generator = gksl_generator(jumps, d, tags, state)
    return ModelSpec("random_gns_db", dict(d=d, k=k, seed=seed), generator, label)


def kms_only(D, seed, label=None):
    """KMS detailed-balanced ``L = Id - Psi`` that is not GNS detailed balanced.

    ``Psi(x) = sum_k Tr(G_k x) F_k`` measures in a random basis ``f_k`` and
    prepares ``F_k = |f_k><f_k|``, with ``G_k = D^½ F_k D^½ / <f_k|D|f_k>``.
    """
    state = D if isinstance(D, DensityState) else (
        DensityState.from_populations(D) if np.ndim(D) == 1 else DensityState(D)
    )
    d = state.dim
    rng = np.random.default_rng(seed)
    basis = random_unitary(rng, d)
    root = state.power(0.5)
    jumps = []
    for k in range(d):
        f = basis[:, k]
        F = np.outer(f, np.conj(f))
        weight = float(np.real(np.conj(f) @ state.matrix @ f))
        G = root @ F @ root / weight
        spectrum = herm_eig(G)
        for g, vector in zip(spectrum.eigenvalues, spectrum.eigenvectors.T):
            if g > 1e-14:
                jumps.append(JumpTerm(np.sqrt(g) * np.outer(vector, np.conj(f)), 0.5))
    generator = gksl_generator(jumps, d, (SymmetryTag.KMS_DB,), state)
    return ModelSpec("kms_only", dict(d=d, seed=seed), generator, label,
                     form=InnerProductForm.KMS)


def _state_param(value):
    if value is None:
        return None
    if isinstance(value, dict) and "populations" in value:
        return DensityState.from_populations(value["populations"])
    if isinstance(value, dict) and "thermal" in value:
        spec = value["thermal"]
        return thermal_state(spec["energies"], spec["beta"])
    if isinstance(value, dict) and "re" in value:
        return DensityState(np.asarray(value["re"]) + 1j * np.asarray(value.get("im", 0.0)))
    return DensityState.from_populations(value)


def _coefficients_param(value):
    if value is None:
        return None
    out = []
    for entry in value:
        if isinstance(entry, dict):
            out.append(np.asarray(entry["re"]) + 1j * np.asarray(entry.get("im", 0.0)))
        else:
            out.append(np.asarray(entry))
    return out


MODEL_KINDS = ("birth_death", "rademacher", "depolarizing", "random_gns_db", "kms_only")


def build_model(kind, params=None, label=None):
    """Builds a model from a descriptor ``{kind, params}``."""
    params = dict(params or {})
    try:
        if kind == "birth_death":
            return birth_death(int(params["n"]), float(params.get("beta", 1.0)), label)
        if kind == "rademacher":
            return rademacher(
                int(params["n"]),
                int(params.get("d", 1)),
                _coefficients_param(params.get("coefficients")),
                _state_param(params.get("state")),
                int(params.get("seed", 0)),
                label,
                int(params.get("budget", RADEMACHER_BUDGET)),
            )
        if kind == "depolarizing":
            return depolarizing(int(params["d"]), label)
        if kind == "random_gns_db":
            return random_gns_db(
                _state_param(params["state"]), int(params["k"]), int(params.get("seed", 0)), label
            )
        if kind == "kms_only":
            return kms_only(_state_param(params["state"]), int(params.get("seed", 0)), label)
    except KeyError as e:
        raise QpError("Model '%s' is missing parameter %s" % (kind, e), violations=dict(kind=kind))
    raise QpError("Unknown model kind '%s'" % kind, violations=dict(choices=list(MODEL_KINDS)))


def model_to_dict(model):
    return model.to_dict()
