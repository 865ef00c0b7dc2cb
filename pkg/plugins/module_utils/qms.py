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
Lindblad generators in the Heisenberg picture: construction, semigroup
evaluation, detailed-balance diagnostics, spectral gaps, gradient and
Dirichlet forms, regularization and composite generators.
"""

import enum
import logging

from dataclasses import dataclass

import numpy as np

from scipy.linalg import expm

from ansible_collections.qpoincare.lab.plugins.module_utils.algebra import (
    DensityState,
    KERNEL_CUTOFF,
    SYMMETRY_TOL,
    as_state,
    modular_superop,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import (
    InnerProductForm,
    as_matrix,
    dagger,
    frame_spectrum,
    gram_matrix,
    kernel_split,
    orthonormal_frame,
    random_matrix,
    sandwich,
    unvec,
    vec,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import (
    NotDetailedBalancedError,
    QpError,
)


LOG = logging.getLogger(__name__)

MODULAR_CHECK_TIMES = (0.5, 1.0)
GENERATOR_TOL = 1e-10
POSITIVITY_TOL = 1e-9


class SymmetryTag(enum.Enum):
    TAU_SYMMETRIC = "tau_symmetric"
    GNS_DB = "gns_db"
    KMS_DB = "kms_db"


@dataclass(frozen=True)
class JumpTerm:
    operator: np.ndarray
    weight: float

    def __post_init__(self):
        if not self.weight > 0:
            raise QpError("Jump weight must be positive", violations=dict(weight=self.weight))
        object.__setattr__(self, "operator", as_matrix(self.operator))


class Generator(object):
    """A Lindbladian with its cached Heisenberg superoperator.

    ``jumps`` is ``None`` for generators only known at the superoperator level
    (projection generators, regularizations).
    """

    def __init__(self, dim, superop, jumps=None, tags=(), state=None):
        superop = np.asarray(superop, dtype=complex)
        if superop.shape != (dim * dim, dim * dim):
            raise QpError(
                "Superoperator shape does not match dimension",
                violations=dict(dim=dim, shape=superop.shape),
            )
        superop.setflags(write=False)
        self.dim = dim
        self.superop = superop
        self.jumps = tuple(jumps) if jumps is not None else None
        self.tags = frozenset(SymmetryTag(t) for t in tags)
        self.state = as_state(state, dim) if state is not None else None
        self._spectra = {}

    def __call__(self, x):
        return unvec(self.superop @ vec(x), self.dim)

    def apply(self, x):
        return self(x)

    def has_tag(self, tag):
        return SymmetryTag(tag) in self.tags

    def with_tags(self, tags, state=None):
        return Generator(
            self.dim, self.superop, self.jumps, tags, state if state is not None else self.state
        )

    def frame_spectrum(self, D=None, form=InnerProductForm.GNS):
        """Symmetrized spectrum in the orthonormal frame of ``form``; cached."""
        state = as_state(D if D is not None else self.state, self.dim)
        key = (form, state.fingerprint())
        if key not in self._spectra:
            frame = orthonormal_frame(self.dim, form, state.matrix)
            self._spectra[key] = frame_spectrum(self.superop, frame)
        return self._spectra[key]

    def __repr__(self):
        return "Generator(dim=%d, jumps=%s, tags=%s)" % (
            self.dim,
            "-" if self.jumps is None else len(self.jumps),
            sorted(t.value for t in self.tags),
        )


def _jump_superop(c, weight, dim):
    K = dagger(c) @ c
    eye = np.eye(dim)
    return weight * (sandwich(K, eye) + sandwich(eye, K) - 2.0 * sandwich(dagger(c), c))


def gksl_generator(jumps, dim, tags=(), state=None):
    """``L(x) = sum_j w_j (c_j† c_j x + x c_j† c_j - 2 c_j† x c_j)``."""
    jumps = [j if isinstance(j, JumpTerm) else JumpTerm(*j) for j in jumps]
    M = np.zeros((dim * dim, dim * dim), dtype=complex)
    for jump in jumps:
        if jump.operator.shape != (dim, dim):
            raise QpError(
                "Jump operator dimension mismatch",
                violations=dict(dim=dim, shape=jump.operator.shape),
            )
        M += _jump_superop(jump.operator, jump.weight, dim)
    return Generator(dim, M, jumps, tags, state)


def projection_generator(E, tags=(SymmetryTag.GNS_DB, SymmetryTag.KMS_DB)):
    """``L = Id - E``."""
    d = E.dim
    tags = set(tags)
    if E.state.is_tracial:
        tags.add(SymmetryTag.TAU_SYMMETRIC)
    return Generator(d, np.eye(d * d) - E.projector, None, tags, E.state)


def semigroup(L, t):
    if t < 0:
        raise QpError("Semigroup time must be nonnegative", violations=dict(t=t))
    if t == 0:
        return np.eye(L.dim * L.dim, dtype=complex)
    return expm(-t * np.asarray(L.superop))


def apply_semigroup(L, x, t):
    """``T_t(x) = exp(-t L)(x)``."""
    return unvec(semigroup(L, t) @ vec(as_matrix(x)), L.dim)


def _self_adjoint_residual(M, G):
    return float(np.max(np.abs(G @ M - dagger(M) @ G)))


def check_tau_symmetry(L):
    """``max |tau(x† L(y)) - tau(L(x)† y)|`` over matrix units."""
    M = np.asarray(L.superop)
    return float(np.max(np.abs(M - dagger(M)))) / L.dim


def check_kms_db(L, D):
    """KMS self-adjointness residual over matrix units."""
    state = as_state(D, L.dim)
    G = gram_matrix(L.dim, InnerProductForm.KMS, state.matrix)
    return _self_adjoint_residual(np.asarray(L.superop), G)


def gns_symmetry_residual(L, D):
    state = as_state(D, L.dim)
    G = gram_matrix(L.dim, InnerProductForm.GNS, state.matrix)
    return _self_adjoint_residual(np.asarray(L.superop), G)


def modular_commutation_residual(L, D, times=MODULAR_CHECK_TIMES):
    """``max_t ||sigma_t L - L sigma_t||`` (entrywise)."""
    state = as_state(D, L.dim)
    M = np.asarray(L.superop)
    worst = 0.0
    for t in times:
        S = modular_superop(state, t)
        worst = max(worst, float(np.max(np.abs(S @ M - M @ S))))
    return worst


def check_gns_db(L, D):
    """GNS detailed balance: GNS symmetry and modular commutation."""
    return max(gns_symmetry_residual(L, D), modular_commutation_residual(L, D))


@dataclass(frozen=True)
class GapReport:
    alpha: float
    kernel_dim: int
    spectrum: tuple
    inner_product: str
    gap_element: np.ndarray
    dirichlet_alpha: float

    def to_dict(self):
        return dict(
            alpha=self.alpha,
            kernel_dim=self.kernel_dim,
            spectrum=list(self.spectrum),
            inner_product=self.inner_product,
            dirichlet_alpha=self.dirichlet_alpha,
        )


def spectral_gap(L, D=None, form=InnerProductForm.GNS):
    """Smallest nonzero eigenvalue of L symmetrized in a weighted frame."""
    state = as_state(D if D is not None else L.state, L.dim)
    spectrum = L.frame_spectrum(state, form)
    bound = SYMMETRY_TOL * (1.0 + float(np.max(np.abs(L.superop))))
    if spectrum.asymmetry >= bound:
        raise NotDetailedBalancedError(
            "Generator is not self-adjoint in the %s inner product" % form.value,
            violations=dict(asymmetry=spectrum.asymmetry, bound=bound),
        )

    w = spectrum.eigenvalues
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    if w.size and w[0] < -POSITIVITY_TOL * (1.0 + scale):
        LOG.warning("Generator has a negative eigenvalue %.6g", float(w[0]))

    zero, nonzero = kernel_split(w, KERNEL_CUTOFF)
    if not nonzero.size:
        return GapReport(0.0, int(zero.size), tuple(float(v) for v in w),
                         form.value, np.zeros((L.dim, L.dim), dtype=complex), 0.0)

    k = int(nonzero[np.argmin(w[nonzero])])
    alpha = float(w[k])
    element = spectrum.element(k, L.dim)
    if form is InnerProductForm.GNS:
        norm = float(state.expectation(dagger(element) @ element).real)
        rayleigh = dirichlet_form_state(L, element, state) / norm
    else:
        G = gram_matrix(L.dim, form, state.matrix)
        v = vec(element)
        rayleigh = float((np.vdot(v, G @ (np.asarray(L.superop) @ v)) / np.vdot(v, G @ v)).real)
    LOG.debug("Spectral gap %.12g (kernel %d, %s frame)", alpha, zero.size, form.value)
    return GapReport(alpha, int(zero.size), tuple(float(v) for v in w), form.value,
                     element, rayleigh)


def gradient_form(L, x, y):
    """``Gamma(x, y) = (L(x†) y + x† L(y) - L(x† y)) / 2``."""
    x = as_matrix(x)
    y = as_matrix(y)
    xd = dagger(x)
    return 0.5 * (L(xd) @ y + xd @ L(y) - L(xd @ y))


def dirichlet_form(L, x):
    """``tau(x† L(x))`` with the normalized trace."""
    x = as_matrix(x)
    return float(np.trace(dagger(x) @ L(x)).real) / L.dim


def dirichlet_form_state(L, x, D):
    """``phi(x† L(x))``; the GNS energy."""
    state = as_state(D, L.dim)
    x = as_matrix(x)
    return float(state.expectation(dagger(x) @ L(x)).real)


@dataclass(frozen=True)
class GeneratorCheck:
    unitality: float
    hermiticity: float
    gamma_min_eigenvalue: float
    passed: bool

    def to_dict(self):
        return dict(unitality=self.unitality, hermiticity=self.hermiticity,
                    gamma_min_eigenvalue=self.gamma_min_eigenvalue, passed=self.passed)


def check_generator(L, samples=20, seed=0):
    """Unitality, Hermiticity preservation and Gamma positivity spot checks."""
    rng = np.random.default_rng(seed)
    d = L.dim
    unitality = float(np.linalg.norm(L(np.eye(d))))
    hermiticity = 0.0
    gamma_min = np.inf
    for _ in range(samples):
        x = random_matrix(rng, d)
        hermiticity = max(hermiticity, float(np.linalg.norm(dagger(L(x)) - L(dagger(x)))))
        G = gradient_form(L, x, x)
        gamma_min = min(gamma_min, float(np.min(np.linalg.eigvalsh((G + dagger(G)) / 2.0))))
    passed = (
        unitality <= GENERATOR_TOL
        and hermiticity <= GENERATOR_TOL
        and gamma_min >= -POSITIVITY_TOL
    )
    return GeneratorCheck(unitality, hermiticity, float(gamma_min), passed)


def check_semigroup(L, x, s, t):
    """``||T_{s+t}(x) - T_s(T_t(x))||_F``."""
    lhs = apply_semigroup(L, x, s + t)
    rhs = apply_semigroup(L, apply_semigroup(L, x, t), s)
    return float(np.linalg.norm(lhs - rhs))


def _spectral_transform(L, f, D, form):
    state = as_state(D if D is not None else L.state, L.dim)
    spectrum = L.frame_spectrum(state, form)
    bound = SYMMETRY_TOL * (1.0 + float(np.max(np.abs(L.superop))))
    if spectrum.asymmetry >= bound:
        raise NotDetailedBalancedError(
            "Generator is not self-adjoint in the %s inner product" % form.value,
            violations=dict(asymmetry=spectrum.asymmetry, bound=bound),
        )
    V = spectrum.eigenvectors
    values = np.clip(spectrum.eigenvalues, 0.0, None)
    T = (V * f(values)) @ dagger(V)
    return spectrum.frame.from_frame(T), state


def regularize(L, epsilon, D=None, form=InnerProductForm.GNS):
    """``L_eps = L (1 + eps L)^-1`` by spectral calculus."""
    if not epsilon > 0:
        raise QpError("Regularization needs epsilon > 0", violations=dict(epsilon=epsilon))
    M, state = _spectral_transform(L, lambda w: w / (1.0 + epsilon * w), D, form)
    return Generator(L.dim, M, None, L.tags, state)


def regularized_mixture(L, weights, epsilons, D=None, form=InnerProductForm.GNS):
    """``sum_j lambda_j L_{eps_j}`` for a probability vector ``lambda``."""
    weights = np.asarray(weights, dtype=float)
    if len(weights) != len(epsilons) or np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
        raise QpError(
            "Mixture weights must be a probability vector matching the epsilons",
            violations=dict(weights=weights.tolist(), epsilons=list(epsilons)),
        )
    if any(not e > 0 for e in epsilons):
        raise QpError("Regularization needs epsilon > 0", violations=dict(epsilons=list(epsilons)))
    eps = np.asarray(epsilons, dtype=float)
    M, state = _spectral_transform(
        L, lambda w: np.sum(weights[:, None] * w[None, :] / (1.0 + eps[:, None] * w[None, :]), axis=0),
        D, form,
    )
    return Generator(L.dim, M, None, L.tags, state)


def _tensor_permutation(d1, d2):
    """Index map from kron(vec x1, vec x2) to vec(x1 (x) x2)."""
    n = d1 * d1 * d2 * d2
    return np.arange(n).reshape(d1, d1, d2, d2).transpose(0, 2, 1, 3).reshape(-1)


def tensor_generator(L1, L2):
    """Generator of ``T1_t (x) T2_t``: ``L1 (x) Id + Id (x) L2``."""
    d1, d2 = L1.dim, L2.dim
    K = np.kron(np.asarray(L1.superop), np.eye(d2 * d2)) + np.kron(
        np.eye(d1 * d1), np.asarray(L2.superop)
    )
    idx = _tensor_permutation(d1, d2)
    M = K[np.ix_(idx, idx)]

    jumps = None
    if L1.jumps is not None and L2.jumps is not None:
        jumps = [JumpTerm(np.kron(j.operator, np.eye(d2)), j.weight) for j in L1.jumps]
        jumps += [JumpTerm(np.kron(np.eye(d1), j.operator), j.weight) for j in L2.jumps]

    state = None
    if L1.state is not None or L2.state is not None:
        s1 = as_state(L1.state, d1)
        s2 = as_state(L2.state, d2)
        state = DensityState(np.kron(s1.matrix, s2.matrix))
    return Generator(d1 * d2, M, jumps, L1.tags & L2.tags, state)


def direct_sum_generator(L1, L2, coherence_rate=None):
    """Block action of ``L1 (+) L2`` on ``M_{d1+d2}`` with state ``(D1 (+) D2)/2``.

    Off-diagonal blocks decay at ``coherence_rate`` (default: the larger of
    the two gaps) so that they never set the gap.
    """
    d1, d2 = L1.dim, L2.dim
    d = d1 + d2
    s1 = as_state(L1.state, d1)
    s2 = as_state(L2.state, d2)
    D = np.zeros((d, d), dtype=complex)
    D[:d1, :d1] = s1.matrix / 2.0
    D[d1:, d1:] = s2.matrix / 2.0
    state = DensityState(D)

    if coherence_rate is None:
        coherence_rate = max(spectral_gap(L1, s1).alpha, spectral_gap(L2, s2).alpha)
    kappa = float(coherence_rate)
    tags = L1.tags & L2.tags

    if L1.jumps is not None and L2.jumps is not None:
        jumps = []
        for j in L1.jumps:
            c = np.zeros((d, d), dtype=complex)
            c[:d1, :d1] = j.operator
            jumps.append(JumpTerm(c, j.weight))
        for j in L2.jumps:
            c = np.zeros((d, d), dtype=complex)
            c[d1:, d1:] = j.operator
            jumps.append(JumpTerm(c, j.weight))
        if kappa > 0:
            Q = np.diag(np.concatenate([np.ones(d1), -np.ones(d2)])).astype(complex)
            jumps.append(JumpTerm(Q, kappa / 4.0))
        return gksl_generator(jumps, d, tags, state)

    M = np.zeros((d * d, d * d), dtype=complex)
    index = np.arange(d * d).reshape(d, d)
    block1 = index[:d1, :d1].reshape(-1)
    block2 = index[d1:, d1:].reshape(-1)
    M[np.ix_(block1, block1)] = L1.superop
    M[np.ix_(block2, block2)] = L2.superop
    off = np.concatenate([index[:d1, d1:].reshape(-1), index[d1:, :d1].reshape(-1)])
    M[off, off] = kappa
    return Generator(d, M, None, tags, state)


def generator_to_dict(L):
    """JSON-ready form: ``{dim, jumps: [{re, im, weight}], state, tags}``."""
    out = dict(
        dim=L.dim,
        tags=sorted(t.value for t in L.tags),
        state=L.state.to_dict() if L.state is not None else None,
    )
    if L.jumps is not None:
        out["jumps"] = [
            dict(re=j.operator.real.tolist(), im=j.operator.imag.tolist(), weight=j.weight)
            for j in L.jumps
        ]
    else:
        out["superop"] = dict(re=L.superop.real.tolist(), im=L.superop.imag.tolist())
    return out


def generator_from_dict(data):
    state = None
    if data.get("state") is not None:
        state = DensityState(np.asarray(data["state"]["re"]) + 1j * np.asarray(data["state"]["im"]))
    tags = data.get("tags", [])
    if "jumps" in data:
        jumps = [
            JumpTerm(np.asarray(j["re"]) + 1j * np.asarray(j["im"]), float(j["weight"]))
            for j in data["jumps"]
        ]
        return gksl_generator(jumps, int(data["dim"]), tags, state)
    superop = np.asarray(data["superop"]["re"]) + 1j * np.asarray(data["superop"]["im"])
    return Generator(int(data["dim"]), superop, None, tags, state)
