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
States, modular flow, fixed-point algebras and state-preserving conditional
expectations on a full matrix algebra.
"""

import logging

from dataclasses import dataclass, field

import numpy as np

from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import (
    EPS_POS,
    EXPONENT_GUARD,
    InnerProductForm,
    TraceMode,
    as_matrix,
    dagger,
    ensure_hermitian,
    frame_spectrum,
    herm_eig,
    kernel_split,
    orthonormal_frame,
    positive_spectrum,
    random_matrix,
    sandwich,
    spectral_power,
    trace,
    unvec,
    vec,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import (
    AmbiguousKernelError,
    NotDetailedBalancedError,
    QpError,
    SingularStateError,
)


LOG = logging.getLogger(__name__)

TRACE_TOL = 1e-12
KERNEL_CUTOFF = 1e-9
KERNEL_SEPARATION = 1e-8
SYMMETRY_TOL = 1e-9
AXIOM_TOL = 1e-9
MODULAR_TIMES = (0.3, -0.3, 1.0, -1.0)


class DensityState(object):
    """A faithful state ``phi(x) = Tr(D x)`` with a cached spectrum."""

    def __init__(self, matrix, eps=EPS_POS):
        D = ensure_hermitian(matrix)
        deviation = abs(np.trace(D).real - 1.0)
        if deviation > TRACE_TOL * D.shape[0]:
            raise QpError(
                "Density matrix must have unit trace",
                violations=dict(trace=float(np.trace(D).real)),
            )
        try:
            self._spectrum = positive_spectrum(D, eps=eps)
        except SingularStateError as e:
            raise SingularStateError("State is not faithful", e.violations)
        self._matrix = D
        self._matrix.setflags(write=False)
        self._powers = {}

    @classmethod
    def maximally_mixed(cls, dim):
        return cls(np.eye(dim) / dim)

    @classmethod
    def from_populations(cls, populations):
        p = np.asarray(populations, dtype=float)
        return cls(np.diag(p / p.sum()))

    @property
    def matrix(self):
        return self._matrix

    @property
    def dim(self):
        return self._matrix.shape[0]

    @property
    def spectrum(self):
        return self._spectrum

    @property
    def lambda_min(self):
        return float(self._spectrum.eigenvalues[0])

    @property
    def is_tracial(self):
        return bool(
            np.max(np.abs(self._spectrum.eigenvalues - 1.0 / self.dim)) <= TRACE_TOL
        )

    def power(self, z):
        """``D^z`` for complex ``z``; memoized per exponent."""
        key = complex(z)
        if key not in self._powers:
            P = spectral_power(self._spectrum, key)
            P.setflags(write=False)
            self._powers[key] = P
        return self._powers[key]

    def expectation(self, x):
        return complex(np.trace(self._matrix @ np.asarray(x)))

    def fingerprint(self):
        return self._matrix.tobytes()

    def to_dict(self):
        return dict(
            re=self._matrix.real.tolist(),
            im=self._matrix.imag.tolist(),
        )

    def __repr__(self):
        return "DensityState(dim=%d, lambda_min=%.6g)" % (self.dim, self.lambda_min)


def as_state(D, dim=None):
    """Coerces ``None`` (tracial), a matrix, or a DensityState."""
    if isinstance(D, DensityState):
        return D
    if D is None:
        if dim is None:
            raise QpError("Dimension needed for the tracial state")
        return DensityState.maximally_mixed(dim)
    return DensityState(D)


def thermal_state(energies, beta):
    """Gibbs state ``exp(-beta E) / Z`` for a list of energies."""
    E = np.asarray(energies, dtype=float)
    weights = np.exp(-beta * (E - E.min()))
    return DensityState.from_populations(weights)


def random_state(dim, seed, lambda_floor=0.05):
    """Random faithful state with eigenvalues bounded below by ``lambda_floor / dim``."""
    rng = np.random.default_rng(seed)
    X = random_matrix(rng, dim)
    rho = X @ dagger(X)
    rho = rho / np.trace(rho).real
    D = (1.0 - lambda_floor) * rho + lambda_floor * np.eye(dim) / dim
    return DensityState(D)


def _check_modular_time(D, t):
    reach = abs(complex(t).imag) * np.log(1.0 / D.lambda_min)
    if reach > EXPONENT_GUARD:
        raise QpError(
            "Modular flow exceeds the exponent range",
            violations=dict(exponent=float(reach), guard=EXPONENT_GUARD),
        )


def modular_flow(D, x, t):
    """``sigma_t(x) = D^{it} x D^{-it}`` for complex ``t``."""
    D = as_state(D)
    _check_modular_time(D, t)
    t = complex(t)
    if t == 0:
        return as_matrix(x).copy()
    return D.power(1j * t) @ as_matrix(x) @ D.power(-1j * t)


def modular_superop(D, t):
    D = as_state(D)
    _check_modular_time(D, t)
    return sandwich(D.power(1j * t), D.power(-1j * complex(t)))


def relative_entropy(rho, sigma):
    """``D(rho || sigma) = Tr rho (log rho - log sigma)`` with ``0 log 0 = 0``."""
    rho_spec = herm_eig(rho)
    sigma = as_state(sigma)
    p = np.clip(rho_spec.eigenvalues, 0.0, None)
    support = p > EPS_POS
    entropy_term = float(np.sum(p[support] * np.log(p[support])))
    log_sigma = sigma.spectrum.apply(np.log(sigma.spectrum.eigenvalues))
    cross = float(np.trace(rho_spec.reconstruct() @ log_sigma).real)
    return entropy_term - cross


@dataclass(frozen=True)
class SubalgebraBasis:
    generators: tuple
    orthonormal_basis: tuple
    form: InnerProductForm = InnerProductForm.GNS

    @property
    def size(self):
        return len(self.orthonormal_basis)

    def closure_residual(self, projector):
        """Adjoint and pairwise-product closure against ``projector``."""
        dim = self.orthonormal_basis[0].shape[0]
        complement = np.eye(dim * dim) - projector
        worst = 0.0
        for a in self.orthonormal_basis:
            worst = max(worst, np.linalg.norm(complement @ vec(dagger(a))))
            for b in self.orthonormal_basis:
                worst = max(worst, np.linalg.norm(complement @ vec(a @ b)))
        return float(worst)


@dataclass
class ConditionalExpectation:
    """A projector superoperator onto a subalgebra that preserves ``state``."""

    projector: np.ndarray
    range: SubalgebraBasis
    state: DensityState
    _modular_invariant: bool = field(default=None, repr=False)

    @property
    def dim(self):
        return self.state.dim

    def __call__(self, x):
        return unvec(self.projector @ vec(x), self.dim)

    def apply(self, x):
        return self(x)

    def choi_matrix(self):
        d = self.dim
        C = np.zeros((d * d, d * d), dtype=complex)
        for i in range(d):
            for j in range(d):
                e = np.zeros((d, d), dtype=complex)
                e[i, j] = 1.0
                C += np.kron(e, self(e))
        return C

    def modular_residual(self, times=MODULAR_TIMES):
        """Largest ``||(1 - P) sigma_t(b)||`` over range basis and times."""
        complement = np.eye(self.dim * self.dim) - self.projector
        worst = 0.0
        for t in times:
            for b in self.range.orthonormal_basis:
                moved = modular_flow(self.state, b, t)
                worst = max(worst, np.linalg.norm(complement @ vec(moved)))
        return float(worst)

    @property
    def is_modular_invariant(self):
        if self._modular_invariant is None:
            self._modular_invariant = self.modular_residual() <= AXIOM_TOL
        return self._modular_invariant


def _expectation_from_basis(basis, state, form=InnerProductForm.GNS):
    """Orthogonal projector onto span(basis) in the given inner product."""
    d = state.dim
    frame = orthonormal_frame(d, form, state.matrix)
    columns = np.column_stack([frame.forward @ vec(b) for b in basis])
    Q = np.linalg.qr(columns)[0]
    projector = frame.inverse @ (Q @ dagger(Q)) @ frame.forward
    orthonormal = tuple(unvec(frame.inverse @ Q[:, k], d) for k in range(Q.shape[1]))
    return ConditionalExpectation(
        projector, SubalgebraBasis(tuple(basis), orthonormal, form), state
    )


def trace_expectation(D, dim=None):
    """``E(x) = phi(x) 1``, the expectation onto the scalars."""
    state = as_state(D, dim)
    return _expectation_from_basis([np.eye(state.dim, dtype=complex)], state)


def identity_expectation(D, dim=None):
    state = as_state(D, dim)
    d = state.dim
    units = []
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            units.append(e)
    return ConditionalExpectation(
        np.eye(d * d, dtype=complex),
        SubalgebraBasis(tuple(units), tuple(units), InnerProductForm.HS),
        state,
    )


def fixed_point_projection(L, D=None, form=InnerProductForm.GNS):
    """Spectral projection onto ker L, orthogonal in the GNS (or KMS) product.

    ``L`` is anything exposing ``dim`` and ``superop``.
    """
    state = as_state(D, L.dim)
    frame = orthonormal_frame(L.dim, form, state.matrix)
    spectrum = frame_spectrum(L.superop, frame)
    bound = SYMMETRY_TOL * (1.0 + float(np.max(np.abs(L.superop))))
    if spectrum.asymmetry >= bound:
        raise NotDetailedBalancedError(
            "Generator is not self-adjoint in the %s inner product" % form.value,
            violations=dict(asymmetry=spectrum.asymmetry, bound=bound),
        )

    zero, nonzero = kernel_split(spectrum.eigenvalues, KERNEL_CUTOFF)
    if zero.size and nonzero.size:
        largest_zero = float(np.max(np.abs(spectrum.eigenvalues[zero])))
        smallest_nonzero = float(np.min(np.abs(spectrum.eigenvalues[nonzero])))
        if smallest_nonzero - largest_zero < KERNEL_SEPARATION:
            raise AmbiguousKernelError(
                "Kernel is not separated from the rest of the spectrum",
                violations=dict(zero=largest_zero, nonzero=smallest_nonzero),
            )
    if not zero.size:
        raise AmbiguousKernelError(
            "Generator has no kernel; L(1) = 0 fails",
            violations=dict(smallest=float(np.min(np.abs(spectrum.eigenvalues)))),
        )

    V0 = spectrum.eigenvectors[:, zero]
    projector = frame.inverse @ (V0 @ dagger(V0)) @ frame.forward
    basis = tuple(unvec(frame.inverse @ V0[:, k], L.dim) for k in range(V0.shape[1]))
    LOG.debug("Fixed-point algebra of dimension %d (%s frame)", len(basis), form.value)
    return ConditionalExpectation(projector, SubalgebraBasis(basis, basis, form), state)


@dataclass(frozen=True)
class ExpectationReport:
    idempotence: float
    unitality: float
    bimodularity: float
    state_preservation: float
    choi_min_eigenvalue: float
    closure: float
    passed: bool

    def to_dict(self):
        return dict(
            idempotence=self.idempotence,
            unitality=self.unitality,
            bimodularity=self.bimodularity,
            state_preservation=self.state_preservation,
            choi_min_eigenvalue=self.choi_min_eigenvalue,
            closure=self.closure,
            passed=self.passed,
        )


def check_expectation_axioms(E, samples=10, seed=0):
    """Residuals of the conditional expectation axioms; report only."""
    rng = np.random.default_rng(seed)
    d = E.dim
    P = E.projector
    idempotence = float(np.max(np.abs(P @ P - P)))
    identity = np.eye(d, dtype=complex)
    unitality = float(np.linalg.norm(E(identity) - identity))

    bimodularity = 0.0
    state_preservation = 0.0
    basis = E.range.orthonormal_basis
    for _ in range(samples):
        x = random_matrix(rng, d)
        Ex = E(x)
        state_preservation = max(
            state_preservation, abs(E.state.expectation(Ex) - E.state.expectation(x))
        )
        for b1 in basis:
            for b2 in basis:
                residual = np.linalg.norm(E(b1 @ x @ b2) - b1 @ Ex @ b2)
                bimodularity = max(bimodularity, float(residual))

    closure = E.range.closure_residual(P)

    choi = E.choi_matrix()
    choi_min = float(np.min(np.linalg.eigvalsh((choi + dagger(choi)) / 2.0)))
    passed = (
        max(idempotence, unitality, bimodularity, state_preservation, closure) < AXIOM_TOL
        and choi_min >= -AXIOM_TOL
    )
    return ExpectationReport(
        idempotence, unitality, bimodularity, float(state_preservation), choi_min, closure, passed
    )


def normalized_trace(x):
    return trace(x, TraceMode.NORMALIZED)
