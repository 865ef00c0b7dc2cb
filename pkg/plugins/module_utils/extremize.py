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
Multi-start ascent over observables, probing how sharp the Poincare constant
is and how far the Talagrand lower bound can be pushed.
"""

import logging
import math

from dataclasses import dataclass

import numpy as np

from ansible_collections.qpoincare.lab.plugins.module_utils.inequalities import (
    SELF_ADJOINT_MODES,
    TRACIAL_MODES,
    PiMode,
    pi_reference,
    talagrand_c_min_record,
    talagrand_densities,
    talagrand_functional,
    verify_pi,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.lpspaces import lipschitz_seminorm
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import dagger
from ansible_collections.qpoincare.lab.plugins.module_utils.qms import spectral_gap
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import QpError


LOG = logging.getLogger(__name__)

DEFAULT_RESTARTS = 20
FD_STEP = 1e-5
MIN_STEP = 1e-10
VIOLATION_TOL = 1e-6
NORM_FLOOR = 1e-14


@dataclass(frozen=True)
class ExtremizerResult:
    best_x: np.ndarray
    best_ratio: float
    iterations: int
    method: str
    seed: int
    converged: bool
    violation: bool = False
    restart: int = 0
    certificate: object = None

    def to_dict(self):
        out = dict(
            best_ratio=self.best_ratio,
            iterations=self.iterations,
            method=self.method,
            seed=self.seed,
            converged=self.converged,
            violation=self.violation,
            restart=self.restart,
        )
        if self.certificate is not None:
            out.update(self.certificate.to_dict())
            out["method"] = self.method
        return out


def coordinate_basis(dim, hermitian=True):
    """Orthonormal (Hilbert-Schmidt) real basis of Hermitian or all matrices."""
    basis = []
    for j in range(dim):
        for k in range(dim):
            if j == k:
                e = np.zeros((dim, dim), dtype=complex)
                e[j, j] = 1.0
                basis.append(e)
                if not hermitian:
                    basis.append(1j * e)
            elif j < k or not hermitian:
                e = np.zeros((dim, dim), dtype=complex)
                if hermitian:
                    e[j, k] = e[k, j] = 1.0 / math.sqrt(2.0)
                    basis.append(e)
                    e = np.zeros((dim, dim), dtype=complex)
                    e[j, k] = 1j / math.sqrt(2.0)
                    e[k, j] = -1j / math.sqrt(2.0)
                    basis.append(e)
                else:
                    e[j, k] = 1.0
                    basis.append(e)
                    basis.append(1j * e)
    return np.array(basis)


def _to_coordinates(x, basis):
    return np.real(np.einsum("kij,ij->k", basis.conj(), x))


def _from_coordinates(theta, basis):
    return np.tensordot(theta, basis, axes=1)


class _RatioObjective(object):
    """``LHS / budget`` on the centered unit sphere of the chosen mode."""

    def __init__(self, L, D, p, mode, eta, allow_intermediate, model, restrict=None):
        self.L = L
        self.restrict = restrict
        self.mode = PiMode(mode)
        self.p = p
        self.eta = eta
        self.allow_intermediate = allow_intermediate
        self.model = model
        self.state, self.alpha, self.E = pi_reference(L, D, tracial=self.mode in TRACIAL_MODES)
        self.D = self.state
        self.hermitian = self.mode in SELF_ADJOINT_MODES
        self.basis = coordinate_basis(L.dim, self.hermitian)

    def project(self, x):
        if self.restrict is not None:
            x = self.restrict(x)
        x = x - self.E(x)
        if self.hermitian:
            x = (x + dagger(x)) / 2.0
        norm = math.sqrt(float(np.real(np.vdot(x, x))) / x.shape[0])
        if norm < NORM_FLOOR:
            return None
        return x / norm

    def certificate(self, x, sample_id=None):
        return verify_pi(self.L, self.D, x, self.p, mode=self.mode, eta=self.eta,
                         allow_intermediate=self.allow_intermediate, expectation=self.E,
                         gap=self.alpha, model=self.model, sample_id=sample_id)

    def __call__(self, theta):
        x = self.project(_from_coordinates(theta, self.basis))
        if x is None:
            return 0.0
        cert = self.certificate(x)
        return cert.ratio * cert.constant

    def gradient(self, theta):
        h = FD_STEP * max(float(np.linalg.norm(theta)), NORM_FLOOR)
        grad = np.zeros_like(theta)
        for k in range(theta.size):
            step = np.zeros_like(theta)
            step[k] = h
            grad[k] = (self(theta + step) - self(theta - step)) / (2.0 * h)
        return grad


def _eigen_witness(L, state, hermitian):
    g = spectral_gap(L, state).gap_element
    if not hermitian:
        return g
    real = (g + dagger(g)) / 2.0
    imag = (g - dagger(g)) / 2.0j
    return real if np.linalg.norm(real) >= np.linalg.norm(imag) else imag


def _ascend(objective, theta, budget):
    value = objective(theta)
    step = 1.0
    iterations = 0
    converged = False
    while iterations < budget:
        iterations += 1
        grad = objective.gradient(theta)
        norm = float(np.linalg.norm(grad))
        if norm < NORM_FLOOR:
            converged = True
            break
        while step >= MIN_STEP:
            candidate = theta + step * grad / norm
            x = objective.project(_from_coordinates(candidate, objective.basis))
            if x is not None:
                candidate = _to_coordinates(x, objective.basis)
                trial = objective(candidate)
                if trial > value:
                    theta, value = candidate, trial
                    step = min(2.0 * step, 1.0)
                    break
            step /= 2.0
        if step < MIN_STEP:
            converged = True
            break
    return theta, value, iterations, converged


def maximize_pi_ratio(L, D, p, mode=PiMode.HAAGERUP_SA, budget=50, restarts=DEFAULT_RESTARTS,
                      seed=0, eta=0.5, allow_intermediate=False, model=None, restrict=None):
    """Largest ``LHS / budget`` found by multi-start ascent.

    The first start is the spectral-gap eigen-element; the remaining starts are
    seeded random observables. Ties go to the lowest restart index.
    """
    if budget <= 0:
        raise QpError("Extremizer budget must be positive", violations=dict(budget=budget))
    objective = _RatioObjective(L, D, p, mode, eta, allow_intermediate, model, restrict)
    rng = np.random.default_rng(seed)

    best = None
    for restart in range(max(1, restarts)):
        if restart == 0:
            start = _eigen_witness(L, objective.state, objective.hermitian)
        else:
            start = _from_coordinates(rng.standard_normal(objective.basis.shape[0]),
                                      objective.basis)
        x = objective.project(start)
        if x is None:
            LOG.debug("Restart %d starts in the kernel; skipped", restart)
            continue
        theta, value, iterations, converged = _ascend(
            objective, _to_coordinates(x, objective.basis), budget
        )
        LOG.debug("Restart %d: ratio %.12g after %d iterations", restart, value, iterations)
        if best is None or value > best[1]:
            best = (theta, value, iterations, converged, restart)

    if best is None:
        raise QpError("Every start lies in the kernel of the generator")

    theta, value, iterations, converged, restart = best
    best_x = objective.project(_from_coordinates(theta, objective.basis))
    certificate = objective.certificate(best_x, dict(seed=seed, sample=restart))
    best_ratio = certificate.ratio * certificate.constant
    violation = best_ratio > certificate.constant * (1.0 + VIOLATION_TOL)
    if violation:
        LOG.warning(
            "Extremizer exceeded the Poincare constant: %.12g > %.12g (mode %s, p=%s)",
            best_ratio, certificate.constant, objective.mode.value, p,
        )
    return ExtremizerResult(best_x, float(best_ratio), iterations, "fd_gradient_ascent", seed,
                            converged, bool(violation), restart, certificate)


def improve_talagrand_lower_bound(model, budget, seed=0):
    """Ascend ``|mu_A(x) - mu_B(x)|`` over centered x in the Lipschitz unit ball.

    Starts at the chain's explicit test observable, so the result never falls
    below the explicit bound.
    """
    if model.kind != "birth_death":
        raise QpError("Talagrand improvement needs a birth-death model",
                      violations=dict(kind=model.kind))
    L = model.generator
    E = model.expectation
    (rho_a, mu_a), (rho_b, mu_b) = talagrand_densities(model)
    direction = rho_a - rho_b
    entropy_budget = math.sqrt(-math.log(mu_a)) + math.sqrt(-math.log(mu_b))

    def project(x):
        x = x - E(x)
        x = (x + dagger(x)) / 2.0
        return x / max(1.0, lipschitz_seminorm(L, x))

    x = project(model.observables["f"])
    value = talagrand_functional(model, x)
    step = 1.0
    iterations = 0
    converged = False
    while iterations < budget:
        iterations += 1
        sign = 1.0 if np.trace(direction @ x).real >= 0 else -1.0
        grad = sign * (direction - E(direction))
        norm = float(np.linalg.norm(grad))
        if norm < NORM_FLOOR:
            converged = True
            break
        candidate = project(x + step * grad / norm)
        trial = talagrand_functional(model, candidate)
        if trial > value:
            x, value = candidate, trial
            step *= 1.5
        else:
            step /= 2.0
            if step < MIN_STEP:
                converged = True
                break

    certificate = talagrand_c_min_record("talagrand_improved", value, entropy_budget, model.label,
                                         dict(seed=seed))
    return ExtremizerResult(x, float(value), iterations, "projected_gradient", seed, converged,
                            False, 0, certificate)
