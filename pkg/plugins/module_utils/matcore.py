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
Dense complex matrix kernel for the qpoincare.lab Collection.

Hermitian eigendecomposition, functional calculus, complex powers of positive
matrices, Schatten norms, and the weighted inner products. Superoperators act
on row-major vectorizations, so ``vec(A X B) = kron(A, B.T) vec(X)``.
"""

import enum
import logging
import math

from dataclasses import dataclass

import numpy as np

from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import (
    NotHermitianError,
    QpError,
    SingularStateError,
)


LOG = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
EPS_POS = 1e-12
CLUSTER_TOL = 1e-10
PHASE_TOL = 1e-10
JACOBI_THRESHOLD = 1e-13
JACOBI_MAX_SWEEPS = 40
EXPONENT_GUARD = 700.0


class TraceMode(enum.Enum):
    NORMALIZED = "normalized"
    UNNORMALIZED = "unnormalized"


class Infinity(enum.Enum):
    INF = "inf"


INF = Infinity.INF


class InnerProductForm(enum.Enum):
    HS = "hs"
    GNS = "gns"
    KMS = "kms"


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T

    def apply(self, values):
        """Returns ``U diag(values) U†``."""
        return (self.eigenvectors * values) @ self.eigenvectors.conj().T


def as_exponent(p):
    """Normalizes a Schatten exponent; infinity becomes ``INF``."""
    if p is INF:
        return INF
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        p = float(p)
    if math.isinf(p) and p > 0:
        return INF
    return float(p)


def as_matrix(A):
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise QpError("Expected a square matrix", violations=dict(shape=M.shape))
    if not np.all(np.isfinite(M)):
        raise QpError("Matrix has non-finite entries")
    return M


def dagger(A):
    return np.conj(np.transpose(A))


def hermiticity_residual(A):
    A = np.asarray(A)
    return float(np.linalg.norm(A - dagger(A)))


def ensure_hermitian(A, tol=HERMITIAN_TOL):
    """Symmetrizes ``A`` or rejects it when it is not Hermitian within ``tol``."""
    A = as_matrix(A)
    residual = hermiticity_residual(A)
    bound = tol * (1.0 + np.linalg.norm(A))
    if residual > bound:
        raise NotHermitianError(
            "Matrix is not Hermitian within tolerance",
            violations=dict(residual=residual, bound=bound),
        )
    return (A + dagger(A)) / 2.0


def _jacobi_eigh(A):
    """Cyclic complex Jacobi sweeps on a Hermitian matrix."""
    A = np.array(A, dtype=complex)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    threshold = JACOBI_THRESHOLD * max(np.linalg.norm(A), 1e-300)

    for sweep in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(max(np.linalg.norm(A) ** 2 - np.sum(np.abs(np.diag(A)) ** 2), 0.0))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p, q]
                if abs(b) <= threshold / n:
                    continue
                theta = 0.5 * math.atan2(2.0 * abs(b), (A[q, q] - A[p, p]).real)
                c, s = math.cos(theta), math.sin(theta)
                phase = np.exp(-1j * np.angle(b))
                G = np.array([[c, s], [-s * phase, c * phase]], dtype=complex)

                A[:, [p, q]] = A[:, [p, q]] @ G
                A[[p, q], :] = dagger(G) @ A[[p, q], :]
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                V[:, [p, q]] = V[:, [p, q]] @ G
    else:
        LOG.warning(
            "Jacobi eigensolver reached %d sweeps without meeting threshold %.3e",
            JACOBI_MAX_SWEEPS,
            threshold,
        )

    return np.real(np.diag(A)).copy(), V


def _canonicalize(w, V):
    """Ascending order, cluster orthonormalization, fixed eigenvector phase."""
    order = np.argsort(w, kind="stable")
    w = np.asarray(w, dtype=float)[order]
    V = np.array(V[:, order], dtype=complex)

    scale = CLUSTER_TOL * (1.0 + (np.max(np.abs(w)) if w.size else 0.0))
    start = 0
    for stop in range(1, w.size + 1):
        if stop == w.size or w[stop] - w[stop - 1] > scale:
            if stop - start > 1:
                # Gram-Schmidt in index order
                V[:, start:stop] = np.linalg.qr(V[:, start:stop])[0]
            start = stop

    for k in range(V.shape[1]):
        column = V[:, k]
        significant = np.flatnonzero(np.abs(column) > PHASE_TOL)
        if significant.size:
            lead = column[significant[0]]
            V[:, k] = column * (np.conj(lead) / abs(lead))

    return w, V


def herm_eig(A, method="lapack"):
    """Deterministic Hermitian eigendecomposition with ascending eigenvalues.

    ``method`` selects LAPACK (``lapack``) or the cyclic Jacobi solver
    (``jacobi``); both pass through the same canonicalization.
    """
    H = ensure_hermitian(A)
    if method == "jacobi":
        w, V = _jacobi_eigh(H)
    elif method == "lapack":
        w, V = np.linalg.eigh(H)
    else:
        raise QpError("Unknown eigensolver '%s'" % method)
    w, V = _canonicalize(w, V)
    w.setflags(write=False)
    V.setflags(write=False)
    return SpectralDecomposition(w, V)


def func_calc(A, f, method="lapack"):
    """Applies the real function ``f`` to the Hermitian matrix ``A``."""
    spectrum = herm_eig(A, method=method)
    values = np.empty(spectrum.eigenvalues.size)
    with np.errstate(all="raise"):
        for k, lam in enumerate(spectrum.eigenvalues):
            try:
                value = float(f(float(lam)))
            except (ArithmeticError, ValueError, FloatingPointError) as e:
                raise QpError(
                    "Function undefined at eigenvalue %r: %s" % (float(lam), e),
                    violations=dict(eigenvalue=float(lam)),
                )
            if not math.isfinite(value):
                raise QpError(
                    "Function undefined at eigenvalue %r" % float(lam),
                    violations=dict(eigenvalue=float(lam)),
                )
            values[k] = value
    return spectrum.apply(values)


def _check_exponent(z, log_spectrum):
    reach = abs(complex(z).real) * float(np.max(np.abs(log_spectrum)))
    if reach > EXPONENT_GUARD:
        raise QpError(
            "Matrix power exceeds the exponent range",
            violations=dict(exponent=reach, guard=EXPONENT_GUARD),
        )


def positive_spectrum(D, eps=EPS_POS):
    spectrum = herm_eig(D)
    lambda_min = float(spectrum.eigenvalues[0])
    if lambda_min <= eps:
        raise SingularStateError(
            "Matrix is not positive definite",
            violations=dict(lambda_min=lambda_min, eps_pos=eps),
        )
    return spectrum


def spectral_power(spectrum, z):
    """``D^z`` from a positive spectral decomposition."""
    z = complex(z)
    n = spectrum.eigenvalues.size
    if z == 0:
        return np.eye(n, dtype=complex)
    log_w = np.log(spectrum.eigenvalues)
    _check_exponent(z, log_w)
    return spectrum.apply(np.exp(z * log_w))


def mpow(D, z, eps=EPS_POS):
    """Principal complex power of a positive definite matrix."""
    return spectral_power(positive_spectrum(D, eps=eps), z)


def psd_sqrt(A):
    """Square root of the positive part of a Hermitian matrix."""
    spectrum = herm_eig(A)
    return spectrum.apply(np.sqrt(np.clip(spectrum.eigenvalues, 0.0, None)))


def trace(A, trace_mode=TraceMode.UNNORMALIZED):
    A = np.asarray(A)
    value = np.trace(A)
    if trace_mode is TraceMode.NORMALIZED:
        value = value / A.shape[0]
    return complex(value)


def schatten_norm(A, p, trace_mode=TraceMode.UNNORMALIZED):
    """Schatten-p norm; ``p`` is a real in [1, inf) or ``INF``."""
    p = as_exponent(p)
    if p is not INF and p < 1:
        raise QpError("Schatten exponent must be >= 1", violations=dict(p=p))
    sigma = np.linalg.svd(as_matrix(A), compute_uv=False)
    if p is INF:
        return float(sigma[0]) if sigma.size else 0.0
    top = float(sigma[0])
    if top == 0.0:
        return 0.0
    # scaled to keep sigma**p representable
    scaled = (sigma / top) ** p
    total = np.sum(scaled)
    if trace_mode is TraceMode.NORMALIZED:
        total = total / sigma.size
    return float(top * total ** (1.0 / p))


def operator_norm(A):
    return schatten_norm(A, INF)


def vec(x):
    return np.asarray(x, dtype=complex).reshape(-1)


def unvec(v, dim):
    return np.asarray(v).reshape(dim, dim)


def sandwich(A, B):
    """Superoperator of ``x -> A x B``."""
    return np.kron(A, np.transpose(B))


def gram_matrix(dim, form=InnerProductForm.HS, D=None):
    """Gram matrix G with ``<x, y> = vec(x)^H G vec(y)``."""
    if form is InnerProductForm.HS:
        return np.eye(dim * dim, dtype=complex)
    if D is None:
        raise QpError("Weighted inner product needs a density matrix")
    if form is InnerProductForm.GNS:
        return sandwich(np.eye(dim), as_matrix(D))
    root = mpow(D, 0.5)
    return sandwich(root, root)


def inner_product(x, y, form=InnerProductForm.HS, D=None):
    """HS: Tr(x†y); GNS(D): Tr(D x†y); KMS(D): Tr(D^½ x† D^½ y)."""
    x = as_matrix(x)
    y = as_matrix(y)
    if x.shape != y.shape:
        raise QpError(
            "Dimension mismatch", violations=dict(left=x.shape, right=y.shape)
        )
    if form is InnerProductForm.HS:
        return complex(np.vdot(x, y))
    if D is None:
        raise QpError("Weighted inner product needs a density matrix")
    spectrum = positive_spectrum(D)
    if form is InnerProductForm.GNS:
        return complex(np.trace(spectrum.reconstruct() @ dagger(x) @ y))
    root = spectral_power(spectrum, 0.5)
    return complex(np.trace(root @ dagger(x) @ root @ y))


@dataclass(frozen=True)
class Frame:
    """An orthonormal frame ``S = G^½`` of a superoperator inner product."""

    form: InnerProductForm
    forward: np.ndarray
    inverse: np.ndarray

    def to_frame(self, M):
        return self.forward @ M @ self.inverse

    def from_frame(self, M):
        return self.inverse @ M @ self.forward


def orthonormal_frame(dim, form=InnerProductForm.HS, D=None):
    if form is InnerProductForm.HS:
        eye = np.eye(dim * dim, dtype=complex)
        return Frame(form, eye, eye)
    spectrum = positive_spectrum(D)
    if form is InnerProductForm.GNS:
        root = spectral_power(spectrum, 0.5)
        root_inv = spectral_power(spectrum, -0.5)
        eye = np.eye(dim)
        return Frame(form, sandwich(eye, root), sandwich(eye, root_inv))
    quarter = spectral_power(spectrum, 0.25)
    quarter_inv = spectral_power(spectrum, -0.25)
    return Frame(form, sandwich(quarter, quarter), sandwich(quarter_inv, quarter_inv))


@dataclass(frozen=True)
class FrameSpectrum:
    """Spectrum of a superoperator symmetrized in an orthonormal frame."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    asymmetry: float
    frame: Frame

    def element(self, k, dim):
        """The k-th eigen-element mapped back to a d x d matrix."""
        return unvec(self.frame.inverse @ self.eigenvectors[:, k], dim)


def frame_spectrum(M, frame):
    """Eigendecomposition of ``(M~ + M~†)/2`` with ``M~ = S M S^-1``.

    ``asymmetry`` is the largest entry of ``M~ - M~†``; callers decide whether
    it is acceptable.
    """
    T = frame.to_frame(np.asarray(M, dtype=complex))
    asymmetry = float(np.max(np.abs(T - dagger(T)))) if T.size else 0.0
    w, V = np.linalg.eigh((T + dagger(T)) / 2.0)
    w, V = _canonicalize(w, V)
    return FrameSpectrum(w, V, asymmetry, frame)


def kernel_split(eigenvalues, cutoff):
    """Indices of the numerically zero and nonzero eigenvalues."""
    scale = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
    threshold = cutoff * scale
    zero = np.flatnonzero(np.abs(eigenvalues) <= threshold)
    nonzero = np.flatnonzero(np.abs(eigenvalues) > threshold)
    return zero, nonzero


def random_matrix(rng, dim, hermitian=False):
    """Complex Gaussian matrix, Frobenius-normalized."""
    X = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    if hermitian:
        X = (X + dagger(X)) / 2.0
    norm = np.linalg.norm(X)
    return X / norm if norm > 0 else X


def random_unitary(rng, dim):
    Z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))
