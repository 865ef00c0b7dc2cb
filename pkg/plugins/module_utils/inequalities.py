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
Certificates for Poincare, Klein, convex-chain, concentration, diameter,
Talagrand and composite-gap inequalities.

A certificate never raises on failure: it records both sides, the constant,
and the absolute and relative margins.
"""

import enum
import itertools
import logging
import math

from dataclasses import dataclass, field

import numpy as np

from ansible_collections.qpoincare.lab.plugins.module_utils.algebra import (
    as_state,
    fixed_point_projection,
    relative_entropy,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.lpspaces import (
    KosakiIndex,
    gamma_eta_p,
    gamma_p,
    kosaki_embed,
    kosaki_norm,
    lipschitz_seminorm,
    lp_conditional,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import (
    INF,
    TraceMode,
    as_exponent,
    as_matrix,
    dagger,
    ensure_hermitian,
    func_calc,
    herm_eig,
    operator_norm,
    psd_sqrt,
    random_matrix,
    schatten_norm,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.models import birth_death
from ansible_collections.qpoincare.lab.plugins.module_utils.qms import (
    apply_semigroup,
    check_tau_symmetry,
    direct_sum_generator,
    dirichlet_form,
    gradient_form,
    spectral_gap,
    tensor_generator,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import (
    NotDetailedBalancedError,
    QpError,
)


LOG = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
ABSOLUTE_TOL = 1e-12
TAU_SYMMETRY_TOL = 1e-10
GAP_LAW_TOL = 1e-9
WITNESS_TOL = 1e-8
DIAMETER_REGIME = 3.0
CHEBYSHEV_EXPONENTS = (3, 4, 6)


class PiMode(enum.Enum):
    TRACIAL_SA = "tracial_sa"
    TRACIAL_GENERAL = "tracial_general"
    HAAGERUP_SA = "haagerup_sa"
    HAAGERUP_GENERAL = "haagerup_general"
    KOSAKI_SA = "kosaki_sa"
    LIP_INFINITY = "lip_infinity"


SELF_ADJOINT_MODES = (PiMode.TRACIAL_SA, PiMode.HAAGERUP_SA, PiMode.KOSAKI_SA)
TRACIAL_MODES = (PiMode.TRACIAL_SA, PiMode.TRACIAL_GENERAL)


@dataclass(frozen=True)
class InequalityCertificate:
    name: str
    lhs: float
    rhs: float
    constant: float
    ratio: float
    passed: bool
    tol: float
    margin: float
    relative_margin: float
    p: object = None
    q: object = None
    model: str = None
    sample_id: dict = field(default_factory=dict)

    def to_dict(self):
        out = dict(self.sample_id)
        out.update(
            name=self.name,
            model=self.model,
            p=_exponent_value(self.p),
            q=_exponent_value(self.q),
            lhs=self.lhs,
            rhs=self.rhs,
            constant=self.constant,
            ratio=self.ratio,
            margin=self.margin,
            relative_margin=self.relative_margin,
            tol=self.tol,
        )
        out["pass"] = self.passed
        return out


def _exponent_value(p):
    if p is None:
        return None
    if p is INF:
        return "inf"
    return float(p)


def certify(name, lhs, rhs, constant=1.0, tol=DEFAULT_TOL, p=None, q=None, model=None,
            sample_id=None):
    """``lhs <= rhs (1 + tol)`` up to an absolute round-off floor."""
    lhs = float(lhs)
    rhs = float(rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        raise QpError("Certificate sides must be finite", violations=dict(name=name, lhs=lhs, rhs=rhs))
    if rhs > 0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs <= ABSOLUTE_TOL else float(np.finfo(float).max)
    margin = rhs - lhs
    relative = margin / rhs if rhs > 0 else (0.0 if lhs <= ABSOLUTE_TOL else -1.0)
    passed = lhs <= rhs * (1.0 + tol) + ABSOLUTE_TOL
    certificate = InequalityCertificate(
        name, lhs, rhs, float(constant), float(ratio), bool(passed), tol, float(margin),
        float(relative), p, q, model, dict(sample_id or {}),
    )
    if not passed:
        LOG.info("Certificate %s failed: lhs=%.17g rhs=%.17g", name, lhs, rhs)
    return certificate


def pi_constant(p, alpha, allow_intermediate=False):
    """``p / sqrt(2 alpha)``, times sqrt(2) for p in (2, 3) when allowed."""
    p = as_exponent(p)
    if p is INF or p < 2 or (2 < p < 3 and not allow_intermediate):
        raise QpError(
            "Poincare constant needs p = 2 or p >= 3 (p in (2, 3) only with allow_intermediate)",
            violations=dict(p=str(p)),
        )
    if not alpha > 0:
        raise QpError("Generator has no spectral gap", violations=dict(alpha=alpha))
    constant = p / math.sqrt(2.0 * alpha)
    if 2 < p < 3:
        constant *= math.sqrt(2.0)
    return constant


def pi_reference(L, D=None, expectation=None, gap=None, tracial=False):
    """Reference state, gap and conditional expectation for a certificate."""
    state = as_state(None if tracial else D if D is not None else L.state, L.dim)
    if gap is None:
        gap = spectral_gap(L, state).alpha
    if expectation is None:
        expectation = fixed_point_projection(L, state)
    return state, float(gap), expectation


def _sa(x):
    x = as_matrix(x)
    residual = float(np.linalg.norm(x - dagger(x)))
    if residual > 1e-12 * (1.0 + np.linalg.norm(x)):
        raise QpError(
            "Element must be self-adjoint in this mode", violations=dict(residual=residual)
        )
    return (x + dagger(x)) / 2.0


def _half_norm(G, p, trace_mode=TraceMode.UNNORMALIZED):
    """``||G^{1/2}||_p`` for a (numerically) positive G."""
    return schatten_norm(psd_sqrt((G + dagger(G)) / 2.0), p, trace_mode)


def verify_pi(L, D, x, p, q=None, mode=PiMode.TRACIAL_SA, eta=0.5, allow_intermediate=False,
              expectation=None, gap=None, tol=DEFAULT_TOL, model=None, sample_id=None):
    """Certificate for a Poincare inequality PI(p, q) in one of ``PiMode``.

    Tracial modes use the normalized trace and accept ``q >= p``; weighted
    modes fix ``q = p`` and the Lipschitz mode ``q = inf``.
    """
    mode = PiMode(mode)
    p = as_exponent(p)
    tracial = mode in TRACIAL_MODES
    state, alpha, E = pi_reference(L, D, expectation, gap, tracial)
    constant = pi_constant(p, alpha, allow_intermediate)

    if mode is PiMode.LIP_INFINITY:
        q = INF
    elif q is None:
        q = p
    else:
        q = as_exponent(q)
        if not tracial and q != p:
            raise QpError("Weighted modes certify PI(p, p) only", violations=dict(p=p, q=str(q)))
        if tracial and q is not INF and q < p:
            raise QpError("PI(p, q) needs q >= p", violations=dict(p=p, q=q))

    x = _sa(x) if mode in SELF_ADJOINT_MODES else as_matrix(x)
    centered = x - E(x)
    # self-adjoint elements of L^p come from the symmetric embedding
    idx = KosakiIndex(p, 0.5 if mode is PiMode.HAAGERUP_SA else eta, state)

    if mode is PiMode.TRACIAL_SA or mode is PiMode.TRACIAL_GENERAL:
        lhs = schatten_norm(centered, p, TraceMode.NORMALIZED)
        budget = _half_norm(gradient_form(L, x, x), q, TraceMode.NORMALIZED)
        if mode is PiMode.TRACIAL_GENERAL:
            budget += _half_norm(gradient_form(L, dagger(x), dagger(x)), q, TraceMode.NORMALIZED)

    elif mode is PiMode.HAAGERUP_SA or mode is PiMode.HAAGERUP_GENERAL:
        a = kosaki_embed(x, idx)
        lhs = schatten_norm(a - lp_conditional(a, idx, E), p)
        budget = _half_norm(gamma_p(L, a, a, idx), p)
        if mode is PiMode.HAAGERUP_GENERAL:
            a_star = dagger(a)
            budget += _half_norm(gamma_p(L, a_star, a_star, idx.at(eta=1.0 - idx.eta)), p)

    elif mode is PiMode.KOSAKI_SA:
        lhs = kosaki_norm(centered, idx)
        G = gamma_eta_p(L, x, x, idx)
        budget = math.sqrt(max(kosaki_norm((G + dagger(G)) / 2.0, KosakiIndex(p / 2.0, 0.5, state)), 0.0))

    else:
        lhs = kosaki_norm(centered, idx)
        budget = lipschitz_seminorm(L, x)

    return certify("pi_%s" % mode.value, lhs, constant * budget, constant, tol, p, q, model,
                   sample_id)


def klein_check(x, y, p, tol=DEFAULT_TOL, sample_id=None):
    """``tau[(phi(x) - phi(y))^2] <= tau[(x - y)^2 (psi(x) + psi(y))] / 2``.

    ``phi(s) = sgn(s)|s|^{p/2}`` and ``psi = (phi')^2``.
    """
    p = float(p)
    if not (p == 2 or p >= 3):
        raise QpError("Klein inequality needs p = 2 or p >= 3", violations=dict(p=p))
    x = ensure_hermitian(x)
    y = ensure_hermitian(y)

    def phi(s):
        return math.copysign(abs(s) ** (p / 2.0), s)

    def psi(s):
        return (p / 2.0) ** 2 * abs(s) ** (p - 2.0)

    diff = func_calc(x, phi) - func_calc(y, phi)
    lhs = np.trace(diff @ diff).real / x.shape[0]
    gap = x - y
    rhs = 0.5 * np.trace(gap @ gap @ (func_calc(x, psi) + func_calc(y, psi))).real / x.shape[0]
    return certify("klein", lhs, rhs, 1.0, tol, p, sample_id=sample_id)


def convex_chain_check(L, x, p, tol=DEFAULT_TOL, model=None, sample_id=None):
    """``E(phi(x)) <= tau(Gamma(x, x) psi(x))`` for a trace-symmetric L."""
    p = float(p)
    if not (p == 2 or p >= 3):
        raise QpError("Convex-chain estimate needs p = 2 or p >= 3", violations=dict(p=p))
    residual = check_tau_symmetry(L)
    if residual > TAU_SYMMETRY_TOL * (1.0 + float(np.max(np.abs(L.superop)))):
        raise NotDetailedBalancedError(
            "Convex-chain estimate needs a trace-symmetric generator",
            violations=dict(residual=residual),
        )
    x = ensure_hermitian(x)
    phi_x = func_calc(x, lambda s: math.copysign(abs(s) ** (p / 2.0), s))
    psi_x = func_calc(x, lambda s: (p / 2.0) ** 2 * abs(s) ** (p - 2.0))
    lhs = dirichlet_form(L, phi_x)
    rhs = np.trace(gradient_form(L, x, x) @ psi_x).real / L.dim
    return certify("convex_chain", lhs, rhs, 1.0, tol, p, model=model, sample_id=sample_id)


def concentration_bound(alpha, lip, t):
    """``2 exp(-sqrt(alpha) t / (2 sqrt(2) e Lip))``."""
    return 2.0 * math.exp(-math.sqrt(alpha) * t / (2.0 * math.sqrt(2.0) * math.e * lip))


def optimal_exponent(alpha, lip, t):
    return math.sqrt(2.0 * alpha) * t / (4.0 * math.e * lip)


@dataclass(frozen=True)
class ConcentrationReport:
    t: float
    tail_mass: float
    compression_norm: float
    lip: float
    p_star: float
    bound: float
    chebyshev_bound: float
    chebyshev_tails: dict
    applicable: bool
    passed: bool
    certificate: InequalityCertificate

    def to_dict(self):
        return dict(
            t=self.t, tail_mass=self.tail_mass, compression_norm=self.compression_norm,
            lip=self.lip, p_star=self.p_star, bound=self.bound,
            chebyshev_bound=self.chebyshev_bound,
            chebyshev_tails={str(k): v for k, v in self.chebyshev_tails.items()},
            applicable=self.applicable, passed=self.passed,
        )


def concentration_certificate(L, D, x, t, expectation=None, gap=None, tol=DEFAULT_TOL,
                              model=None, sample_id=None):
    """Spectral-projection witness for sub-exponential concentration at level t."""
    if not t > 0:
        raise QpError("Concentration level must be positive", violations=dict(t=t))
    state, alpha, E = pi_reference(L, D, expectation, gap, False)
    x = ensure_hermitian(x)
    y = ensure_hermitian(x - E(x))

    spectrum = herm_eig(y)
    inside = np.abs(spectrum.eigenvalues) <= t
    e = spectrum.apply(inside.astype(float))
    compression = operator_norm(e @ y @ e)
    tail = float(max(0.0, 1.0 - state.expectation(e).real))

    chebyshev_tails = {}
    for p in CHEBYSHEV_EXPONENTS:
        norm = kosaki_norm(y, KosakiIndex(p, 0.5, state))
        chebyshev_tails[p] = 2.0 * (t / 4.0) ** (-p) * norm ** p

    lip = lipschitz_seminorm(L, x)
    if lip <= ABSOLUTE_TOL:
        certificate = certify("concentration", tail, 0.0, 1.0, tol, model=model,
                              sample_id=dict(sample_id or {}, t=t))
        return ConcentrationReport(float(t), tail, compression, lip, float("inf"), 0.0, 0.0,
                                   chebyshev_tails, True, certificate.passed, certificate)

    p_star = optimal_exponent(alpha, lip, t)
    bound = concentration_bound(alpha, lip, t)
    chebyshev = 2.0 * (4.0 * p_star * lip / (math.sqrt(2.0 * alpha) * t)) ** p_star
    applicable = p_star >= 3
    certificate = certify("concentration", tail, bound, 1.0, tol, p_star, model=model,
                          sample_id=dict(sample_id or {}, t=t))
    cheb_ok = all(tail <= v * (1.0 + tol) + ABSOLUTE_TOL for v in chebyshev_tails.values())
    passed = (certificate.passed or not applicable) and cheb_ok and compression <= t * (1 + tol)
    return ConcentrationReport(float(t), tail, compression, lip, p_star, bound, chebyshev,
                               chebyshev_tails, applicable, passed, certificate)


@dataclass(frozen=True)
class DiameterReport:
    diameter: float
    log_inverse_lambda_min: float
    advisory: bool
    max_ratio: float
    certificates: tuple
    passed: bool

    def to_dict(self):
        return dict(diameter=self.diameter, log_inverse_lambda_min=self.log_inverse_lambda_min,
                    advisory=self.advisory, max_ratio=self.max_ratio, passed=self.passed,
                    samples=len(self.certificates))


def diameter(alpha, lambda_min):
    return math.e * math.log(1.0 / lambda_min) / math.sqrt(2.0 * alpha)


def diameter_check(L, D, sample_count, seed=0, expectation=None, gap=None, tol=DEFAULT_TOL,
                   model=None, restrict=None):
    """``||x - E(x)||_inf <= e log(1/lambda_min) / sqrt(2 alpha) ||x||_Lip`` on samples."""
    state, alpha, E = pi_reference(L, D, expectation, gap, False)
    log_inv = math.log(1.0 / state.lambda_min)
    diam = diameter(alpha, state.lambda_min)
    advisory = log_inv <= DIAMETER_REGIME
    if advisory:
        LOG.warning(
            "Diameter bound outside its proven regime: log(1/lambda_min) = %.4f <= %.1f",
            log_inv, DIAMETER_REGIME,
        )
    rng = np.random.default_rng(seed)
    certificates = []
    for k in range(sample_count):
        x = random_matrix(rng, L.dim, hermitian=True)
        if restrict is not None:
            x = restrict(x)
        lhs = operator_norm(x - E(x))
        rhs = diam * lipschitz_seminorm(L, x)
        certificates.append(
            certify("diameter_advisory" if advisory else "diameter", lhs, rhs, diam, tol,
                    model=model, sample_id=dict(seed=seed, sample=k))
        )
    max_ratio = max((c.ratio for c in certificates), default=0.0)
    passed = advisory or all(c.passed for c in certificates)
    return DiameterReport(diam, log_inv, advisory, max_ratio, tuple(certificates), passed)


@dataclass(frozen=True)
class TalagrandReport:
    n: int
    beta: float
    lower_bound: float
    entropy_budget: float
    c_min: float
    lip: float
    relative_entropy: tuple
    certificates: tuple

    def to_dict(self):
        return dict(n=self.n, beta=self.beta, lower_bound=self.lower_bound,
                    entropy_budget=self.entropy_budget, c_min=self.c_min, lip=self.lip,
                    relative_entropy=list(self.relative_entropy))


def talagrand_densities(model):
    """Conditioned states on the first and last site of a birth-death chain."""
    D = model.state.matrix
    n = model.dim
    out = []
    for site in (0, n - 1):
        e = np.zeros((n, n), dtype=complex)
        e[site, site] = 1.0
        weight = float(np.real(np.trace(D @ e)))
        out.append((D @ e / weight, weight))
    return out


def talagrand_functional(model, x):
    """``|mu_A(x) - mu_B(x)|`` for the end-site densities."""
    (rho_a, _), (rho_b, _) = talagrand_densities(model)
    return abs(float(np.trace((rho_a - rho_b) @ x).real))


def talagrand_c_min_record(name, lower, budget, model, sample_id):
    # a measurement: the record carries c_min and never gates
    c_min = lower / budget
    return certify(name, lower, c_min * budget, c_min, model=model,
                   sample_id=dict(sample_id, c_min=c_min, entropy_budget=budget))


def talagrand_probe(n, beta, model=None):
    """Lower bound on the smallest Talagrand constant of the birth-death chain."""
    if n < 2 or not beta > 0:
        raise QpError("Talagrand bound needs n >= 2 and beta > 0", violations=dict(n=n, beta=beta))
    model = model or birth_death(n, beta)
    f = model.observables["f"]
    lower = talagrand_functional(model, f)
    (rho_a, mu_a), (rho_b, mu_b) = talagrand_densities(model)
    budget = math.sqrt(-math.log(mu_a)) + math.sqrt(-math.log(mu_b))
    # the chain is primitive, so the invariant state is the only target
    entropies = [relative_entropy(rho, model.state) for rho in (rho_a, rho_b)]
    lip = lipschitz_seminorm(model.generator, f)
    label = model.label
    certificates = (
        talagrand_c_min_record("talagrand_c_min", lower, budget, label, dict(n=n, beta=beta)),
        certify("talagrand_lip", lip, 1.0, 1.0, model=label, sample_id=dict(n=n, beta=beta)),
        certify("talagrand_entropy", entropies[0], -math.log(mu_a), 1.0, model=label,
                sample_id=dict(n=n, beta=beta, site="A")),
        certify("talagrand_entropy", entropies[1], -math.log(mu_b), 1.0, model=label,
                sample_id=dict(n=n, beta=beta, site="B")),
    )
    return TalagrandReport(n, float(beta), lower, budget, lower / budget, lip, tuple(entropies),
                           certificates)


@dataclass(frozen=True)
class TalagrandSweep:
    beta: float
    ns: tuple
    c_min: tuple
    reports: tuple
    certificates: tuple

    @property
    def strictly_increasing(self):
        return all(b > a for a, b in zip(self.c_min, self.c_min[1:]))

    def to_dict(self):
        return dict(beta=self.beta, n=list(self.ns), c_min=list(self.c_min),
                    strictly_increasing=self.strictly_increasing)


def talagrand_sweep(ns, beta, model=None):
    """``c_min(n)`` of the birth-death chain across chain lengths.

    Growth between consecutive lengths is streamed as ``talagrand_growth_advisory``
    records; no bounded sequence of constants is asserted.
    """
    ns = sorted({int(n) for n in ns})
    if not ns:
        raise QpError("Talagrand sweep needs at least one chain length")
    reports = tuple(talagrand_probe(n, beta) for n in ns)
    c_min = tuple(r.c_min for r in reports)
    certificates = [c for r in reports for c in r.certificates]
    for (n0, c0), (n1, c1) in zip(zip(ns, c_min), zip(ns[1:], c_min[1:])):
        certificates.append(
            certify("talagrand_growth_advisory", c0, c1, 1.0, model=model,
                    sample_id=dict(beta=beta, n=n1, previous_n=n0, c_min=c1,
                                   previous_c_min=c0))
        )
    LOG.debug("Talagrand sweep at beta=%s: %s", beta, ", ".join("%.6g" % c for c in c_min))
    return TalagrandSweep(float(beta), tuple(ns), c_min, reports, tuple(certificates))


@dataclass(frozen=True)
class CompositeGapReport:
    alpha1: float
    alpha2: float
    tensor_alpha: float
    direct_sum_alpha: float
    witness_rate: float
    certificates: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.certificates)

    def to_dict(self):
        return dict(alpha1=self.alpha1, alpha2=self.alpha2, tensor_alpha=self.tensor_alpha,
                    direct_sum_alpha=self.direct_sum_alpha, witness_rate=self.witness_rate,
                    passed=self.passed)


def composite_gap_check(L1, D1, L2, D2, model=None, witness_time=1.0):
    """Tensor and direct-sum gaps against ``min(alpha1, alpha2)``, with the product witness."""
    s1 = as_state(D1 if D1 is not None else L1.state, L1.dim)
    s2 = as_state(D2 if D2 is not None else L2.state, L2.dim)
    g1 = spectral_gap(L1, s1)
    g2 = spectral_gap(L2, s2)
    a1 = g1.alpha
    a2 = g2.alpha
    target = min(a1, a2)

    L1 = L1 if L1.state is not None else L1.with_tags(L1.tags, s1)
    L2 = L2 if L2.state is not None else L2.with_tags(L2.tags, s2)
    tensor = tensor_generator(L1, L2)
    tensor_alpha = spectral_gap(tensor, tensor.state).alpha
    direct = direct_sum_generator(L1, L2)
    direct_alpha = spectral_gap(direct, direct.state).alpha

    if a1 <= a2:
        witness = np.kron(g1.gap_element, np.eye(L2.dim))
    else:
        witness = np.kron(np.eye(L1.dim), g2.gap_element)
    evolved = apply_semigroup(tensor, witness, witness_time)
    rate = -math.log(np.linalg.norm(evolved) / np.linalg.norm(witness)) / witness_time

    certificates = (
        certify("composite_gap_tensor", abs(tensor_alpha - target), GAP_LAW_TOL, 1.0, 0.0,
                model=model, sample_id=dict(alpha=tensor_alpha, target=target)),
        certify("composite_gap_sum", abs(direct_alpha - target), GAP_LAW_TOL, 1.0, 0.0,
                model=model, sample_id=dict(alpha=direct_alpha, target=target)),
        certify("composite_gap_witness", abs(rate - target), WITNESS_TOL, 1.0, 0.0,
                model=model, sample_id=dict(rate=rate, target=target)),
    )
    return CompositeGapReport(a1, a2, tensor_alpha, direct_alpha, rate, certificates)


def khintchine_check(coefficients, p, allow_intermediate=False, tol=DEFAULT_TOL,
                     sample_id=None, model=None):
    """``||sum eps_i a_i||_p <= (p/sqrt 2)(||(sum a_i† a_i)^½||_p + ||(sum a_i a_i†)^½||_p)``.

    The left side averages over all sign patterns; traces are unnormalized.
    """
    coefficients = [as_matrix(a) for a in coefficients]
    p = as_exponent(p)
    constant = pi_constant(p, 1.0, allow_intermediate)
    patterns = list(itertools.product((1.0, -1.0), repeat=len(coefficients)))
    total = 0.0
    for signs in patterns:
        s = sum(e * a for e, a in zip(signs, coefficients))
        total += schatten_norm(s, p) ** p
    lhs = (total / len(patterns)) ** (1.0 / p)
    column = sum(dagger(a) @ a for a in coefficients)
    row = sum(a @ dagger(a) for a in coefficients)
    rhs = constant * (_half_norm(column, p) + _half_norm(row, p))
    return certify("khintchine", lhs, rhs, constant, tol, p, p, model, sample_id)
