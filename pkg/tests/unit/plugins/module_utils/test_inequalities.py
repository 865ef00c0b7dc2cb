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

from ansible_collections.qpoincare.lab.plugins.module_utils.inequalities import (
    ABSOLUTE_TOL,
    PiMode,
    certify,
    composite_gap_check,
    concentration_bound,
    concentration_certificate,
    convex_chain_check,
    diameter,
    diameter_check,
    khintchine_check,
    klein_check,
    optimal_exponent,
    pi_constant,
    talagrand_c_min_record,
    talagrand_probe,
    talagrand_sweep,
    verify_pi,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import INF, random_matrix
from ansible_collections.qpoincare.lab.plugins.module_utils.models import (
    birth_death,
    depolarizing,
    kms_only,
    rademacher,
    random_gns_db,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import (
    NotDetailedBalancedError,
    QpError,
)


SIGMA_Z = np.diag([1.0, -1.0])
LADDER = np.diag([1.0, 0.0, -1.0])


class TestCertify:
    def test_pass_and_margins(self):
        cert = certify("demo", 1.0, 4.0, constant=2.0, p=3, model="m")
        assert cert.passed
        assert cert.ratio == pytest.approx(0.25)
        assert cert.margin == pytest.approx(3.0)
        assert cert.relative_margin == pytest.approx(0.75)

    def test_fail_above_tolerance(self):
        assert not certify("demo", 1.0 + 1e-6, 1.0).passed
        assert certify("demo", 1.0 + 1e-10, 1.0).passed

    def test_zero_right_side(self):
        assert certify("demo", 0.0, 0.0).ratio == 0.0
        cert = certify("demo", 1.0, 0.0)
        assert not cert.passed
        assert cert.ratio == np.finfo(float).max
        assert certify("demo", ABSOLUTE_TOL / 2, 0.0).passed

    def test_non_finite(self):
        with pytest.raises(QpError, match="finite"):
            certify("demo", float("nan"), 1.0)

    def test_to_dict(self):
        out = certify("demo", 1.0, 2.0, p=INF, q=2, sample_id=dict(seed=3, sample=1)).to_dict()
        assert out["p"] == "inf"
        assert out["q"] == 2.0
        assert out["pass"] is True
        assert out["seed"] == 3
        assert out["name"] == "demo"


class TestPiConstant:
    def test_values(self):
        assert pi_constant(2, 1.0) == pytest.approx(math.sqrt(2.0))
        assert pi_constant(4, 2.0) == pytest.approx(2.0)
        assert pi_constant(2.5, 1.0, allow_intermediate=True) == pytest.approx(2.5)

    @pytest.mark.parametrize("p", [1, 2.5, "inf"])
    def test_rejected_exponents(self, p):
        with pytest.raises(QpError):
            pi_constant(p, 1.0)

    def test_no_gap(self):
        with pytest.raises(QpError, match="spectral gap"):
            pi_constant(2, 0.0)


class TestVerifyPi:
    @pytest.mark.parametrize("p", [2, 3, 4])
    def test_tracial_depolarizing(self, p, rng):
        L = depolarizing(3).generator
        for _ in range(3):
            x = random_matrix(rng, 3, hermitian=True)
            assert verify_pi(L, None, x, p).passed

    def test_tracial_general(self, rng):
        L = depolarizing(3).generator
        cert = verify_pi(L, None, random_matrix(rng, 3), 4, q=6, mode=PiMode.TRACIAL_GENERAL)
        assert cert.passed
        assert cert.name == "pi_tracial_general"
        assert cert.q == 6.0

    @pytest.mark.parametrize(
        "mode",
        [PiMode.HAAGERUP_SA, PiMode.HAAGERUP_GENERAL, PiMode.KOSAKI_SA, PiMode.LIP_INFINITY],
    )
    def test_weighted_birth_death(self, mode, rng):
        model = birth_death(3, 1.0)
        hermitian = mode is not PiMode.HAAGERUP_GENERAL
        for p in (2, 4):
            x = random_matrix(rng, 3, hermitian=hermitian)
            cert = verify_pi(model.generator, model.state, x, p, mode=mode)
            assert cert.passed, cert
        assert verify_pi(model.generator, model.state, LADDER, 2, mode=mode).lhs > 0

    @pytest.mark.parametrize("p", [2, 3, 4, 6, 8])
    @pytest.mark.parametrize(
        "model",
        [
            depolarizing(2),
            depolarizing(4),
            birth_death(2, 0.0),
            birth_death(4, 0.0),
            birth_death(8, 0.0),
            rademacher(3, 2, seed=0),
        ],
        ids=lambda m: m.label,
    )
    def test_tracial_grid(self, model, p, rng):
        E, alpha = model.expectation, model.gap.alpha
        for _ in range(25):
            x = model.random_element(rng, hermitian=True)
            cert = verify_pi(model.generator, None, x, p, expectation=E, gap=alpha)
            assert cert.passed, cert

    @pytest.mark.parametrize("p", [2, 3, 4, 6, 8])
    @pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
    def test_haagerup_random_gns_db(self, seed, p, rng):
        model = random_gns_db([0.4, 0.3, 0.2, 0.1], k=3, seed=seed)
        E, alpha = model.expectation, model.gap.alpha
        for _ in range(10):
            x = model.random_element(rng, hermitian=True)
            cert = verify_pi(model.generator, model.state, x, p, mode=PiMode.HAAGERUP_SA,
                             expectation=E, gap=alpha)
            assert cert.passed, cert

    @pytest.mark.parametrize("p", [2, 4, 8])
    @pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
    def test_haagerup_birth_death(self, beta, p, rng):
        model = birth_death(4, beta)
        E, alpha = model.expectation, model.gap.alpha
        for _ in range(10):
            x = model.random_element(rng, hermitian=True)
            cert = verify_pi(model.generator, model.state, x, p, mode=PiMode.HAAGERUP_SA,
                             expectation=E, gap=alpha)
            assert cert.passed, cert

    def test_lip_mode_exponent(self, rng):
        model = birth_death(3, 1.0)
        cert = verify_pi(model.generator, model.state, random_matrix(rng, 3, True), 3,
                         mode=PiMode.LIP_INFINITY)
        assert cert.q is INF
        assert cert.to_dict()["q"] == "inf"

    def test_self_adjoint_modes_reject(self):
        L = depolarizing(2).generator
        with pytest.raises(QpError, match="self-adjoint"):
            verify_pi(L, None, np.array([[0.0, 1.0], [0.0, 0.0]]), 2)

    def test_exponent_rules(self):
        model = birth_death(3, 1.0)
        with pytest.raises(QpError, match="q >= p"):
            verify_pi(depolarizing(3).generator, None, np.eye(3), 4, q=2)
        with pytest.raises(QpError, match="PI\\(p, p\\)"):
            verify_pi(model.generator, model.state, np.eye(3), 4, q=6, mode=PiMode.HAAGERUP_SA)

    def test_weighted_needs_gns(self):
        model = kms_only([0.6, 0.3, 0.1], seed=1)
        with pytest.raises(NotDetailedBalancedError):
            verify_pi(model.generator, model.state, np.diag([1.0, 0.0, -1.0]), 2,
                      mode=PiMode.HAAGERUP_SA)

def test_klein_scalar():
    cert = klein_check(np.array([[2.0]]), np.array([[0.0]]), 6)
    assert cert.lhs == pytest.approx(64.0)
    assert cert.rhs == pytest.approx(288.0)
    assert cert.passed


def test_klein_matrices(rng):
    for p in (2, 3, 4, 6):
        x, y = (random_matrix(rng, 3, hermitian=True) for _ in range(2))
        assert klein_check(x, y, p).passed


def test_klein_exponent():
    with pytest.raises(QpError):
        klein_check(np.eye(2), np.eye(2), 2.5)


def test_convex_chain_depolarizing():
    cert = convex_chain_check(depolarizing(2).generator, SIGMA_Z, 4)
    assert cert.lhs == pytest.approx(1.0)
    assert cert.rhs == pytest.approx(4.0)
    assert cert.passed


def test_convex_chain_needs_trace_symmetry():
    with pytest.raises(NotDetailedBalancedError):
        convex_chain_check(birth_death(3, 1.0).generator, LADDER, 4)


def test_concentration_formulas():
    alpha, lip = 0.5, 2.0
    t = 3.0 * 4.0 * math.e * lip / math.sqrt(2.0 * alpha)
    assert optimal_exponent(alpha, lip, t) == pytest.approx(3.0)
    assert concentration_bound(alpha, lip, t) == pytest.approx(2.0 * math.exp(-3.0))


def test_concentration_certificate():
    model = birth_death(4, 1.0)
    f = model.observables["f"]
    alpha = model.gap.alpha
    report = concentration_certificate(model.generator, model.state, f, 1.0)
    lip = report.lip
    t = 3.0 * 4.0 * math.e * lip / math.sqrt(2.0 * alpha)
    report = concentration_certificate(model.generator, model.state, f, t)
    assert report.applicable
    assert report.p_star == pytest.approx(3.0)
    assert report.chebyshev_bound == pytest.approx(report.bound)
    assert report.passed
    assert report.certificate.sample_id["t"] == t
    assert sorted(report.to_dict()["chebyshev_tails"]) == ["3", "4", "6"]


def test_concentration_not_applicable():
    model = birth_death(4, 1.0)
    report = concentration_certificate(model.generator, model.state, model.observables["f"], 0.01)
    assert not report.applicable
    assert report.p_star < 3


def test_concentration_level_positive():
    model = depolarizing(2)
    with pytest.raises(QpError):
        concentration_certificate(model.generator, model.state, SIGMA_Z, 0.0)


def test_diameter_formula():
    assert diameter(0.5, math.exp(-2.0)) == pytest.approx(2.0 * math.e)


def test_diameter_regime():
    model = birth_death(6, 1.0)
    report = diameter_check(model.generator, model.state, 5, seed=1)
    assert not report.advisory
    assert report.log_inverse_lambda_min > 3.0
    assert report.passed
    assert {c.name for c in report.certificates} == {"diameter"}


def test_diameter_advisory():
    model = depolarizing(4)
    report = diameter_check(model.generator, model.state, 3)
    assert report.advisory
    assert report.passed
    assert {c.name for c in report.certificates} == {"diameter_advisory"}


def test_talagrand_lower_bound():
    small = talagrand_probe(4, 1.0)
    assert small.c_min == pytest.approx(0.397, abs=5e-3)
    assert all(c.passed for c in small.certificates)
    assert small.lip == pytest.approx(0.5)
    assert talagrand_probe(8, 1.0).c_min > small.c_min

    measured = small.certificates[0]
    assert measured.name == "talagrand_c_min"
    assert measured.constant == pytest.approx(small.c_min)
    assert measured.sample_id["entropy_budget"] == pytest.approx(small.entropy_budget)


def test_talagrand_c_min_above_one_is_measured_not_failed():
    record = talagrand_c_min_record("talagrand_c_min", 3.0, 2.0, "bd", dict(n=64))
    assert record.passed
    assert record.constant == pytest.approx(1.5)
    assert record.sample_id == dict(n=64, c_min=1.5, entropy_budget=2.0)


@pytest.mark.parametrize("beta", [0.5, 1.0])
def test_talagrand_sweep_grows_strictly(beta):
    sweep = talagrand_sweep([20, 4, 12, 8, 16], beta)
    assert sweep.ns == (4, 8, 12, 16, 20)
    assert sweep.strictly_increasing
    assert all(b > a for a, b in zip(sweep.c_min, sweep.c_min[1:]))
    assert all(r.lip <= 1.0 + 1e-12 for r in sweep.reports)

    growth = [c for c in sweep.certificates if c.name == "talagrand_growth_advisory"]
    assert len(growth) == 4
    assert all(c.lhs < c.rhs for c in growth)
    assert sweep.to_dict()["c_min"] == list(sweep.c_min)


def test_talagrand_sweep_needs_lengths():
    with pytest.raises(QpError):
        talagrand_sweep([], 1.0)


def test_talagrand_rejects_bad_chain():
    with pytest.raises(QpError):
        talagrand_probe(4, 0.0)


def test_composite_gap_laws():
    first = depolarizing(2)
    second = birth_death(2, 2.0)
    report = composite_gap_check(first.generator, first.state, second.generator, second.state)
    assert report.alpha2 == pytest.approx(2.0 * math.cosh(1.0))
    assert report.tensor_alpha == pytest.approx(1.0)
    assert report.direct_sum_alpha == pytest.approx(1.0)
    assert report.witness_rate == pytest.approx(1.0, abs=1e-8)
    assert report.passed


def test_khintchine(rng):
    coefficients = [random_matrix(rng, 2) for _ in range(3)]
    for p in (2, 4, 6):
        assert khintchine_check(coefficients, p).passed
    with pytest.raises(QpError):
        khintchine_check(coefficients, 2.5)
    assert khintchine_check(coefficients, 2.5, allow_intermediate=True).passed


@pytest.mark.parametrize("p", [2, 4, 6])
def test_khintchine_random_tuples(p, rng):
    for _ in range(100):
        size = int(rng.integers(1, 5))
        dim = int(rng.integers(1, 4))
        coefficients = [random_matrix(rng, dim) for _ in range(size)]
        cert = khintchine_check(coefficients, p)
        assert cert.passed, cert
