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
Experiment orchestration: configuration parsing, check execution, certificate
streams (JSON lines) and aggregated CSV reports.
"""

import csv
import json
import logging
import math
import sys

from dataclasses import dataclass, field

import numpy as np
import yaml

from ansible.module_utils.common.arg_spec import ArgumentSpecValidator

from ansible_collections.qpoincare.lab.plugins.module_utils.extremize import (
    improve_talagrand_lower_bound,
    maximize_pi_ratio,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.inequalities import (
    SELF_ADJOINT_MODES,
    TRACIAL_MODES,
    PiMode,
    certify,
    composite_gap_check,
    concentration_certificate,
    convex_chain_check,
    diameter_check,
    khintchine_check,
    klein_check,
    talagrand_probe,
    talagrand_sweep,
    verify_pi,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.lpspaces import (
    KosakiIndex,
    check_gf_identification as gf_identification_residual,
    eta_dependence_residual,
    lipschitz_seminorm,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import (
    InnerProductForm,
    as_exponent,
    dagger,
    inner_product,
    random_matrix,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.models import (
    MODEL_KINDS,
    build_model,
    diagonal_gap,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qms import (
    SymmetryTag,
    check_generator,
    check_gns_db,
    check_kms_db,
    check_tau_symmetry,
    regularize,
    regularized_mixture,
    spectral_gap,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import (
    ConfigError,
    NotDetailedBalancedError,
    QpError,
)


LOG = logging.getLogger(__name__)

SCHEMA_VERSION = 1
EXACT_GAP_TOL = 1e-9
RESIDUAL_TOL = 1e-9
DEPENDENCE_FLOOR = 1e-4
EXTREMIZER_TOL = 1e-6
ADVISORY_SUFFIX = "_advisory"

RC_OK = 0
RC_ERROR = 1
RC_FAILED = 2

CHECK_NAMES = (
    "gap",
    "detailed_balance",
    "pi",
    "klein",
    "convex_chain",
    "concentration",
    "diameter",
    "talagrand",
    "composite_gap",
    "regularize",
    "khintchine",
    "eta_independence",
    "gf_identification",
    "extremize",
)

REPORT_COLUMNS = ("model", "check", "p", "q", "samples", "max_ratio", "min_margin", "pass")

MODEL_SPEC = dict(
    kind=dict(required=True, type="str", choices=list(MODEL_KINDS)),
    label=dict(required=False, type="str"),
    params=dict(required=False, type="dict", default=dict()),
)

CHECK_SPEC = dict(
    name=dict(required=True, type="str", choices=list(CHECK_NAMES)),
    params=dict(required=False, type="dict", default=dict()),
)

OUTPUT_SPEC = dict(
    path=dict(required=False, type="path"),
    format=dict(required=False, type="str", choices=["json", "csv"], default="json"),
)

CONFIG_SPEC = dict(
    schema=dict(required=True, type="int", choices=[SCHEMA_VERSION]),
    seed=dict(required=True, type="int"),
    models=dict(required=False, type="list", elements="dict", options=MODEL_SPEC, default=[]),
    checks=dict(required=False, type="list", elements="dict", options=CHECK_SPEC, default=[]),
    output=dict(required=False, type="dict", options=OUTPUT_SPEC),
)


class SkipCheck(Exception):
    """The check does not apply to the model."""


@dataclass
class ExperimentResult:
    records: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def failed(self):
        return [r for r in self.records if not r["pass"] and not r["name"].endswith(ADVISORY_SUFFIX)]

    @property
    def rc(self):
        return RC_FAILED if self.failed else RC_OK

    def summary(self):
        return dict(
            total=len(self.records),
            passed=sum(1 for r in self.records if r["pass"]),
            failed=sorted({"%s/%s" % (r["model"], r["name"]) for r in self.failed}),
            skipped=list(self.skipped),
        )


def load_config(source):
    """Parses and validates a configuration (path, YAML/JSON text or dict)."""
    if isinstance(source, dict):
        raw = source
    else:
        try:
            if "\n" in source or source.lstrip().startswith("{"):
                raw = yaml.safe_load(source)
            else:
                with open(source, "r") as f:
                    raw = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError("Unable to parse experiment configuration: %s" % e)
        except OSError as e:
            raise ConfigError("Unable to read experiment configuration: %s" % e)
    if not isinstance(raw, dict):
        raise ConfigError("Experiment configuration must be a mapping")
    return validate_config(raw)


def validate_config(raw):
    result = ArgumentSpecValidator(CONFIG_SPEC).validate(raw)
    if result.error_messages:
        raise ConfigError(
            "Invalid experiment configuration: %s" % "; ".join(result.error_messages),
            violations=dict(errors=list(result.error_messages)),
        )
    config = result.validated_parameters
    if config["seed"] < 0:
        raise ConfigError("Seed must be nonnegative", violations=dict(seed=config["seed"]))
    config["output"] = config.get("output") or dict(path=None, format="json")
    for check in config["checks"]:
        _validate_check_params(check["name"], check.get("params") or {})
    return config


def _validate_check_params(name, params):
    choices = dict(
        modes=[m.value for m in PiMode],
        forms=sorted(DETAILED_BALANCE_CHECKS),
    )
    for key, allowed in choices.items():
        values = params.get(key)
        if values is None:
            continue
        if not isinstance(values, list):
            raise ConfigError("Check %s: '%s' must be a list" % (name, key),
                              violations=dict(check=name, param=key))
        unknown = [v for v in values if v not in allowed]
        if unknown:
            raise ConfigError(
                "Check %s: unknown %s %s" % (name, key, ", ".join(map(str, unknown))),
                violations=dict(check=name, param=key, unknown=unknown, choices=allowed),
            )


def to_jsonable(value):
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(value.real), to_jsonable(value.imag)]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    return value


def serialize(record):
    """One JSON line; keys sorted and floats in shortest round-trip form."""
    return json.dumps(to_jsonable(record), sort_keys=True, allow_nan=False)


def _record(check, model, certificate, seed, sample, **extra):
    record = certificate.to_dict()
    record.setdefault("seed", seed)
    record.setdefault("sample", sample)
    record["model"] = model.label
    record["check"] = check
    record.update(extra)
    return record


def _failure_record(check, model, error, seed):
    """A failing record for a check whose precondition does not hold."""
    violations = getattr(error, "violations", {}) or {}
    lhs = float(violations.get("asymmetry", violations.get("residual", 1.0)))
    rhs = float(violations.get("bound", 0.0))
    return dict(
        name=check, model=model.label, check=check, p=None, q=None, lhs=lhs, rhs=rhs,
        constant=1.0, ratio=lhs / rhs if rhs > 0 else float(np.finfo(float).max),
        margin=rhs - lhs, relative_margin=(rhs - lhs) / rhs if rhs > 0 else -1.0,
        tol=0.0, seed=seed, sample=0, error=str(error), **{"pass": False}
    )


def _p_grid(params, default):
    return [as_exponent(p) for p in params.get("p", default)]


def _hermitian_samples(rng, dim, count):
    return [random_matrix(rng, dim, hermitian=True) for _ in range(count)]


def _observable(model, params, rng):
    name = params.get("observable")
    for key in ([name] if name else ["f", "degree_one"]):
        if key in model.observables:
            x = model.observables[key]
            return (x + dagger(x)) / 2.0
    if name:
        raise ConfigError("Model %s has no observable '%s'" % (model.label, name),
                          violations=dict(observables=sorted(model.observables)))
    return model.random_element(rng, hermitian=True)


def _residual_bound(L):
    return RESIDUAL_TOL * (1.0 + float(np.max(np.abs(L.superop))))


def _known_gap(model):
    if model.kind in ("depolarizing", "rademacher"):
        return 1.0
    if model.kind == "birth_death" and model.params["n"] == 2:
        return 2.0 * math.cosh(model.params["beta"] / 2.0)
    return None


def check_gap(model, params, rng, seed):
    report = model.gap
    info = dict(alpha=report.alpha, kernel_dim=report.kernel_dim, form=report.inner_product)
    if model.kind == "birth_death":
        info["diagonal_alpha"] = diagonal_gap(model)
    yield certify("gap_rayleigh", abs(report.dirichlet_alpha - report.alpha),
                  EXACT_GAP_TOL * (1.0 + report.alpha), model=model.label, sample_id=info)
    expected = params.get("expected", _known_gap(model))
    if expected is not None:
        yield certify("gap_exact", abs(report.alpha - float(expected)),
                      float(params.get("tol", EXACT_GAP_TOL)), model=model.label,
                      sample_id=dict(info, expected=float(expected)))


DETAILED_BALANCE_CHECKS = dict(
    tau=(SymmetryTag.TAU_SYMMETRIC, lambda L, D: check_tau_symmetry(L)),
    gns=(SymmetryTag.GNS_DB, check_gns_db),
    kms=(SymmetryTag.KMS_DB, check_kms_db),
)


def check_detailed_balance(model, params, rng, seed):
    L = model.generator
    forms = params.get("forms")
    if forms is None:
        forms = [k for k, (tag, _) in DETAILED_BALANCE_CHECKS.items() if L.has_tag(tag)]
    for form in forms:
        if form not in DETAILED_BALANCE_CHECKS:
            raise ConfigError("Unknown detailed balance form '%s'" % form,
                              violations=dict(choices=sorted(DETAILED_BALANCE_CHECKS)))
        residual = DETAILED_BALANCE_CHECKS[form][1](L, model.state)
        yield certify("detailed_balance_%s" % form, residual, _residual_bound(L),
                      model=model.label)
    generator = check_generator(L, int(params.get("samples", 10)), seed)
    yield certify("generator_unitality", generator.unitality, RESIDUAL_TOL, model=model.label)
    yield certify("generator_hermiticity", generator.hermiticity, RESIDUAL_TOL,
                  model=model.label)


def _pi_modes(model, params):
    if "modes" in params:
        return [PiMode(m) for m in params["modes"]]
    modes = []
    if model.has_tag(SymmetryTag.TAU_SYMMETRIC):
        modes.append(PiMode.TRACIAL_SA)
    if model.has_tag(SymmetryTag.GNS_DB):
        modes.append(PiMode.HAAGERUP_SA)
    return modes or [PiMode.HAAGERUP_SA]


def check_pi(model, params, rng, seed):
    L = model.generator
    samples = int(params.get("samples", 20))
    eta = float(params.get("eta", 0.5))
    allow = bool(params.get("allow_intermediate", False))
    q = params.get("q")
    for mode in _pi_modes(model, params):
        if mode in TRACIAL_MODES and not model.has_tag(SymmetryTag.TAU_SYMMETRIC):
            LOG.info("Skipping %s on %s: generator is not trace-symmetric", mode.value, model.label)
            continue
        # weighted modes on a non-GNS model recompute the GNS gap and fail there
        weighted = mode not in TRACIAL_MODES and model.form is InnerProductForm.GNS
        gap = model.gap.alpha if weighted else None
        E = model.expectation if weighted else None
        for p in _p_grid(params, [2, 3, 4, 6]):
            for k in range(samples):
                x = model.random_element(rng, hermitian=mode in SELF_ADJOINT_MODES)
                yield verify_pi(L, model.state, x, p, q, mode, eta, allow, expectation=E, gap=gap,
                                model=model.label, sample_id=dict(seed=seed, sample=k))


def check_klein(model, params, rng, seed):
    dim = int(params.get("dim", model.dim))
    for p in params.get("p", [2, 3, 4, 6]):
        for k in range(int(params.get("samples", 20))):
            x, y = _hermitian_samples(rng, dim, 2)
            yield klein_check(x, y, p, sample_id=dict(seed=seed, sample=k))


def check_convex_chain(model, params, rng, seed):
    if not model.has_tag(SymmetryTag.TAU_SYMMETRIC):
        raise SkipCheck("generator is not trace-symmetric")
    for p in params.get("p", [3, 4, 6]):
        for k in range(int(params.get("samples", 20))):
            x = model.random_element(rng, hermitian=True)
            yield convex_chain_check(model.generator, x, p, model=model.label,
                                     sample_id=dict(seed=seed, sample=k))


def check_concentration(model, params, rng, seed):
    L = model.generator
    x = _observable(model, params, rng)
    alpha = model.gap.alpha
    if "t" in params:
        levels = [float(t) for t in params["t"]]
    else:
        lip = lipschitz_seminorm(L, x)
        if lip <= 0:
            raise SkipCheck("observable is a fixed point")
        levels = [p_star * 4.0 * math.e * lip / math.sqrt(2.0 * alpha)
                  for p_star in params.get("p_star", [3, 4, 6, 8])]
    for k, t in enumerate(levels):
        report = concentration_certificate(L, model.state, x, t, model.expectation, alpha,
                                           model=model.label, sample_id=dict(seed=seed, sample=k))
        if report.applicable:
            yield report.certificate
        else:
            LOG.info("Concentration bound not applicable at t=%.6g (p*=%.4g)", t, report.p_star)
        for p, bound in sorted(report.chebyshev_tails.items()):
            yield certify("chebyshev", report.tail_mass, bound, 1.0, p=p, model=model.label,
                          sample_id=dict(seed=seed, sample=k, t=t))


def check_diameter(model, params, rng, seed):
    report = diameter_check(model.generator, model.state, int(params.get("samples", 20)), seed,
                            model.expectation, model.gap.alpha, model=model.label,
                            restrict=model.restrict)
    for certificate in report.certificates:
        yield certificate


def check_talagrand(model, params, rng, seed):
    if model.kind != "birth_death":
        raise SkipCheck("Talagrand bound needs a birth-death chain")
    report = talagrand_probe(model.params["n"], model.params["beta"], model)
    for certificate in report.certificates:
        yield certificate
    if params.get("sweep"):
        sweep = talagrand_sweep(params["sweep"], model.params["beta"], model.label)
        LOG.info("Talagrand c_min at beta=%s over n=%s: %s", sweep.beta, list(sweep.ns),
                 list(sweep.c_min))
        for certificate in sweep.certificates:
            yield certificate
    budget = int(params.get("extremize_budget", 0))
    if budget > 0:
        result = improve_talagrand_lower_bound(model, budget, seed)
        yield result.certificate, dict(method=result.method, iterations=result.iterations)


def _partner_models(params):
    partners = params.get("partners") or [dict(kind="depolarizing", params=dict(d=2))]
    for partner in partners:
        yield build_model(partner["kind"], partner.get("params"), partner.get("label"))


def check_composite_gap(model, params, rng, seed):
    if not model.has_tag(SymmetryTag.GNS_DB):
        raise SkipCheck("composite gap laws need a GNS detailed-balanced generator")
    for other in _partner_models(params):
        report = composite_gap_check(model.generator, model.state, other.generator, other.state,
                                     model=model.label)
        for certificate in report.certificates:
            yield certificate, dict(partner=other.label)


def _weighted_norm(y, model):
    return math.sqrt(max(inner_product(y, y, model.form, model.state.matrix).real, 0.0))


def check_regularize(model, params, rng, seed):
    L = model.generator
    alpha = model.gap.alpha
    epsilons = sorted((float(e) for e in params.get("epsilons", [1.0, 0.1, 0.01])), reverse=True)
    regularized = []
    for eps in epsilons:
        L_eps = regularize(L, eps, model.state, model.form)
        expected = alpha / (1.0 + eps * alpha)
        actual = spectral_gap(L_eps, model.state, model.form).alpha
        yield certify("regularize_gap", abs(actual - expected), EXACT_GAP_TOL, model=model.label,
                      sample_id=dict(epsilon=eps, alpha=actual, expected=expected))
        regularized.append(L_eps)
    for k in range(int(params.get("samples", 20))):
        x = model.random_element(rng)
        target = L(x)
        distances = [_weighted_norm(R(x) - target, model) for R in regularized]
        for j in range(1, len(distances)):
            yield certify("regularize_convergence", distances[j], distances[j - 1],
                          model=model.label,
                          sample_id=dict(seed=seed, sample=k, epsilon=epsilons[j]))
    weights = params.get("weights")
    if weights is not None:
        mixture = regularized_mixture(L, weights, epsilons, model.state, model.form)
        expected = sum(w * alpha / (1.0 + e * alpha) for w, e in zip(weights, epsilons))
        actual = spectral_gap(mixture, model.state, model.form).alpha
        yield certify("regularize_mixture_gap", abs(actual - expected), EXACT_GAP_TOL,
                      model=model.label, sample_id=dict(alpha=actual, expected=expected))


def check_khintchine(model, params, rng, seed):
    if model.kind != "rademacher":
        raise SkipCheck("Khintchine bound needs a Rademacher model")
    d = model.params["d"]
    n = model.params["n"]
    allow = bool(params.get("allow_intermediate", False))
    tuples = [list(model.coefficients)]
    for _ in range(int(params.get("samples", 10)) - 1):
        tuples.append([random_matrix(rng, d) for _ in range(n)])
    for p in _p_grid(params, [2, 4, 6]):
        for k, coefficients in enumerate(tuples):
            yield khintchine_check(coefficients, p, allow, model=model.label,
                                   sample_id=dict(seed=seed, sample=k))


def check_eta_independence(model, params, rng, seed):
    L = model.generator
    gns = model.has_tag(SymmetryTag.GNS_DB)
    for p in _p_grid(params, [2, 4]):
        for k in range(int(params.get("samples", 5))):
            a = model.random_element(rng)
            residual = eta_dependence_residual(L, a, p, model.state)
            sample_id = dict(seed=seed, sample=k, residual=residual)
            if gns:
                yield certify("eta_independence", residual, _residual_bound(L), p=p,
                              model=model.label, sample_id=sample_id)
            else:
                yield certify("eta_dependence", DEPENDENCE_FLOOR, residual, p=p,
                              model=model.label, sample_id=sample_id)


def check_gf_identification(model, params, rng, seed):
    L = model.generator
    gns = model.has_tag(SymmetryTag.GNS_DB)
    # eta = 0 identifies trivially for every generator
    etas = params.get("etas", [0.0, 0.5, 1.0] if gns else [0.5, 1.0])
    for p in _p_grid(params, [2, 4]):
        for k in range(int(params.get("samples", 5))):
            x, y = (model.random_element(rng) for _ in range(2))
            residual = max(gf_identification_residual(L, x, y, KosakiIndex(p, eta, model.state))
                           for eta in etas)
            sample_id = dict(seed=seed, sample=k, residual=residual)
            if gns:
                yield certify("gf_identification", residual, _residual_bound(L), p=p,
                              model=model.label, sample_id=sample_id)
            else:
                yield certify("gf_mismatch", DEPENDENCE_FLOOR, residual, p=p,
                              model=model.label, sample_id=sample_id)


def check_extremize(model, params, rng, seed):
    budget = int(params.get("budget", 20))
    restarts = int(params.get("restarts", 5))
    for mode in _pi_modes(model, params):
        if mode in TRACIAL_MODES and not model.has_tag(SymmetryTag.TAU_SYMMETRIC):
            continue
        for p in _p_grid(params, [2]):
            result = maximize_pi_ratio(model.generator, model.state, p, mode, budget, restarts,
                                       seed, model=model.label, restrict=model.restrict)
            constant = result.certificate.constant
            certificate = certify("extremize_%s" % mode.value, result.best_ratio, constant,
                                  constant, EXTREMIZER_TOL, p=p, model=model.label,
                                  sample_id=dict(seed=seed, sample=result.restart))
            yield certificate, dict(method=result.method, iterations=result.iterations,
                                    converged=result.converged)


CHECKS = dict(
    gap=check_gap,
    detailed_balance=check_detailed_balance,
    pi=check_pi,
    klein=check_klein,
    convex_chain=check_convex_chain,
    concentration=check_concentration,
    diameter=check_diameter,
    talagrand=check_talagrand,
    composite_gap=check_composite_gap,
    regularize=check_regularize,
    khintchine=check_khintchine,
    eta_independence=check_eta_independence,
    gf_identification=check_gf_identification,
    extremize=check_extremize,
)


def execute(config):
    """Runs every check on every model, in configuration order."""
    result = ExperimentResult()
    seed = config["seed"]
    models = [build_model(m["kind"], m.get("params"), m.get("label")) for m in config["models"]]
    for i, model in enumerate(models):
        LOG.info("Model %s: %r", model.label, model.generator)
        for j, check in enumerate(config["checks"]):
            name = check["name"]
            rng = np.random.default_rng([seed, i, j])
            check_seed = seed * 1000003 + i * 1009 + j
            try:
                for k, item in enumerate(CHECKS[name](model, check.get("params") or {}, rng,
                                                      check_seed)):
                    certificate, extra = item if isinstance(item, tuple) else (item, {})
                    result.records.append(
                        _record(name, model, certificate, check_seed, k, **extra)
                    )
            except SkipCheck as e:
                LOG.info("Skipping check %s on model %s: %s", name, model.label, e)
                result.skipped.append("%s/%s" % (model.label, name))
            except NotDetailedBalancedError as e:
                LOG.warning("Check %s failed on model %s: %s", name, model.label, e.message)
                result.records.append(_failure_record(name, model, e, check_seed))
            except (ValueError, TypeError) as e:
                raise ConfigError("Check %s on model %s: invalid parameters: %s"
                                  % (name, model.label, e),
                                  violations=dict(check=name, model=model.label))
    return result


def write_stream(records, path):
    try:
        with open(path, "w") as f:
            for record in records:
                f.write(serialize(record))
                f.write("\n")
    except OSError as e:
        raise QpError("Unable to write certificate stream: %s" % e, violations=dict(path=path))


def run(config, out=None):
    """Returns 0 when every certificate passes, 2 on a failed certificate, 1 on error."""
    try:
        config = load_config(config)
        result = execute(config)
        path = out or config["output"].get("path")
        if path:
            if config["output"].get("format") == "csv":
                write_csv(aggregate(result.records), path)
            else:
                write_stream(result.records, path)
    except (QpError, OSError) as e:
        LOG.error("Experiment failed: %s", e)
        sys.stderr.write("qpoincare: %s\n" % e)
        return RC_ERROR
    for record in result.failed:
        LOG.warning("Certificate %s failed on %s", record["name"], record["model"])
    return result.rc


def _group_key(record):
    return (str(record["model"]), str(record["name"]), _key_text(record.get("p")),
            _key_text(record.get("q")))


def _key_text(value):
    return "" if value is None else str(value)


def aggregate(records):
    """Rows of ``REPORT_COLUMNS`` per (model, check, p, q), sorted."""
    groups = {}
    for record in records:
        groups.setdefault(_group_key(record), []).append(record)
    rows = []
    for key in sorted(groups):
        members = groups[key]
        rows.append(dict(
            model=key[0],
            check=key[1],
            p=key[2],
            q=key[3],
            samples=len(members),
            max_ratio=max(float(r["ratio"]) for r in members),
            min_margin=min(float(r["margin"]) for r in members),
            **{"pass": sum(1 for r in members if r["pass"])},
        ))
    return rows


REQUIRED_RECORD_KEYS = ("model", "name", "ratio", "margin", "pass")


def report(path):
    """Aggregates a certificate stream; returns ``(rows, malformed)``."""
    records = []
    malformed = 0
    try:
        with open(path, "r") as f:
            lines = f.readlines()
    except OSError as e:
        raise QpError("Unable to read certificate stream: %s" % e, violations=dict(path=path))
    for number, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except ValueError:
            record = None
        if not isinstance(record, dict) or any(k not in record for k in REQUIRED_RECORD_KEYS):
            LOG.warning("Malformed certificate on line %d", number)
            malformed += 1
            continue
        records.append(record)
    return aggregate(records), malformed


def write_csv(rows, path):
    try:
        with open(path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=list(REPORT_COLUMNS), extrasaction="ignore",
                                    lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
    except OSError as e:
        raise QpError("Unable to write report: %s" % e, violations=dict(path=path))


def _model(kind, label, **params):
    return dict(kind=kind, label=label, params=params)


def _check(name, **params):
    return dict(name=name, params=params)


GAP_LAW_MODELS = [
    _model("depolarizing", "depolarizing-2", d=2),
    _model("birth_death", "birth_death-2-b2", n=2, beta=2.0),
    _model("birth_death", "birth_death-3-b0.5", n=3, beta=0.5),
]

PRESETS = {
    "paper-examples": dict(
        schema=SCHEMA_VERSION,
        seed=0,
        models=[
            _model("birth_death", "birth_death-8-b1", n=8, beta=1.0),
            _model("rademacher", "rademacher-3-2", n=3, d=2, seed=0),
            _model("depolarizing", "depolarizing-4", d=4),
        ],
        checks=[
            _check("gap"),
            _check("detailed_balance"),
            _check("pi", p=[2, 3, 4, 6], samples=10),
            _check("klein", p=[2, 3, 4, 6], samples=10),
            _check("convex_chain", p=[3, 4, 6], samples=10),
            _check("concentration"),
            _check("diameter", samples=10),
            _check("khintchine", p=[2, 4, 6], samples=5),
            _check("eta_independence"),
            _check("gf_identification"),
        ],
        output=dict(format="json"),
    ),
    "gap-laws": dict(
        schema=SCHEMA_VERSION,
        seed=0,
        models=GAP_LAW_MODELS,
        checks=[
            _check("gap"),
            _check("composite_gap", partners=GAP_LAW_MODELS),
            _check("regularize", epsilons=[1.0, 0.1, 0.01], samples=20),
        ],
        output=dict(format="json"),
    ),
    "concentration-sweep": dict(
        schema=SCHEMA_VERSION,
        seed=0,
        models=[
            _model("birth_death", "birth_death-8-b1", n=8, beta=1.0),
            _model("rademacher", "rademacher-3-2", n=3, d=2, seed=0),
        ],
        checks=[_check("concentration", p_star=[3, 4, 5, 6, 8, 10])],
        output=dict(format="json"),
    ),
    "talagrand-sweep": dict(
        schema=SCHEMA_VERSION,
        seed=0,
        models=[
            _model("birth_death", "birth_death-20-b%s" % beta, n=20, beta=beta)
            for beta in (0.5, 1.0)
        ],
        checks=[_check("gap"), _check("talagrand", sweep=[4, 8, 12, 16, 20])],
        output=dict(format="json"),
    ),
}


def preset(name):
    """A fully specified configuration for a named bundle of experiments."""
    if name not in PRESETS:
        raise ConfigError("Unknown preset '%s'" % name, violations=dict(choices=sorted(PRESETS)))
    return validate_config(json.loads(json.dumps(PRESETS[name])))
