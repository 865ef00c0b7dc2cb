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

import json
import os
import unittest

import numpy as np
import pytest

from ansible_collections.qpoincare.lab.plugins.module_utils import experiment
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import ConfigError


def small_config(*checks, **models):
    return dict(
        schema=1,
        seed=5,
        models=models.get("models", [dict(kind="depolarizing", label="dep2", params=dict(d=2))]),
        checks=list(checks),
    )


KMS_ONLY = dict(kind="kms_only", label="kms3", params=dict(state=[0.6, 0.3, 0.1], seed=1))
BIRTH_DEATH = dict(kind="birth_death", label="bd3", params=dict(n=3, beta=1.0))


class TestConfig:
    def test_defaults(self):
        config = experiment.validate_config(dict(schema=1, seed=0))
        assert config["models"] == []
        assert config["output"] == dict(path=None, format="json")

    @pytest.mark.parametrize(
        "raw",
        [
            dict(schema=1),
            dict(schema=2, seed=0),
            dict(schema=1, seed=0, checks=[dict(name="nope")]),
            dict(schema=1, seed=0, models=[dict(kind="ising")]),
            dict(schema=1, seed=0, extra=True),
        ],
    )
    def test_rejected(self, raw):
        with pytest.raises(ConfigError):
            experiment.validate_config(raw)

    @pytest.mark.parametrize(
        "check",
        [
            dict(name="pi", params=dict(modes=["bogus"])),
            dict(name="extremize", params=dict(modes="haagerup_sa")),
            dict(name="detailed_balance", params=dict(forms=["gns", "hs"])),
        ],
    )
    def test_rejected_check_params(self, check):
        with pytest.raises(ConfigError, match=check["name"]):
            experiment.validate_config(small_config(check))

    def test_negative_seed(self):
        with pytest.raises(ConfigError, match="nonnegative"):
            experiment.validate_config(dict(schema=1, seed=-1))

    def test_load_yaml_text(self):
        config = experiment.load_config(
            "schema: 1\nseed: 3\nmodels:\n  - kind: depolarizing\n    params: {d: 2}\n"
        )
        assert config["seed"] == 3
        assert config["models"][0]["params"] == dict(d=2)

    def test_load_file(self, tmp_path):
        path = tmp_path / "experiment.yml"
        path.write_text(json.dumps(small_config(dict(name="gap"))))
        assert experiment.load_config(str(path))["checks"][0]["name"] == "gap"

    def test_load_errors(self, tmp_path):
        with pytest.raises(ConfigError, match="Unable to read"):
            experiment.load_config(str(tmp_path / "missing.yml"))
        with pytest.raises(ConfigError, match="Unable to parse"):
            experiment.load_config("schema: [1\nseed: 0\n")
        with pytest.raises(ConfigError, match="mapping"):
            experiment.load_config("- 1\n- 2\n")

    @pytest.mark.parametrize("name", sorted(experiment.PRESETS))
    def test_presets_validate(self, name):
        config = experiment.preset(name)
        assert config["schema"] == experiment.SCHEMA_VERSION
        assert config["models"]

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            experiment.preset("nope")


class TestExecute:
    def test_gap_and_klein(self):
        config = experiment.validate_config(
            small_config(dict(name="gap"), dict(name="klein", params=dict(p=[2, 4], samples=2)))
        )
        result = experiment.execute(config)
        assert result.rc == experiment.RC_OK
        names = [r["name"] for r in result.records]
        assert names == ["gap_rayleigh", "gap_exact"] + ["klein"] * 4
        gap = result.records[1]
        assert gap["model"] == "dep2"
        assert gap["check"] == "gap"
        assert gap["alpha"] == pytest.approx(1.0)

    def test_deterministic(self):
        config = experiment.validate_config(
            small_config(dict(name="pi", params=dict(p=[2], samples=3)),
                         models=[BIRTH_DEATH])
        )
        first = [experiment.serialize(r) for r in experiment.execute(config).records]
        second = [experiment.serialize(r) for r in experiment.execute(config).records]
        assert first == second
        assert len(first) == 3

    def test_skipped_check(self):
        config = experiment.validate_config(
            small_config(dict(name="convex_chain"), models=[BIRTH_DEATH])
        )
        result = experiment.execute(config)
        assert result.records == []
        assert result.skipped == ["bd3/convex_chain"]
        assert result.rc == experiment.RC_OK

    def test_negative_control_detailed_balance(self):
        config = experiment.validate_config(
            small_config(dict(name="detailed_balance", params=dict(forms=["gns"])),
                         models=[KMS_ONLY])
        )
        result = experiment.execute(config)
        assert result.rc == experiment.RC_FAILED
        assert result.summary()["failed"] == ["kms3/detailed_balance_gns"]

    def test_weighted_pi_on_kms_only_fails(self):
        config = experiment.validate_config(
            small_config(dict(name="pi", params=dict(modes=["haagerup_sa"], samples=1)),
                         models=[KMS_ONLY])
        )
        result = experiment.execute(config)
        assert result.rc == experiment.RC_FAILED
        record = result.records[-1]
        assert record["name"] == "pi"
        assert record["pass"] is False
        assert "error" in record

    def test_kms_only_eta_dependence(self):
        config = experiment.validate_config(
            small_config(dict(name="eta_independence", params=dict(samples=2)),
                         dict(name="gf_identification", params=dict(samples=2)),
                         models=[KMS_ONLY])
        )
        result = experiment.execute(config)
        assert {r["name"] for r in result.records} == {"eta_dependence", "gf_mismatch"}
        assert result.rc == experiment.RC_OK

    def test_talagrand_sweep_is_measured(self):
        config = experiment.validate_config(
            small_config(dict(name="talagrand", params=dict(sweep=[4, 8, 12])),
                         models=[dict(kind="birth_death", label="bd4", params=dict(n=4, beta=1.0))])
        )
        result = experiment.execute(config)
        assert result.rc == experiment.RC_OK
        growth = [r for r in result.records if r["name"] == "talagrand_growth_advisory"]
        assert [r["n"] for r in growth] == [8, 12]
        assert all(r["previous_c_min"] < r["c_min"] for r in growth)
        measured = [r for r in result.records if r["name"] == "talagrand_c_min"]
        assert len(measured) == 4
        assert all(r["model"] == "bd4" for r in measured)

    def test_bad_exponent_is_a_config_error(self):
        config = experiment.validate_config(
            small_config(dict(name="klein", params=dict(p=["two"], samples=1)))
        )
        with pytest.raises(ConfigError, match="invalid parameters"):
            experiment.execute(config)

    def test_advisory_records_do_not_fail(self):
        result = experiment.ExperimentResult(
            records=[dict(name="diameter_advisory", model="m", **{"pass": False})]
        )
        assert result.rc == experiment.RC_OK
        assert result.summary()["total"] == 1


class TestStreams:
    def test_serialize(self):
        line = experiment.serialize(dict(b=1.5, a=True))
        assert line == '{"a": true, "b": 1.5}'
        assert experiment.serialize(dict(z=np.complex128(1 - 2j))) == '{"z": [1.0, -2.0]}'
        with pytest.raises(ValueError):
            experiment.serialize(dict(lhs=float("nan")))

    def test_run_and_report(self, tmp_path):
        path = str(tmp_path / "stream.jsonl")
        config = small_config(dict(name="klein", params=dict(p=[2, 4], samples=3)))
        assert experiment.run(config, out=path) == experiment.RC_OK

        with open(path) as f:
            lines = f.read().splitlines()
        assert len(lines) == 6
        assert all(json.loads(line)["pass"] for line in lines)

        with open(path, "a") as f:
            f.write("not json\n")
            f.write('{"model": "dep2"}\n')
        rows, malformed = experiment.report(path)
        assert malformed == 2
        assert [(r["check"], r["p"], r["samples"], r["pass"]) for r in rows] == [
            ("klein", "2.0", 3, 3),
            ("klein", "4.0", 3, 3),
        ]

        csv_path = str(tmp_path / "report.csv")
        experiment.write_csv(rows, csv_path)
        with open(csv_path) as f:
            header = f.readline().strip()
        assert header == ",".join(experiment.REPORT_COLUMNS)

    def test_run_errors(self, capsys):
        assert experiment.run(dict(schema=1)) == experiment.RC_ERROR
        assert "qpoincare:" in capsys.readouterr().err
        bogus = small_config(dict(name="pi", params=dict(modes=["bogus"])))
        assert experiment.run(bogus) == experiment.RC_ERROR
        assert "bogus" in capsys.readouterr().err

    def test_run_failed(self, tmp_path):
        config = small_config(dict(name="detailed_balance", params=dict(forms=["gns"])),
                              models=[KMS_ONLY])
        assert experiment.run(config) == experiment.RC_FAILED

    def test_report_missing(self, tmp_path):
        with pytest.raises(experiment.QpError):
            experiment.report(str(tmp_path / "missing.jsonl"))


@unittest.skipUnless(os.environ.get("QPOINCARE_SLOW"), "set QPOINCARE_SLOW to run presets")
class TestPresets(unittest.TestCase):
    def test_paper_examples(self):
        result = experiment.execute(experiment.preset("paper-examples"))
        self.assertEqual(result.rc, experiment.RC_OK, result.summary()["failed"])

    def test_gap_laws(self):
        result = experiment.execute(experiment.preset("gap-laws"))
        self.assertEqual(result.rc, experiment.RC_OK, result.summary()["failed"])

    def test_talagrand_sweep_grows(self):
        result = experiment.execute(experiment.preset("talagrand-sweep"))
        self.assertEqual(result.rc, experiment.RC_OK, result.summary()["failed"])
        growth = [r for r in result.records if r["name"] == "talagrand_growth_advisory"]
        self.assertEqual(len(growth), 8)
        for record in growth:
            self.assertLess(record["previous_c_min"], record["c_min"])
