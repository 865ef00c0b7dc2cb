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

from ansible.module_utils.basic import AnsibleModule
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import QpModule
from ansible_collections.qpoincare.lab.plugins.module_utils import experiment

ANSIBLE_METADATA = {
    "metadata_version": "1.1",
    "status": ["preview"],
    "supported_by": "community",
}

DOCUMENTATION = r"""
---
module: experiment
short_description: Run a quantum Markov semigroup experiment and certify its inequalities
description:
  - Builds the configured models, runs every configured check on every model in order,
    and writes the resulting certificate stream as JSON lines (or an aggregated CSV table).
  - The module fails when any certificate fails (C(rc=2)) or when the experiment cannot
    run (C(rc=1)).
author:
  - "qpoincare.lab contributors"
options:
  config:
    description:
      - Path to an experiment configuration file (YAML or JSON).
      - Mutually exclusive with C(definition) and C(preset).
    type: path
    required: False
  definition:
    description:
      - An inline experiment configuration with the same schema as a configuration file.
      - Mutually exclusive with C(config) and C(preset).
    type: dict
    required: False
  preset:
    description:
      - The name of a bundled configuration.
      - Mutually exclusive with C(config) and C(definition).
    type: str
    required: False
    choices:
      - paper-examples
      - gap-laws
      - concentration-sweep
      - talagrand-sweep
  seed:
    description:
      - Overrides the seed of the configuration.
    type: int
    required: False
  dest:
    description:
      - Destination of the certificate stream.
      - Overrides the C(output.path) of the configuration.
    type: path
    required: False
    aliases:
      - out
  return_records:
    description:
      - Flag to return every certificate record in the module output.
    type: bool
    required: False
    default: False
notes:
  - This module supports C(check_mode); in check mode the configuration is validated
    but no check is executed.
extends_documentation_fragment:
  - qpoincare.lab.qp_options
"""

EXAMPLES = r"""
# Run the bundled paper examples and keep the certificate stream
- qpoincare.lab.experiment:
    preset: paper-examples
    dest: /tmp/paper-examples.jsonl

# Run an inline experiment on a birth-death chain
- qpoincare.lab.experiment:
    definition:
      schema: 1
      seed: 7
      models:
        - kind: birth_death
          label: chain
          params:
            n: 4
            beta: 1.0
      checks:
        - name: gap
        - name: pi
          params:
            p: [2, 3, 4, 6]
            samples: 10
    dest: /tmp/chain.jsonl

# Run a configuration file and return the records
- qpoincare.lab.experiment:
    config: experiments/depolarizing.yml
    return_records: yes
  register: run
"""

RETURN = r"""
rc:
  description:
    - The experiment exit code.
    - C(0) when every certificate passes, C(2) when a certificate fails, C(1) on error.
  returned: when supported
  type: int
summary:
  description: Counts of the certificate stream.
  returned: when supported
  type: dict
  contains:
    total:
      description: Number of certificates.
      returned: always
      type: int
    passed:
      description: Number of passing certificates.
      returned: always
      type: int
    failed:
      description: The C(model/certificate) names of failing certificates.
      returned: always
      type: list
      elements: str
    skipped:
      description: The C(model/check) pairs skipped as not applicable.
      returned: always
      type: list
      elements: str
records:
  description: The certificate records, in stream order.
  returned: when requested
  type: list
  elements: dict
  contains:
    name:
      description: The certificate name.
      returned: always
      type: str
    model:
      description: The model label.
      returned: always
      type: str
    lhs:
      description: The left-hand side of the inequality.
      returned: always
      type: float
    rhs:
      description: The right-hand side of the inequality.
      returned: always
      type: float
    ratio:
      description: The ratio C(lhs/rhs).
      returned: always
      type: float
    pass:
      description: Whether the certificate passes.
      returned: always
      type: bool
config:
  description: The validated configuration.
  returned: always
  type: dict
dest:
  description: The path of the written stream.
  returned: when supported
  type: str
lab_out:
  description: Returns the captured lab log.
  returned: when supported
  type: str
lab_out_lines:
  description: Returns a list of each line of the captured lab log.
  returned: when supported
  type: list
  elements: str
"""


class Experiment(QpModule):
    def __init__(self, module):
        super(Experiment, self).__init__(module)

        # Set variables
        self.config_path = self._get_param("config")
        self.definition = self._get_param("definition")
        self.preset = self._get_param("preset")
        self.seed = self._get_param("seed")
        self.dest = self._get_param("dest")
        self.return_records = self._get_param("return_records", False)

        # Initialize the return values
        self.config = dict()
        self.result = None
        self.rc = None

        # Execute logic process
        self.process()

    @QpModule._Decorators.process_debug
    def process(self):
        if self.preset:
            config = experiment.preset(self.preset)
        else:
            config = experiment.load_config(self.definition or self.config_path)

        if self.seed is not None:
            config["seed"] = self.seed
        self.config = experiment.validate_config(config)

        if self.dest:
            self.config["output"]["path"] = self.dest
        path = self.config["output"]["path"]

        if self.module.check_mode:
            self.changed = path is not None
            return

        self.result = experiment.execute(self.config)
        self.rc = self.result.rc

        if path:
            if self.config["output"]["format"] == "csv":
                experiment.write_csv(experiment.aggregate(self.result.records), path)
            else:
                experiment.write_stream(self.result.records, path)
            self.changed = True


def main():
    module = AnsibleModule(
        argument_spec=QpModule.argument_spec(
            config=dict(required=False, type="path"),
            definition=dict(required=False, type="dict"),
            preset=dict(
                required=False,
                type="str",
                choices=sorted(experiment.PRESETS),
            ),
            seed=dict(required=False, type="int"),
            dest=dict(required=False, type="path", aliases=["out"]),
            return_records=dict(required=False, type="bool", default=False),
        ),
        mutually_exclusive=[["config", "definition", "preset"]],
        required_one_of=[["config", "definition", "preset"]],
        supports_check_mode=True,
    )

    result = Experiment(module)

    output = dict(
        changed=result.changed,
        config=result.config,
    )

    if result.result is not None:
        output.update(rc=result.rc, summary=result.result.summary())
        if result.return_records:
            output.update(
                records=[experiment.to_jsonable(r) for r in result.result.records]
            )
    if result.config.get("output", {}).get("path"):
        output.update(dest=result.config["output"]["path"])

    if result.debug:
        output.update(lab_out=result.log_out, lab_out_lines=result.log_lines)

    if result.rc:
        module.fail_json(
            msg="Failed certificates: %s" % ", ".join(output["summary"]["failed"]),
            **output
        )

    module.exit_json(**output)


if __name__ == "__main__":
    main()
