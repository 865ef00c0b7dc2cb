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

import yaml

from ansible.module_utils.basic import AnsibleModule
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import (
    QpError,
    QpModule,
)
from ansible_collections.qpoincare.lab.plugins.module_utils import experiment

ANSIBLE_METADATA = {
    "metadata_version": "1.1",
    "status": ["preview"],
    "supported_by": "community",
}

DOCUMENTATION = r"""
---
module: experiment_preset_info
short_description: Gather the bundled experiment configurations
description:
  - Gather the fully specified configuration of one or all bundled experiment presets.
  - Optionally emit a single preset as a YAML configuration file.
author:
  - "qpoincare.lab contributors"
options:
  name:
    description:
      - The name of the preset.
      - If no name is provided, all presets are returned.
    type: str
    required: False
    aliases:
      - preset
  dest:
    description:
      - Path of a YAML file to receive the configuration.
      - Requires C(name).
    type: path
    required: False
    aliases:
      - emit_config
extends_documentation_fragment:
  - qpoincare.lab.qp_options
"""

EXAMPLES = r"""
# List every preset
- qpoincare.lab.experiment_preset_info:

# Gather a single preset
- qpoincare.lab.experiment_preset_info:
    name: gap-laws

# Write a preset as a configuration file to edit
- qpoincare.lab.experiment_preset_info:
    name: talagrand-sweep
    dest: experiments/talagrand.yml
"""

RETURN = r"""
presets:
  description: The presets, each with its name and validated configuration.
  type: list
  returned: always
  elements: dict
  contains:
    name:
      description: The preset name.
      returned: always
      type: str
    config:
      description: The experiment configuration.
      returned: always
      type: dict
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


class ExperimentPresetInfo(QpModule):
    def __init__(self, module):
        super(ExperimentPresetInfo, self).__init__(module)

        # Set variables
        self.name = self._get_param("name")
        self.dest = self._get_param("dest")

        # Initialize the return values
        self.presets = []

        # Execute logic process
        self.process()

    @QpModule._Decorators.process_debug
    def process(self):
        names = [self.name] if self.name else sorted(experiment.PRESETS)
        for name in names:
            self.presets.append(dict(name=name, config=experiment.preset(name)))

        if self.dest:
            if not self.module.check_mode:
                try:
                    with open(self.dest, "w") as f:
                        yaml.safe_dump(self.presets[0]["config"], f, default_flow_style=False)
                except OSError as e:
                    raise QpError("Unable to write preset: %s" % e, violations=dict(path=self.dest))
            self.changed = True


def main():
    module = AnsibleModule(
        argument_spec=QpModule.argument_spec(
            name=dict(
                required=False,
                type="str",
                choices=sorted(experiment.PRESETS),
                aliases=["preset"],
            ),
            dest=dict(required=False, type="path", aliases=["emit_config"]),
        ),
        required_by=dict(dest="name"),
        supports_check_mode=True,
    )

    result = ExperimentPresetInfo(module)

    output = dict(
        changed=result.changed,
        presets=result.presets,
    )

    if result.debug:
        output.update(lab_out=result.log_out, lab_out_lines=result.log_lines)

    module.exit_json(**output)


if __name__ == "__main__":
    main()
