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
module: certificate_report_info
short_description: Aggregate a certificate stream into a report table
description:
  - Reads a JSON-lines certificate stream written by M(qpoincare.lab.experiment) and
    aggregates it per model, certificate and exponents.
  - Malformed lines are counted and reported, never silently dropped.
author:
  - "qpoincare.lab contributors"
options:
  path:
    description:
      - Path of the certificate stream.
    type: path
    required: True
    aliases:
      - stream
  dest:
    description:
      - Path of a CSV file to receive the table.
    type: path
    required: False
    aliases:
      - csv
extends_documentation_fragment:
  - qpoincare.lab.qp_options
"""

EXAMPLES = r"""
# Aggregate a stream
- qpoincare.lab.certificate_report_info:
    path: /tmp/paper-examples.jsonl
  register: report

# Aggregate a stream and write the CSV table
- qpoincare.lab.certificate_report_info:
    path: /tmp/paper-examples.jsonl
    dest: /tmp/paper-examples.csv
"""

RETURN = r"""
rows:
  description: The report rows, sorted by model, certificate, and exponents.
  type: list
  returned: always
  elements: dict
  contains:
    model:
      description: The model label.
      returned: always
      type: str
    check:
      description: The certificate name.
      returned: always
      type: str
    p:
      description: The exponent p, empty when not applicable.
      returned: always
      type: str
    q:
      description: The exponent q, empty when not applicable.
      returned: always
      type: str
    samples:
      description: The number of certificates in the group.
      returned: always
      type: int
    max_ratio:
      description: The largest C(lhs/rhs) in the group.
      returned: always
      type: float
    min_margin:
      description: The smallest C(rhs - lhs) in the group.
      returned: always
      type: float
    pass:
      description: The number of passing certificates in the group.
      returned: always
      type: int
malformed:
  description: The number of malformed lines in the stream.
  type: int
  returned: always
failed:
  description: The number of rows with at least one failing certificate.
  type: int
  returned: always
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


class CertificateReportInfo(QpModule):
    def __init__(self, module):
        super(CertificateReportInfo, self).__init__(module)

        # Set variables
        self.path = self._get_param("path")
        self.dest = self._get_param("dest")

        # Initialize the return values
        self.rows = []
        self.malformed = 0

        # Execute logic process
        self.process()

    @QpModule._Decorators.process_debug
    def process(self):
        self.rows, self.malformed = experiment.report(self.path)
        if self.dest:
            if not self.module.check_mode:
                experiment.write_csv(self.rows, self.dest)
            self.changed = True

    @property
    def failed(self):
        return sum(1 for row in self.rows if row["pass"] < row["samples"])


def main():
    module = AnsibleModule(
        argument_spec=QpModule.argument_spec(
            path=dict(required=True, type="path", aliases=["stream"]),
            dest=dict(required=False, type="path", aliases=["csv"]),
        ),
        supports_check_mode=True,
    )

    result = CertificateReportInfo(module)

    output = dict(
        changed=result.changed,
        rows=result.rows,
        malformed=result.malformed,
        failed=result.failed,
    )

    if result.debug:
        output.update(lab_out=result.log_out, lab_out_lines=result.log_lines)

    module.exit_json(**output)


if __name__ == "__main__":
    main()
