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
from ansible_collections.qpoincare.lab.plugins.module_utils.algebra import (
    check_expectation_axioms,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import InnerProductForm
from ansible_collections.qpoincare.lab.plugins.module_utils.models import (
    MODEL_KINDS,
    build_model,
    diagonal_gap,
    model_to_dict,
)
from ansible_collections.qpoincare.lab.plugins.module_utils.qms import (
    SymmetryTag,
    check_generator,
    check_gns_db,
    check_kms_db,
    check_tau_symmetry,
    spectral_gap,
)

ANSIBLE_METADATA = {
    "metadata_version": "1.1",
    "status": ["preview"],
    "supported_by": "community",
}

DOCUMENTATION = r"""
---
module: model_info
short_description: Build a quantum Markov semigroup model and gather its diagnostics
description:
  - Builds a model from a descriptor and gathers its spectral gap, detailed balance
    residuals, generator diagnostics and conditional expectation axioms.
author:
  - "qpoincare.lab contributors"
options:
  kind:
    description:
      - The model family.
    type: str
    required: True
    choices:
      - birth_death
      - rademacher
      - depolarizing
      - random_gns_db
      - kms_only
  params:
    description:
      - The model parameters, for example C(n) and C(beta) of a birth-death chain.
      - States are given as C(populations), C(thermal) (with C(energies) and C(beta)),
        or a density matrix as C(re) and C(im) parts.
    type: dict
    required: False
    default: {}
  label:
    description:
      - The model label. Derived from the descriptor if not set.
    type: str
    required: False
  form:
    description:
      - The inner product in which the spectral gap is computed.
      - Defaults to the natural form of the model, C(kms) for I(kms_only) and C(gns) otherwise.
    type: str
    required: False
    choices:
      - gns
      - kms
  samples:
    description:
      - The number of random samples for the generator and expectation diagnostics.
    type: int
    required: False
    default: 10
  seed:
    description:
      - The seed of the diagnostic samples.
    type: int
    required: False
    default: 0
  include_generator:
    description:
      - Flag to return the serialized generator (jump operators or superoperator).
    type: bool
    required: False
    default: False
extends_documentation_fragment:
  - qpoincare.lab.qp_options
"""

EXAMPLES = r"""
# Gap and detailed balance residuals of a birth-death chain
- qpoincare.lab.model_info:
    kind: birth_death
    params:
      n: 4
      beta: 1.0

# A random GNS detailed-balanced generator on a thermal state, with its jumps
- qpoincare.lab.model_info:
    kind: random_gns_db
    params:
      state:
        thermal:
          energies: [0, 1, 2]
          beta: 0.5
      k: 2
      seed: 3
    include_generator: yes
"""

RETURN = r"""
model:
  description: The model and its diagnostics.
  type: dict
  returned: always
  contains:
    kind:
      description: The model family.
      returned: always
      type: str
    label:
      description: The model label.
      returned: always
      type: str
    dim:
      description: The matrix dimension.
      returned: always
      type: int
    tags:
      description: The symmetry tags of the generator.
      returned: always
      type: list
      elements: str
    gap:
      description: The spectral gap report.
      returned: always
      type: dict
    residuals:
      description: Detailed balance residuals per form.
      returned: always
      type: dict
    generator_check:
      description: Unitality, Hermiticity preservation and gradient form positivity.
      returned: always
      type: dict
    expectation:
      description: Residuals of the conditional expectation axioms.
      returned: always
      type: dict
    diagonal_gap:
      description: The gap on the diagonal subalgebra.
      returned: for birth-death chains
      type: float
    observables:
      description: Names of the observables the model exposes.
      returned: always
      type: list
      elements: str
    generator:
      description: The serialized generator.
      returned: when requested
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


class ModelInfo(QpModule):
    def __init__(self, module):
        super(ModelInfo, self).__init__(module)

        # Set variables
        self.kind = self._get_param("kind")
        self.params = self._get_param("params", dict())
        self.label = self._get_param("label")
        self.form = self._get_param("form")
        self.samples = self._get_param("samples", 10)
        self.seed = self._get_param("seed", 0)
        self.include_generator = self._get_param("include_generator", False)

        # Initialize the return values
        self.model = dict()

        # Execute logic process
        self.process()

    @QpModule._Decorators.process_debug
    def process(self):
        model = build_model(self.kind, self.params, self.label)
        L = model.generator
        form = InnerProductForm(self.form) if self.form else model.form

        self.model = dict(
            kind=model.kind,
            label=model.label,
            dim=model.dim,
            tags=sorted(t.value for t in L.tags),
            gap=spectral_gap(L, model.state, form).to_dict(),
            residuals=dict(
                tau=check_tau_symmetry(L),
                gns=check_gns_db(L, model.state),
                kms=check_kms_db(L, model.state),
            ),
            generator_check=check_generator(L, self.samples, self.seed).to_dict(),
            expectation=check_expectation_axioms(
                model.expectation, self.samples, self.seed
            ).to_dict(),
            observables=sorted(model.observables),
        )

        if model.kind == "birth_death":
            self.model.update(diagonal_gap=diagonal_gap(model))

        if self.include_generator:
            self.model.update(generator=model_to_dict(model))

        if not L.has_tag(SymmetryTag.GNS_DB) and form is InnerProductForm.GNS:
            self.module.warn(
                "Model %s is not tagged GNS detailed balanced" % model.label
            )


def main():
    module = AnsibleModule(
        argument_spec=QpModule.argument_spec(
            kind=dict(required=True, type="str", choices=list(MODEL_KINDS)),
            params=dict(required=False, type="dict", default=dict()),
            label=dict(required=False, type="str"),
            form=dict(required=False, type="str", choices=["gns", "kms"]),
            samples=dict(required=False, type="int", default=10),
            seed=dict(required=False, type="int", default=0),
            include_generator=dict(required=False, type="bool", default=False),
        ),
        supports_check_mode=True,
    )

    result = ModelInfo(module)

    output = dict(
        changed=False,
        model=result.model,
    )

    if result.debug:
        output.update(lab_out=result.log_out, lab_out_lines=result.log_lines)

    module.exit_json(**output)


if __name__ == "__main__":
    main()
