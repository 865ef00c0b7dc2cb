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

from __future__ import absolute_import, division, print_function

__metaclass__ = type

DOCUMENTATION = """
    lookup: spectral_gap
    author: qpoincare.lab contributors
    short_description: Get the spectral gap of quantum Markov semigroup models
    description:
        - Allows you to retrieve the spectral gap of one or more model descriptors.
        - A descriptor is a dictionary with C(kind), optional C(params) and optional C(label),
          or a bare model kind for models without required parameters.
        - If a descriptor is invalid or its generator is not detailed balanced in the requested
          inner product, the lookup will return an error.
    options:
        _terms:
            description:
                - A model descriptor.
            required: True
        form:
            description:
                - The inner product in which the gap is computed.
                - Defaults to the natural form of each model.
            type: string
            required: False
            choices:
                - gns
                - kms
        detailed:
            description:
                - Whether to return the full gap report instead of the gap alone.
            type: boolean
            default: False
    notes:
        - Requires C(numpy) and C(scipy).
    seealso:
        - module: qpoincare.lab.model_info
          description: Build a model and gather its diagnostics
"""

EXAMPLES = """
- name: Retrieve the gap of a birth-death chain
  ansible.builtin.debug:
    msg: "{{ lookup('qpoincare.lab.spectral_gap', {'kind': 'birth_death', 'params': {'n': 2, 'beta': 1.0}}) }}"

- name: Retrieve the gaps of several models as a list
  ansible.builtin.debug:
    msg: "{{ query('qpoincare.lab.spectral_gap', models) }}"
  vars:
    models:
      - kind: depolarizing
        params:
          d: 4
      - kind: rademacher
        params:
          n: 2
          d: 2

- name: Retrieve the full gap report in the KMS inner product
  ansible.builtin.debug:
    msg: "{{ lookup('qpoincare.lab.spectral_gap', model, form='kms', detailed=True) }}"
"""

RETURN = """
  _list:
    description: List of spectral gaps, or of gap reports when C(detailed) is set.
    type: list
    elements: raw
"""

from ansible.errors import AnsibleError
from ansible.plugins.lookup import LookupBase
from ansible.module_utils.common.text.converters import to_native
from ansible.utils.display import Display

from ansible_collections.qpoincare.lab.plugins.module_utils.matcore import InnerProductForm
from ansible_collections.qpoincare.lab.plugins.module_utils.models import build_model
from ansible_collections.qpoincare.lab.plugins.module_utils.qms import spectral_gap
from ansible_collections.qpoincare.lab.plugins.module_utils.qp_common import QpError

display = Display()


class LookupModule(LookupBase):
    def run(self, terms, variables=None, **kwargs):
        self.set_options(var_options=variables, direct=kwargs)
        form = self.get_option("form")
        detailed = self.get_option("detailed")

        try:
            results = []
            for term in terms:
                if isinstance(term, str):
                    term = dict(kind=term)
                if not isinstance(term, dict) or "kind" not in term:
                    raise AnsibleError("Invalid model descriptor: %s" % to_native(term))
                model = build_model(term["kind"], term.get("params"), term.get("label"))
                inner = InnerProductForm(form) if form else model.form
                display.vvv("Computing %s gap of %s" % (inner.value, model.label))
                report = spectral_gap(model.generator, model.state, inner)
                results.append(report.to_dict() if detailed else report.alpha)
            return results
        except QpError as e:
            raise AnsibleError("Error computing spectral gap: %s" % to_native(e))
