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


class ModuleDocFragment(object):
    DOCUMENTATION = r"""
    options:
        debug:
            description:
                - Capture the lab log at debug level.
            type: bool
            required: False
            default: False
            aliases:
                - debug_log
        strict:
            description:
                - Fail the module on any numerical warning, for example an eta-dependent
                  L^p Lindbladian or a diameter bound outside its proven regime.
            type: bool
            required: False
            default: False
            aliases:
                - strict_warnings
    """

    RETURN = r"""
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
