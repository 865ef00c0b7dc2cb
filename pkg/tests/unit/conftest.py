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

import os
import sys
import tempfile

import numpy as np
import pytest

COLLECTION_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))


def _ensure_collection_importable():
    """Exposes a source checkout as ``ansible_collections.qpoincare.lab``."""
    try:
        import ansible_collections.qpoincare.lab.plugins.module_utils.qp_common  # noqa: F401

        return
    except ImportError:
        pass

    root = tempfile.mkdtemp(prefix="qpoincare-")
    namespace = os.path.join(root, "ansible_collections", "qpoincare")
    os.makedirs(namespace)
    os.symlink(COLLECTION_ROOT, os.path.join(namespace, "lab"))
    sys.path.insert(0, root)
    for name in [m for m in sys.modules if m.startswith("ansible_collections.qpoincare")]:
        del sys.modules[name]


_ensure_collection_importable()


@pytest.fixture(autouse=True)
def skip_python():
    if sys.version_info < (3, 7):
        pytest.skip(
            "Skipping on Python %s. qpoincare.lab supports Python 3.7 and higher."
            % sys.version
        )


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)
