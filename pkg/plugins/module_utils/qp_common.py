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
A common Ansible Module for shared functions in the qpoincare.lab Collection
"""

import io
import logging

from functools import wraps


LOGGER_NAME = "ansible_collections.qpoincare.lab"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class QpError(Exception):
    """Rejected input or failed precondition in the numerical layer.

    ``violations`` carries the offending numbers (residuals, eigenvalues,
    thresholds) so callers can report them verbatim.
    """

    def __init__(self, message, violations=None):
        super(QpError, self).__init__(message)
        self.message = message
        self.violations = dict(violations) if violations else {}

    def __str__(self):
        if self.violations:
            return "%s %s" % (self.message, self.violations)
        return self.message


class SingularStateError(QpError):
    pass


class NotHermitianError(QpError):
    pass


class NotDetailedBalancedError(QpError):
    pass


class AmbiguousKernelError(QpError):
    pass


class ConfigError(QpError):
    pass


class QpWarning(object):
    """Advisory condition raised through the lab log at WARNING level."""

    def __init__(self, message, source=None):
        self.message = message
        self.source = source

    def __repr__(self):
        return "QpWarning(%r)" % self.message


class _LabLogCapture(logging.StreamHandler):
    """Buffers the lab log and keeps warning records aside for the module."""

    def __init__(self):
        super(_LabLogCapture, self).__init__(io.StringIO())
        self.setFormatter(logging.Formatter(LOG_FORMAT))
        self.warnings = []

    def emit(self, record):
        if record.levelno >= logging.WARNING:
            self.warnings.append(QpWarning(record.getMessage(), record.name))
        super(_LabLogCapture, self).emit(record)

    def getvalue(self):
        return self.stream.getvalue()


class QpModule(object):
    """A base qpoincare module class for common parameters, fields, and methods."""

    class _Decorators(object):
        @classmethod
        def process_debug(cls, f):
            @wraps(f)
            def _impl(self, *args, **kwargs):
                logger = logging.getLogger(LOGGER_NAME)
                capture = _LabLogCapture()
                previous = logger.level
                logger.addHandler(capture)
                logger.setLevel(logging.DEBUG if self.debug else logging.INFO)
                try:
                    result = f(self, *args, **kwargs)
                except QpError as error:
                    result = None
                    self._qp_module_throw_error(error)
                finally:
                    logger.removeHandler(capture)
                    logger.setLevel(previous)

                if self.debug:
                    self.log_out = capture.getvalue()
                    self.log_lines.append(self.log_out.splitlines())

                for warning in capture.warnings:
                    self._qp_module_throw_warning(warning)

                return result

            return _impl

    def __init__(self, module):
        # Set common parameters
        self.module = module
        self.debug = self._get_param("debug", False)
        self.strict = self._get_param("strict", False)

        # Initialize common return values
        self.log_out = None
        self.log_lines = []
        self.changed = False

    # Private functions

    def _get_param(self, param, default=None):
        """Fetches an Ansible Input Parameter if it exists, else returns optional default or None"""
        if self.module is not None:
            return self.module.params[param] if param in self.module.params else default
        return default

    def _get_nested_param(self, param, suboption, default=None):
        """Fetches an nested suboption from an Ansible Input Parameter if it exists, else returns optional default or None"""
        if self.module is not None:
            if param in self.module.params and self.module.params[param] is not None:
                param_suboptions = self.module.params[param]
                return param_suboptions.get(suboption, default)
        return default

    def _qp_module_throw_error(self, error):
        """Error handler for the numerical layer"""
        self.module.fail_json(
            msg=str(error.message),
            error=str(error.__dict__),
            violations=error.violations,
        )

    def _qp_module_throw_warning(self, warning):
        """Warning handler for the numerical layer"""
        if self.strict:
            self._qp_module_throw_error(
                QpError(
                    "Strict mode, warning raised: %s" % warning.message,
                    violations=dict(source=warning.source),
                )
            )
        elif self.module._debug or self.module._verbosity >= 2:
            self.module.warn(warning.message)

    @staticmethod
    def argument_spec(**spec):
        """Default Ansible Module spec values for convenience"""
        return dict(
            **spec,
            debug=dict(
                required=False, type="bool", default=False, aliases=["debug_log"]
            ),
            strict=dict(
                required=False, type="bool", default=False, aliases=["strict_warnings"]
            ),
        )
