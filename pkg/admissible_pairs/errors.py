# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

import json
import logging
import traceback

# Configure logging
logger = logging.getLogger(__name__)


class AdmissiblePairsError(Exception):
	"""Root of every error raised by the package."""


class ValidationError(AdmissiblePairsError):
	"""Bad input or violated precondition."""


class PolynomialSyntaxError(ValidationError):
	"""Literal that does not match the polynomial grammar."""

	def __init__(self, message, line=1, column=1, expected=()):
		self.line = line
		self.column = column
		self.expected = tuple(sorted(set(expected)))
		detail = f"{message} at line {line}, column {column}"
		if self.expected:
			detail += f" (expected one of: {', '.join(self.expected)})"
		super().__init__(detail)


class ResourceLimitError(AdmissiblePairsError):
	"""A configured cap was hit before the computation finished."""

	def __init__(self, message, cap=None, value=None, partial=None):
		self.cap = cap
		self.value = value
		self.partial = partial
		super().__init__(message)


class StabilizationError(AdmissiblePairsError):
	"""Graded dimensions do not follow a polynomial on the requested window."""

	def __init__(self, message, table=None):
		self.table = dict(table or {})
		super().__init__(f"{message}; dimensions: {self.table}")


class InconclusiveError(AdmissiblePairsError):
	"""A decision procedure could neither confirm nor refute."""


class GateFailure(AdmissiblePairsError):
	"""A mathematical gate of the resolution failed."""

	def __init__(self, gate, message, certificates=None, trace=None):
		self.gate = gate
		self.certificates = certificates or {}
		self.trace = trace
		super().__init__(f"Gate '{gate}' failed: {message}")


class InternalConsistencyError(AdmissiblePairsError):
	"""Two independent computations of the same quantity disagree."""


def throw(message, exc=ValidationError):
	"""Log and raise ``exc(message)``."""
	logger.error(message)
	raise exc(message)


def log_error(method_name, error, context=None):
	"""Centralized error logging"""
	error_msg = f"Standard resolution error in {method_name}: {str(error)}"
	if context:
		error_msg += f" | Context: {json.dumps(context, default=str)}"

	logger.error(f"{error_msg}\n\nTraceback:\n{traceback.format_exc()}")
	return error_msg
