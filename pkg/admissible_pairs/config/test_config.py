# Copyright (c) 2025, Standard Resolution Developers and contributors
# See license.txt

import logging
import unittest

from admissible_pairs import hooks
from admissible_pairs.config import SCHEMA_PATH, ResolutionSettings, load_schema, parse_overrides
from admissible_pairs.errors import ValidationError

# Configure logging for tests
logger = logging.getLogger(__name__)


class TestResolutionSettings(unittest.TestCase):
	"""Settings schema, overrides and validation"""

	def setUp(self):
		"""Set up default settings"""
		self.settings = ResolutionSettings()

	def tearDown(self):
		"""Drop the settings"""
		self.settings = None

	def test_schema_comes_from_the_hooks(self):
		"""The registered schema declares every settings field"""
		self.assertEqual(SCHEMA_PATH.as_posix()[-len(hooks.settings_schema):], hooks.settings_schema)
		schema = load_schema()
		self.assertEqual(schema["field_order"], list(self.settings.as_dict()))
		defaults = {row["fieldname"]: row["default"] for row in schema["fields"]}
		self.assertEqual(self.settings.hilbert_max_degree, defaults["hilbert_max_degree"])
		self.assertEqual(self.settings.default_k, defaults["default_k"])

	def test_overrides(self):
		"""key=value pairs and JSON objects are both accepted"""
		self.assertEqual(parse_overrides("max_degree=40, workers=2"), {"max_degree": 40, "workers": 2})
		self.assertEqual(parse_overrides('{"workers": 3}'), {"workers": 3})
		self.assertEqual(parse_overrides(""), {})
		self.assertEqual(self.settings.updated(workers=4).workers, 4)
		with self.assertRaises(ValidationError):
			parse_overrides("max_degree")
		with self.assertRaises(ValidationError):
			parse_overrides("max_degree=high")
		with self.assertRaises(ValidationError):
			parse_overrides("[1, 2]")

	def test_invalid_values_are_rejected(self):
		"""Caps must be positive integers and keys must exist"""
		with self.assertRaises(ValidationError):
			self.settings.updated(max_degree=0)
		with self.assertRaises(ValidationError):
			self.settings.updated(speed=9)
		with self.assertRaises(ValidationError):
			self.settings.updated(section_search_values=[])
		self.assertEqual(self.settings.updated(hilbert_guard=0).hilbert_guard, 0)
