# Copyright (c) 2025, Standard Resolution Developers and contributors
# See license.txt

import logging
import unittest

from sympy import Rational, binomial

from admissible_pairs.errors import ValidationError
from admissible_pairs.standard_resolution.blowup.blowup import rees_embed
from admissible_pairs.standard_resolution.gbring.gbring import Ideal, Ring
from admissible_pairs.standard_resolution.modres.modres import GradedModule
from admissible_pairs.standard_resolution.pipeline.flatness import (
	base_ring,
	flat_check,
	flat_check_line,
	flatness_descent_check,
	nilpotency_depth,
)

# Configure logging for tests
logger = logging.getLogger(__name__)


def forms(n):
	return Rational(binomial(n + 2, 2))


class TestFlatness(unittest.TestCase):
	"""Flatness tables over the dual numbers and over the line"""

	def setUp(self):
		"""Set up P^2 over the dual numbers and P^2 x A^1"""
		self.dual = Ring(["x0", "x1", "x2", "eps"], [(1,), (1,), (1,), (0,)], ["eps^2"])
		self.family = Ring(["x0", "x1", "x2", "t"], [(1,), (1,), (1,), (0,)])

	def tearDown(self):
		"""Drop references to the fixtures"""
		self.dual = self.family = None

	def test_free_module_is_flat(self):
		"""O over the dual numbers has the same normalized dimensions at every depth"""
		report = flat_check(GradedModule.free(self.dual, [(0,)]))
		self.assertTrue(report.flat)
		self.assertEqual(report.base_length, 2)
		self.assertEqual(report.depth, 1)
		for n in range(1, 5):
			self.assertEqual(report.table[0][n], forms(n))
			self.assertEqual(report.table[1][n], forms(n))
			self.assertEqual(report.total_dimensions[n], 2 * forms(n))

	def test_special_fiber_is_not_flat(self):
		"""R/(eps) halves its normalized dimension at the full depth"""
		report = flat_check(GradedModule.cyclic(Ideal(self.dual, ["eps"])))
		self.assertFalse(report.flat)
		for n in range(1, 5):
			self.assertEqual(report.table[0][n], forms(n))
			self.assertEqual(report.table[1][n], forms(n) / 2)

	def test_moving_point_is_flat(self):
		"""The ideal of a point moving to first order is flat"""
		module = GradedModule.from_ideal(Ideal(self.dual, ["x0", "x1 + eps*x2"]))
		self.assertTrue(flat_check(module).flat)

	def test_extra_ideals_enter_the_table(self):
		"""Quotients by further ideals of the base are compared as well"""
		report = flat_check(GradedModule.free(self.dual, [(0,)]), ideals=["eps"])
		self.assertIn("eps", report.extra)
		self.assertEqual(report.extra["eps"][2], forms(2))
		self.assertIn("extra", report.to_json())

	def test_base_ring_and_depth(self):
		"""Λ keeps the relations of its own variables"""
		base = base_ring(self.dual, ["eps"])
		self.assertEqual(base.variables, ("eps",))
		self.assertEqual(nilpotency_depth(base), 1)
		cube = Ring(["e"], [(0,)], ["e^3"])
		self.assertEqual(nilpotency_depth(cube), 2)

	def test_invalid_base_variables(self):
		"""Base variables must be nilpotent of degree zero"""
		with self.assertRaises(ValidationError):
			flat_check(GradedModule.free(self.dual, [(0,)]), ["x0"])
		with self.assertRaises(ValidationError):
			flat_check(GradedModule.free(Ring(["x0", "x1", "x2"]), [(0,)]))
		with self.assertRaises(ValidationError):
			flat_check(GradedModule.free(self.family, [(0,)]), ["t"])

	def test_line_flatness(self):
		"""t-torsion free modules are flat over the line, R/(t) is not"""
		report = flat_check_line(GradedModule.free(self.family, [(0,)]))
		self.assertTrue(report.flat)
		self.assertTrue(report.torsion_free)
		torsion = flat_check_line(GradedModule.cyclic(Ideal(self.family, ["t"])))
		self.assertFalse(torsion.flat)
		self.assertFalse(torsion.torsion_free)

	def test_line_flatness_needs_the_coordinate(self):
		with self.assertRaises(ValidationError):
			flat_check_line(GradedModule.free(self.dual, [(0,)]), "t")

	def test_descent_through_a_section(self):
		"""Dimensions over (t^2) agree with those over its lift to the blowup of the line at 0"""
		line = Ring(["t"], [(0,)])
		model = rees_embed(Ideal(line, ["t"]), y_stem="s")
		report = flatness_descent_check(model, GradedModule.free(self.family, [(0,)]), Ideal(line, ["t^2"]))
		self.assertTrue(report.found)
		self.assertTrue(report.holds)
		self.assertEqual(report.left[1], 6)
		self.assertEqual(report.left, report.right)
		self.assertEqual(report.to_json()["chart"], report.chart)
