# Copyright (c) 2025, Standard Resolution Developers and contributors
# See license.txt

import logging
import unittest

from sympy import Rational

from admissible_pairs.errors import StabilizationError, ValidationError
from admissible_pairs.standard_resolution.gbring.gbring import Ideal, Ring
from admissible_pairs.standard_resolution.modres.hilbert import hilbert, hilbert_function
from admissible_pairs.standard_resolution.modres.modres import GradedModule

# Configure logging for tests
logger = logging.getLogger(__name__)


class TestHilbert(unittest.TestCase):
	"""Graded dimensions and interpolated Hilbert polynomials"""

	def setUp(self):
		"""Set up the plane ring with the point (0:0:1)"""
		self.ring = Ring(["x0", "x1", "x2"])
		self.point = Ideal(self.ring, ["x0", "x1"])

	def tearDown(self):
		"""Drop references to the fixtures"""
		self.ring = self.point = None

	def test_hilbert_polynomial_of_the_plane(self):
		"""R has Hilbert polynomial (n+1)(n+2)/2"""
		result = hilbert(GradedModule.free(self.ring, [(0,)]))
		self.assertEqual(result.coefficients, (1, Rational(3, 2), Rational(1, 2)))
		self.assertEqual(result(0), 1)
		self.assertEqual(result.to_json()["coefficients"], ["1", "3/2", "1/2"])

	def test_equality_ignores_the_window(self):
		"""The same polynomial read off two windows compares equal"""
		early = hilbert(GradedModule.free(self.ring, [(0,)]), window=(0, 6))
		late = hilbert(GradedModule.free(self.ring, [(0,)]), window=(4, 10))
		self.assertNotEqual(early.start, late.start)
		self.assertEqual(early, late)
		self.assertEqual(len({early, late}), 1)
		self.assertNotEqual(early, hilbert(GradedModule.from_ideal(self.point), window=(4, 10)))

	def test_hilbert_polynomial_of_point_ideal(self):
		"""Forms vanishing at a point: (n+1)(n+2)/2 - 1"""
		result = hilbert(GradedModule.from_ideal(self.point))
		self.assertEqual(result.coefficients, (0, Rational(3, 2), Rational(1, 2)))
		self.assertTrue(result.is_integer_valued(range(-3, 10)))

	def test_hilbert_polynomial_of_skyscraper(self):
		"""A reduced point has constant Hilbert polynomial 1"""
		result = hilbert(GradedModule.cyclic(self.point), window=(0, 5), saturate=False)
		self.assertEqual(result.coefficients, (1,))
		self.assertEqual(result.degree, 0)

	def test_additivity_on_exact_sequence(self):
		"""0 -> I_p -> R -> R/I_p -> 0"""
		window = (2, 7)
		whole = hilbert(GradedModule.free(self.ring, [(0,)]), window=window, saturate=False)
		sub = hilbert(GradedModule.from_ideal(self.point), window=window, saturate=False)
		quotient = hilbert(GradedModule.cyclic(self.point), window=window, saturate=False)
		self.assertEqual(whole, sub + quotient)

	def test_hilbert_function_values(self):
		"""Direct dimension counts"""
		module = GradedModule.cyclic(Ideal(self.ring, ["x0^3", "x1^3"]))
		self.assertEqual(hilbert_function(module, (3,)), 8)
		self.assertEqual(hilbert_function(module, (6,)), 9)
		self.assertEqual(hilbert_function(GradedModule.free(self.ring, [(2,)]), (1,)), 0)

	def test_stabilization_failure_reports_the_table(self):
		"""A window below the regularity is refused with its dimensions"""
		module = GradedModule.cyclic(Ideal(self.ring, ["x0^3", "x1^3"]))
		with self.assertRaises(StabilizationError) as context:
			hilbert(module, window=(0, 5), saturate=False)
		self.assertEqual(context.exception.table[0], 1)
		self.assertEqual(context.exception.table[3], 8)

	def test_bigraded_direction(self):
		"""P1 x P1 along (1,1) gives (n+1)^2"""
		ring = Ring(["x0", "x1", "y0", "y1"], [(1, 0), (1, 0), (0, 1), (0, 1)])
		result = hilbert(GradedModule.free(ring, [(0, 0)]), direction=(1, 1), window=(0, 5), saturate=False)
		self.assertEqual(result.coefficients, (1, 2, 1))
		with self.assertRaises(ValidationError):
			hilbert(GradedModule.free(ring, [(0, 0)]), window=(0, 5))

	def test_euler_characteristic_along_a_flat_direction(self):
		"""On P1 x P1, chi(O(0, n)) = n + 1 and chi(O(-1, n)) = 0"""
		ring = Ring(["x0", "x1", "y0", "y1"], [(1, 0), (1, 0), (0, 1), (0, 1)])
		result = hilbert(GradedModule.free(ring, [(0, 0)]), direction=(0, 1), shift=(1, 1))
		self.assertEqual(result.coefficients, (1, 1))
		self.assertEqual(result.start, 0)
		twisted = hilbert(GradedModule.free(ring, [(1, 0)]), direction=(0, 1), shift=(1, 1))
		self.assertEqual(twisted.coefficients, (0,))

	def test_degree_zero_variables(self):
		"""Nilpotent degree-zero variables are counted, others refused"""
		thick = Ring(["x", "t"], [(1,), (0,)], quotient=["t^2"])
		result = hilbert(GradedModule.free(thick, [(0,)]), window=(0, 4), saturate=False)
		self.assertEqual(result.coefficients, (2,))
		line = Ring(["x", "t"], [(1,), (0,)])
		with self.assertRaises(ValidationError):
			hilbert_function(GradedModule.free(line, [(0,)]), (2,))
		negative = Ring(["u", "x"], [(-1,), (1,)])
		with self.assertRaises(ValidationError):
			hilbert_function(GradedModule.free(negative, [(0,)]), (1,))

	def test_window_too_short(self):
		"""Interpolation needs enough points"""
		with self.assertRaises(ValidationError):
			hilbert(GradedModule.free(self.ring, [(0,)]), window=(3, 4))


if __name__ == "__main__":
	unittest.main()
