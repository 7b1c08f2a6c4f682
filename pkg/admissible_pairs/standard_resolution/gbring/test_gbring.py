# Copyright (c) 2025, Standard Resolution Developers and contributors
# See license.txt

import logging
import unittest

from admissible_pairs.errors import PolynomialSyntaxError, ValidationError
from admissible_pairs.standard_resolution.gbring.gbring import (
	Ideal,
	Ring,
	RingMap,
	colon_and_saturate,
	count_points,
	eliminate,
	groebner,
	in_radical,
	intersect,
	is_nonzerodivisor,
	krull_dimension,
	normal_form,
	saturate_elementwise,
	standard_monomials,
)

# Configure logging for tests
logger = logging.getLogger(__name__)


class TestGbring(unittest.TestCase):
	"""Groebner bases, ideal operations and literals over QQ"""

	def setUp(self):
		"""Set up the rings used throughout"""
		self.plane = Ring(["x0", "x1", "x2"])
		self.dual = Ring(["x", "y", "eps"], quotient=["eps^2"])
		self.affine = Ring(["x", "y"])

	def tearDown(self):
		"""Nothing is cached across tests"""
		self.plane = self.dual = self.affine = None

	def formatted(self, ideal):
		return [ideal.ring.format(g) for g in groebner(ideal).generators]

	def test_groebner_of_reduced_generators(self):
		"""Already reduced generators come back unchanged"""
		self.assertEqual(self.formatted(Ideal(self.plane, ["x0", "x1"])), ["x0", "x1"])

	def test_groebner_twisted_cubic_lex(self):
		"""Lex basis of the twisted cubic contains the plane cuspidal cubic"""
		ring = Ring(["x", "y", "z"], order="lex")
		ideal = Ideal(ring, ["y - x^2", "z - x^3"])
		self.assertIn("y^3 - z^2", self.formatted(ideal))
		self.assertEqual(ideal.ring.format(eliminate(ideal, ["x"]).generators[0]), "y^3 - z^2")

	def test_groebner_unit_ideal(self):
		"""Any ideal containing a unit has basis {1}"""
		ideal = Ideal(self.plane, ["1 + x0", "1 - x0"])
		self.assertEqual(self.formatted(ideal), ["1"])
		self.assertTrue(ideal.is_unit())

	def test_groebner_is_idempotent(self):
		"""Recomputing a reduced basis is the identity"""
		ideal = Ideal(self.plane, ["x0^2 - x1*x2", "x1^2 - x0*x2", "x2^2 - x0*x1"])
		once = groebner(ideal)
		twice = groebner(Ideal(self.plane, once.generators))
		self.assertEqual(self.formatted(once), self.formatted(twice))

	def test_normal_form(self):
		"""Normal forms against small ideals"""
		point = Ideal(self.plane, ["x0", "x1"])
		self.assertEqual(self.plane.format(normal_form(self.plane.parse("x0^2"), point)), "0")
		self.assertEqual(self.plane.format(normal_form(self.plane.parse("x2^2"), point)), "x2^2")
		line = Ideal(self.plane, ["x0 - x1"])
		self.assertEqual(self.plane.format(normal_form(self.plane.parse("x0*x2 + x2^2"), line)), "x1*x2 + x2^2")

	def test_normal_form_is_a_projection(self):
		"""nf(f - nf(f)) = 0"""
		ideal = Ideal(self.plane, ["x0*x1 - x2^2", "x0^3"])
		f = self.plane.parse("x0^3*x2 + x0*x1*x2 + 7*x1^4 - 2/3*x2^4")
		self.assertFalse(normal_form(f - normal_form(f, ideal), ideal))

	def test_normal_form_ring_mismatch(self):
		"""Polynomials of another ring are rejected"""
		with self.assertRaises(ValidationError):
			normal_form(self.affine.parse("x"), Ideal(self.plane, ["x0"]))

	def test_eliminate_rees_relation(self):
		"""Eliminating the Rees parameter of (x0, x1)"""
		ring = Ring(["u", "x0", "x1", "y", "z"])
		ideal = Ideal(ring, ["y - u*x0", "z - u*x1"])
		result = eliminate(ideal, ["u"])
		self.assertEqual(result.ring.variables, ("x0", "x1", "y", "z"))
		self.assertEqual(result, Ideal(result.ring, ["x1*y - x0*z"]))
		for g in result.generators:
			self.assertTrue(ideal.contains(ring.embed(g)))

	def test_eliminate_trivial_cases(self):
		"""Absent variables and plain substitution"""
		ring = Ring(["x0", "x1"])
		result = eliminate(Ideal(ring, ["x0"]), ["x1"])
		self.assertEqual(result, Ideal(result.ring, ["x0"]))
		ring = Ring(["u", "y"])
		result = eliminate(Ideal(ring, ["u - 1", "y - u"]), ["u"])
		self.assertEqual(result, Ideal(result.ring, ["y - 1"]))
		ideal = Ideal(self.plane, ["x0*x1", "x2^2"])
		self.assertEqual(eliminate(ideal, []), groebner(ideal))

	def test_colon_and_saturate(self):
		"""Monomial colon and saturation"""
		ring = Ring(["x0", "x1"])
		ideal = Ideal(ring, ["x0^2*x1"])
		by = Ideal(ring, ["x0"])
		self.assertEqual(colon_and_saturate(ideal, by, "colon").ideal, Ideal(ring, ["x0*x1"]))
		saturated = colon_and_saturate(ideal, by, "saturate")
		self.assertEqual(saturated.ideal, Ideal(ring, ["x1"]))
		self.assertEqual(saturate_elementwise(ideal, by), saturated.ideal)

	def test_saturation_step_count(self):
		"""The strict transform of a line stabilizes after two colon steps"""
		ring = Ring(["x0", "x1", "y", "z"])
		ideal = Ideal(ring, ["y*x1 - z*x0", "x0*y", "x0*z"])
		result = colon_and_saturate(ideal, Ideal(ring, ["x0"]), "saturate")
		self.assertLessEqual(result.steps, 2)
		self.assertEqual(result.ideal, Ideal(ring, ["y", "z"]))

	def test_saturation_contains_colon_contains_ideal(self):
		"""I ⊆ (I : J) ⊆ (I : J^∞)"""
		ideal = Ideal(self.plane, ["x0^3*x1", "x0*x2^2"])
		by = Ideal(self.plane, ["x0", "x2"])
		col = colon_and_saturate(ideal, by, "colon").ideal
		sat = colon_and_saturate(ideal, by, "saturate").ideal
		self.assertTrue(col.contains_ideal(ideal))
		self.assertTrue(sat.contains_ideal(col))
		self.assertTrue(sat.contains_ideal(saturate_elementwise(ideal, by)))
		self.assertTrue(saturate_elementwise(ideal, by).contains_ideal(sat))

	def test_unknown_colon_mode(self):
		"""Only colon and saturate are accepted"""
		ideal = Ideal(self.plane, ["x0"])
		with self.assertRaises(ValidationError):
			colon_and_saturate(ideal, ideal, "quotient")

	def test_intersect(self):
		"""(x0) ∩ (x1) = (x0*x1)"""
		result = intersect(Ideal(self.plane, ["x0"]), Ideal(self.plane, ["x1"]))
		self.assertEqual(result, Ideal(self.plane, ["x0*x1"]))

	def test_is_nonzerodivisor(self):
		"""Non-zero-divisors modulo nilpotents"""
		self.assertTrue(is_nonzerodivisor("x + eps", self.dual))
		self.assertFalse(is_nonzerodivisor("eps", self.dual))
		self.assertTrue(is_nonzerodivisor("x", self.affine))
		with self.assertRaises(ValidationError):
			is_nonzerodivisor("eps^2", self.dual)

	def test_nonzerodivisors_are_multiplicative(self):
		"""Products of non-zero-divisors stay non-zero-divisors"""
		ring = Ring(["x", "y", "eps"], quotient=["eps^3", "x*eps^2"])
		candidates = ["x + eps", "y", "y - eps", "x*y + eps^2", "eps", "x*eps"]
		verdicts = {c: is_nonzerodivisor(c, ring) for c in candidates}
		for a in candidates:
			for b in candidates:
				if verdicts[a] and verdicts[b]:
					product = ring.parse(a) * ring.parse(b)
					self.assertTrue(is_nonzerodivisor(product, ring), f"{a} * {b}")

	def test_krull_dimension(self):
		"""Affine dimensions from leading monomials"""
		self.assertEqual(krull_dimension(Ideal(self.plane, ["x0", "x1"])), 1)
		self.assertEqual(krull_dimension(Ideal(self.plane, [])), 3)
		self.assertEqual(krull_dimension(Ideal(self.plane, ["1"])), -1)
		self.assertEqual(krull_dimension(Ideal(self.dual, [])), 2)

	def test_count_points(self):
		"""Distinct geometric points of zero-dimensional schemes in the plane"""
		self.assertEqual(count_points(Ideal(self.plane, ["x0", "x1"])), 1)
		self.assertEqual(count_points(Ideal(self.plane, ["x0", "x1*x2"])), 2)
		self.assertEqual(count_points(Ideal(self.plane, ["x0^2", "x1"])), 1)
		self.assertEqual(count_points(Ideal(self.plane, ["x0^2 - x2^2", "x1^2 - x2^2"])), 4)

	def test_standard_monomials_and_radical(self):
		"""Finite quotients and radical membership"""
		self.assertEqual(standard_monomials(Ideal(self.affine, ["x^2", "y"])), [(1, 0), (0, 0)])
		with self.assertRaises(ValidationError):
			standard_monomials(Ideal(self.affine, ["x^2"]))
		self.assertTrue(in_radical("x", Ideal(self.affine, ["x^3", "y"])))
		self.assertFalse(in_radical("x + 1", Ideal(self.affine, ["x^3", "y"])))

	def test_ring_map(self):
		"""Ring maps check homogeneity and quotient compatibility"""
		target = Ring(["s", "t"])
		square = RingMap(self.plane, target, ["s^2", "s*t", "t^2"], degree_map=lambda d: (2 * d[0],))
		self.assertEqual(target.format(square("x0*x2 - x1^2")), "0")
		with self.assertRaises(ValidationError):
			RingMap(self.plane, target, ["s", "t^2", "t"])
		with self.assertRaises(ValidationError):
			RingMap(Ring(["a"], quotient=["a^2"]), Ring(["b"]), ["b"])

	def test_ring_validation(self):
		"""Ring blocks are validated before use"""
		with self.assertRaises(ValidationError):
			Ring(["x", "x"])
		with self.assertRaises(ValidationError):
			Ring(["x", "y"], quotient=["x^2 + y"])
		with self.assertRaises(ValidationError):
			Ring.from_json({"variables": ["x"], "weights": [1]})
		ring = Ring.from_json({"variables": ["x", "eps"], "degrees": [[1], [0]], "quotient": ["eps^2"]})
		self.assertEqual(ring.zero_degree_variables(), ["eps"])
		self.assertTrue(ring.is_graded_local())
		self.assertEqual(Ring.from_json(ring.to_json()), ring)

	def test_literal_round_trip(self):
		"""Printing then parsing is the identity"""
		ring = Ring(["x0", "x1", "x2"])
		for text in ["3/2*x0^2*x1 - x2^3", "-x0 + 1/7", "x0*x1*x2", "0"]:
			self.assertEqual(ring.format(ring.parse(ring.format(ring.parse(text)))), ring.format(ring.parse(text)))
		self.assertEqual(ring.format(ring.parse("(x0 + x1)^2 - 2*x0*x1")), "x0^2 + x1^2")
		self.assertEqual(ring.format(ring.parse(" 3 / 2 * x0 ")), "3/2*x0")

	def test_literal_errors(self):
		"""Syntax diagnostics carry position and expected tokens"""
		ring = Ring(["x"])
		with self.assertRaises(PolynomialSyntaxError) as context:
			ring.parse("x^")
		self.assertEqual(context.exception.column, 3)
		self.assertIn("integer", context.exception.expected)
		with self.assertRaises(PolynomialSyntaxError) as context:
			ring.parse("x + q")
		self.assertEqual(context.exception.column, 5)
		with self.assertRaises(PolynomialSyntaxError):
			ring.parse("1/0")
		with self.assertRaises(PolynomialSyntaxError):
			ring.parse("x $ 1")


if __name__ == "__main__":
	unittest.main()
