# Copyright (c) 2025, Standard Resolution Developers and contributors
# See license.txt

import logging
import unittest

from admissible_pairs.errors import ValidationError
from admissible_pairs.standard_resolution.fitting.fitting import (
	NOT_PRINCIPAL,
	PRINCIPAL,
	cramer_selftest,
	fitt0,
	fitting_ideal,
	is_invertible_ideal,
	lemma2_check,
	principality,
	reduction_is_irreducible,
)
from admissible_pairs.standard_resolution.gbring.gbring import Ideal, Ring
from admissible_pairs.standard_resolution.modres.modres import GradedModule, dual_and_ext

# Configure logging for tests
logger = logging.getLogger(__name__)

PLANE_CYCLIC = [
	["x"], ["y"], ["x*y"], ["x^2"], ["x^2*y"], ["x^3"], ["y^3"], ["x^2*y^2"], ["x^4"],
	["x^2 - y^2"], ["x*y + y^2"], ["x^3 - y^3"], ["x^2*y - x*y^2"],
	["x", "y"], ["x", "y^2"], ["x", "y^3"], ["x^2", "y"], ["x^2", "y^2"], ["x^2", "y^3"],
	["x^3", "y"], ["x^3", "y^2"], ["x^3", "y^3"], ["y^2", "x^3"],
	["x^2", "x*y"], ["x*y", "y^2"], ["x^2", "x*y", "y^2"], ["x^3", "x^2*y", "x*y^2"],
]
PLANE_SUMS = [(["x"], ["y"]), (["x^2"], ["x*y"]), (["x"], ["x", "y"]), (["x + y"], ["x - y"])]
DUAL_CYCLIC = [
	["x"], ["y"], ["x + eps"], ["x^2 + eps*y"], ["x*y + eps*x"], ["x^2 - y^2 + eps*x"],
	["x^3 + eps*y^2"], ["y^2 + eps*x"],
	["x + eps", "y"], ["x^2 + eps*y", "y^2"], ["x", "y^2 + eps*x"],
	["x", "y"], ["x", "y^2"], ["x^2", "y"], ["x^2", "y^2"],
	["x^2", "x*y"], ["x*y", "y^2"], ["x^2", "x*y", "y^2"],
]
DUAL_SUMS = [(["x + eps"], ["y"]), (["x"], ["x", "y"]), (["y + eps"], ["x^2"])]


class TestFitting(unittest.TestCase):
	"""Fitting ideals, principality and the hd = 1 criterion"""

	def setUp(self):
		"""Set up the plane, the affine plane and its first-order thickening"""
		self.plane = Ring(["x0", "x1", "x2"])
		self.affine = Ring(["x", "y"])
		self.dual = Ring(["x", "y", "eps"], quotient=["eps^2"])
		self.point = Ideal(self.plane, ["x0", "x1"])

	def tearDown(self):
		"""Drop references to the fixtures"""
		self.plane = self.affine = self.dual = self.point = None

	def cyclic(self, ring, generators):
		return GradedModule.cyclic(Ideal(ring, generators))

	def test_fitt0_of_skyscraper(self):
		"""Fitt0(R/(x0, x1)) = (x0, x1)"""
		result = fitt0(self.cyclic(self.plane, ["x0", "x1"]))
		self.assertEqual(result.ideal, self.point)
		self.assertEqual(result.minor_size, 1)
		self.assertEqual(result.shape, (1, 2))
		self.assertIsNone(result.distinguished)

	def test_fitt0_of_ext_module(self):
		"""Fitt0(Ext^1(I_p, R)) = (x0, x1)"""
		ext = dual_and_ext(GradedModule.from_ideal(self.point), 1)
		self.assertEqual(fitt0(ext).ideal, self.point)

	def test_fitt0_with_unit_minor(self):
		"""A locally free point has unit Fitting ideal"""
		module = GradedModule(self.plane, [(1,)], [(1,)], [["1"]])
		self.assertTrue(fitt0(module).ideal.is_unit())

	def test_fitt0_pads_missing_columns(self):
		"""Too few relations give the zero ideal"""
		module = GradedModule(self.plane, [(0,), (0,)], [(1,)], [["x0"], ["x1"]])
		result = fitt0(module)
		self.assertEqual(result.shape, (2, 2))
		self.assertTrue(result.ideal.is_zero())

	def test_fitt0_is_presentation_independent(self):
		"""A redundant relation does not change Fitt0"""
		minimal = self.cyclic(self.plane, ["x0", "x1"])
		padded = self.cyclic(self.plane, ["x0", "x1", "x0*x2 + x1^2"])
		self.assertEqual(fitt0(minimal).ideal, fitt0(padded).ideal)

	def test_fitt0_is_multiplicative_on_sums(self):
		"""Fitt0(M + N) = Fitt0(M) Fitt0(N)"""
		M = self.cyclic(self.plane, ["x0"])
		N = self.cyclic(self.plane, ["x1", "x2^2"])
		product = fitt0(M).ideal * fitt0(N).ideal
		self.assertEqual(fitt0(M.direct_sum(N)).ideal, product)

	def test_higher_fitting_ideals(self):
		"""Local freeness of rank 1 reads as Fitt_1 = (1), Fitt_0 = 0"""
		line = GradedModule.free(self.plane, [(0,)])
		self.assertTrue(fitting_ideal(line, 1).is_unit())
		self.assertTrue(fitting_ideal(line, 0).is_zero())
		sky = self.cyclic(self.plane, ["x0", "x1"])
		self.assertTrue(fitting_ideal(sky, 1).is_unit())

	def test_principality(self):
		"""Principal, non-principal and nilpotent examples"""
		verdict = principality(Ideal(self.plane, ["x0"]))
		self.assertEqual(verdict.verdict, PRINCIPAL)
		self.assertEqual(verdict.witness, self.plane.parse("x0"))
		self.assertEqual(principality(self.point).verdict, NOT_PRINCIPAL)
		self.assertEqual(principality(Ideal(self.plane, ["x0^2", "x0*x1"])).verdict, NOT_PRINCIPAL)

	def test_is_invertible_ideal(self):
		"""Invertible means principal on a non-zero-divisor"""
		result = is_invertible_ideal(Ideal(self.plane, ["x0"]))
		self.assertTrue(result.invertible)
		self.assertFalse(is_invertible_ideal(self.point).invertible)
		result = is_invertible_ideal(Ideal(self.dual, ["x + eps"]))
		self.assertTrue(result.invertible)
		self.assertEqual(result.witness, self.dual.parse("x + eps"))
		result = is_invertible_ideal(Ideal(self.dual, ["x*eps"]))
		self.assertFalse(result.invertible)
		self.assertEqual(result.principality.verdict, PRINCIPAL)

	def test_hd_one_matches_invertible_fitt0(self):
		"""hd 1 exactly when Fitt0 is invertible"""
		report = lemma2_check(self.cyclic(self.affine, ["x"]))
		self.assertEqual(report.hd, 1)
		self.assertTrue(report.invertible)
		self.assertTrue(report.biconditional_holds)

		report = lemma2_check(self.cyclic(self.affine, ["x", "y"]))
		self.assertEqual(report.hd, 2)
		self.assertFalse(report.invertible)
		self.assertTrue(report.biconditional_holds)

		report = lemma2_check(self.cyclic(self.dual, ["x + eps"]))
		self.assertEqual(report.hd, 1)
		self.assertTrue(report.invertible)
		self.assertTrue(report.biconditional_holds)
		self.assertEqual(report.to_json()["witness"], "x + eps")

	def test_biconditional_rejects_full_support(self):
		"""Modules supported everywhere violate the codimension hypothesis"""
		with self.assertRaises(ValidationError):
			lemma2_check(GradedModule.free(self.affine, [(0,)]))
		with self.assertRaises(ValidationError):
			lemma2_check(self.cyclic(self.dual, ["eps"]))

	def test_biconditional_needs_an_irreducible_reduction(self):
		"""Two crossing lines are refused, nilpotent thickenings of the plane are not"""
		crossing = Ring(["x", "y"], quotient=["x*y"])
		self.assertFalse(reduction_is_irreducible(crossing))
		self.assertTrue(reduction_is_irreducible(self.dual))
		self.assertTrue(reduction_is_irreducible(self.affine))
		with self.assertRaises(ValidationError):
			lemma2_check(self.cyclic(crossing, ["x"]))

	def test_biconditional_over_generated_modules(self):
		"""The criterion holds on monomial and binomial modules over k[x,y] and k[x,y,eps]/(eps^2)"""
		modules = [self.cyclic(self.affine, g) for g in PLANE_CYCLIC]
		modules += [self.cyclic(self.affine, a).direct_sum(self.cyclic(self.affine, b)) for a, b in PLANE_SUMS]
		modules += [self.cyclic(self.dual, g) for g in DUAL_CYCLIC]
		modules += [self.cyclic(self.dual, a).direct_sum(self.cyclic(self.dual, b)) for a, b in DUAL_SUMS]
		self.assertGreaterEqual(len(modules), 50)
		for index, module in enumerate(modules):
			with self.subTest(index=index):
				report = lemma2_check(module)
				self.assertTrue(report.biconditional_holds, report.to_json())
				self.assertIn(report.hd, (1, 2))

	def test_cramer_selftest(self):
		"""Cramer relations between the minors of a wide matrix"""
		single = Ring(["x"])
		self.assertTrue(cramer_selftest(single, [["x", "x + 1"]]))
		self.assertTrue(cramer_selftest(self.affine, seed=7))
		self.assertTrue(cramer_selftest(self.affine, shape=(3, 5), seed=11))
		nilpotent = Ring(["x", "eps"], quotient=["eps^2"])
		self.assertTrue(cramer_selftest(nilpotent, [["eps", "x", "x*eps"], ["x + eps", "eps", "1"]]))
		with self.assertRaises(ValidationError):
			cramer_selftest(self.affine, [["x"], ["y"]])


if __name__ == "__main__":
	unittest.main()
