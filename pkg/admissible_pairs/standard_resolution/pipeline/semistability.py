# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Candidate-driven Gieseker semistability.

Sheaves on the plane are compared through reduced Hilbert polynomials
P(n) / rank. Pairs compare h^0(F~(n)) / rank F~ against h^0(E~(n)) / rank E~
on a window, with h^0 estimated by the dimensions of the saturated module.
"""

import logging
from dataclasses import dataclass, field

from sympy import Rational

from admissible_pairs.config import get_settings
from admissible_pairs.errors import ValidationError
from admissible_pairs.standard_resolution.blowup.blowup import SHIFT, polarization_chi
from admissible_pairs.standard_resolution.modres.hilbert import hilbert, hilbert_function, saturate_module
from admissible_pairs.standard_resolution.modres.modres import GradedModule, ModuleMap, kernel_map
from admissible_pairs.standard_resolution.pipeline.pipeline import plane_rank, transform_subsheaf

# Configure logging
logger = logging.getLogger(__name__)

STABLE = "stable"
SEMISTABLE = "semistable"
DESTABILIZED = "destabilized"


@dataclass
class SemistabilityReport:
	verdict: str
	rank: Rational
	reduced: tuple
	candidates: list = field(default_factory=list)
	destabilizing: list = field(default_factory=list)

	def to_json(self):
		return {
			"verdict": self.verdict,
			"rank": str(self.rank),
			"reduced": [str(c) for c in self.reduced],
			"candidates": self.candidates,
			"destabilizing": self.destabilizing,
		}


def compare(left, right):
	"""Sign of left - right for n >> 0, coefficient vectors constant term first."""
	size = max(len(left), len(right))
	left = list(left) + [0] * (size - len(left))
	right = list(right) + [0] * (size - len(right))
	for a, b in zip(reversed(left), reversed(right)):
		if a != b:
			return 1 if a > b else -1
	return 0


def certify_inclusion(inclusion, target, settings=None):
	"""The candidate map lands in ``target`` and has zero kernel."""
	if not isinstance(inclusion, ModuleMap):
		raise ValidationError("Candidates are given as inclusion maps F -> E")
	if inclusion.target is not target and not inclusion.target.same_submodule(target, settings):
		raise ValidationError("Candidate map does not land in the sheaf under test")
	if not kernel_map(inclusion, settings).source.is_zero(settings):
		raise ValidationError("Candidate map is not injective")


def _verdict(signs):
	if any(s > 0 for s in signs):
		return DESTABILIZED
	if any(s == 0 for s in signs):
		return SEMISTABLE
	return STABLE


def _sheaf_case(E, candidates, window, settings):
	rank_E = plane_rank(E, window, settings)
	if not rank_E:
		raise ValidationError("The sheaf under test has rank 0")
	reduced_E = tuple(c / rank_E for c in hilbert(E, window=window, settings=settings).coefficients)
	rows, signs, destabilizing = [], [], []
	for index, inclusion in enumerate(candidates):
		certify_inclusion(inclusion, E, settings)
		F = inclusion.source
		rank_F = plane_rank(F, window, settings)
		if not rank_F:
			raise ValidationError(f"Candidate {index} has rank 0")
		reduced_F = tuple(c / rank_F for c in hilbert(F, window=window, settings=settings).coefficients)
		sign = compare(reduced_F, reduced_E)
		signs.append(sign)
		if sign > 0:
			destabilizing.append(index)
		rows.append({"index": index, "rank": str(rank_F), "reduced": [str(c) for c in reduced_F], "comparison": sign})
	return SemistabilityReport(_verdict(signs), rank_E, reduced_E, rows, destabilizing)


def _h0_table(M, twist, points, settings):
	saturated = saturate_module(M, settings)
	return {n: hilbert_function(saturated, tuple(n * e for e in twist), settings) for n in points}


def _pair_rank(module, pair, settings):
	scheme = pair.scheme
	if scheme.identity:
		return plane_rank(module, settings=settings)
	polynomial = hilbert(module, scheme.twist, settings=settings, shift=SHIFT)
	reference = polarization_chi(scheme, settings=settings)
	if polynomial.degree < reference.degree:
		return Rational(0)
	return Rational(polynomial.leading_coefficient / reference.leading_coefficient)


def _pair_case(pair, candidates, window, settings):
	scheme = pair.scheme
	twist = (scheme.k,) if scheme.identity else scheme.twist
	window = tuple(window) if window is not None else (1, 4)
	points = range(window[0], window[1] + 1)
	rank_E = _pair_rank(pair.module, pair, settings)
	if not rank_E:
		raise ValidationError("The pair under test has rank 0")
	h0_E = _h0_table(pair.module, twist, points, settings)
	rows, signs, destabilizing = [], [], []
	for index, inclusion in enumerate(candidates):
		certify_inclusion(inclusion, pair.sheaf, settings)
		transformed = transform_subsheaf(inclusion.source, pair, settings)
		rank_F = _pair_rank(transformed, pair, settings)
		if not rank_F:
			raise ValidationError(f"Candidate {index} has rank 0")
		h0_F = _h0_table(transformed, twist, points, settings)
		per_point = {n: compare((Rational(h0_F[n]) / rank_F,), (Rational(h0_E[n]) / rank_E,)) for n in points}
		sign = max(per_point.values())
		signs.append(sign)
		if sign > 0:
			destabilizing.append(index)
		rows.append(
			{
				"index": index,
				"rank": str(rank_F),
				"h0": {str(n): h0_F[n] for n in points},
				"comparison": {str(n): v for n, v in per_point.items()},
			}
		)
	reduced = tuple(Rational(h0_E[n]) / rank_E for n in points)
	return SemistabilityReport(_verdict(signs), rank_E, reduced, rows, destabilizing)


def check_semistability(target, candidates, window=None, settings=None):
	"""Verdict table for a sheaf (GradedModule on the plane) or an admissible pair.

	``candidates`` are injective ModuleMaps F -> E; for pairs, F ⊂ E is taken on
	the plane and carried through the same resolution as E.
	"""
	settings = settings or get_settings()
	if isinstance(target, GradedModule):
		report = _sheaf_case(target, candidates, window, settings)
	else:
		report = _pair_case(target, candidates, window, settings)
	logger.info(f"Semistability against {len(candidates)} candidate(s): {report.verdict}")
	return report
