# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Flatness of graded modules over Artinian bases and over the line.

Over a local Artinian base Λ with maximal ideal 𝔪 the normalized dimensions

	ϖ^(m)(n) = dim (M ⊗ Λ/𝔪^(m+1))_n / dim Λ/𝔪^(m+1)

are independent of m exactly when every graded piece is Λ-free. The table
is compared with the direct count dim M_n = dim (M ⊗ Λ/𝔪)_n · dim Λ.
"""

import itertools
import logging
from dataclasses import dataclass, field

from sympy import Rational

from admissible_pairs.config import get_settings
from admissible_pairs.errors import InternalConsistencyError, ValidationError
from admissible_pairs.standard_resolution.blowup.blowup import infinitesimal_section
from admissible_pairs.standard_resolution.gbring.gbring import Ideal, Ring, RingMap, vector_space_dimension
from admissible_pairs.standard_resolution.modres.hilbert import hilbert_function
from admissible_pairs.standard_resolution.modres.modres import pullback, torsion_submodule

# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_WINDOW = (1, 4)


@dataclass
class FlatnessReport:
	flat: bool
	base_length: int
	depth: int
	twist: tuple
	window: tuple
	table: dict
	extra: dict = field(default_factory=dict)
	fiber_dimensions: dict = field(default_factory=dict)
	total_dimensions: dict = field(default_factory=dict)
	torsion_free: bool = None
	note: str = None

	def to_json(self):
		def rows(table):
			return {str(key): {str(n): str(v) for n, v in sorted(row.items())} for key, row in sorted(table.items(), key=lambda item: str(item[0]))}

		data = {
			"flat": self.flat,
			"base_length": self.base_length,
			"depth": self.depth,
			"twist": list(self.twist),
			"window": list(self.window),
			"table": rows(self.table),
			"extra": rows(self.extra),
			"fiber_dimensions": {str(n): v for n, v in sorted(self.fiber_dimensions.items())},
			"total_dimensions": {str(n): v for n, v in sorted(self.total_dimensions.items())},
		}
		if self.torsion_free is not None:
			data["torsion_free"] = self.torsion_free
		if self.note:
			data["note"] = self.note
		return data


def _default_twist(ring, twist):
	if twist is not None:
		twist = tuple(twist)
		if len(twist) != ring.grading_length:
			raise ValidationError(f"Twist {list(twist)} does not have grading length {ring.grading_length}")
		return twist
	if ring.grading_length != 1:
		raise ValidationError("A twist is required for multigraded rings")
	return (1,)


def _forms(ring, names, degree):
	"""Monomials of total degree ``degree`` in the variables ``names``."""
	found = []
	for combination in itertools.combinations_with_replacement(names, degree):
		monomial = ring.one
		for name in combination:
			monomial = monomial * ring.var(name)
		found.append(monomial)
	return found


def base_ring(ring, names):
	"""Λ: the named degree-zero variables with the quotient relations involving only them."""
	chosen = set(names)
	bare = Ring(list(names), [(0,)] * len(names))
	quotient = [bare.embed(q) for q in ring.quotient if ring.support(q) <= chosen]
	return Ring(bare.variables, bare.degrees, quotient)


def nilpotency_depth(base, settings=None):
	"""Largest m with 𝔪^m nonzero in Λ."""
	settings = settings or get_settings()
	names = list(base.variables)
	for m in range(1, settings.max_nilpotency + 2):
		if Ideal(base, _forms(base, names, m)).is_zero(settings):
			return m - 1
	raise ValidationError(f"Base variables {names} are not nilpotent within {settings.max_nilpotency} steps")


def flat_check(M, nilpotent=None, twist=None, window=None, depths=None, ideals=None, settings=None):
	"""Flatness of M over the Artinian base of its nilpotent degree-zero variables.

	``ideals`` adds further ideals 𝔞 of Λ (strings or Ideals over the base ring)
	whose normalized dimensions dim (M ⊗ Λ/𝔞)_n / dim Λ/𝔞 must agree as well.
	"""
	settings = settings or get_settings()
	ring = M.ring
	names = list(nilpotent) if nilpotent is not None else ring.zero_degree_variables()
	if not names:
		raise ValidationError("Flatness needs at least one base variable")
	for name in names:
		if ring.degrees[ring.index(name)] != (0,) * ring.grading_length:
			raise ValidationError(f"Base variable {name} must have degree zero")
		if not ring.is_nilpotent(ring.var(name), settings):
			raise ValidationError(f"Base variable {name} is not nilpotent; truncate the base first")
	twist = _default_twist(ring, twist)
	window = tuple(window) if window is not None else DEFAULT_WINDOW
	base = base_ring(ring, names)
	full = nilpotency_depth(base, settings)
	base_length = vector_space_dimension(Ideal(base, []), settings)
	requested = {min(max(int(m), 0), full) for m in (depths or [])}
	chosen = sorted(requested | {0, full})
	points = range(window[0], window[1] + 1)

	table = {}
	for m in chosen:
		truncated = M.tensor_with_quotient(Ideal(ring, _forms(ring, names, m + 1)), settings)
		length = vector_space_dimension(Ideal(base, _forms(base, names, m + 1)), settings)
		table[m] = {n: Rational(hilbert_function(truncated, tuple(n * e for e in twist), settings), length) for n in points}

	extra = {}
	for ideal in ideals or []:
		if isinstance(ideal, str):
			ideal = Ideal(base, [ideal])
		elif not isinstance(ideal, Ideal):
			ideal = Ideal(base, list(ideal))
		length = vector_space_dimension(ideal, settings)
		lifted = Ideal(ring, [ring.embed(g) for g in ideal.generators])
		restricted = M.tensor_with_quotient(lifted, settings)
		label = ",".join(ideal.to_json())
		extra[label] = {n: Rational(hilbert_function(restricted, tuple(n * e for e in twist), settings), length) for n in points}

	flat = all(len({row[n] for row in [*table.values(), *extra.values()]}) == 1 for n in points)
	fiber = {n: int(table[0][n]) for n in points}
	total = {n: hilbert_function(M, tuple(n * e for e in twist), settings) for n in points}
	oracle = all(total[n] == fiber[n] * base_length for n in points)
	if flat != oracle:
		raise InternalConsistencyError(
			f"Flatness table says {flat} but dim M_n = dim fiber_n * {base_length} says {oracle}"
		)
	logger.info(f"Flatness over a base of length {base_length}: {'flat' if flat else 'not flat'}")
	return FlatnessReport(flat, base_length, full, twist, window, table, extra, fiber, total)


def flat_check_line(M, t_name="t", twist=None, window=None, depth=2, settings=None):
	"""Flatness over A^1 near t = 0 from the truncations k[t]/(t^(m+1)) and a t-torsion test."""
	settings = settings or get_settings()
	ring = M.ring
	if t_name not in ring.variables:
		raise ValidationError(f"Module ring has no line coordinate {t_name}")
	t = ring.var(t_name)
	truncated_ring = ring.with_quotient([t ** (depth + 1)])
	report = flat_check(M.over_ring(truncated_ring), [t_name], twist, window, range(depth + 1), settings=settings)
	torsion_free = torsion_submodule(M, Ideal(ring, [t]), settings).torsion.is_zero(settings)
	report.torsion_free = torsion_free
	if torsion_free and not report.flat:
		raise InternalConsistencyError("Module is t-torsion free but a truncation is not flat")
	if report.flat and not torsion_free:
		report.flat = False
		report.note = f"t-torsion is not seen by the truncations up to depth {depth}"
	return report


@dataclass
class DescentReport:
	found: bool
	holds: bool = None
	chart: str = None
	twist: tuple = None
	left: dict = field(default_factory=dict)
	right: dict = field(default_factory=dict)

	def to_json(self):
		data = {"found": self.found}
		if self.found:
			data.update(
				{
					"holds": self.holds,
					"chart": self.chart,
					"twist": list(self.twist),
					"left": {str(n): v for n, v in sorted(self.left.items())},
					"right": {str(n): v for n, v in sorted(self.right.items())},
				}
			)
		return data


def flatness_descent_check(X, M, Z, twist=None, window=None, settings=None):
	"""Graded dimensions of M over Z_t against M pulled back to the lifted subscheme Z'.

	X is a blowup of the base T of the family, Z an ideal of a zero-dimensional
	subscheme of T; M lives over a ring containing the coordinates of T.
	"""
	settings = settings or get_settings()
	ring = M.ring
	T = X.base
	missing = [v for v in T.variables if v not in ring.variables]
	if missing:
		raise ValidationError(f"Module ring lacks the base coordinates {missing}")
	if any(any(d) for d in T.degrees):
		raise ValidationError("The base of the family must be affine: every coordinate of degree zero")
	twist = _default_twist(ring, twist)
	window = tuple(window) if window is not None else DEFAULT_WINDOW
	section = infinitesimal_section(X, Z, settings)
	if not section.found:
		logger.info("No infinitesimal section; descent check not applicable")
		return DescentReport(False)

	degrees = [tuple(n * e for e in twist) for n in range(window[0], window[1] + 1)]
	on_base = M.tensor_with_quotient(Ideal(ring, [ring.embed(g) for g in Z.generators]), settings)
	left = {n: hilbert_function(on_base, degree, settings) for n, degree in zip(range(window[0], window[1] + 1), degrees)}

	chart = section.target
	clash = [v for v in chart.variables if v not in T.variables and v in ring.variables]
	if clash:
		raise ValidationError(f"Chart coordinates {clash} clash with the module ring")
	kept = [v for v in ring.variables if v not in T.variables]
	zero = (0,) * ring.grading_length
	bare = Ring(
		[*kept, *chart.variables],
		[*[ring.degrees[ring.index(v)] for v in kept], *[zero] * len(chart.variables)],
	)
	forward = section.forward
	images = [
		bare.embed(chart.without_quotient().embed(forward(section.base_chart.var(v)))) if v in T.variables else bare.var(v)
		for v in ring.variables
	]
	bare_map = RingMap(ring.without_quotient(), bare, images)
	quotient = [bare_map(q) for q in ring.quotient]
	quotient += [bare.embed(q) for q in chart.quotient]
	quotient += [bare.embed(g) for g in section.subscheme.ideal.generators]
	lifted_ring = bare.with_quotient(quotient)
	rho = RingMap(ring, lifted_ring, images)
	lifted = pullback(M, rho)
	right = {n: hilbert_function(lifted, degree, settings) for n, degree in zip(range(window[0], window[1] + 1), degrees)}
	holds = left == right
	logger.info(f"Descent check on chart {section.chart}: {'equal' if holds else 'different'} dimensions")
	return DescentReport(True, holds, section.chart, twist, left, right)
