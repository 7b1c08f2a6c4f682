# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Hilbert functions of presented modules and interpolated Hilbert polynomials."""

import logging
from dataclasses import dataclass, field

from sympy import Rational, Symbol, interpolate
from sympy import Poly as UnivariatePoly

from admissible_pairs.config import get_settings
from admissible_pairs.errors import StabilizationError, ValidationError
from admissible_pairs.standard_resolution.gbring.buchberger import leading_component
from admissible_pairs.standard_resolution.modres.modres import torsion_submodule

# Configure logging
logger = logging.getLogger(__name__)

n = Symbol("n")


@dataclass(frozen=True)
class HilbertPoly:
	"""Polynomial in n, coefficients constant term first, valid for n >= start."""

	coefficients: tuple
	start: int = field(compare=False)
	table: dict = field(default_factory=dict, compare=False)

	@classmethod
	def from_expression(cls, expression, start, table=None):
		coefficients = UnivariatePoly(expression, n).all_coeffs()[::-1] if expression != 0 else [Rational(0)]
		coefficients = [Rational(c) for c in coefficients]
		while len(coefficients) > 1 and coefficients[-1] == 0:
			coefficients.pop()
		return cls(tuple(coefficients), start, dict(table or {}))

	@property
	def degree(self):
		return -1 if self.coefficients == (0,) else len(self.coefficients) - 1

	@property
	def leading_coefficient(self):
		return self.coefficients[-1]

	def __call__(self, value):
		return sum((c * Rational(value) ** i for i, c in enumerate(self.coefficients)), Rational(0))

	def expression(self):
		return sum((c * n**i for i, c in enumerate(self.coefficients)), Rational(0))

	def __add__(self, other):
		return HilbertPoly.from_expression(self.expression() + other.expression(), max(self.start, other.start))

	def __sub__(self, other):
		return HilbertPoly.from_expression(self.expression() - other.expression(), max(self.start, other.start))

	def is_integer_valued(self, points):
		return all(self(p).is_integer for p in points)

	def to_json(self):
		return {
			"coefficients": [str(c) for c in self.coefficients],
			"start": self.start,
			"table": {str(k): v for k, v in sorted(self.table.items())},
		}


def _validate_grading(ring):
	for name, degree in zip(ring.variables, ring.degrees):
		if any(e < 0 for e in degree):
			raise ValidationError(f"Variable {name} has a negative degree {list(degree)}; graded pieces are infinite")


def _leads(M, settings):
	"""Per component: monomial parts of the leading terms of the relation module."""
	rank, width = M.rank, len(M.ring.variables)
	leads = [[] for _ in range(rank)]
	for g in M.relations().groebner_basis(settings):
		monomial = g.LM
		leads[leading_component(monomial, rank)].append(monomial[rank:rank + width])
	return leads


def _zero_degree_bounds(M, leads):
	"""Exponent bound per (component, degree-zero variable) from pure-power leads."""
	ring = M.ring
	zero = [i for i, d in enumerate(ring.degrees) if not any(d)]
	bounds = []
	for component, component_leads in enumerate(leads):
		row = {}
		for v in zero:
			pure = [m[v] for m in component_leads if m[v] and not any(e for j, e in enumerate(m) if j != v)]
			if not pure:
				raise ValidationError(
					f"Degree-zero variable {ring.variables[v]} is not nilpotent on generator {component}; "
					"graded pieces are infinite"
				)
			row[v] = min(pure)
		bounds.append(row)
	return bounds


def _count_standard(degrees, remaining, leads, bounds):
	"""Monomials of exact degree ``remaining`` divisible by no lead."""
	width = len(degrees)
	by_last = [[] for _ in range(width)]
	for lead in leads:
		last = max((i for i, e in enumerate(lead) if e), default=-1)
		if last < 0:
			return 0
		by_last[last].append(lead)
	exponents = [0] * width

	def recurse(k, remaining):
		if k == width:
			return 1 if not any(remaining) else 0
		degree = degrees[k]
		if k in bounds:
			top = bounds[k] - 1
		else:
			top = min(r // d for r, d in zip(remaining, degree) if d > 0)
		total = 0
		for e in range(top + 1):
			left = tuple(r - e * d for r, d in zip(remaining, degree))
			if any(r < 0 for r in left):
				break
			exponents[k] = e
			if any(all(exponents[i] >= lead[i] for i in range(k + 1)) for lead in by_last[k]):
				break
			total += recurse(k + 1, left)
		exponents[k] = 0
		return total

	return recurse(0, tuple(remaining))


def hilbert_function(M, degree, settings=None):
	"""dim_k of the graded piece M_degree."""
	settings = settings or get_settings()
	ring = M.ring
	_validate_grading(ring)
	degree = tuple(degree)
	if len(degree) != ring.grading_length:
		raise ValidationError(f"Degree {list(degree)} does not have grading length {ring.grading_length}")
	if not M.rank:
		return 0
	leads = _leads(M, settings)
	bounds = _zero_degree_bounds(M, leads)
	total = 0
	for component, twist in enumerate(M.target):
		remaining = tuple(a - b for a, b in zip(degree, twist))
		if any(r < 0 for r in remaining):
			continue
		total += _count_standard(ring.degrees, remaining, leads[component], bounds[component])
	return total


def saturate_module(M, settings=None):
	"""Quotient of M by its torsion with respect to every irrelevant ideal."""
	for ideal in M.ring.irrelevant_ideals():
		if M.rank:
			M = torsion_submodule(M, ideal, settings).quotient
	return M


def default_start(M):
	return sum(abs(e) for twist in (*M.target, *M.source) for e in twist) + len(M.ring.variables)


def _interpolated(table, start, stop, points_needed, what):
	sample = [(value, table[value]) for value in range(start, start + points_needed)]
	expression = interpolate(sample, n).expand()
	for value in range(start + points_needed, stop + 1):
		if expression.subs(n, value) != table[value]:
			raise StabilizationError(f"{what} do not follow a polynomial of degree <= {points_needed - 1} from n = {start}", table)
	return expression


def euler_characteristic(M, degree, shift, settings=None):
	"""chi of the sheaf of M twisted by ``degree``.

	The Hilbert function along degree + s * shift agrees with the Hilbert
	polynomial for large s; the interpolant is evaluated at s = 0.
	"""
	settings = settings or get_settings()
	points_needed = settings.hilbert_max_degree + 1
	twists = [e for twist in (*M.target, *M.source) for e in twist]
	start = max(0, -min(degree)) + max((abs(e) for e in twists), default=0) + 1
	stop = start + settings.hilbert_max_degree + settings.hilbert_guard
	table = {}
	for s in range(start, stop + 1):
		table[s] = hilbert_function(M, tuple(d + s * e for d, e in zip(degree, shift)), settings)
	expression = _interpolated(table, start, stop, points_needed, f"Dimensions around {list(degree)}")
	value = Rational(expression.subs(n, 0))
	return int(value) if value.is_integer else value


def hilbert(M, direction=None, window=None, settings=None, saturate=True, shift=None):
	"""Hilbert polynomial of M along n * direction.

	Dimensions are computed on the window, the first ``hilbert_max_degree + 1``
	points are interpolated and every further point must agree, else a
	StabilizationError carries the dimension table. With ``shift`` each table
	entry is the Euler characteristic at n * direction, so the window may start
	at 0 and directions need not grow in every grading row.
	"""
	settings = settings or get_settings()
	ring = M.ring
	if direction is None:
		if ring.grading_length != 1:
			raise ValidationError("A twist direction is required for multigraded rings")
		direction = (1,)
	direction = tuple(direction)
	if len(direction) != ring.grading_length:
		raise ValidationError(f"Direction {list(direction)} does not have grading length {ring.grading_length}")
	points_needed = settings.hilbert_max_degree + 1
	if window is None:
		start = default_start(M) if shift is None else 0
		window = (start, start + settings.hilbert_max_degree + settings.hilbert_guard)
	start, stop = int(window[0]), int(window[1])
	if stop - start + 1 < points_needed:
		raise ValidationError(f"Window {start}:{stop} has fewer than {points_needed} points")
	if saturate and shift is None:
		M = saturate_module(M, settings)
	table = {}
	for value in range(start, stop + 1):
		degree = tuple(value * d for d in direction)
		if shift is None:
			table[value] = hilbert_function(M, degree, settings)
		else:
			table[value] = euler_characteristic(M, degree, shift, settings)
	expression = _interpolated(table, start, stop, points_needed, "Dimensions")
	logger.debug(f"Hilbert polynomial along {list(direction)}: {expression}")
	return HilbertPoly.from_expression(expression, start, table)
