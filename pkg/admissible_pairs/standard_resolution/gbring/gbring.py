# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Multigraded polynomial rings over QQ, ideals and Groebner-basis operations.

Rings are (polynomial ring, quotient ideal) pairs; every operation appends the
quotient generators internally. Polynomials are sympy ``PolyElement`` values
of ``Ring.poly_ring``.
"""

import itertools
import json
import logging
import random
from collections import namedtuple
from functools import reduce
from pathlib import Path

from sympy.polys.domains import QQ
from sympy.polys.orderings import MonomialOrder, ProductOrder, grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from admissible_pairs.config import get_settings
from admissible_pairs.errors import ResourceLimitError, ValidationError
from admissible_pairs.standard_resolution.gbring.buchberger import buchberger
from admissible_pairs.standard_resolution.gbring.literals import IDENTIFIER, format_polynomial, parse_polynomial

# Configure logging
logger = logging.getLogger(__name__)

Poly = PolyElement

ColonResult = namedtuple("ColonResult", ["ideal", "steps"])

SCHEMA_PATH = Path(__file__).with_name("gbring.json")


class WeightedOrder(MonomialOrder):
	"""Degree reverse lexicographic order refined from a non-negative weight row."""

	alias = "wgrevlex"
	is_global = True

	def __init__(self, weights):
		self.weights = tuple(weights)

	def __call__(self, monomial):
		return (
			sum(w * e for w, e in zip(self.weights, monomial)),
			sum(monomial),
			tuple(reversed([-e for e in monomial])),
		)

	def __eq__(self, other):
		return isinstance(other, WeightedOrder) and self.weights == other.weights

	def __hash__(self):
		return hash((self.__class__, self.weights))


def monomial_projection(indices):
	indices = tuple(indices)
	return lambda monomial: tuple(monomial[i] for i in indices)


class Ring:
	"""Polynomial ring k[x_1..x_n] with a multigrading and an optional quotient ideal Q.

	``order`` is ``"grevlex"`` (weighted by the first grading row), ``"lex"``,
	or ``("block", names)`` for an elimination order ranking ``names`` first.
	"""

	def __init__(self, variables, degrees=None, quotient=(), order="grevlex"):
		self.variables = tuple(str(v) for v in variables)
		if degrees is None:
			degrees = [(1,)] * len(self.variables)
		self.degrees = tuple(tuple(int(d) for d in degree) for degree in degrees)
		self.order = order if isinstance(order, str) else (order[0], tuple(order[1]))
		self.validate_variables()
		self.poly_ring = PolyRing(self.variables, QQ, self._order_key())
		self.quotient = tuple(q for q in (self.coerce(q) for q in quotient) if q)
		self._quotient_basis = None
		self._signature = None
		self.validate_quotient()

	def validate_variables(self):
		if not self.variables:
			raise ValidationError("A ring needs at least one variable")
		if len(set(self.variables)) != len(self.variables):
			raise ValidationError(f"Variable names must be unique: {list(self.variables)}")
		for name in self.variables:
			if not IDENTIFIER.match(name):
				raise ValidationError(f"Variable name {name!r} is not an identifier")
		if len(self.degrees) != len(self.variables):
			raise ValidationError("One degree vector per variable is required")
		lengths = {len(d) for d in self.degrees}
		if len(lengths) != 1 or 0 in lengths:
			raise ValidationError("Degree vectors must share a common positive length")
		if self.order not in ("grevlex", "lex") and not (isinstance(self.order, tuple) and self.order[0] == "block"):
			raise ValidationError(f"Unknown monomial order {self.order!r}")
		if isinstance(self.order, tuple):
			unknown = set(self.order[1]) - set(self.variables)
			if unknown or not self.order[1]:
				raise ValidationError(f"Block order names unknown or empty variable set: {sorted(unknown)}")

	def validate_quotient(self):
		for q in self.quotient:
			if not self.is_homogeneous(q):
				raise ValidationError(f"Quotient generator {self.format(q)} is not homogeneous")

	def _order_key(self):
		weights = [max(d[0], 0) for d in self.degrees]
		if self.order == "lex":
			return lex
		if self.order == "grevlex":
			return WeightedOrder(weights) if any(w != 1 for w in weights) else grevlex
		first = [i for i, v in enumerate(self.variables) if v in self.order[1]]
		rest = [i for i in range(len(self.variables)) if i not in first]
		blocks = [(grevlex, monomial_projection(first))]
		if rest:
			blocks.append((WeightedOrder([weights[i] for i in rest]), monomial_projection(rest)))
		return ProductOrder(*blocks)

	# Construction

	@classmethod
	def from_json(cls, data):
		"""Build a ring from the ring block of an input file."""
		if not isinstance(data, dict):
			raise ValidationError("Ring block must be an object")
		allowed = {row["fieldname"] for row in load_schema()["ring"]}
		unknown = sorted(set(data) - allowed)
		if unknown:
			raise ValidationError(f"Unknown ring keys: {', '.join(unknown)}")
		if "variables" not in data:
			raise ValidationError("Ring block requires 'variables'")
		ring = cls(data["variables"], data.get("degrees"), order=data.get("order", "grevlex"))
		if data.get("quotient"):
			ring = ring.with_quotient(data["quotient"])
		return ring

	def to_json(self):
		data = {
			"variables": list(self.variables),
			"degrees": [list(d) for d in self.degrees],
			"quotient": [self.format(q) for q in self.quotient],
		}
		if self.order != "grevlex":
			data["order"] = self.order if isinstance(self.order, str) else [self.order[0], list(self.order[1])]
		return data

	def with_quotient(self, extra):
		extra = [self.coerce(q) for q in extra]
		return Ring(self.variables, self.degrees, [*self.quotient, *extra], self.order)

	def without_quotient(self):
		return Ring(self.variables, self.degrees, (), self.order)

	def with_order(self, order):
		ring = Ring(self.variables, self.degrees, (), order)
		return Ring(self.variables, self.degrees, [ring.embed(q) for q in self.quotient], order)

	def extend(self, variables, degrees=None, front=False, order=None):
		"""Ring with additional variables (quotient carried over)."""
		variables = list(variables)
		if degrees is None:
			degrees = [(0,) * self.grading_length] * len(variables)
		if front:
			names, degs = [*variables, *self.variables], [*degrees, *self.degrees]
		else:
			names, degs = [*self.variables, *variables], [*self.degrees, *degrees]
		bare = Ring(names, degs, (), order or "grevlex")
		return Ring(names, degs, [bare.embed(q) for q in self.quotient], order or "grevlex")

	def subring(self, drop):
		"""Ring on the remaining variables; quotient generators involving ``drop`` are discarded."""
		drop = set(drop)
		keep = [i for i, v in enumerate(self.variables) if v not in drop]
		bare = Ring([self.variables[i] for i in keep], [self.degrees[i] for i in keep])
		quotient = [bare.embed(q) for q in self.quotient if not (self.support(q) & drop)]
		return Ring(bare.variables, bare.degrees, quotient)

	def regraded(self, degrees):
		return Ring(self.variables, degrees, self.quotient, self.order)

	def fresh_names(self, stem, count):
		"""``count`` variable names starting with ``stem`` that are not used in this ring."""
		names, index = [], 0
		while len(names) < count:
			candidate = f"{stem}{index}"
			if candidate not in self.variables:
				names.append(candidate)
			index += 1
		return names

	# Elements

	@property
	def grading_length(self):
		return len(self.degrees[0])

	@property
	def gens(self):
		return self.poly_ring.gens

	@property
	def zero(self):
		return self.poly_ring.zero

	@property
	def one(self):
		return self.poly_ring.one

	def var(self, name):
		return self.poly_ring.gens[self.variables.index(name)]

	def index(self, name):
		return self.variables.index(name)

	def coerce(self, value):
		if isinstance(value, PolyElement):
			if value.ring == self.poly_ring:
				return value
			return self.embed(value)
		if isinstance(value, str):
			return parse_polynomial(value, self.poly_ring)
		return self.poly_ring.ground_new(QQ.convert(value))

	def parse(self, text):
		return parse_polynomial(text, self.poly_ring)

	def format(self, poly):
		return format_polynomial(self.coerce(poly))

	def embed(self, poly):
		"""Transport ``poly`` into this ring by variable names."""
		source = [str(s) for s in poly.ring.symbols]
		if tuple(source) == self.variables:
			return self.poly_ring.from_dict(dict(poly))
		positions = []
		for name in source:
			if name not in self.variables:
				if any(m[source.index(name)] for m in poly.itermonoms()):
					raise ValidationError(f"Variable {name} does not exist in target ring")
				positions.append(None)
			else:
				positions.append(self.variables.index(name))
		terms = {}
		n = len(self.variables)
		for monomial, coefficient in poly.iterterms():
			exponents = [0] * n
			for position, e in zip(positions, monomial):
				if position is not None:
					exponents[position] = e
			terms[tuple(exponents)] = coefficient
		return self.poly_ring.from_dict(terms)

	def support(self, poly):
		used = set()
		for monomial in poly.itermonoms():
			used.update(v for v, e in zip(self.variables, monomial) if e)
		return used

	# Grading

	def monomial_degree(self, monomial):
		g = self.grading_length
		return tuple(sum(e * d[c] for e, d in zip(monomial, self.degrees)) for c in range(g))

	def is_homogeneous(self, poly):
		degrees = {self.monomial_degree(m) for m in poly.itermonoms()}
		return len(degrees) <= 1

	def degree(self, poly):
		"""Multidegree of a homogeneous nonzero polynomial."""
		degrees = {self.monomial_degree(m) for m in poly.itermonoms()}
		if not degrees:
			return None
		if len(degrees) > 1:
			raise ValidationError(f"Polynomial {self.format(poly)} is not homogeneous")
		return degrees.pop()

	def zero_degree_variables(self):
		return [v for v, d in zip(self.variables, self.degrees) if not any(d)]

	def irrelevant_ideals(self):
		"""One irrelevant ideal per grading row, generated by the variables living in that row only."""
		ideals = []
		for c in range(self.grading_length):
			names = [
				v for v, d in zip(self.variables, self.degrees) if d[c] > 0 and all(d[o] == 0 for o in range(len(d)) if o != c)
			]
			if names:
				ideals.append(Ideal(self, [self.var(v) for v in names]))
		return ideals

	def is_graded_local(self, settings=None):
		"""True when degree-zero variables are nilpotent and all degrees are non-negative."""
		if any(e < 0 for d in self.degrees for e in d):
			return False
		return all(self.is_nilpotent(self.var(v), settings) for v in self.zero_degree_variables())

	# Quotient

	def quotient_basis(self, settings=None):
		if self._quotient_basis is None:
			self._quotient_basis = buchberger(list(self.quotient), settings=settings) if self.quotient else []
		return self._quotient_basis

	def reduce(self, poly, settings=None):
		poly = self.coerce(poly)
		basis = self.quotient_basis(settings)
		return poly.rem(basis) if basis and poly else poly

	def is_nilpotent(self, poly, settings=None):
		settings = settings or get_settings()
		poly = self.reduce(poly, settings)
		power = poly
		for _ in range(settings.max_nilpotency):
			if not power:
				return True
			power = self.reduce(power * poly, settings)
		return not power

	def quotient_ideal(self):
		return Ideal(self, self.quotient)

	# Identity

	def signature(self):
		if self._signature is None:
			quotient = tuple(format_polynomial(q) for q in self.quotient)
			self._signature = (self.variables, self.degrees, quotient, str(self.order))
		return self._signature

	def __eq__(self, other):
		return isinstance(other, Ring) and self.signature() == other.signature()

	def __hash__(self):
		return hash(self.signature())

	def __repr__(self):
		quotient = f"/({', '.join(self.format(q) for q in self.quotient)})" if self.quotient else ""
		return f"Ring(QQ[{', '.join(self.variables)}]{quotient})"


class Ideal:
	"""Ideal of a Ring given by generators; the Groebner basis is cached per instance."""

	def __init__(self, ring, generators):
		self.ring = ring
		self.generators = tuple(g for g in (ring.coerce(g) for g in generators) if g)
		self._basis = None

	def validate(self):
		for g in self.generators:
			if g.ring != self.ring.poly_ring:
				raise ValidationError("Ideal generators must lie in the owning ring")

	def groebner_basis(self, settings=None):
		"""Reduced Groebner basis of generators + quotient relations."""
		if self._basis is None:
			self._basis = buchberger([*self.generators, *self.ring.quotient], settings=settings)
		return self._basis

	def normal_form(self, poly, settings=None):
		poly = self.ring.coerce(poly)
		basis = self.groebner_basis(settings)
		return poly.rem(basis) if basis and poly else poly

	def contains(self, poly, settings=None):
		return not self.normal_form(poly, settings)

	def contains_ideal(self, other, settings=None):
		return all(self.contains(g, settings) for g in other.generators)

	def is_unit(self, settings=None):
		basis = self.groebner_basis(settings)
		return len(basis) == 1 and basis[0].is_ground

	def is_zero(self, settings=None):
		return all(not self.ring.reduce(g, settings) for g in self.generators)

	def essential_generators(self, settings=None):
		"""Reduced basis elements that are not already zero in the quotient ring."""
		return [g for g in self.groebner_basis(settings) if self.ring.reduce(g, settings)]

	def __add__(self, other):
		return Ideal(self.ring, [*self.generators, *[self.ring.coerce(g) for g in other.generators]])

	def __mul__(self, other):
		return Ideal(self.ring, [f * self.ring.coerce(g) for f in self.generators for g in other.generators])

	def __eq__(self, other):
		if not isinstance(other, Ideal) or other.ring != self.ring:
			return False
		return self.groebner_basis() == [self.ring.coerce(g) for g in other.groebner_basis()]

	def __hash__(self):
		return hash((self.ring, tuple(self.ring.format(g) for g in self.groebner_basis())))

	def to_json(self):
		return [self.ring.format(g) for g in self.essential_generators()]

	def __repr__(self):
		return f"Ideal({', '.join(self.ring.format(g) for g in self.generators)})"


def load_schema():
	with open(SCHEMA_PATH, encoding="utf-8") as handle:
		return json.load(handle)


def groebner(I, settings=None):
	"""Reduced Groebner basis of I (quotient relations appended) as a new Ideal."""
	basis = I.groebner_basis(settings)
	result = Ideal(I.ring, basis)
	result._basis = list(basis)
	return result


def normal_form(f, I, settings=None):
	if isinstance(f, PolyElement) and f.ring != I.ring.poly_ring:
		if [str(s) for s in f.ring.symbols] != list(I.ring.variables):
			raise ValidationError("Polynomial and ideal live in different rings")
	return I.normal_form(f, settings)


def eliminate(I, drop, settings=None):
	"""I ∩ k[remaining variables], computed with a block order ranking ``drop`` first."""
	drop = [v for v in I.ring.variables if v in set(drop)]
	if not drop:
		return groebner(I, settings)
	work = I.ring.without_quotient().with_order(("block", drop))
	basis = buchberger([work.embed(g) for g in [*I.generators, *I.ring.quotient]], settings=settings)
	positions = [work.index(v) for v in drop]
	kept = [g for g in basis if all(m[p] == 0 for m in g.itermonoms() for p in positions)]
	target = I.ring.subring(drop)
	logger.debug(f"Eliminated {drop}: {len(kept)} of {len(basis)} basis elements survive")
	return Ideal(target, [target.embed(g) for g in kept])


def _eliminate_polys(ring, polys, aux_names, settings):
	"""Elements free of ``aux_names`` in the Groebner basis of ``polys`` (ambient ring, no quotient)."""
	work = Ring(ring.variables, ring.degrees, (), ("block", aux_names))
	basis = buchberger([work.embed(p) for p in polys], settings=settings)
	positions = [work.index(v) for v in aux_names]
	return [g for g in basis if all(m[p] == 0 for m in g.itermonoms() for p in positions)]


def _intersect_ambient(ring, left, right, settings):
	"""(left) ∩ (right) in the ambient polynomial ring of ``ring`` (quotient not added)."""
	if not left or not right:
		return []
	(aux,) = ring.fresh_names("aux", 1)
	big = ring.without_quotient().extend([aux])
	s = big.var(aux)
	polys = [s * big.embed(f) for f in left] + [(1 - s) * big.embed(g) for g in right]
	kept = _eliminate_polys(big, polys, [aux], settings)
	base = ring.without_quotient()
	return [base.embed(g) for g in kept]


def intersect(I, J, settings=None):
	"""I ∩ J in the quotient ring (both ideals taken with the quotient relations)."""
	if I.ring != J.ring:
		raise ValidationError("Ideals must share a ring")
	ring = I.ring
	left = [*I.generators, *ring.quotient]
	right = [*J.generators, *ring.quotient]
	if not left or not right:
		return Ideal(ring, ring.quotient)
	kept = _intersect_ambient(ring, left, right, settings)
	return Ideal(ring, [ring.coerce(g) for g in kept])


def _colon_element(I, g, settings):
	"""(I + Q) : g for a single polynomial g."""
	ring = I.ring
	if I.contains(g, settings):
		return Ideal(ring, [ring.one])
	left = [*I.generators, *ring.quotient]
	if not left:
		return Ideal(ring, [])
	base = ring.without_quotient()
	g0 = base.embed(g)
	quotients = []
	for h in _intersect_ambient(ring, left, [g0], settings):
		q, r = base.embed(h).div([g0])
		if r:
			raise ResourceLimitError("Exact division failed while forming a colon ideal")
		quotients.append(q[0])
	return Ideal(ring, [ring.coerce(q) for q in quotients])


def colon(I, J, settings=None):
	"""(I : J) as the intersection of the colons by the generators of J."""
	if I.ring != J.ring:
		raise ValidationError("Ideals must share a ring")
	generators = [g for g in J.generators if I.ring.reduce(g, settings)]
	if not generators:
		return Ideal(I.ring, [I.ring.one])
	result = None
	for g in generators:
		piece = _colon_element(I, g, settings)
		result = piece if result is None else intersect(result, piece, settings)
	return groebner(result, settings)


def colon_and_saturate(I, J, mode="colon", settings=None):
	"""(I : J) or (I : J^∞) as the stabilized iterated colon, with the number of colon steps."""
	settings = settings or get_settings()
	if mode == "colon":
		return ColonResult(colon(I, J, settings), 1)
	if mode != "saturate":
		raise ValidationError(f"Unknown colon mode {mode!r}")
	current = groebner(I, settings)
	for step in range(1, settings.max_saturation_steps + 1):
		following = colon(current, J, settings)
		if following == current:
			logger.debug(f"Saturation stabilized after {step} colon steps")
			return ColonResult(following, step)
		current = following
	raise ResourceLimitError(
		f"Saturation did not stabilize within {settings.max_saturation_steps} steps",
		cap="max_saturation_steps",
		partial=current,
	)


def saturate_element(I, g, settings=None):
	"""(I : g^∞) through the auxiliary relation 1 - s*g."""
	ring = I.ring
	(aux,) = ring.fresh_names("aux", 1)
	big = ring.without_quotient().extend([aux])
	s = big.var(aux)
	polys = [big.embed(f) for f in [*I.generators, *ring.quotient]] + [1 - s * big.embed(ring.coerce(g))]
	kept = _eliminate_polys(big, polys, [aux], settings)
	return Ideal(ring, [ring.coerce(ring.without_quotient().embed(h)) for h in kept])


def saturate_elementwise(I, J, settings=None):
	"""(I : J^∞) = ∩_j (I : g_j^∞); agrees with the iterated colon."""
	result = None
	for g in J.generators:
		if not I.ring.reduce(g, settings):
			continue
		piece = saturate_element(I, g, settings)
		result = piece if result is None else intersect(result, piece, settings)
	return groebner(result if result is not None else Ideal(I.ring, [I.ring.one]), settings)


def is_nonzerodivisor(a, ring, settings=None):
	"""True iff (Q : a) = Q."""
	a = ring.reduce(ring.coerce(a), settings)
	if not a:
		raise ValidationError("Zero is never a non-zero-divisor")
	if not ring.quotient:
		return True
	Q = Ideal(ring, ring.quotient)
	return _colon_element(Q, a, settings) == Q


def krull_dimension(I, settings=None):
	"""Dimension of R/I from a maximal independent set of the leading monomials (-1 for the unit ideal)."""
	basis = I.groebner_basis(settings)
	if any(g.is_ground for g in basis):
		return -1
	n = len(I.ring.variables)
	supports = [frozenset(i for i, e in enumerate(g.LM) if e) for g in basis]
	for size in range(n, -1, -1):
		for subset in itertools.combinations(range(n), size):
			chosen = set(subset)
			if all(not support <= chosen for support in supports):
				return size
	return 0


class RingMap:
	"""Ring homomorphism given by images of the source variables and a degree transformation."""

	def __init__(self, source, target, images, degree_map=None):
		self.source = source
		self.target = target
		if isinstance(images, dict):
			images = [images.get(v, v) for v in source.variables]
		self.images = tuple(target.coerce(img) for img in images)
		self.degree_map = degree_map or (lambda degree: tuple(degree))
		self.validate()

	def validate(self):
		if len(self.images) != len(self.source.variables):
			raise ValidationError("A ring map needs one image per source variable")
		for name, degree, image in zip(self.source.variables, self.source.degrees, self.images):
			if not image:
				continue
			expected = tuple(self.degree_map(degree))
			if not self.target.is_homogeneous(image) or self.target.degree(image) != expected:
				raise ValidationError(
					f"Image of {name} is not homogeneous of degree {expected}: {self.target.format(image)}"
				)
		for q in self.source.quotient:
			if self.target.reduce(self(q)):
				raise ValidationError(f"Quotient relation {self.source.format(q)} does not map into the target quotient")

	def map_degree(self, degree):
		return tuple(self.degree_map(tuple(degree)))

	def __call__(self, poly):
		poly = self.source.coerce(poly)
		result = self.target.zero
		powers = {}
		for monomial, coefficient in poly.iterterms():
			term = self.target.poly_ring.ground_new(coefficient)
			for index, exponent in enumerate(monomial):
				if exponent:
					key = (index, exponent)
					if key not in powers:
						powers[key] = self.images[index] ** exponent
					term = term * powers[key]
			result += term
		return result


def count_points(I, settings=None):
	"""Number of distinct geometric points of a zero-dimensional subscheme of P^2.

	A seeded generic linear change of coordinates is followed by projection to
	P^1; the squarefree part of the eliminant has one linear factor per point.
	The maximum over the configured trials is returned.
	"""
	settings = settings or get_settings()
	ring = I.ring
	if len(ring.variables) != 3:
		raise ValidationError("Point counting is implemented on P^2 only")
	rng = random.Random(settings.random_seed)
	best = 0
	for _ in range(settings.point_count_trials):
		while True:
			matrix = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
			det = (
				matrix[0][0] * (matrix[1][1] * matrix[2][2] - matrix[1][2] * matrix[2][1])
				- matrix[0][1] * (matrix[1][0] * matrix[2][2] - matrix[1][2] * matrix[2][0])
				+ matrix[0][2] * (matrix[1][0] * matrix[2][1] - matrix[1][1] * matrix[2][0])
			)
			if det:
				break
		chart = Ring(["u0", "u1", "u2"], [(1,)] * 3)
		u = chart.gens
		change = RingMap(
			ring.without_quotient(),
			chart,
			[sum((matrix[i][j] * u[j] for j in range(3)), chart.zero) for i in range(3)],
		)
		moved = Ideal(chart, [change(g) for g in [*I.generators, *ring.quotient]])
		eliminant = eliminate(moved, ["u2"], settings)
		generators = list(eliminant.generators)
		if not generators:
			continue
		form = reduce(lambda a, b: a.gcd(b), generators)
		if form.is_ground:
			continue
		squarefree = form.sqf_part()
		count = max(sum(m) for m in squarefree.itermonoms())
		best = max(best, count)
	return best


def standard_monomials(I, settings=None):
	"""Exponent vectors of the standard monomials of a zero-dimensional ideal, a k-basis of R/I."""
	basis = I.groebner_basis(settings)
	if any(g.is_ground for g in basis):
		return []
	leads = [g.LM for g in basis]
	bounds = []
	for i, name in enumerate(I.ring.variables):
		pure = [m[i] for m in leads if m[i] and not any(e for j, e in enumerate(m) if j != i)]
		if not pure:
			raise ValidationError(f"Ideal is not zero-dimensional: no pure power of {name} among the leading monomials")
		bounds.append(min(pure))
	monomials = []
	for candidate in itertools.product(*(range(b) for b in bounds)):
		if all(any(c < e for c, e in zip(candidate, lead)) for lead in leads):
			monomials.append(candidate)
	return sorted(monomials, key=I.ring.poly_ring.order, reverse=True)


def vector_space_dimension(I, settings=None):
	return len(standard_monomials(I, settings))


def in_radical(f, I, settings=None):
	"""True iff f lies in the radical of I (with the quotient relations)."""
	ring = I.ring
	(aux,) = ring.fresh_names("aux", 1)
	big = ring.without_quotient().extend([aux])
	s = big.var(aux)
	polys = [big.embed(g) for g in [*I.generators, *ring.quotient]] + [1 - s * big.embed(ring.coerce(f))]
	return Ideal(big, polys).is_unit(settings)
