# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Rees models of blowups and admissible schemes.

The admissible scheme of a zero-dimensional ideal I on P^2 is the fiber over
t = 0 of the blowup of P^2 x A^1 in I + (t). Blowups are embedded in
base x P^m through the relations of y_i -> f_i, obtained by eliminating an
auxiliary Rees parameter u of degree (-d, 1).
"""

import itertools
import json
import logging
from collections import namedtuple
from dataclasses import dataclass, field
from pathlib import Path

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from admissible_pairs.config import get_settings
from admissible_pairs.errors import ValidationError
from admissible_pairs.standard_resolution.gbring.gbring import (
	Ideal,
	Ring,
	RingMap,
	count_points,
	eliminate,
	groebner,
	in_radical,
	is_nonzerodivisor,
	krull_dimension,
	saturate_elementwise,
	standard_monomials,
)
from admissible_pairs.standard_resolution.modres.hilbert import hilbert
from admissible_pairs.standard_resolution.modres.modres import GradedModule, pullback

# Configure logging
logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).with_name("blowup.json")

Chart = namedtuple("Chart", ["name", "ring", "substitution"])

# Offset direction used to reach the stable range of bigraded Hilbert functions
SHIFT = (1, 1)


def load_schema():
	with open(SCHEMA_PATH, encoding="utf-8") as handle:
		return json.load(handle)


def projective_variables(ring, row=0):
	"""Variables of positive degree in grading row ``row`` only."""
	return [
		v
		for v, d in zip(ring.variables, ring.degrees)
		if d[row] > 0 and all(e == 0 for i, e in enumerate(d) if i != row)
	]


def charts(ring, groups, ideal=None, settings=None):
	"""Affine charts setting one variable of each group to 1.

	The chart ring has every degree 0 and carries the dehomogenized quotient
	and ``ideal`` as its quotient; empty charts are skipped.
	"""
	groups = [list(g) for g in groups if g]
	extra = list(ideal.generators) if ideal is not None else []
	found = []
	for choice in itertools.product(*groups):
		keep = [v for v in ring.variables if v not in choice]
		zero = [(0,)] * len(keep)
		bare = Ring(keep, zero)
		images = [bare.one if v in choice else bare.var(v) for v in ring.variables]
		substitution = RingMap(ring.without_quotient(), bare, images, degree_map=lambda d: (0,))
		quotient = [substitution(g) for g in [*ring.quotient, *extra]]
		chart = Ring(keep, zero, [q for q in quotient if q])
		if chart.quotient and Ideal(chart, []).is_unit(settings):
			continue
		name = ",".join(f"{v}=1" for v in choice)
		found.append(Chart(name, chart, RingMap(ring, chart, images, degree_map=lambda d: (0,))))
	return found


@dataclass
class BlowupModel:
	"""Bl_J(base) inside base x P^m with coordinates y_0..y_m over the generators f_i of J."""

	base: Ring
	center: Ideal
	generators: tuple
	degree: tuple
	ambient: Ring
	y_names: tuple
	relations: Ideal
	tautological: tuple
	sigma: RingMap = field(repr=False)

	@property
	def exceptional(self):
		"""(J . O) on the model, generated by the f_i."""
		return Ideal(self.ambient, [self.sigma(f) for f in self.generators])

	def charts(self, settings=None):
		groups = [projective_variables(self.base), list(self.y_names)]
		return charts(self.ambient, groups, self.relations, settings)

	def to_json(self):
		ring = self.ambient
		return {
			"base": self.base.to_json(),
			"generators": [self.base.format(f) for f in self.generators],
			"degree": list(self.degree),
			"ambient": ring.to_json(),
			"relations": [ring.format(g) for g in groebner(self.relations).generators],
			"tautological_twist": list(self.tautological),
		}


def _padded(degree, extra=0):
	return (*degree, extra)


def _common_degree(base, generators):
	degrees = {base.degree(f) for f in generators}
	if len(degrees) != 1:
		raise ValidationError(f"Center generators must share one degree, got {sorted(degrees)}")
	return degrees.pop()


def rees_embed(J, generators=None, settings=None, y_stem="y"):
	"""Blowup of the base of J in J, given by the generator list (default: J's generators)."""
	settings = settings or get_settings()
	base = J.ring
	generators = [base.coerce(f) for f in (generators if generators is not None else J.generators)]
	generators = [f for f in generators if base.reduce(f, settings)]
	if not generators:
		raise ValidationError("The center must have a nonzero generator")
	for f in generators:
		if not base.is_homogeneous(f):
			raise ValidationError(f"Center generator {base.format(f)} is not homogeneous")
	degree = _common_degree(base, generators)
	check_generation(J, generators, settings)

	y_names = base.fresh_names(y_stem, len(generators))
	(u_name,) = base.fresh_names("u", 1)
	g = base.grading_length
	y_degrees = [(0,) * g + (1,)] * len(generators)
	base_degrees = [_padded(d) for d in base.degrees]
	rees = Ring(
		[*base.variables, *y_names, u_name],
		[*base_degrees, *y_degrees, tuple(-e for e in degree) + (1,)],
	)
	rees = rees.with_quotient([rees.embed(q) for q in base.quotient]) if base.quotient else rees
	u = rees.var(u_name)
	auxiliary = Ideal(rees, [rees.var(y) - u * rees.embed(f) for y, f in zip(y_names, generators)])
	eliminated = eliminate(auxiliary, [u_name], settings)

	ambient = Ring([*base.variables, *y_names], [*base_degrees, *y_degrees])
	if base.quotient:
		ambient = ambient.with_quotient([ambient.embed(q) for q in base.quotient])
	relations = Ideal(ambient, [ambient.embed(r) for r in eliminated.generators])
	sigma = RingMap(base, ambient, list(base.variables), degree_map=_padded)
	tautological = tuple(-e for e in degree) + (1,)
	logger.debug(f"Rees model with {len(generators)} generators of degree {list(degree)}: {len(relations.generators)} relations")
	return BlowupModel(base, J, tuple(generators), degree, ambient, tuple(y_names), relations, tautological, sigma)


def check_generation(J, generators, settings=None):
	"""J lies in the ideal of ``generators`` on every affine chart of the projective base variables."""
	base = J.ring
	projective = projective_variables(base)
	groups = [projective] if projective else []
	for chart in charts(base, groups, None, settings) if groups else [Chart("affine", base, None)]:
		if chart.substitution is None:
			span = Ideal(base, generators)
			missing = [g for g in J.generators if not span.contains(g, settings)]
		else:
			span = Ideal(chart.ring, [chart.substitution(f) for f in generators])
			missing = [g for g in J.generators if not span.contains(chart.substitution(g), settings)]
		if missing:
			raise ValidationError(
				f"Generators do not generate the center on chart {chart.name}: missing {base.format(missing[0])}"
			)


def tautological_certificate(model, settings=None):
	"""Per chart y_i = 1: (J . O) = (f_i) with f_i a non-zero-divisor."""
	certificate = {}
	for chart in model.charts(settings):
		index = next(i for i, y in enumerate(model.y_names) if y not in chart.ring.variables)
		images = [chart.substitution(model.sigma(f)) for f in model.generators]
		principal = Ideal(chart.ring, [images[index]])
		generated = all(principal.contains(f, settings) for f in images)
		regular = bool(chart.ring.reduce(images[index], settings)) and is_nonzerodivisor(images[index], chart.ring, settings)
		certificate[chart.name] = generated and regular
	return certificate


@dataclass
class ZeroDimSubscheme:
	"""Finite subscheme of an affine ring supported at one rational point."""

	ideal: Ideal
	length: int
	point: dict

	@classmethod
	def from_ideal(cls, ideal, settings=None):
		ring = ideal.ring
		basis = standard_monomials(ideal, settings)
		if not basis:
			raise ValidationError("Zero-dimensional subscheme must be nonempty")
		point = {}
		for v in ring.variables:
			x = ring.var(v)
			trace = QQ(0)
			for exponents in basis:
				monomial = ring.poly_ring({exponents: QQ(1)})
				image = ideal.normal_form(x * monomial, settings)
				trace += dict(image.iterterms()).get(exponents, QQ(0))
			value = trace / len(basis)
			if not in_radical(x - ring.poly_ring.ground_new(value), ideal, settings):
				raise ValidationError(f"Subscheme is not supported at a single point (coordinate {v})")
			point[v] = value
		return cls(ideal, len(basis), point)

	def to_json(self):
		return {
			"ideal": self.ideal.to_json(),
			"length": self.length,
			"point": {v: str(c) for v, c in self.point.items()},
		}


def center_generators(I, d, family_ring, settings=None):
	"""Generators of I + (t) in x-degree d: a basis of I_d and t*m for the standard monomials m of degree d."""
	plane = I.ring
	basis = I.groebner_basis(settings)
	leads = [g.LM for g in basis if not g.is_ground]
	generators = []
	t = family_ring.var("t")
	n = len(plane.variables)
	for exponents in sorted(_monomials_of_degree(n, d), key=plane.poly_ring.order, reverse=True):
		monomial = plane.poly_ring({exponents: QQ(1)})
		if any(all(e >= l for e, l in zip(exponents, lead)) for lead in leads):
			element = monomial - I.normal_form(monomial, settings)
			generators.append(family_ring.embed(element))
		else:
			generators.append(t * family_ring.embed(monomial))
	return generators


def degree_generators(J, d, settings=None):
	"""Generators of J in degree d of the first grading row, pruned to an irredundant list.

	Products g * m of the basis elements g of J with forms m of complementary
	degree generate every graded piece of J from degree d on; a product lying
	in the ideal of the others is dropped, later candidates first.
	"""
	ring = J.ring
	names = projective_variables(ring)
	candidates = []
	for g in J.essential_generators(settings):
		e = ring.degree(g)[0]
		if e > d:
			continue
		for exponents in _monomials_of_degree(len(names), d - e):
			monomial = ring.one
			for name, power in zip(names, exponents):
				monomial = monomial * ring.var(name) ** power
			product = ring.reduce(g * monomial, settings)
			if product and product not in candidates:
				candidates.append(product)
	index = len(candidates) - 1
	while index >= 0:
		others = candidates[:index] + candidates[index + 1:]
		if others and Ideal(ring, others).contains(candidates[index], settings):
			candidates = others
		index -= 1
	positions = [ring.index(v) for v in names]
	plane_order = Ring(names).poly_ring.order

	def key(f):
		return (plane_order(tuple(f.LM[p] for p in positions)), ring.poly_ring.order(f.LM))

	return sorted(candidates, key=key, reverse=True)


def _monomials_of_degree(n, d):
	for combination in itertools.combinations_with_replacement(range(n), d):
		exponents = [0] * n
		for i in combination:
			exponents[i] += 1
		yield tuple(exponents)


@dataclass
class AdmissibleScheme:
	"""t = 0 fiber of Bl_{I+(t)}(P^2 x A^1) with its component split and distinguished twist."""

	plane: Ring
	ambient: Ring
	defining: Ideal
	main: Ideal
	additional: Ideal
	exceptional: Ideal
	twist: tuple
	k: int
	d: int
	model: BlowupModel = field(default=None, repr=False)
	sigma: RingMap = field(default=None, repr=False)
	restriction: RingMap = field(default=None, repr=False)
	component_count: int = 0
	identity: bool = False

	@classmethod
	def identity_pair(cls, plane, k):
		"""(S, L^k) itself."""
		zero = Ideal(plane, [])
		sigma = RingMap(plane, plane, list(plane.variables))
		return cls(plane, plane, zero, zero, Ideal(plane, [plane.one]), zero, (k,), k, 0, None, sigma, None, 0, True)

	def charts(self, settings=None):
		if self.identity:
			return charts(self.plane, [projective_variables(self.plane)], None, settings)
		groups = [projective_variables(self.ambient, 0), projective_variables(self.ambient, 1)]
		return charts(self.ambient, groups, self.defining, settings)

	def to_json(self):
		ring = self.ambient
		data = {
			"identity": self.identity,
			"ambient": ring.to_json(),
			"defining": self.defining.to_json(),
			"main": self.main.to_json(),
			"additional": self.additional.to_json(),
			"exceptional": self.exceptional.to_json(),
			"twist": list(self.twist),
			"k": self.k,
			"d": self.d,
			"component_count": self.component_count,
		}
		if self.sigma is not None:
			data["sigma"] = {v: ring.format(img) for v, img in zip(self.plane.variables, self.sigma.images)}
		return data


def family_ring(plane):
	"""P^2 x A^1: the plane coordinates and t of degree 0."""
	(t_name,) = ["t"] if "t" not in plane.variables else plane.fresh_names("t", 1)
	return Ring([*plane.variables, t_name], [*plane.degrees, (0,) * plane.grading_length])


def validate_center(I, settings=None):
	plane = I.ring
	if len(plane.variables) != 3 or plane.grading_length != 1 or plane.quotient:
		raise ValidationError("Admissible schemes are built over the plain projective plane")
	if I.is_unit(settings):
		raise ValidationError("The unit ideal has no additional locus; use the identity pair")
	if krull_dimension(I, settings) != 1:
		raise ValidationError("The center must define a nonempty zero-dimensional subscheme of P^2")
	irrelevant = Ideal(plane, plane.gens)
	if saturate_elementwise(I, irrelevant, settings) != groebner(I, settings):
		raise ValidationError("The center ideal must be saturated")


def default_degree(I, settings=None):
	return max(max(sum(m) for m in g.itermonoms()) for g in I.groebner_basis(settings))


def admissible_scheme(I, d=None, k=None, settings=None):
	"""Admissible scheme of a saturated zero-dimensional ideal I on P^2."""
	settings = settings or get_settings()
	k = settings.default_k if k is None else k
	validate_center(I, settings)
	d = default_degree(I, settings) if d is None else d
	plane = I.ring
	base = family_ring(plane)
	t_name = base.variables[-1]
	generators = center_generators(I, d, base, settings)
	J = Ideal(base, [*[base.embed(g) for g in I.generators], base.var(t_name)])
	model = rees_embed(J, generators, settings)
	return fiber_scheme(model, plane, k, d, t_name, settings)


def fiber_scheme(model, plane, k, d, t_name="t", settings=None):
	"""Fiber over t = 0 of a blowup of plane x A^1, split into main and additional components.

	``plane`` may carry nilpotent coordinates of an Artinian base; they stay in
	the fiber ring with their quotient relations.
	"""
	settings = settings or get_settings()
	ambient = model.ambient
	fiber_names = [v for v in ambient.variables if v != t_name]
	fiber_degrees = [ambient.degrees[ambient.index(v)] for v in fiber_names]
	bare = Ring(fiber_names, fiber_degrees)
	bare_images = [bare.zero if v == t_name else bare.var(v) for v in ambient.variables]
	drop_t = RingMap(ambient.without_quotient(), bare, bare_images)
	fiber = Ring(fiber_names, fiber_degrees, [drop_t(q) for q in ambient.quotient])
	restriction = RingMap(ambient, fiber, [fiber.zero if v == t_name else fiber.var(v) for v in ambient.variables])

	defining = Ideal(fiber, [restriction(r) for r in model.relations.generators])
	for irrelevant in fiber.irrelevant_ideals():
		defining = saturate_elementwise(defining, irrelevant, settings)
	exceptional = Ideal(fiber, [restriction(model.sigma(f)) for f in model.generators])
	main = saturate_elementwise(defining, exceptional, settings)
	additional = saturate_elementwise(defining, main, settings)
	if additional.is_unit(settings):
		raise ValidationError("Degeneration has no additional components")
	drop = [v for v in fiber.variables if v not in projective_variables(plane)]
	count = component_count(additional, drop, settings)
	sigma = RingMap(plane, fiber, list(plane.variables), degree_map=lambda deg: (*deg, 0))
	twist = (k - d, 1)
	logger.info(f"Admissible scheme with {count} additional component(s), twist {list(twist)}")
	return AdmissibleScheme(
		plane, fiber, defining, main, additional, exceptional, twist, k, d, model, sigma, restriction, count
	)


def component_count(additional, drop, settings=None):
	"""Distinct points of P^2 under the additional components; ``drop`` lists every non-plane variable."""
	image = eliminate(additional, drop, settings)
	plane = Ring([v for v in additional.ring.variables if v not in set(drop)])
	return count_points(Ideal(plane, [plane.embed(g) for g in image.generators]), settings)


def coordinate_module(X):
	"""O of the scheme as a cyclic module over its ambient ring."""
	return GradedModule.cyclic(X.defining, (0,) * X.ambient.grading_length)


def polarization_chi(X, window=None, settings=None):
	"""chi(L~^n) along the distinguished twist."""
	if X.identity:
		return hilbert(GradedModule.free(X.plane, [(0,)]), (X.k,), window, settings, saturate=False)
	return hilbert(coordinate_module(X), X.twist, window, settings, saturate=False, shift=SHIFT)


def pullback_to_model(M, X, settings=None):
	"""sigma^* M restricted to the model (or admissible scheme)."""
	if isinstance(X, AdmissibleScheme):
		if X.identity:
			return M
		ideal = X.defining
	else:
		ideal = X.relations
	if M.ring != X.sigma.source:
		raise ValidationError("Module does not live on the base of the model")
	return pullback(M, X.sigma).tensor_with_quotient(ideal, settings)


@dataclass
class InfinitesimalSection:
	found: bool
	chart: str = None
	values: dict = None
	subscheme: ZeroDimSubscheme = None
	target: Ring = None
	base_chart: Ring = None
	forward: RingMap = field(default=None, repr=False)
	inverse: dict = None
	tried: int = 0

	def to_json(self):
		data = {"found": self.found, "tried": self.tried}
		if self.found:
			data.update(
				{
					"chart": self.chart,
					"values": {v: str(c) for v, c in self.values.items()},
					"length": self.subscheme.length,
					"ideal": self.subscheme.ideal.to_json(),
					"inverse": {v: self.base_chart.format(img) for v, img in self.inverse.items()},
				}
			)
		return data


def _coordinates(poly, basis, ring, ideal, settings):
	reduced = ideal.normal_form(poly, settings)
	terms = dict(reduced.iterterms())
	return [terms.get(b, QQ(0)) for b in basis]


def infinitesimal_section(model, Z, settings=None):
	"""Subscheme Z' of a chart of the model mapping isomorphically onto Z.

	Charts y_i = 1 are searched, the remaining fiber coordinates fixed at the
	configured search values; a hit is certified by mutually inverse algebra
	maps checked on generators and relations.
	"""
	settings = settings or get_settings()
	base = model.base
	if Z.ring != base:
		raise ValidationError("Subscheme must live in the base of the model")
	projective = projective_variables(base)
	base_charts = charts(base, [projective], None, settings) if projective else [Chart("affine", base, None)]
	tried = 0
	for base_chart in base_charts:
		if base_chart.substitution is None:
			chart_base = Ring(base.variables, [(0,)] * len(base.variables), base.quotient)
			to_chart = RingMap(base, chart_base, list(base.variables), degree_map=lambda d: (0,))
		else:
			chart_base, to_chart = base_chart.ring, base_chart.substitution
		Z_chart = Ideal(chart_base, [to_chart(g) for g in Z.generators])
		if Z_chart.is_unit(settings):
			continue
		try:
			source_basis = standard_monomials(Z_chart, settings)
		except ValidationError:
			continue
		fixed = [v for v in projective if v not in chart_base.variables]
		for chart in model.charts(settings):
			if any(v in chart.ring.variables for v in fixed):
				continue
			free_y = [y for y in model.y_names if y in chart.ring.variables]
			for values in itertools.product(settings.section_search_values, repeat=len(free_y)):
				tried += 1
				result = _try_section(model, chart, chart_base, Z_chart, source_basis, free_y, values, settings)
				if result is not None:
					result.tried = tried
					logger.info(f"Infinitesimal section found on chart {result.chart}")
					return result
	logger.info(f"No infinitesimal section found after {tried} attempts")
	return InfinitesimalSection(False, tried=tried)


def _try_section(model, chart, chart_base, Z_chart, source_basis, free_y, values, settings):
	ring = chart.ring
	forward = RingMap(chart_base, ring, list(chart_base.variables), degree_map=lambda d: (0,))
	pins = [ring.var(y) - ring.coerce(c) for y, c in zip(free_y, values)]
	target_ideal = Ideal(ring, [*[forward(g) for g in Z_chart.generators], *pins])
	if target_ideal.is_unit(settings):
		return None
	try:
		target_basis = standard_monomials(target_ideal, settings)
	except ValidationError:
		return None
	if len(target_basis) != len(source_basis):
		return None
	images = [
		_coordinates(forward(chart_base.poly_ring({b: QQ(1)})), target_basis, ring, target_ideal, settings)
		for b in source_basis
	]
	size = len(target_basis)
	matrix = DomainMatrix([list(column) for column in zip(*images)], (size, size), QQ)
	if matrix.rank() != size:
		return None
	inverse = {}
	for v in ring.variables:
		if v in chart_base.variables:
			inverse[v] = chart_base.var(v)
			continue
		target = DomainMatrix([[c] for c in _coordinates(ring.var(v), target_basis, ring, target_ideal, settings)], (size, 1), QQ)
		solution = matrix.lu_solve(target)
		coefficients = [solution[i, 0].element for i in range(size)]
		inverse[v] = sum(
			(chart_base.poly_ring.ground_new(c) * chart_base.poly_ring({b: QQ(1)}) for c, b in zip(coefficients, source_basis)),
			chart_base.zero,
		)
	backward = RingMap(
		ring.without_quotient(), chart_base.without_quotient(), [inverse[v] for v in ring.variables], degree_map=lambda d: (0,)
	)
	if not _certify(forward, backward, ring, chart_base, Z_chart, target_ideal, settings):
		return None
	subscheme = ZeroDimSubscheme.from_ideal(target_ideal, settings)
	return InfinitesimalSection(
		True,
		chart.name,
		{y: QQ(c) for y, c in zip(free_y, values)},
		subscheme,
		ring,
		chart_base,
		forward,
		inverse,
	)


def _certify(forward, backward, ring, chart_base, Z_chart, target_ideal, settings):
	"""backward is well defined and both composites are identities modulo the subschemes."""
	for relation in [*ring.quotient, *target_ideal.generators]:
		if not Z_chart.contains(chart_base.coerce(backward(relation)), settings):
			return False
	for v in chart_base.variables:
		x = chart_base.var(v)
		if not Z_chart.contains(chart_base.coerce(backward(ring.without_quotient().embed(forward(x)))) - x, settings):
			return False
	for v in ring.variables:
		y = ring.var(v)
		if not target_ideal.contains(forward(backward(ring.without_quotient().embed(y))) - y, settings):
			return False
	return True
