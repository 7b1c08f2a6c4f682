# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Finitely presented multigraded modules.

A module is presented as the cokernel of a matrix ``F1 -> F0`` between free
modules. Twists are the degrees of the basis elements, so R(-a) has twist a,
and entry (i, j) of a presentation is homogeneous of degree
``source[j] - target[i]``. Quotient relations of the ring are always part of
the relation module.

Submodules of R^r are handled by the Buchberger engine through component
variables: a vector is encoded as a polynomial linear in e_0..e_{r-1}, ranked
position over term.
"""

import json
import logging
from collections import namedtuple
from functools import lru_cache
from pathlib import Path

from sympy.polys.domains import QQ
from sympy.polys.orderings import ProductOrder, grevlex, lex
from sympy.polys.rings import PolyRing

from admissible_pairs.config import get_settings
from admissible_pairs.errors import ResourceLimitError, ValidationError
from admissible_pairs.standard_resolution.gbring.buchberger import buchberger, leading_component
from admissible_pairs.standard_resolution.gbring.gbring import Ideal, Ring, RingMap, monomial_projection

# Configure logging
logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).with_name("modres.json")

Syzygies = namedtuple("Syzygies", ["columns", "twists"])
TorsionResult = namedtuple("TorsionResult", ["torsion", "inclusion", "quotient"])


def _fresh(stem, count, taken):
	names, index = [], 0
	while len(names) < count:
		if f"{stem}{index}" not in taken:
			names.append(f"{stem}{index}")
		index += 1
	return names


class ModuleEngine:
	"""Polynomial ring k[e_0..e_{r-1}, x..., aux...] encoding vectors of R^r."""

	def __init__(self, ring, rank, extra=0):
		self.ring = ring
		self.rank = rank
		self.width = len(ring.variables)
		components = _fresh("e", rank, set(ring.variables))
		auxiliary = _fresh("s", extra, set(ring.variables) | set(components))
		self.extra = len(auxiliary)
		base = range(rank, rank + self.width)
		blocks = []
		if auxiliary:
			blocks.append((grevlex, monomial_projection(range(rank + self.width, rank + self.width + self.extra))))
		if rank:
			blocks.append((lex, monomial_projection(range(rank))))
		blocks.append((ring.poly_ring.order, monomial_projection(base)))
		self.poly_ring = PolyRing([*components, *ring.variables, *auxiliary], QQ, ProductOrder(*blocks))
		self._pad = (0,) * self.extra

	def unit(self, index):
		return tuple(1 if j == index else 0 for j in range(self.rank))

	def encode(self, vector):
		terms = {}
		for index, entry in enumerate(vector):
			if not entry:
				continue
			entry = self.ring.coerce(entry)
			unit = self.unit(index)
			for monomial, coefficient in entry.iterterms():
				terms[unit + monomial + self._pad] = coefficient
		return self.poly_ring.from_dict(terms)

	def decode(self, poly):
		rows = [{} for _ in range(self.rank)]
		for monomial, coefficient in poly.iterterms():
			index = leading_component(monomial, self.rank)
			rows[index][monomial[self.rank:self.rank + self.width]] = coefficient
		return tuple(self.ring.poly_ring.from_dict(row) for row in rows)

	def lift(self, poly):
		"""Ring element as a scalar of the engine ring."""
		terms = {(0,) * self.rank + m + self._pad: c for m, c in poly.iterterms()}
		return self.poly_ring.from_dict(terms)

	def component(self, index):
		return self.poly_ring.gens[index]

	def auxiliary(self, index):
		return self.poly_ring.gens[self.rank + self.width + index]

	def is_auxiliary_free(self, poly):
		return all(not any(m[self.rank + self.width:]) for m in poly.itermonoms())


@lru_cache(maxsize=256)
def module_engine(ring, rank, extra=0):
	return ModuleEngine(ring, rank, extra)


def zero_vector(ring, rank):
	return tuple(ring.zero for _ in range(rank))


def unit_vector(ring, rank, index, scalar=None):
	scalar = ring.one if scalar is None else scalar
	return tuple(scalar if j == index else ring.zero for j in range(rank))


def reduce_vector(ring, vector, settings=None):
	return tuple(ring.reduce(entry, settings) for entry in vector)


def is_zero_vector(ring, vector, settings=None):
	return not any(ring.reduce(entry, settings) for entry in vector)


def quotient_vectors(ring, rank, components=None):
	"""q * e_i for the quotient generators q and the requested components."""
	components = range(rank) if components is None else components
	return [unit_vector(ring, rank, i, q) for q in ring.quotient for i in components]


def vector_degree(ring, vector, twists):
	for entry, twist in zip(vector, twists):
		if entry:
			return tuple(a + b for a, b in zip(ring.degree(entry), twist))
	return None


def module_groebner(ring, rank, vectors, settings=None, quotient_components=None):
	"""Reduced Groebner basis (engine polynomials) of the span of ``vectors`` plus quotient relations."""
	engine = module_engine(ring, rank)
	polys = [engine.encode(v) for v in vectors]
	polys += [engine.encode(v) for v in quotient_vectors(ring, rank, quotient_components)]
	return buchberger([p for p in polys if p], components=rank, settings=settings)


class Submodule:
	"""Submodule of R^rank spanned by vectors, quotient relations included."""

	def __init__(self, ring, rank, vectors):
		self.ring = ring
		self.rank = rank
		self.vectors = tuple(tuple(ring.coerce(a) for a in v) for v in vectors)
		self._basis = None

	def groebner_basis(self, settings=None):
		if self._basis is None:
			self._basis = module_groebner(self.ring, self.rank, self.vectors, settings)
		return self._basis

	def basis_vectors(self, settings=None):
		engine = module_engine(self.ring, self.rank)
		return [engine.decode(g) for g in self.groebner_basis(settings)]

	def reduce(self, vector, settings=None):
		engine = module_engine(self.ring, self.rank)
		poly = engine.encode(vector)
		basis = self.groebner_basis(settings)
		if basis and poly:
			poly = poly.rem(basis)
		return engine.decode(poly)

	def contains(self, vector, settings=None):
		return not any(self.reduce(vector, settings))

	def contains_module(self, other, settings=None):
		return all(self.contains(v, settings) for v in other.vectors)

	def __eq__(self, other):
		if not isinstance(other, Submodule) or other.ring != self.ring or other.rank != self.rank:
			return False
		return self.contains_module(other) and other.contains_module(self)

	def __hash__(self):
		return hash((self.ring, self.rank))


def _degree_key(twist):
	return (sum(twist), tuple(twist)) if twist is not None else (0, ())


def minimal_generators(ring, rank, vectors, twists=None, settings=None):
	"""Irredundant generating subset (with twists) of the span of ``vectors`` modulo quotient relations.

	Over graded rings whose degree-zero part is local this is a minimal
	generating set.
	"""
	twists = list(twists) if twists is not None else [None] * len(vectors)
	items = [
		(reduce_vector(ring, v, settings), t) for v, t in zip(vectors, twists) if not is_zero_vector(ring, v, settings)
	]
	items.sort(key=lambda item: (_degree_key(item[1]), sum(len(e) for e in item[0])))
	kept = []
	for vector, twist in items:
		if not kept or not Submodule(ring, rank, [k for k, _ in kept]).contains(vector, settings):
			kept.append((vector, twist))
	index = len(kept) - 1
	while index >= 0 and len(kept) > 1:
		others = kept[:index] + kept[index + 1:]
		if Submodule(ring, rank, [k for k, _ in others]).contains(kept[index][0], settings):
			kept = others
		index -= 1
	return [v for v, _ in kept], [t for _, t in kept]


def syzygies(ring, columns, rank, source=None, settings=None, minimal=True):
	"""Generators of {a : sum_j a_j c_j = 0 in (R/Q)^rank} for the columns c_j.

	Computed from a position-over-term basis of the augmented vectors
	(c_j, e'_j); returned with their degrees when ``source`` twists are given.
	"""
	columns = [tuple(c) for c in columns]
	m = len(columns)
	if m == 0:
		return Syzygies([], [])
	width = rank + m
	augmented = [tuple(c) + unit_vector(ring, m, j) for j, c in enumerate(columns)]
	basis = module_groebner(ring, width, augmented, settings, quotient_components=range(rank))
	engine = module_engine(ring, width)
	found = []
	for g in basis:
		if leading_component(g.LM, width) >= rank:
			vector = engine.decode(g)[rank:]
			if not is_zero_vector(ring, vector, settings):
				found.append(reduce_vector(ring, vector, settings))
	twists = [vector_degree(ring, v, source) for v in found] if source is not None else [None] * len(found)
	if minimal and found:
		found, twists = minimal_generators(ring, m, found, twists, settings)
	logger.debug(f"Syzygies of {m} columns in rank {rank}: {len(found)} generators")
	return Syzygies(found, twists if source is not None else None)


def transpose(matrix):
	"""Transpose of a row-major matrix."""
	if not matrix:
		return []
	return [list(column) for column in zip(*matrix)]


def columns_to_matrix(ring, columns, rank):
	return [[column[i] for column in columns] for i in range(rank)]


def intersect_submodules(ring, rank, left, right, settings=None):
	"""Generators of (left + QF) ∩ (right + QF) from the doubled-vector trick."""
	doubled = [tuple(v) + tuple(v) for v in [*left, *quotient_vectors(ring, rank)]]
	doubled += [tuple(v) + zero_vector(ring, rank) for v in [*right, *quotient_vectors(ring, rank)]]
	basis = module_groebner(ring, 2 * rank, doubled, settings, quotient_components=())
	engine = module_engine(ring, 2 * rank)
	result = []
	for g in basis:
		if leading_component(g.LM, 2 * rank) >= rank:
			result.append(engine.decode(g)[rank:])
	return result


def saturate_by_element(ring, rank, vectors, g, settings=None):
	"""Generators of (U : g^∞) through the auxiliary relations (1 - s*g) e_i."""
	engine = module_engine(ring, rank, 1)
	s = engine.auxiliary(0)
	polys = [engine.encode(v) for v in [*vectors, *quotient_vectors(ring, rank)]]
	polys += [(1 - s * engine.lift(g)) * engine.component(i) for i in range(rank)]
	basis = buchberger([p for p in polys if p], components=rank, settings=settings)
	return [engine.decode(b) for b in basis if engine.is_auxiliary_free(b)]


def saturate_submodule(ring, rank, vectors, ideal, settings=None):
	"""Generators of (U : J^∞) = ∩_j (U : g_j^∞)."""
	result = None
	for g in ideal.generators:
		if not ring.reduce(g, settings):
			continue
		piece = saturate_by_element(ring, rank, vectors, g, settings)
		result = piece if result is None else intersect_submodules(ring, rank, result, piece, settings)
	if result is None:
		return [unit_vector(ring, rank, i) for i in range(rank)]
	return result


class GradedModule:
	"""coker(F1 -> F0) over a Ring, with twists of both free modules."""

	def __init__(self, ring, target, source, matrix):
		self.ring = ring
		self.target = tuple(tuple(int(e) for e in t) for t in target)
		self.source = tuple(tuple(int(e) for e in t) for t in source)
		self.matrix = tuple(tuple(ring.coerce(a) for a in row) for row in matrix)
		if not self.matrix and self.target:
			self.matrix = tuple(() for _ in self.target)
		self._relations = None
		self.validate()

	def validate(self):
		"""Validate shapes and homogeneity of the presentation"""
		try:
			self.validate_shape()
			self.validate_homogeneity()
		except (TypeError, ValueError) as e:
			logger.error(f"Validation error in Graded Module: {str(e)}")
			raise ValidationError(str(e)) from e

	def validate_shape(self):
		if len(self.matrix) != len(self.target):
			raise ValueError(f"Matrix has {len(self.matrix)} rows for {len(self.target)} target twists")
		for index, row in enumerate(self.matrix):
			if len(row) != len(self.source):
				raise ValueError(f"Row {index} has {len(row)} entries for {len(self.source)} source twists")
		g = self.ring.grading_length
		for twist in (*self.target, *self.source):
			if len(twist) != g:
				raise ValueError(f"Twist {list(twist)} does not have grading length {g}")

	def validate_homogeneity(self):
		for i, row in enumerate(self.matrix):
			for j, entry in enumerate(row):
				if not entry:
					continue
				expected = tuple(s - t for s, t in zip(self.source[j], self.target[i]))
				if not self.ring.is_homogeneous(entry) or self.ring.degree(entry) != expected:
					raise ValueError(
						f"Entry ({i},{j}) = {self.ring.format(entry)} is not homogeneous of degree {list(expected)}"
					)

	# Construction

	@classmethod
	def free(cls, ring, twists):
		return cls(ring, twists, [], [[] for _ in twists])

	@classmethod
	def zero(cls, ring):
		return cls(ring, [], [], [])

	@classmethod
	def cyclic(cls, ideal, twist=None, settings=None):
		"""R/I with its generator in degree ``twist``."""
		ring = ideal.ring
		twist = tuple(twist) if twist is not None else (0,) * ring.grading_length
		generators = [g for g in ideal.generators if ring.reduce(g, settings)]
		source = [tuple(a + b for a, b in zip(ring.degree(g), twist)) for g in generators]
		return cls(ring, [twist], source, [generators])

	@classmethod
	def from_ideal(cls, ideal, settings=None):
		"""The ideal I as a module: generators and their syzygies."""
		ring = ideal.ring
		generators = [g for g in ideal.generators if ring.reduce(g, settings)]
		if not generators:
			return cls.zero(ring)
		twists = [ring.degree(g) for g in generators]
		columns = [[g] for g in generators]
		syz = syzygies(ring, columns, 1, source=twists, settings=settings)
		return cls(ring, twists, syz.twists, columns_to_matrix(ring, syz.columns, len(generators)))

	@classmethod
	def from_columns(cls, ring, target, columns, settings=None):
		target = [tuple(t) for t in target]
		columns = [tuple(c) for c in columns if not is_zero_vector(ring, c, settings)]
		source = [vector_degree(ring, c, target) for c in columns]
		return cls(ring, target, source, columns_to_matrix(ring, columns, len(target)))

	@classmethod
	def from_json(cls, data, ring=None):
		"""Build a module from the module block of an input file."""
		if not isinstance(data, dict):
			raise ValidationError("Module block must be an object")
		allowed = {row["fieldname"] for row in load_schema()["fields"]}
		unknown = sorted(set(data) - allowed)
		if unknown:
			raise ValidationError(f"Unknown module keys: {', '.join(unknown)}")
		if ring is None:
			if "ring" not in data:
				raise ValidationError("Module block requires a 'ring'")
			ring = Ring.from_json(data["ring"])
		for key in ("target", "source", "matrix"):
			if key not in data:
				raise ValidationError(f"Module block requires '{key}'")
		return cls(ring, data["target"], data["source"], [[ring.parse(a) for a in row] for row in data["matrix"]])

	def to_json(self):
		return {
			"ring": self.ring.to_json(),
			"target": [list(t) for t in self.target],
			"source": [list(t) for t in self.source],
			"matrix": [[self.ring.format(a) for a in row] for row in self.matrix],
		}

	# Structure

	@property
	def rank(self):
		"""Number of generators."""
		return len(self.target)

	def columns(self):
		return [tuple(self.matrix[i][j] for i in range(self.rank)) for j in range(len(self.source))]

	def relations(self):
		if self._relations is None:
			self._relations = Submodule(self.ring, self.rank, self.columns())
		return self._relations

	def is_zero(self, settings=None):
		relations = self.relations()
		return all(relations.contains(unit_vector(self.ring, self.rank, i), settings) for i in range(self.rank))

	def same_submodule(self, other, settings=None):
		"""Equal target twists and equal relation modules."""
		return self.ring == other.ring and self.target == other.target and self.relations() == other.relations()

	def shifted(self, delta):
		"""M(-delta): every twist moved by ``delta``."""
		delta = tuple(delta)

		def move(t):
			return tuple(a + b for a, b in zip(t, delta))

		return GradedModule(self.ring, [move(t) for t in self.target], [move(s) for s in self.source], self.matrix)

	def direct_sum(self, other):
		if other.ring != self.ring:
			raise ValidationError("Direct sums need a common ring")
		r, s = self.rank, other.rank
		m, n = len(self.source), len(other.source)
		zero = self.ring.zero
		rows = [list(row) + [zero] * n for row in self.matrix]
		rows += [[zero] * m + list(row) for row in other.matrix]
		return GradedModule(self.ring, [*self.target, *other.target], [*self.source, *other.source], rows)

	def tensor_with_quotient(self, ideal, settings=None):
		"""M ⊗ R/𝔞 presented over R: relations plus 𝔞·F0."""
		if ideal.ring != self.ring:
			raise ValidationError("Restriction ideal must live in the module's ring")
		extra = []
		for i in range(self.rank):
			for g in ideal.generators:
				if self.ring.reduce(g, settings):
					extra.append(unit_vector(self.ring, self.rank, i, g))
		return GradedModule.from_columns(self.ring, self.target, [*self.columns(), *extra], settings)

	def over_ring(self, ring):
		"""Same presentation read in a ring with the same variables and more quotient relations."""
		return GradedModule(ring, self.target, self.source, [[ring.embed(a) for a in row] for row in self.matrix])

	def __repr__(self):
		return f"GradedModule(rank={self.rank}, relations={len(self.source)}, ring={self.ring!r})"


class ModuleMap:
	"""Homogeneous map between presented modules given on generators."""

	def __init__(self, source, target, matrix, shift=None):
		self.source = source
		self.target = target
		ring = source.ring
		self.shift = tuple(shift) if shift is not None else (0,) * ring.grading_length
		self.matrix = tuple(tuple(ring.coerce(a) for a in row) for row in matrix)
		if not self.matrix and target.rank:
			self.matrix = tuple(() for _ in range(target.rank))
		self.validate()

	def validate(self):
		"""Validate grading and well-definedness on presentations"""
		try:
			self.validate_shape()
			self.validate_homogeneity()
			self.validate_relations()
		except (TypeError, ValueError) as e:
			logger.error(f"Validation error in Module Map: {str(e)}")
			raise ValidationError(str(e)) from e

	def validate_shape(self):
		if self.source.ring != self.target.ring:
			raise ValueError("Source and target must share a ring")
		if len(self.matrix) != self.target.rank or any(len(row) != self.source.rank for row in self.matrix):
			raise ValueError("Map matrix must be target rank by source rank")

	def validate_homogeneity(self):
		ring = self.source.ring
		for i, row in enumerate(self.matrix):
			for j, entry in enumerate(row):
				if not entry:
					continue
				expected = tuple(
					s + h - t for s, h, t in zip(self.source.target[j], self.shift, self.target.target[i])
				)
				if not ring.is_homogeneous(entry) or ring.degree(entry) != expected:
					raise ValueError(f"Map entry ({i},{j}) is not homogeneous of degree {list(expected)}")

	def validate_relations(self):
		relations = self.target.relations()
		for column in self.source.columns():
			if not relations.contains(self.apply(column)):
				raise ValueError("Map does not send relations into relations (ill-defined)")

	def apply(self, vector):
		ring = self.source.ring
		return tuple(
			sum((a * v for a, v in zip(row, vector)), ring.zero) for row in self.matrix
		)

	def columns(self):
		return [tuple(self.matrix[i][j] for i in range(self.target.rank)) for j in range(self.source.rank)]

	def is_zero(self, settings=None):
		relations = self.target.relations()
		return all(relations.contains(c, settings) for c in self.columns())

	def compose(self, other):
		"""self ∘ other."""
		ring = self.source.ring
		matrix = []
		for row in self.matrix:
			matrix.append([
				sum((row[k] * other.matrix[k][j] for k in range(len(row))), ring.zero)
				for j in range(other.source.rank)
			])
		shift = tuple(a + b for a, b in zip(self.shift, other.shift))
		return ModuleMap(other.source, self.target, matrix, shift)


# Resolutions


def _unit_inverse(ring, entry, settings):
	"""Inverse of a constant-plus-nilpotent element, or None."""
	entry = ring.reduce(entry, settings)
	if not entry:
		return None
	zero = (0,) * len(ring.variables)
	constant = dict(entry.iterterms()).get(zero)
	if not constant:
		return None
	nilpotent = entry - ring.poly_ring.ground_new(constant)
	if nilpotent and not ring.is_nilpotent(nilpotent, settings):
		return None
	ratio = nilpotent * ring.poly_ring.ground_new(1 / constant)
	inverse, power = ring.one, ring.one
	for _ in range(settings.max_nilpotency + 1):
		power = ring.reduce(-power * ratio, settings)
		if not power:
			break
		inverse = inverse + power
	return ring.reduce(inverse * ring.poly_ring.ground_new(1 / constant), settings)


def prune_units(M, settings=None):
	"""Remove generator/relation pairs joined by a unit entry."""
	settings = settings or get_settings()
	ring = M.ring
	matrix = [[ring.reduce(a, settings) for a in row] for row in M.matrix]
	target, source = list(M.target), list(M.source)
	while True:
		pivot = None
		for i, row in enumerate(matrix):
			for j, entry in enumerate(row):
				inverse = _unit_inverse(ring, entry, settings) if entry else None
				if inverse is not None:
					pivot = (i, j, inverse)
					break
			if pivot:
				break
		if pivot is None:
			break
		i, j, inverse = pivot
		pruned = []
		for k, row in enumerate(matrix):
			if k == i:
				continue
			factor = row[j] * inverse
			pruned.append([
				ring.reduce(row[col] - factor * matrix[i][col], settings) for col in range(len(row)) if col != j
			])
		matrix = pruned
		del target[i]
		del source[j]
	if not target:
		return GradedModule.zero(ring)
	return GradedModule(ring, target, source, matrix)


def minimal_presentation(M, settings=None):
	"""Presentation with unit entries pruned and an irredundant set of relations."""
	pruned = prune_units(M, settings)
	if not pruned.rank:
		return pruned
	columns, twists = minimal_generators(pruned.ring, pruned.rank, pruned.columns(), pruned.source, settings)
	return GradedModule(pruned.ring, pruned.target, twists, columns_to_matrix(pruned.ring, columns, pruned.rank))


class Resolution:
	"""Free resolution F_n -> ... -> F_1 -> F_0 given by twists and differentials."""

	def __init__(self, ring, twists, differentials, complete=True):
		self.ring = ring
		self.twists = [tuple(map(tuple, t)) for t in twists]
		self.differentials = [tuple(tuple(row) for row in d) for d in differentials]
		self.complete = complete

	@property
	def length(self):
		return len(self.differentials)

	def certify(self, settings=None):
		"""Consecutive differentials compose to zero modulo the quotient relations."""
		for k in range(1, self.length):
			left, right = self.differentials[k - 1], self.differentials[k]
			for i in range(len(left)):
				for j in range(len(self.twists[k + 1])):
					entry = sum((left[i][l] * right[l][j] for l in range(len(right))), self.ring.zero)
					if self.ring.reduce(entry, settings):
						return False
		return True

	def to_json(self):
		return {
			"length": self.length,
			"complete": self.complete,
			"twists": [[list(t) for t in twists] for twists in self.twists],
			"differentials": [[[self.ring.format(a) for a in row] for row in d] for d in self.differentials],
		}


def free_resolution(M, max_len=None, settings=None, truncate=False):
	"""Minimal graded free resolution up to ``max_len`` differentials.

	Raises ResourceLimitError carrying the achieved prefix when the
	resolution is longer, unless ``truncate`` asks for the prefix instead.
	"""
	settings = settings or get_settings()
	cap = settings.max_resolution_length if max_len is None else max_len
	ring = M.ring
	presentation = minimal_presentation(M, settings)
	twists = [presentation.target]
	differentials = []
	if presentation.source:
		differentials.append(presentation.matrix)
		twists.append(presentation.source)
	while differentials:
		last = differentials[-1]
		columns = [tuple(last[i][j] for i in range(len(last))) for j in range(len(twists[-1]))]
		syz = syzygies(ring, columns, len(twists[-2]), source=twists[-1], settings=settings)
		if not syz.columns:
			break
		if len(differentials) >= cap:
			partial = Resolution(ring, twists, differentials, complete=False)
			if truncate:
				return partial
			raise ResourceLimitError(
				f"Free resolution is longer than {cap}", cap="max_resolution_length", value=cap + 1, partial=partial
			)
		differentials.append(columns_to_matrix(ring, syz.columns, len(twists[-1])))
		twists.append(tuple(syz.twists))
	logger.debug(f"Free resolution of length {len(differentials)}")
	return Resolution(ring, twists, differentials)


def homological_dimension(M, settings=None):
	"""Length of the minimal free resolution.

	Over rings with non-nilpotent degree-zero variables pruning only removes
	constant units, so the value is an upper bound there.
	"""
	return free_resolution(M, settings=settings).length


def _dual_twists(twists):
	return [tuple(-e for e in t) for t in twists]


def _subquotient(ring, kernel_columns, kernel_twists, image_columns, rank, settings):
	"""Present span(kernel) / span(image) on the kernel generators."""
	if not kernel_columns:
		return GradedModule.zero(ring)
	combined = [*kernel_columns, *image_columns]
	syz = syzygies(ring, combined, rank, settings=settings, minimal=False)
	k = len(kernel_columns)
	relations = []
	for vector in syz.columns:
		head = vector[:k]
		if not is_zero_vector(ring, head, settings):
			relations.append(reduce_vector(ring, head, settings))
	return GradedModule.from_columns(ring, kernel_twists, relations, settings)


def dual_and_ext(M, i, settings=None, check_hd=True):
	"""Hom(M, R) for i = 0, Ext^i(M, R) for i = 1, 2 from the dualized resolution."""
	settings = settings or get_settings()
	ring = M.ring
	if i not in (0, 1, 2):
		raise ValidationError(f"Ext index must be 0, 1 or 2, got {i}")
	if i == 0:
		dual_target = _dual_twists(M.target)
		rows = [tuple(row) for row in M.matrix]
		syz = syzygies(ring, rows, len(M.source), source=dual_target, settings=settings)
		if not syz.columns:
			return GradedModule.zero(ring)
		relations = syzygies(ring, syz.columns, M.rank, source=syz.twists, settings=settings)
		return GradedModule(ring, syz.twists, relations.twists, columns_to_matrix(ring, relations.columns, len(syz.columns)))

	resolution = free_resolution(M, max_len=i + 1, settings=settings, truncate=True)
	if check_hd and i == 1 and (resolution.length > 1 or not resolution.complete):
		raise ValidationError("Ext^1 by the two-step formula needs homological dimension at most 1")
	if resolution.length < i:
		return GradedModule.zero(ring)
	incoming = resolution.differentials[i - 1]
	dual_here = _dual_twists(resolution.twists[i])
	image_columns = [tuple(row) for row in incoming]
	if resolution.length == i:
		target = dual_here
		source = _dual_twists(resolution.twists[i - 1])
		return GradedModule(ring, target, source, transpose(incoming) or [[] for _ in target])
	outgoing = resolution.differentials[i]
	kernel = syzygies(ring, [tuple(row) for row in outgoing], len(resolution.twists[i + 1]), source=dual_here, settings=settings)
	return _subquotient(ring, kernel.columns, kernel.twists, image_columns, len(dual_here), settings)


def kernel_map(phi, settings=None):
	"""Inclusion ker(φ) -> source(φ)."""
	ring = phi.source.ring
	M, N = phi.source, phi.target
	images = phi.columns()
	combined = [*images, *N.columns()]
	syz = syzygies(ring, combined, N.rank, settings=settings, minimal=False)
	heads = []
	for vector in syz.columns:
		head = vector[:M.rank]
		if not is_zero_vector(ring, head, settings):
			heads.append(reduce_vector(ring, head, settings))
	twists = [vector_degree(ring, h, M.target) for h in heads]
	if heads:
		heads, twists = minimal_generators(ring, M.rank, heads, twists, settings)
	relations = Submodule(ring, M.rank, M.columns())
	heads_outside = [(h, t) for h, t in zip(heads, twists) if not relations.contains(h, settings)]
	if not heads_outside:
		kernel = GradedModule.zero(ring)
		return ModuleMap(kernel, M, [[] for _ in range(M.rank)])
	heads = [h for h, _ in heads_outside]
	twists = [t for _, t in heads_outside]
	kernel = _subquotient(ring, heads, twists, M.columns(), M.rank, settings)
	return ModuleMap(kernel, M, columns_to_matrix(ring, heads, M.rank))


def kernel_cokernel_image(phi, which, settings=None):
	"""ker, coker or im of a module map, each as a presented module."""
	ring = phi.source.ring
	M, N = phi.source, phi.target
	if which == "coker":
		return GradedModule.from_columns(ring, N.target, [*phi.columns(), *N.columns()], settings)
	if which == "im":
		combined = [*phi.columns(), *N.columns()]
		syz = syzygies(ring, combined, N.rank, settings=settings, minimal=False)
		twists = [tuple(a + b for a, b in zip(t, phi.shift)) for t in M.target]
		heads = [reduce_vector(ring, v[:M.rank], settings) for v in syz.columns]
		heads = [h for h in heads if not is_zero_vector(ring, h, settings)]
		return GradedModule.from_columns(ring, twists, heads, settings)
	if which == "ker":
		return kernel_map(phi, settings).source
	raise ValidationError(f"Unknown selector {which!r}; expected ker, coker or im")


def pullback(M, rho):
	"""Presentation matrix mapped through the ring map ρ, twists through its degree map."""
	if not isinstance(rho, RingMap):
		raise ValidationError("Pullback needs a RingMap")
	if rho.source != M.ring:
		raise ValidationError("Ring map source differs from the module's ring")
	target = [rho.map_degree(t) for t in M.target]
	source = [rho.map_degree(s) for s in M.source]
	matrix = [[rho(a) for a in row] for row in M.matrix]
	return GradedModule(rho.target, target, source, matrix)


def torsion_submodule(M, J, settings=None):
	"""J-power torsion ∪_n (0 :_M J^n), its inclusion, and the torsion-free quotient."""
	settings = settings or get_settings()
	ring = M.ring
	if J.ring != ring:
		raise ValidationError("Torsion ideal must live in the module's ring")
	if J.is_zero(settings):
		raise ValidationError("Torsion needs a nonzero ideal")
	if not M.rank:
		return TorsionResult(GradedModule.zero(ring), ModuleMap(GradedModule.zero(ring), M, []), M)
	saturated = saturate_submodule(ring, M.rank, M.columns(), J, settings)
	quotient = GradedModule.from_columns(ring, M.target, saturated, settings)
	relations = M.relations()
	outside = [v for v in saturated if not relations.contains(v, settings)]
	if not outside:
		torsion = GradedModule.zero(ring)
		return TorsionResult(torsion, ModuleMap(torsion, M, [[] for _ in range(M.rank)]), quotient)
	twists = [vector_degree(ring, v, M.target) for v in outside]
	outside, twists = minimal_generators(ring, M.rank, outside, twists, settings)
	torsion = _subquotient(ring, outside, twists, M.columns(), M.rank, settings)
	inclusion = ModuleMap(torsion, M, columns_to_matrix(ring, outside, M.rank))
	logger.debug(f"Torsion submodule with {len(outside)} generators")
	return TorsionResult(torsion, inclusion, quotient)


def load_schema():
	with open(SCHEMA_PATH, encoding="utf-8") as handle:
		return json.load(handle)
