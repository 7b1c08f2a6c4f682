# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Fitting ideals, principality of ideals and the hd = 1 criterion."""

import itertools
import logging
import random
from collections import namedtuple
from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix

from admissible_pairs.config import get_settings
from admissible_pairs.errors import InconclusiveError, ValidationError, throw
from admissible_pairs.standard_resolution.gbring.gbring import Ideal, is_nonzerodivisor, krull_dimension
from admissible_pairs.standard_resolution.modres.modres import homological_dimension, minimal_generators

# Configure logging
logger = logging.getLogger(__name__)

PRINCIPAL = "principal"
NOT_PRINCIPAL = "not_principal"
INCONCLUSIVE = "inconclusive"

Principality = namedtuple("Principality", ["verdict", "witness", "reason"])
Invertibility = namedtuple("Invertibility", ["invertible", "witness", "principality"])


@dataclass(frozen=True)
class FittResult:
	ideal: Ideal
	minor_size: int
	shape: tuple
	distinguished: object = None

	def to_json(self):
		ring = self.ideal.ring
		return {
			"ideal": self.ideal.to_json(),
			"minor_size": self.minor_size,
			"shape": list(self.shape),
			"distinguished": ring.format(self.distinguished) if self.distinguished is not None else None,
		}


def determinant(ring, rows, settings=None):
	"""Determinant of a square matrix of ring elements, reduced modulo the quotient."""
	if not rows:
		return ring.one
	size = len(rows)
	domain = ring.poly_ring.to_domain()
	matrix = DomainMatrix([[ring.coerce(a) for a in row] for row in rows], (size, size), domain)
	return ring.reduce(matrix.det(), settings)


def minors(ring, rows, size, settings=None):
	"""All size-by-size minors of a row-major matrix (zero minors dropped)."""
	if size == 0:
		return [ring.one]
	if not rows or size > len(rows) or size > len(rows[0]):
		return []
	found = []
	for row_set in itertools.combinations(range(len(rows)), size):
		for column_set in itertools.combinations(range(len(rows[0])), size):
			value = determinant(ring, [[rows[i][j] for j in column_set] for i in row_set], settings)
			if value:
				found.append(value)
	return found


def fitting_ideal(M, j=0, settings=None):
	"""Fitt_j(M): ideal of the (rank - j)-minors of the presentation."""
	ring = M.ring
	size = M.rank - j
	if size <= 0:
		return Ideal(ring, [ring.one])
	return Ideal(ring, minors(ring, [list(row) for row in M.matrix], size, settings))


def fitt0(M, settings=None):
	"""Zeroth Fitting ideal; presentations with fewer relations than generators are padded with zero columns."""
	ring = M.ring
	n = M.rank
	rows = [list(row) for row in M.matrix]
	columns = len(M.source)
	if columns < n:
		rows = [row + [ring.zero] * (n - columns) for row in rows]
		columns = n
	ideal = Ideal(ring, minors(ring, rows, n, settings)) if n else Ideal(ring, [ring.one])
	distinguished = None
	if n:
		first = determinant(ring, [row[:n] for row in rows], settings)
		if first and Ideal(ring, [first]).contains_ideal(ideal, settings):
			distinguished = first
	logger.debug(f"Fitt0 of a {n}x{columns} presentation: {len(ideal.generators)} nonzero minors")
	return FittResult(ideal, n, (n, columns), distinguished)


def _candidates(I, settings):
	ring = I.ring
	pool = [ring.reduce(g, settings) for g in [*I.generators, *I.essential_generators(settings)]]
	unique = []
	for g in pool:
		if g and g not in unique:
			unique.append(g)
	return sorted(unique, key=lambda g: (max(sum(m) for m in g.itermonoms()), len(g)))


def principality(I, settings=None):
	"""Three-valued principality verdict for an ideal of a ring with irreducible reduction."""
	settings = settings or get_settings()
	ring = I.ring
	if I.is_zero(settings):
		return Principality(PRINCIPAL, ring.zero, "zero ideal")
	if I.is_unit(settings):
		return Principality(PRINCIPAL, ring.one, "unit ideal")
	basis = I.essential_generators(settings)
	for candidate in _candidates(I, settings):
		span = Ideal(ring, [candidate])
		if all(span.contains(g, settings) for g in basis):
			return Principality(PRINCIPAL, candidate, "generator divides the Groebner basis")
	homogeneous = all(ring.is_homogeneous(g) for g in I.generators)
	if homogeneous and ring.is_graded_local(settings):
		generators = [(ring.reduce(g, settings),) for g in I.generators if ring.reduce(g, settings)]
		twists = [ring.degree(g[0]) for g in generators]
		minimal, _ = minimal_generators(ring, 1, generators, twists, settings)
		if len(minimal) == 1:
			return Principality(PRINCIPAL, minimal[0][0], "single minimal generator")
		return Principality(NOT_PRINCIPAL, None, f"{len(minimal)} minimal generators over a graded-local ring")
	codimension = krull_dimension(ring.quotient_ideal(), settings) - krull_dimension(I, settings)
	if codimension >= 2:
		return Principality(NOT_PRINCIPAL, None, f"codimension {codimension} exceeds the principal ideal bound")
	return Principality(INCONCLUSIVE, None, "division test failed and no structural criterion applies")


def is_invertible_ideal(I, settings=None):
	"""Invertible means principal with a non-zero-divisor generator; inconclusive principality raises."""
	verdict = principality(I, settings)
	if verdict.verdict == INCONCLUSIVE:
		raise InconclusiveError(f"Cannot decide principality of {I!r}: {verdict.reason}")
	if verdict.verdict == NOT_PRINCIPAL:
		return Invertibility(False, None, verdict)
	witness = verdict.witness
	if not witness:
		return Invertibility(False, None, verdict)
	return Invertibility(is_nonzerodivisor(witness, I.ring, settings), witness, verdict)


@dataclass
class Lemma2Report:
	hd: object
	fitt: FittResult
	invertible: bool
	principality: Principality
	support_codimension: int
	biconditional_holds: bool

	def to_json(self):
		ring = self.fitt.ideal.ring
		return {
			"hd": self.hd,
			"fitt0": self.fitt.to_json(),
			"invertible": self.invertible,
			"principality": self.principality.verdict,
			"witness": ring.format(self.principality.witness) if self.principality.witness is not None else None,
			"support_codimension": self.support_codimension,
			"biconditional_holds": self.biconditional_holds,
		}


def reduction_is_irreducible(ring, settings=None):
	"""True when the reduced ring is the polynomial ring in the non-nilpotent variables."""
	if not ring.quotient:
		return True
	nilpotent = [i for i, v in enumerate(ring.variables) if ring.is_nilpotent(ring.var(v), settings)]
	return all(any(m[i] for i in nilpotent) for q in ring.quotient for m in q.itermonoms())


def support_codimension(M, settings=None):
	fitt = fitt0(M, settings)
	return krull_dimension(M.ring.quotient_ideal(), settings) - krull_dimension(fitt.ideal, settings), fitt


def lemma2_check(M, settings=None):
	"""hd(M) = 1 against invertibility of Fitt0(M), both computed independently."""
	settings = settings or get_settings()
	if not reduction_is_irreducible(M.ring, settings):
		throw(f"The reduction of {M.ring!r} is not recognized as a polynomial ring; principality needs an irreducible reduction")
	codimension, fitt = support_codimension(M, settings)
	if codimension < 1:
		raise ValidationError(f"Module is supported in codimension {codimension}; at least 1 is required")
	hd = homological_dimension(M, settings)
	invertibility = is_invertible_ideal(fitt.ideal, settings)
	holds = (hd == 1) == invertibility.invertible
	logger.info(f"Homological dimension against Fitt0: hd={hd}, invertible={invertibility.invertible}, holds={holds}")
	return Lemma2Report(hd, fitt, invertibility.invertible, invertibility.principality, codimension, holds)


def random_matrix(ring, rows, columns, seed=None, degree=1):
	"""Integer combinations of monomials of total degree <= ``degree``."""
	rng = random.Random(seed)
	monomials = [ring.one]
	for d in range(1, degree + 1):
		for combination in itertools.combinations_with_replacement(ring.gens, d):
			term = ring.one
			for g in combination:
				term = term * g
			monomials.append(term)
	matrix = []
	for _ in range(rows):
		row = []
		for _ in range(columns):
			entry = ring.zero
			for m in monomials:
				entry += rng.randint(-3, 3) * m
			row.append(ring.reduce(entry))
		matrix.append(row)
	return matrix


def cramer_selftest(ring, matrix=None, shape=(2, 3), seed=None, settings=None):
	"""sum_j a_ij D_jk = a_ik * a for an n x (n + r) matrix.

	a is the minor on the first n columns and D_jk the same minor with column j
	replaced by column k.
	"""
	if matrix is None:
		matrix = random_matrix(ring, shape[0], shape[1], seed)
	rows = [[ring.coerce(a) for a in row] for row in matrix]
	n = len(rows)
	width = len(rows[0]) if rows else 0
	if width < n:
		raise ValidationError(f"Expected at least {n} columns, got {width}")
	a = determinant(ring, [row[:n] for row in rows], settings)
	for k in range(width):
		deltas = []
		for j in range(n):
			replaced = [row[:j] + [row[k]] + row[j + 1:n] for row in rows]
			deltas.append(determinant(ring, replaced, settings))
		for i in range(n):
			left = sum((rows[i][j] * deltas[j] for j in range(n)), ring.zero)
			if ring.reduce(left - rows[i][k] * a, settings):
				logger.error(f"Cramer identity failed at i={i}, k={k}")
				return False
	return True
