# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Standard resolution of sheaves and families into admissible pairs.

The gates run in the order of ``hooks.gate_order``; each records its
certificates in the trace before the next one starts, and a failing gate
raises GateFailure carrying the trace so far.

Two constructions produce the module on the admissible scheme:

(a) kernel-dual: on the blowup Σ^ of the family in its Fitting ideal,
    N = im(σ*φ^T) and Ê = (ker(σ*E0^∨ -> N))^∨, restricted to t = 0;
(b) torsion quotient: σ*𝔼 modulo its exceptional-ideal torsion on Σ^,
    restricted to t = 0.

(a) needs a family with locally free general member, given for a sheaf by
a smoothing direction ψ with 𝔼 = coker(φ + tψ).
"""

import logging
import time
from dataclasses import dataclass, field

from sympy import Rational

from admissible_pairs import hooks
from admissible_pairs.config import get_settings
from admissible_pairs.errors import (
	GateFailure,
	InternalConsistencyError,
	ResourceLimitError,
	StabilizationError,
	ValidationError,
)
from admissible_pairs.standard_resolution.blowup.blowup import (
	SHIFT,
	AdmissibleScheme,
	BlowupModel,
	admissible_scheme,
	charts,
	degree_generators,
	family_ring,
	fiber_scheme,
	polarization_chi,
	projective_variables,
	rees_embed,
	tautological_certificate,
)
from admissible_pairs.standard_resolution.fitting.fitting import fitt0, fitting_ideal, lemma2_check
from admissible_pairs.standard_resolution.gbring.gbring import (
	Ideal,
	Ring,
	RingMap,
	groebner,
	in_radical,
	krull_dimension,
	saturate_elementwise,
	vector_space_dimension,
)
from admissible_pairs.standard_resolution.modres.hilbert import hilbert
from admissible_pairs.standard_resolution.modres.modres import (
	GradedModule,
	ModuleMap,
	Submodule,
	columns_to_matrix,
	dual_and_ext,
	free_resolution,
	is_zero_vector,
	kernel_cokernel_image,
	minimal_presentation,
	pullback,
	saturate_submodule,
	syzygies,
	torsion_submodule,
	unit_vector,
)
from admissible_pairs.standard_resolution.pipeline.flatness import flat_check, flat_check_line

# Configure logging
logger = logging.getLogger(__name__)


def _negated(twists):
	return [tuple(-e for e in t) for t in twists]


def _padded(degree):
	return (*degree, 0)


def plane_rank(M, window=None, settings=None):
	"""lc(P_M) / lc(P_R) on the plane; 0 for modules of lower-dimensional support."""
	reference = hilbert(GradedModule.free(M.ring, [(0,) * M.ring.grading_length]), window=window, settings=settings, saturate=False)
	if not M.rank:
		return Rational(0)
	polynomial = hilbert(M, window=window, settings=settings)
	if polynomial.degree < reference.degree:
		return Rational(0)
	return Rational(polynomial.leading_coefficient / reference.leading_coefficient)


def _is_plane(ring):
	return len(ring.variables) == 3 and ring.grading_length == 1 and not ring.quotient


# Inputs


@dataclass
class QuotientDatum:
	"""q0: O^r -> κ given by the images of the generators of O^r in κ."""

	source: GradedModule
	quotient: GradedModule
	matrix: tuple

	def __post_init__(self):
		self.validate()

	def validate(self):
		"""Validate the shape and surjectivity of q0"""
		try:
			self.validate_source()
			self.validate_surjective()
		except (TypeError, ValueError) as e:
			logger.error(f"Validation error in Quotient Datum: {str(e)}")
			raise ValidationError(str(e)) from e

	def validate_source(self):
		if self.source.source:
			raise ValueError("The source of q0 must be a free module")
		if self.source.ring != self.quotient.ring:
			raise ValueError("q0 must map between modules over one ring")

	def validate_surjective(self):
		if not kernel_cokernel_image(self.map(), "coker").is_zero():
			raise ValueError("q0 is not surjective")

	@classmethod
	def point(cls, ideal, twist=None):
		"""O -> O/I for a zero-dimensional ideal I."""
		ring = ideal.ring
		twist = tuple(twist) if twist is not None else (0,) * ring.grading_length
		return cls(GradedModule.free(ring, [twist]), GradedModule.cyclic(ideal, twist), [[ring.one]])

	def map(self):
		return ModuleMap(self.source, self.quotient, self.matrix)

	def kernel(self, settings=None):
		return kernel_cokernel_image(self.map(), "ker", settings)

	def length(self, settings=None):
		polynomial = hilbert(self.quotient, settings=settings, saturate=False)
		if polynomial.degree > 0:
			raise ValidationError("The quotient of q0 must have finite length")
		return int(polynomial.coefficients[0])


@dataclass
class InputSheaf:
	"""A sheaf E on the plane with its resolution options."""

	module: GradedModule
	rank: int = None
	k: int = None
	quotient: QuotientDatum = None
	smoothing: tuple = None

	def __post_init__(self):
		self.validate()

	def validate(self):
		"""Validate the sheaf and its options"""
		try:
			self.validate_ring()
			self.validate_k()
			self.validate_smoothing()
		except (TypeError, ValueError) as e:
			logger.error(f"Validation error in Input Sheaf: {str(e)}")
			raise ValidationError(str(e)) from e

	def validate_ring(self):
		if not _is_plane(self.module.ring):
			raise ValueError("Input sheaves live on the plane: three variables of degree 1 and no quotient")
		if self.quotient is not None and self.quotient.source.ring != self.module.ring:
			raise ValueError("The quotient datum must live on the ring of the sheaf")

	def validate_k(self):
		if self.k is not None and (isinstance(self.k, bool) or not isinstance(self.k, int) or self.k <= 0):
			raise ValueError(f"Polarization exponent k must be a positive integer, got {self.k!r}")

	def validate_smoothing(self):
		if self.smoothing is None:
			return
		rows = [list(row) for row in self.smoothing]
		if len(rows) != self.module.rank or any(len(row) != len(self.module.source) for row in rows):
			raise ValueError("The smoothing direction must have the shape of the presentation matrix")


@dataclass
class FamilyBase:
	"""Base T of a family: at most one line coordinate and an Artinian local algebra Λ."""

	polynomial: tuple = ()
	artinian: tuple = ()
	ideal: tuple = ()
	irreducible_reduction: bool = True

	def __post_init__(self):
		self.polynomial = tuple(self.polynomial)
		self.artinian = tuple(self.artinian)
		self.ideal = tuple(self.ideal)
		self.validate()

	def validate(self):
		"""Validate the base algebra"""
		try:
			self.validate_variables()
			self.validate_reduction()
		except (TypeError, ValueError) as e:
			logger.error(f"Validation error in Family Base: {str(e)}")
			raise ValidationError(str(e)) from e
		self.validate_artinian()

	def validate_variables(self):
		if len(self.polynomial) > 1:
			raise ValueError("At most one line coordinate is supported")
		if not self.polynomial and not self.artinian:
			raise ValueError("A family base needs a line coordinate or an Artinian part")
		if set(self.polynomial) & set(self.artinian):
			raise ValueError("Base variables must be distinct")

	def validate_reduction(self):
		if not self.irreducible_reduction:
			raise ValueError("The reduction of the base must be irreducible")

	def validate_artinian(self):
		if not self.artinian:
			return
		ring = self.artinian_ring()
		for name in self.artinian:
			if not ring.is_nilpotent(ring.var(name)):
				raise ValidationError(f"Artinian variable {name} is not nilpotent; Λ must be local")

	def artinian_ring(self):
		if not self.artinian:
			return None
		return Ring(self.artinian, [(0,)] * len(self.artinian), self.ideal)

	@property
	def length(self):
		"""dim_k Λ."""
		return vector_space_dimension(Ideal(self.artinian_ring(), [])) if self.artinian else 1

	def ring(self, plane):
		names = [*plane.variables, *self.polynomial, *self.artinian]
		zero = (0,) * plane.grading_length
		bare = Ring(names, [*plane.degrees, *[zero] * (len(self.polynomial) + len(self.artinian))])
		return bare.with_quotient([bare.embed(bare.parse(q)) if isinstance(q, str) else bare.embed(q) for q in self.ideal])

	def closed_point(self, ring, plane):
		"""Restriction of a family ring to the closed point of the base."""
		images = [plane.var(v) if v in plane.variables else plane.zero for v in ring.variables]
		return RingMap(ring, plane, images)

	def to_json(self):
		return {
			"polynomial": list(self.polynomial),
			"artinian": list(self.artinian),
			"ideal": [str(q) for q in self.ideal],
			"length": self.length,
		}


# Trace


@dataclass
class ResolutionTrace:
	"""Append-only record of the gates and of the objects of the construction."""

	gates: dict = field(default_factory=dict)
	timing: dict = field(default_factory=dict)
	resolution: object = None
	W: GradedModule = None
	Q: GradedModule = None
	ext1: GradedModule = None
	ideal: Ideal = None
	model: BlowupModel = None
	family: GradedModule = None
	N: GradedModule = None
	Ehat: GradedModule = None
	certificates: dict = field(default_factory=dict)

	def record(self, gate, passed, certificates=None, started=None):
		order = hooks.gate_order
		if gate not in order:
			raise InternalConsistencyError(f"Unknown gate {gate!r}")
		if self.gates and order.index(gate) <= order.index(next(reversed(self.gates))):
			raise InternalConsistencyError(f"Gate {gate!r} recorded out of order")
		self.gates[gate] = {"passed": bool(passed), "certificates": certificates or {}}
		if started is not None:
			self.timing[gate] = time.perf_counter() - started
		logger.info(f"Gate {gate}: {'passed' if passed else 'FAILED'}")

	def require(self, gate, passed, message, certificates=None, started=None):
		self.record(gate, passed, certificates, started)
		if not passed:
			raise GateFailure(gate, message, certificates, self)

	@property
	def passed(self):
		return all(entry["passed"] for entry in self.gates.values())

	def to_json(self):
		data = {"gates": self.gates}
		if self.resolution is not None:
			data["resolution"] = self.resolution.to_json()
		for name in ("W", "Q", "ext1", "N", "Ehat"):
			value = getattr(self, name)
			if value is not None:
				data[name] = value.to_json()
		if self.ideal is not None:
			data["fitting_ideal"] = self.ideal.to_json()
		if self.model is not None:
			data["model"] = self.model.to_json()
		return data


@dataclass
class AdmissiblePair:
	scheme: AdmissibleScheme
	module: GradedModule
	hilbert: object
	sheaf: GradedModule
	locally_free: bool
	local_certificate: dict
	trace: ResolutionTrace
	constructions: dict = field(default_factory=dict)
	diagnostics: dict = field(default_factory=dict)
	discrepancies: list = field(default_factory=list)

	def to_json(self):
		return {
			"scheme": self.scheme.to_json(),
			"module": self.module.to_json(),
			"hilbert": self.hilbert.to_json(),
			"sheaf": self.sheaf.to_json(),
			"locally_free": self.locally_free,
			"local_certificate": self.local_certificate,
			"constructions": self.constructions,
			"diagnostics": self.diagnostics,
			"discrepancies": self.discrepancies,
			"trace": self.trace.to_json(),
		}


@dataclass
class FamilyResolution:
	base: FamilyBase
	scheme: AdmissibleScheme
	family_module: GradedModule
	closed: AdmissiblePair
	flatness: object
	birationally_trivial: bool
	trace: ResolutionTrace

	def to_json(self):
		return {
			"base": self.base.to_json(),
			"scheme": self.scheme.to_json(),
			"family_module": self.family_module.to_json(),
			"closed_fiber": self.closed.to_json(),
			"flatness": self.flatness.to_json() if self.flatness is not None else None,
			"birationally_trivial": self.birationally_trivial,
		}


# Local certificates


def first_nonzero_fitting(M, settings=None):
	"""(j, Fitt_j = (1)) for the least j with Fitt_j(M) nonzero."""
	for j in range(M.rank + 1):
		ideal = fitting_ideal(M, j, settings)
		if not ideal.is_zero(settings):
			return j, ideal.is_unit(settings)
	return M.rank, True


def local_freeness(M, chart_list, settings=None):
	"""Per chart: local rank and whether the first nonzero Fitting ideal is the unit ideal."""
	certificate = {}
	for chart in chart_list:
		local = pullback(M, chart.substitution)
		rank, free = first_nonzero_fitting(local, settings)
		certificate[chart.name] = {"rank": rank, "locally_free": free}
	return certificate


def failing_charts(certificate):
	return sorted(name for name, entry in certificate.items() if not entry["locally_free"])


# Constructions


def model_ring(model):
	"""Σ^: the ambient ring of the model modulo its Rees relations."""
	return model.ambient.with_quotient(model.relations.generators)


def restrict_to_fiber(M, X, settings=None):
	"""A module on the total space of the degeneration restricted to t = 0."""
	model = X.model
	if M.ring != model.ambient:
		M = M.over_ring(model.ambient).tensor_with_quotient(model.relations, settings)
	return pullback(M, X.restriction).tensor_with_quotient(X.defining, settings)


def torsion_quotient(family, model, settings=None):
	"""σ*𝔼 on the model modulo the torsion of the exceptional ideal."""
	pulled = pullback(family, model.sigma).tensor_with_quotient(model.relations, settings)
	saturated = saturate_submodule(pulled.ring, pulled.rank, pulled.columns(), model.exceptional, settings)
	return GradedModule.from_columns(pulled.ring, pulled.target, saturated, settings)


def compute_N_and_Ehat(trace, settings=None):
	"""N and Ê on the model of ``trace`` for the family presentation E1 -> E0 of ``trace.family``.

	Certificates: σ*φ^T kills the syzygies S (the diagram commutes), N is locally
	free on every chart (so the triple 0 -> Ê^∨ -> σ*E0^∨ -> N -> 0 is exact),
	and σ*E0 -> Ê given by S^T is onto on every chart.
	"""
	settings = settings or get_settings()
	model, family = trace.model, trace.family
	if model is None or family is None:
		raise ValidationError("The kernel-dual construction needs a blowup model and a family presentation")
	if family.ring != model.base:
		raise ValidationError("The family must live on the base of the model")
	ring = model_ring(model)
	lift = RingMap(model.base, ring, list(model.base.variables), degree_map=_padded)
	E0 = [_padded(a) for a in family.target]
	dual0 = _negated(E0)
	r0, r1 = len(family.target), len(family.source)
	phi = [[lift(a) for a in row] for row in family.matrix]

	if not r1:
		trace.N = GradedModule.zero(ring)
		trace.Ehat = GradedModule.free(ring, E0)
		trace.certificates["kernel_dual"] = {
			"composition": True,
			"N_locally_free": True,
			"exact_triple": True,
			"epimorphism": True,
			"locally_free_input": True,
		}
		return trace

	transposed = [tuple(phi[j][i] for i in range(r1)) for j in range(r0)]
	S = syzygies(ring, transposed, r1, source=dual0, settings=settings)
	composition = all(
		is_zero_vector(
			ring,
			[sum((v[j] * transposed[j][i] for j in range(r0)), ring.zero) for i in range(r1)],
			settings,
		)
		for v in S.columns
	)
	N = GradedModule.from_columns(ring, dual0, S.columns, settings)
	chart_list = charts(ring, [projective_variables(model.base), list(model.y_names)], None, settings)
	N_certificate = local_freeness(N, chart_list, settings)
	N_free = not failing_charts(N_certificate)

	s = len(S.columns)
	if not s:
		hom_columns, hom_twists = [], []
		Ehat = GradedModule.zero(ring)
		epimorphism = True
	else:
		dual_K = _negated(S.twists)
		R = syzygies(ring, S.columns, r0, source=S.twists, settings=settings)
		if R.columns:
			rows = [tuple(R.columns[m][l] for m in range(len(R.columns))) for l in range(s)]
			H = syzygies(ring, rows, len(R.columns), source=dual_K, settings=settings)
			hom_columns, hom_twists = list(H.columns), list(H.twists)
		else:
			hom_columns, hom_twists = [unit_vector(ring, s, l) for l in range(s)], dual_K
		relations = syzygies(ring, hom_columns, s, source=hom_twists, settings=settings)
		Ehat = GradedModule(
			ring, hom_twists, relations.twists or [], columns_to_matrix(ring, relations.columns, len(hom_columns))
		)
		images = [tuple(S.columns[l][j] for l in range(s)) for j in range(r0)]
		epimorphism = all(_onto_on_chart(chart, s, images, hom_columns, settings) for chart in chart_list)

	trace.N, trace.Ehat = N, Ehat
	trace.certificates["kernel_dual"] = {
		"composition": composition,
		"N_locally_free": N_free,
		"N_charts": N_certificate,
		"exact_triple": composition and N_free,
		"epimorphism": epimorphism,
	}
	logger.debug(f"N with {N.rank} generators, Ê with {Ehat.rank} generators")
	return trace


def _onto_on_chart(chart, rank, images, targets, settings):
	"""Every target vector lies in the span of ``images`` after dehomogenizing on ``chart``."""
	substitution = chart.substitution
	span = Submodule(chart.ring, rank, [tuple(substitution(a) for a in v) for v in images])
	return all(span.contains(tuple(substitution(a) for a in h), settings) for h in targets)


def _epi_mono_factorization(E0, E1, phi, ring, settings):
	"""W = coker(𝔼^∨ -> E0^∨) against Q = im(φ^T: E0^∨ -> E1^∨)."""
	dual0, dual1 = _negated(E0), _negated(E1)
	if not E1:
		W = GradedModule.zero(ring)
		return W, W, True
	transposed = [[phi[j][i] for j in range(len(E0))] for i in range(len(E1))]
	dual_map = ModuleMap(GradedModule.free(ring, dual0), GradedModule.free(ring, dual1), transposed)
	Q = kernel_cokernel_image(dual_map, "im", settings)
	columns = [tuple(phi[j][i] for i in range(len(E1))) for j in range(len(E0))]
	kernel = syzygies(ring, columns, len(E1), source=dual0, settings=settings)
	W = GradedModule.from_columns(ring, dual0, kernel.columns, settings)
	return W, Q, W.same_submodule(Q, settings)


def _saturated(ideal, settings):
	for irrelevant in ideal.ring.irrelevant_ideals():
		ideal = saturate_elementwise(ideal, irrelevant, settings)
	return ideal


def _plane_degree(ideal, settings):
	"""Largest degree in the first grading row among the basis elements of ``ideal``."""
	ring = ideal.ring
	return max(ring.degree(g)[0] for g in ideal.essential_generators(settings))


def _chi(M, twist, settings, window=None):
	return hilbert(M, twist, window, settings, saturate=False, shift=SHIFT)


def _plane_chi(E, k, settings, window=None):
	return hilbert(E, (k,), window, settings, saturate=False, shift=(1,))


# Gates shared by sheaves and families


def _lemma1_gate(trace, E, settings, reduction=None):
	started = time.perf_counter()
	resolution = free_resolution(E, max_len=settings.max_resolution_length, settings=settings, truncate=True)
	hd = resolution.length if resolution.complete else None
	certificates = {"homological_dimension": hd}
	if reduction is not None:
		certificates["reduction_homological_dimension"] = free_resolution(
			reduction, max_len=settings.max_resolution_length, settings=settings, truncate=True
		).length
	trace.require(
		"lemma1",
		hd is not None and hd <= 1,
		f"homological dimension {hd if hd is not None else 'above the cap'} exceeds 1; "
		"Fitt0 of Ext^1 can only be invertible on the blowup when hd <= 1",
		certificates,
		started,
	)
	return resolution


def _resolution_gate(trace, resolution, ring, settings):
	started = time.perf_counter()
	trace.resolution = resolution
	E0 = list(resolution.twists[0])
	E1 = list(resolution.twists[1]) if resolution.length else []
	phi = [list(row) for row in resolution.differentials[0]] if resolution.length else [[] for _ in E0]
	W, Q, factorization = _epi_mono_factorization(E0, E1, phi, ring, settings)
	trace.W, trace.Q = W, Q
	certificates = {"certified": resolution.certify(settings), "epi_mono_factorization": factorization, "length": resolution.length}
	trace.require(
		"resolution", certificates["certified"] and factorization, "resolution or factorization certificate failed", certificates, started
	)
	return E0, E1, phi


def _identity_gates(trace, started):
	"""Gates of the locally free branch, where the pair is (S, L^k) itself."""
	trace.record("fitting", True, {"ext1_zero": True}, started)
	trace.record("blowup", True, {"identity": True})
	trace.record("kernel_dual", True, {"identity": True, "N_zero": True})
	trace.record("flatness", True, {"constant_family": True})


def _kernel_dual_gate(trace, X, family, construction_a, settings):
	"""Both constructions on the model of X, cross-checked; returns (restricted module, total-space module, constructions)."""
	started = time.perf_counter()
	model = X.model
	constructions = {"b": "computed", "a": "unavailable"}
	certificates = {}
	total_b = torsion_quotient(family, model, settings)
	tilde_b = restrict_to_fiber(total_b, X, settings)
	chosen, total = tilde_b, total_b
	if construction_a:
		trace.family = family
		compute_N_and_Ehat(trace, settings)
		certificates.update(trace.certificates["kernel_dual"])
		tilde_a = restrict_to_fiber(trace.Ehat, X, settings)
		constructions["a"] = "computed"
		agree = _chi(tilde_a, X.twist, settings) == _chi(tilde_b, X.twist, settings)
		constructions["agree"] = agree
		certificates["cross_construction"] = agree
		passed = all(certificates[key] for key in ("composition", "exact_triple", "epimorphism")) and agree
		trace.require("kernel_dual", passed, "kernel-dual certificates failed", certificates, started)
		chosen, total = tilde_a, trace.Ehat
	else:
		trace.record("kernel_dual", True, certificates, started)
	return chosen, total, constructions


def _chi_gate(trace, X, module, E, k, settings):
	started = time.perf_counter()
	left = _plane_chi(E, k, settings) if X.identity else _chi(module, X.twist, settings)
	right = _plane_chi(E, k, settings)
	polarization = polarization_chi(X, settings=settings)
	reference = hilbert(GradedModule.free(E.ring, [(0,)]), (k,), None, settings, saturate=False, shift=(1,))
	certificates = {
		"left": [str(c) for c in left.coefficients],
		"right": [str(c) for c in right.coefficients],
		"polarization": polarization == reference,
	}
	passed = left == right and certificates["polarization"]
	trace.require("chi_identity", passed, "chi(E~ (x) L~^n) differs from chi(E(kn))", certificates, started)
	return left


def _k1_diagnostic(X, module, E, settings):
	if X.identity:
		return {"k1_identity": True}
	twist = (1 - X.d, 1)
	try:
		left = _chi(module, twist, settings)
		right = _plane_chi(E, 1, settings)
	except (StabilizationError, ResourceLimitError) as e:
		return {"k1_identity": None, "k1_note": str(e)}
	return {"k1_identity": left == right, "k1_left": [str(c) for c in left.coefficients]}


# Operations


def hilbert_identity_gate(pair, sheaf, settings=None):
	"""(holds, χ(Ẽ ⊗ L~^n), χ(E(kn)))."""
	settings = settings or get_settings()
	E = sheaf.module if isinstance(sheaf, InputSheaf) else sheaf
	X = pair.scheme
	right = _plane_chi(E, X.k, settings)
	if X.identity:
		left = _plane_chi(pair.module, X.k, settings)
	else:
		left = _chi(pair.module, X.twist, settings)
	return left == right, left, right


def check_birational_triviality(X, settings=None):
	"""True iff the content ideal of the center in the coordinates of T is the unit ideal."""
	settings = settings or get_settings()
	center = X.center if isinstance(X, BlowupModel) else X
	ring = center.ring
	names = ring.zero_degree_variables()
	if not names:
		return True
	T = Ring(names, [(0,)] * len(names))
	T = T.with_quotient([T.embed(q) for q in ring.quotient if ring.support(q) <= set(names)])
	base_positions = [ring.index(v) for v in names]
	other = [i for i in range(len(ring.variables)) if i not in base_positions]
	coefficients = []
	for g in center.generators:
		groups = {}
		for monomial, c in ring.reduce(g, settings).iterterms():
			key = tuple(monomial[i] for i in other)
			term = T.poly_ring({tuple(monomial[i] for i in base_positions): c})
			groups[key] = groups.get(key, T.zero) + term
		coefficients.extend(groups.values())
	content = Ideal(T, coefficients)
	trivial = content.is_unit(settings)
	logger.info(f"Content ideal of the center: {content.to_json()}; birationally trivial: {trivial}")
	return trivial


def transform_subsheaf(F, pair, settings=None):
	"""A sheaf on the plane carried through construction (b) on the model of ``pair``."""
	settings = settings or get_settings()
	X = pair.scheme
	if X.identity:
		return F
	base = X.model.base
	lift = RingMap(F.ring, base, list(F.ring.variables))
	return restrict_to_fiber(torsion_quotient(pullback(F, lift), X.model, settings), X, settings)


@dataclass
class QuasiIdealityReport:
	holds: bool
	vacuous: bool = False
	left: object = None
	right: object = None
	modules_equal: bool = None

	def to_json(self):
		data = {"holds": self.holds, "vacuous": self.vacuous}
		if not self.vacuous:
			data.update(
				{
					"pair": [str(c) for c in self.left.coefficients],
					"kernel": [str(c) for c in self.right.coefficients],
					"modules_equal": self.modules_equal,
				}
			)
		return data


def _same_module(left, right, settings):
	"""Submodule equality, on minimal presentations when the targets differ; None when still not comparable."""
	if left.target != right.target:
		left, right = minimal_presentation(left, settings), minimal_presentation(right, settings)
		if left.target != right.target:
			return None
	return left.same_submodule(right, settings)


def verify_quasi_ideality(pair, q0, settings=None):
	"""Ẽ on the additional components against σ* ker q0 / tors restricted there."""
	settings = settings or get_settings()
	X = pair.scheme
	if X.identity:
		return QuasiIdealityReport(True, vacuous=True)
	kernel = q0.kernel(settings)
	transformed = transform_subsheaf(kernel, pair, settings)
	left = pair.module.tensor_with_quotient(X.additional, settings)
	right = transformed.tensor_with_quotient(X.additional, settings)
	left_chi, right_chi = _chi(left, X.twist, settings), _chi(right, X.twist, settings)
	modules_equal = _same_module(left, right, settings) if left_chi == right_chi else None
	holds = left_chi == right_chi and modules_equal is not False
	if holds:
		logger.info("Quasi-ideality holds on the additional components")
	else:
		logger.info(f"Quasi-ideality fails: {left_chi.coefficients} against {right_chi.coefficients}, modules equal: {modules_equal}")
	return QuasiIdealityReport(holds, False, left_chi, right_chi, modules_equal)


def _family_of(E, smoothing, phi, E0, E1, base):
	"""coker(φ + tψ) on P^2 x A^1, or the constant family of the minimal presentation."""
	plane = E.ring
	lift = RingMap(plane, base, list(plane.variables))
	t = base.var(base.variables[-1])
	if smoothing is None:
		return GradedModule(base, E0, E1, [[lift(a) for a in row] for row in phi] if E1 else [[] for _ in E0])
	matrix = []
	for row, direction in zip(E.matrix, smoothing):
		matrix.append([lift(a) + t * lift(plane.coerce(b)) for a, b in zip(row, direction)])
	return GradedModule(base, E.target, E.source, matrix)


def resolve_sheaf(sheaf, settings=None, window=None):
	"""Admissible pair of a sheaf on the plane, every gate evaluated in order."""
	settings = settings or get_settings()
	if isinstance(sheaf, GradedModule):
		sheaf = InputSheaf(sheaf)
	E = sheaf.module
	plane = E.ring
	k = sheaf.k or settings.default_k
	trace = ResolutionTrace()

	irrelevant = Ideal(plane, plane.gens)
	torsion_free = torsion_submodule(E, irrelevant, settings).torsion.is_zero(settings)
	if not torsion_free:
		raise ValidationError("The input module has torsion supported at the irrelevant ideal")
	if sheaf.rank is not None and plane_rank(E, settings=settings) != sheaf.rank:
		raise ValidationError(f"Declared rank {sheaf.rank} does not match the Hilbert polynomial")

	resolution = _lemma1_gate(trace, E, settings)
	E0, E1, phi = _resolution_gate(trace, resolution, plane, settings)

	started = time.perf_counter()
	ext = dual_and_ext(E, 1, settings) if E1 else GradedModule.zero(plane)
	trace.ext1 = ext
	if ext.is_zero(settings):
		_identity_gates(trace, started)
		X = AdmissibleScheme.identity_pair(plane, k)
		return _finish(trace, X, E, sheaf, k, settings, {"a": "identity", "b": "identity"}, {})

	fitting = fitt0(ext, settings)
	I = _saturated(fitting.ideal, settings)
	trace.ideal = I
	certificates = {"fitt0": fitting.to_json(), "zero_dimensional": krull_dimension(I, settings) == 1}
	certificates["lemma2"] = lemma2_check(ext, settings).to_json()
	base = family_ring(plane)
	family = _family_of(E, sheaf.smoothing, phi, E0, E1, base)
	if sheaf.smoothing is not None:
		family_ext = dual_and_ext(family, 1, settings)
		family_ideal = _saturated(fitt0(family_ext, settings).ideal, settings)
		expected = Ideal(base, [*[base.embed(g) for g in I.generators], base.var(base.variables[-1])])
		certificates["smoothing_center"] = family_ideal == groebner(expected, settings)
	passed = (
		certificates["zero_dimensional"]
		and certificates["lemma2"]["biconditional_holds"]
		and certificates.get("smoothing_center", True)
	)
	message = "Fitt0 of Ext^1 is not zero-dimensional, disagrees with hd, or the smoothing misses I + (t)"
	trace.require("fitting", passed, message, certificates, started)

	started = time.perf_counter()
	X = admissible_scheme(I, k=k, settings=settings)
	trace.model = X.model
	tautological = tautological_certificate(X.model, settings)
	certificates = {
		"tautological": tautological,
		"component_count": X.component_count,
		"birationally_trivial": check_birational_triviality(X.model, settings),
	}
	trace.require(
		"blowup",
		all(tautological.values()) and certificates["birationally_trivial"],
		"exceptional ideal is not invertible on every chart",
		certificates,
		started,
	)

	module, total, constructions = _kernel_dual_gate(trace, X, family, sheaf.smoothing is not None, settings)

	started = time.perf_counter()
	flatness = flat_check_line(total, base.variables[-1], X.twist, window, depth=1, settings=settings)
	trace.require("flatness", flatness.flat, "the resolved family is not flat over the line", {"report": flatness.to_json()}, started)
	return _finish(trace, X, E, sheaf, k, settings, constructions, {"module": module})


def _finish(trace, X, E, sheaf, k, settings, constructions, built):
	module = built.get("module", E)
	started = time.perf_counter()
	if sheaf.quotient is not None:
		pair = AdmissiblePair(X, module, None, E, False, {}, trace)
		report = verify_quasi_ideality(pair, sheaf.quotient, settings)
		trace.require("quasi_ideality", report.holds, "E~ differs from sigma^* ker q0 / tors on an additional component", report.to_json(), started)
	else:
		trace.record("quasi_ideality", True, {"skipped": "no quotient datum"}, started)

	left = _chi_gate(trace, X, module, E, k, settings)
	certificate = local_freeness(module, X.charts(settings), settings)
	failing = failing_charts(certificate)
	discrepancies = []
	if failing:
		discrepancies.append(f"E~ is not locally free on charts {', '.join(failing)}")
	diagnostics = _k1_diagnostic(X, module, E, settings)
	pair = AdmissiblePair(X, module, left, E, not failing, certificate, trace, constructions, diagnostics, discrepancies)
	logger.info(f"Resolved into an admissible pair with {X.component_count} additional component(s)")
	return pair


def resolve_family(E, base, k=None, settings=None, window=None):
	"""Admissible family of a flat family over a line or an Artinian base, with its flatness report."""
	settings = settings or get_settings()
	if not isinstance(base, FamilyBase):
		raise ValidationError("resolve_family needs a FamilyBase")
	ring = E.ring
	names = [*base.polynomial, *base.artinian]
	plane_names = [v for v in ring.variables if v not in names]
	if len(plane_names) != 3 or any(v not in ring.variables for v in names):
		raise ValidationError(f"Family ring {list(ring.variables)} must carry three plane variables and {names}")
	plane = Ring(plane_names)
	if base.ring(plane) != ring:
		raise ValidationError("Family ring does not match the base algebra")
	k = k or settings.default_k
	trace = ResolutionTrace()
	closed_map = base.closed_point(ring, plane)
	reduction = pullback(E, closed_map)

	resolution = _lemma1_gate(trace, E, settings, reduction)
	E0, E1, phi = _resolution_gate(trace, resolution, ring, settings)

	started = time.perf_counter()
	ext = dual_and_ext(E, 1, settings) if E1 else GradedModule.zero(ring)
	trace.ext1 = ext
	if ext.is_zero(settings):
		_identity_gates(trace, started)
		X = AdmissibleScheme.identity_pair(plane, k)
		closed = _finish(trace, X, reduction, InputSheaf(reduction), k, settings, {"a": "identity", "b": "identity"}, {})
		return FamilyResolution(base, X, E, closed, None, True, trace)

	ideal = _saturated(fitt0(ext, settings).ideal, settings)
	trace.ideal = ideal
	certificates = {"fitting_ideal": ideal.to_json()}
	if base.polynomial:
		t_name = base.polynomial[0]
		certificates["locally_free_general_fiber"] = in_radical(ring.var(t_name), ideal, settings)
		passed = certificates["locally_free_general_fiber"]
		message = "the Fitting ideal is not supported over t = 0; the family has no locally free member"
	else:
		closed_ideal = Ideal(plane, [closed_map(g) for g in ideal.generators])
		certificates["closed_fiber_zero_dimensional"] = krull_dimension(closed_ideal, settings) == 1
		passed = certificates["closed_fiber_zero_dimensional"]
		message = "the Fitting ideal of the closed fiber is not zero-dimensional"
	trace.require("fitting", passed, message, certificates, started)

	started = time.perf_counter()
	if base.polynomial:
		center, total_ring, family = ideal, ring, E
		fiber_plane = Ring(plane_names) if not base.artinian else ring.subring([t_name])
	else:
		(t_name,) = ["t"] if "t" not in ring.variables else ring.fresh_names("t", 1)
		total_ring = ring.extend([t_name])
		lift = RingMap(ring, total_ring, list(ring.variables))
		center = Ideal(total_ring, [*[lift(g) for g in ideal.generators], total_ring.var(t_name)])
		family = pullback(E, lift)
		fiber_plane = ring
	d = _plane_degree(ideal, settings)
	model = rees_embed(center, degree_generators(center, d, settings), settings)
	trace.model = model
	X = fiber_scheme(model, fiber_plane, k, d, t_name, settings)
	tautological = tautological_certificate(model, settings)
	trivial = check_birational_triviality(model, settings)
	certificates = {"tautological": tautological, "birationally_trivial": trivial, "component_count": X.component_count}
	trace.require("blowup", all(tautological.values()) and trivial, "the blowup is not an admissible birational model", certificates, started)

	module, total, constructions = _kernel_dual_gate(trace, X, family, bool(base.polynomial), settings)

	started = time.perf_counter()
	if base.polynomial:
		flatness = flat_check_line(total, t_name, X.twist, window, depth=1, settings=settings)
	else:
		flatness = flat_check(module, list(base.artinian), X.twist, window, settings=settings)
	trace.require("flatness", flatness.flat, "the resolved family is not flat; platification is not attempted", {"report": flatness.to_json()}, started)

	closed_scheme, closed_module = _closed_fiber(X, module, base, plane, settings)
	closed = _finish(trace, closed_scheme, closed_module, InputSheaf(reduction, k=k), k, settings, constructions, {"module": closed_module})
	if base.artinian and closed_scheme is not X:
		family_chi = _chi(module, X.twist, settings)
		expected = [c * base.length for c in closed.hilbert.coefficients]
		closed.diagnostics["family_chi"] = list(family_chi.coefficients) == expected
	return FamilyResolution(base, X, total if base.polynomial else module, closed, flatness, trivial, trace)


def _closed_fiber(X, module, base, plane, settings):
	"""The scheme and module over the closed point of an Artinian base."""
	if not base.artinian:
		if module.ring != X.ambient:
			raise InternalConsistencyError("Resolved module does not live on the admissible scheme")
		return X, module
	fiber = X.ambient
	keep = [v for v in fiber.variables if v not in base.artinian]
	closed_ring = Ring(keep, [fiber.degrees[fiber.index(v)] for v in keep])
	images = [closed_ring.zero if v in base.artinian else closed_ring.var(v) for v in fiber.variables]
	to_closed = RingMap(fiber, closed_ring, images)

	def restrict(ideal):
		return _saturated(Ideal(closed_ring, [to_closed(g) for g in ideal.generators]), settings)

	defining = restrict(X.defining)
	sigma = RingMap(plane, closed_ring, list(plane.variables), degree_map=_padded)
	closed_scheme = AdmissibleScheme(
		plane,
		closed_ring,
		defining,
		restrict(X.main),
		restrict(X.additional),
		Ideal(closed_ring, [to_closed(g) for g in X.exceptional.generators]),
		X.twist,
		X.k,
		X.d,
		None,
		sigma,
		None,
		X.component_count,
	)
	closed_module = pullback(module, to_closed).tensor_with_quotient(defining, settings)
	return closed_scheme, closed_module
