# Copyright (c) 2025, Standard Resolution Developers and contributors
# For license information, please see license.txt

"""Buchberger's algorithm with Gebauer-Moeller pair elimination.

Polynomials are sympy ``PolyElement`` values. Submodules of a free module of
rank r are handled in the same engine: the first ``components`` ring
variables are the basis vectors e_1..e_r, every element is linear in them,
and critical pairs are only formed between elements with equal leading
component. The monomial order of the ring must rank the component block
first (position over term).
"""

import logging

from admissible_pairs.config import get_settings
from admissible_pairs.errors import ResourceLimitError

# Configure logging
logger = logging.getLogger(__name__)


def leading_component(monomial, components):
	for index in range(components):
		if monomial[index]:
			return index
	return None


def spoly(f, g, lmf, lmg):
	"""Return the s-polynomial of monic polynomials f and g."""
	R = f.ring
	lcm = R.monomial_lcm(lmf, lmg)
	s1 = f.mul_monom(R.monomial_div(lcm, lmf))
	s2 = g.mul_monom(R.monomial_div(lcm, lmg))
	return s1 - s2


def update(G, lmG, P, f, components=0):
	"""Return the new basis, lead list and pair set when f is added to G."""
	R = f.ring
	lcm = R.monomial_lcm
	mul = R.monomial_mul
	div = R.monomial_div
	lmf = f.LM
	cf = leading_component(lmf, components)

	P = {
		p
		for p in P
		if (
			div(lcm(lmG[p[0]], lmG[p[1]]), lmf) is None
			or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf)
			or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf)
		)
	}

	lcm_dict = {}
	for i, lmi in enumerate(lmG):
		if leading_component(lmi, components) != cf:
			continue
		lcm_dict.setdefault(lcm(lmi, lmf), []).append(i)

	minimalized_lcms = []
	for L in sorted(lcm_dict, key=R.order):
		if all(div(L, L_) is None for L_ in minimalized_lcms):
			minimalized_lcms.append(L)

	new_pairs = set()
	for L in minimalized_lcms:
		if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
			new_pairs.add((min(lcm_dict[L]), len(G)))

	return G + [f], lmG + [lmf], P | new_pairs


def minimalize(G):
	"""Return a minimal Groebner basis from arbitrary Groebner basis G."""
	if not G:
		return []
	R = G[0].ring
	Gmin = []
	for f in sorted(G, key=lambda h: R.order(h.LM)):
		if all(R.monomial_div(f.LM, g.LM) is None for g in Gmin):
			Gmin.append(f)
	return Gmin


def interreduce(G):
	"""Return the reduced Groebner basis from a minimal Groebner basis G."""
	Gred = []
	for i in range(len(G)):
		others = G[:i] + G[i + 1:]
		g = G[i].rem(others) if others else G[i]
		Gred.append(g.monic())
	return Gred


def buchberger(F, components=0, settings=None):
	"""Return the reduced Groebner basis of the polynomials F.

	The result is sorted by decreasing leading monomial. Raises
	ResourceLimitError when a cap of ``settings`` is exceeded.
	"""
	settings = settings or get_settings()
	F = [f for f in F if f]
	if not F:
		return []
	R = F[0].ring
	if any(f.ring != R for f in F):
		raise ValueError("polynomials must be in same ring")

	if components == 0:
		for f in F:
			if f.is_ground:
				return [R.one]

	G, lmG, P = [], [], set()
	for f in F:
		r = f.rem(G) if G else f
		if r:
			G, lmG, P = update(G, lmG, P, r.monic(), components)

	def pair_key(pair):
		L = R.monomial_lcm(lmG[pair[0]], lmG[pair[1]])
		return (sum(L[components:]), R.order(L))

	processed = 0
	while P:
		i, j = min(P, key=pair_key)
		P.remove((i, j))
		processed += 1
		if processed > settings.max_pairs:
			raise ResourceLimitError(
				f"Buchberger exceeded {settings.max_pairs} critical pairs", cap="max_pairs", value=processed, partial=G
			)
		L = R.monomial_lcm(lmG[i], lmG[j])
		if sum(L[components:]) > settings.max_degree:
			raise ResourceLimitError(
				f"Critical pair of degree {sum(L[components:])} exceeds max_degree={settings.max_degree}",
				cap="max_degree",
				value=sum(L[components:]),
				partial=G,
			)
		r = spoly(G[i], G[j], lmG[i], lmG[j]).rem(G)
		if not r:
			continue
		if components == 0 and r.is_ground:
			return [R.one]
		G, lmG, P = update(G, lmG, P, r.monic(), components)
		if len(G) > settings.max_basis_size:
			raise ResourceLimitError(
				f"Groebner basis grew beyond {settings.max_basis_size} elements",
				cap="max_basis_size",
				value=len(G),
				partial=G,
			)

	logger.debug(f"Buchberger finished: {len(G)} elements, {processed} pairs")
	basis = interreduce(minimalize(G))
	return sorted(basis, key=lambda g: R.order(g.LM), reverse=True)
