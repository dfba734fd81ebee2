"""Conjugacy decisions: the cyclic criterion, witnesses, and a brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Set, Tuple

from .presentation import GroupPresentation, PresentationError
from .words import (
    Element,
    _check_same,
    conjugate,
    identity,
    invert,
    iter_ball,
    multiply,
)
from .cyclic import cyclic_permutation_conjugators, cyclically_reduce, ps_decompose

REFUTATION_TAGS = (
    "support-mismatch",
    "length-mismatch",
    "p-part-not-cyclic-permutation",
    "s-part-not-conjugate",
)


@dataclass(frozen=True)
class ConjugacyVerdict:
    conjugate: bool
    conjugator: Optional[Element]  # w with w x w^-1 = y when conjugate
    refutation: Optional[str]  # first failing condition otherwise


def conjugate_in_clique_subgroup(
    pres: GroupPresentation, clique: Iterable[str], a: Element, b: Element
) -> Tuple[bool, Optional[Element]]:
    """Componentwise conjugacy inside the direct product over a clique.

    Both elements must be supported in the clique; on success the product of
    the per-vertex conjugators is returned.
    """
    vertices = sorted(set(clique), key=pres.vertex_index)
    for i, u in enumerate(vertices):
        for v in vertices[i + 1 :]:
            if v not in pres.graph.link(u):
                raise PresentationError(f"{u!r} and {v!r} are not adjacent: not a clique")
    allowed = {pres.vertex_index(v) for v in vertices}
    for e in (a, b):
        if any(vi not in allowed for vi, _ in e.key):
            raise PresentationError("element not supported in the clique")
    values_a = {vi: val for vi, val in a.key}
    values_b = {vi: val for vi, val in b.key}
    conj_key = []
    for v in vertices:
        vi = pres.vertex_index(v)
        group = pres.by_index[vi]
        va = values_a.get(vi, group.identity_key)
        vb = values_b.get(vi, group.identity_key)
        t = group.conjugator_key(va, vb)
        if t is None:
            return False, None
        if not group.is_identity(t):
            conj_key.append((vi, t))
    result = identity(pres)
    for vi, t in conj_key:
        result = multiply(result, Element(pres, ((vi, t),)))
    return True, result


def are_conjugate(x: Element, y: Element) -> ConjugacyVerdict:
    """Decide x ~ y, returning a verified conjugator or the first failed test.

    Both inputs are cyclically reduced first; the reduced cores are conjugate
    iff they share support and length, their moving parts are cyclic
    permutations of each other, and their clique parts are conjugate
    componentwise.
    """
    _check_same(x, y)
    pres = x.pres
    rx = cyclically_reduce(x)
    ry = cyclically_reduce(y)
    x0, y0 = rx.reduced, ry.reduced
    if x0.support() != y0.support():
        return ConjugacyVerdict(False, None, "support-mismatch")
    if len(x0) != len(y0):
        return ConjugacyVerdict(False, None, "length-mismatch")
    psx = ps_decompose(x0)
    psy = ps_decompose(y0)
    perms = cyclic_permutation_conjugators(psx.p_part)
    if psy.p_part not in perms:
        return ConjugacyVerdict(False, None, "p-part-not-cyclic-permutation")
    rotation = perms[psy.p_part]  # rotation^-1 p(x0) rotation = p(y0)
    ok, t = conjugate_in_clique_subgroup(pres, psx.s_vertices, psx.s_part, psy.s_part)
    if not ok:
        return ConjugacyVerdict(False, None, "s-part-not-conjugate")
    core = multiply(t, invert(rotation))  # core x0 core^-1 = y0
    w = multiply(multiply(ry.conjugator, core), invert(rx.conjugator))
    assert conjugate(w, x) == y
    return ConjugacyVerdict(True, w, None)


@dataclass(frozen=True)
class BruteForceConjugacy:
    status: str  # "yes" or "exhausted"
    conjugator: Optional[Element]

    @property
    def found(self) -> bool:
        return self.status == "yes"


def brute_force_conjugate(x: Element, y: Element, radius: int) -> BruteForceConjugacy:
    """Search the whole conjugator ball of the given radius for w x w^-1 = y.

    Integer-vertex exponents of candidate conjugators range over
    [-radius, radius].  A hit is certified; running out of candidates is
    reported as "exhausted", which is weaker than a non-conjugacy proof.
    """
    _check_same(x, y)
    for w in iter_ball(x.pres, radius, window=radius):
        if conjugate(w, x) == y:
            return BruteForceConjugacy("yes", w)
    return BruteForceConjugacy("exhausted", None)


def conjugacy_class_in_ball(x: Element, radius: int) -> Set[Element]:
    """All conjugates of x under conjugators from the radius ball."""
    return {conjugate(w, x) for w in iter_ball(x.pres, radius, window=radius)}


def conjugator_of_cyclic_permutation(g: Element, g_prime: Element) -> Element:
    """The prefix p with p^-1 g p = g_prime, replayed from the rotation closure."""
    _check_same(g, g_prime)
    table = cyclic_permutation_conjugators(g)
    if g_prime not in table:
        raise ValueError("second element is not a cyclic permutation of the first")
    return table[g_prime]
