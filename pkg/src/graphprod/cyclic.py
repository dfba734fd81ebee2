"""Cyclic reduction: the S/P factorization, cyclic permutations, conjugator recovery.

S(g) collects the support vertices adjacent to everything else in the support;
the corresponding syllables commute with the whole word and split off as a
central "clique part" s(g), leaving the "moving part" p(g).  An element is
cyclically reduced when no vertex outside S(g) can start and end a reduced
expression at the same time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List

from .presentation import WordError
from .words import (
    Element,
    _frontable_positions,
    _make,
    _push,
    identity,
    multiply,
    shape,
)


@dataclass(frozen=True)
class PSDecomposition:
    s_part: Element
    p_part: Element
    s_vertices: frozenset
    p_vertices: frozenset


@dataclass(frozen=True)
class CyclicReduction:
    reduced: Element
    conjugator: Element  # input = conjugator * reduced * conjugator^-1


def _s_indices(e: Element) -> set:
    pres = e.pres
    supp = {vi for vi, _ in e.key}
    return {vi for vi in supp if all(u in pres.istar[vi] for u in supp)}


def ps_decompose(e: Element) -> PSDecomposition:
    """The unique factorization e = s_part * p_part as a reduced product."""
    pres = e.pres
    s_ids = _s_indices(e)
    s_key = tuple(s for s in e.key if s[0] in s_ids)
    p_key = tuple(s for s in e.key if s[0] not in s_ids)
    names = pres.vertices
    return PSDecomposition(
        _make(pres, s_key),
        _make(pres, p_key),
        frozenset(names[vi] for vi in s_ids),
        frozenset(names[vi] for vi, _ in p_key),
    )


def is_cyclically_reduced(e: Element) -> bool:
    """True iff no vertex outside S(e) lies in both FL(e) and LL(e)."""
    report = shape(e)
    ps = ps_decompose(e)
    return not (report.first_letters & report.last_letters) - ps.s_vertices


def _front_position(e: Element, vi: int) -> int:
    pres = e.pres
    seen: set = set()
    for pos, (ui, _) in enumerate(e.key):
        if ui == vi and seen <= pres.iadj[vi]:
            return pos
        seen.add(ui)
    raise ValueError("syllable cannot be shuffled to the front")


def _back_position(e: Element, vi: int) -> int:
    pres = e.pres
    seen: set = set()
    n = len(e.key)
    for offset, (ui, _) in enumerate(reversed(e.key)):
        if ui == vi and seen <= pres.iadj[vi]:
            return n - 1 - offset
        seen.add(ui)
    raise ValueError("syllable cannot be shuffled to the end")


def cyclically_reduce(e: Element) -> CyclicReduction:
    """Conjugate away end syllables until the element is cyclically reduced.

    Each step takes the least vertex v readable at both ends, rewrites
    e = a w b with a, b the two v-syllables, and replaces e by w b a,
    composing a onto the conjugator.  The length strictly drops because the
    two v-syllables join, so the loop terminates.
    """
    pres = e.pres
    conj = identity(pres)
    current = e
    while True:
        report = shape(current)
        ps = ps_decompose(current)
        movable = (report.first_letters & report.last_letters) - ps.s_vertices
        if not movable:
            return CyclicReduction(current, conj)
        v = min(movable, key=pres.vertex_index)
        vi = pres.vertex_index(v)
        i = _front_position(current, vi)
        j = _back_position(current, vi)
        assert i != j
        front = current.key[i]
        back = current.key[j]
        middle = [s for pos, s in enumerate(current.key) if pos not in (i, j)]
        out = list(middle)
        _push(pres, out, back[0], back[1])
        _push(pres, out, front[0], front[1])
        current = _make(pres, out)
        conj = multiply(conj, Element(pres, (front,)))


def cyclic_permutation_conjugators(e: Element) -> Dict[Element, Element]:
    """All cyclic permutations of a cyclically reduced element, with witnesses.

    Returns a map g' -> p such that p^-1 e p = g'.  The closure moves one
    front-readable syllable to the end at a time, so it does not depend on a
    choice of reduced expression.
    """
    if not is_cyclically_reduced(e):
        raise WordError("element is not cyclically reduced")
    pres = e.pres
    found: Dict[Element, Element] = {e: identity(pres)}
    queue: List[Element] = [e]
    while queue:
        current = queue.pop(0)
        prefix = found[current]
        for pos in _frontable_positions(pres, current.key):
            syl = current.key[pos]
            rest = current.key[:pos] + current.key[pos + 1 :]
            out = list(rest)
            _push(pres, out, syl[0], syl[1])
            rotated = _make(pres, out)
            if rotated not in found:
                found[rotated] = multiply(prefix, Element(pres, (syl,)))
                queue.append(rotated)
    return found


def cyclic_permutations(e: Element) -> frozenset:
    """The set of cyclic permutations of a cyclically reduced element."""
    return frozenset(cyclic_permutation_conjugators(e))
