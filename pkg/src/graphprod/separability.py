"""Finite-quotient witnesses: vertex-wise quotients that separate elements.

A quotient family keeps finite-table vertex groups and replaces integer-type
vertex groups by integers mod m; the vertex maps extend to the graph products
because the graph is unchanged.  Witnesses record such a family together with
a certificate that the images stay distinct or non-conjugate, re-checkable in
the target from the stored data alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence

from .presentation import (
    GroupPresentation,
    IntegersModGroup,
    PresentationError,
    SimplicialGraph,
    induced_presentation,
)
from .words import Element, _check_same, invert, multiply, reduce, retract_key
from .cyclic import cyclically_reduce, cyclic_permutations, ps_decompose
from .conjugacy import are_conjugate


@dataclass(frozen=True)
class ClassMode:
    """All finite quotients, or only quotients of p-power order."""

    p: Optional[int] = None

    @property
    def is_p_mode(self) -> bool:
        return self.p is not None

    def render(self) -> str:
        return "finite" if self.p is None else f"p:{self.p}"


ALL_FINITE = ClassMode()


def p_group_mode(p: int) -> ClassMode:
    if p < 2:
        raise ValueError("p must be at least 2")
    return ClassMode(p)


def parse_mode(text: str) -> ClassMode:
    if text == "finite":
        return ALL_FINITE
    if text.startswith("p:") and text[2:].isdigit():
        return p_group_mode(int(text[2:]))
    raise ValueError(f"unknown class mode {text!r} (expected finite or p:<prime>)")


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


class QuotientFamily:
    """Per-vertex quotient choices over a fixed source presentation.

    moduli maps each vertex to an int (integer-type vertex groups map onto
    the integers mod that value) or None (finite-table group kept as is).
    """

    def __init__(self, pres: GroupPresentation, moduli: Dict[str, Optional[int]], mode: ClassMode):
        if set(moduli) != set(pres.vertices):
            raise PresentationError("need one quotient choice per vertex")
        groups = {}
        for v in pres.vertices:
            group = pres.groups[v]
            m = moduli[v]
            if group.kind == "table":
                if m is not None:
                    raise PresentationError("finite-table vertex groups are kept, not quotiented")
                if mode.is_p_mode and not _is_p_power(group.order, mode.p):
                    raise PresentationError(
                        f"table group at {v!r} has order {group.order}, not a power of {mode.p}"
                    )
                groups[v] = group
                continue
            if not isinstance(m, int) or m < 1:
                raise PresentationError(f"modulus at {v!r} must be a positive integer")
            if group.kind == "mod" and group.order % m != 0:
                raise PresentationError(f"modulus {m} does not divide {group.order} at {v!r}")
            if mode.is_p_mode and not _is_p_power(m, mode.p):
                raise PresentationError(f"modulus {m} at {v!r} is not a power of {mode.p}")
            groups[v] = IntegersModGroup(m)
        self.pres = pres
        self.moduli = dict(moduli)
        self.mode = mode
        self.target = GroupPresentation(
            SimplicialGraph(pres.vertices, sorted(pres.graph.edges)), groups
        )


def apply_quotient(family: QuotientFamily, e: Element) -> Element:
    """Map an element through the family's extension homomorphism."""
    if e.pres is not family.pres:
        raise PresentationError("element does not belong to the family's presentation")
    target = family.target
    syllables = []
    for vi, val in e.key:
        group = target.by_index[vi]
        if group.kind == "table":
            syllables.append((vi, val))
        else:
            syllables.append((vi, val % group.order))
    word = tuple(target.decode_syllable(vi, val) for vi, val in syllables)
    from .presentation import Word

    return reduce(target, Word(word))


def _collect_shape_constraints(constraints: Dict[str, set], elements: Iterable[Element]) -> None:
    for e in elements:
        pres = e.pres
        for vi, val in e.key:
            if pres.by_index[vi].kind != "table":
                constraints[pres.vertices[vi]].add(val)


def _collect_distinctness(constraints: Dict[str, set], elements: Sequence[Element]) -> None:
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            diff = multiply(elements[i], invert(elements[j]))
            _collect_shape_constraints(constraints, [diff])


def _family_from_constraints(
    pres: GroupPresentation, constraints: Dict[str, set], mode: ClassMode
) -> QuotientFamily:
    moduli: Dict[str, Optional[int]] = {}
    for v in pres.vertices:
        group = pres.groups[v]
        if group.kind == "table":
            moduli[v] = None
            continue
        needed = constraints.get(v, set())
        moduli[v] = _smallest_modulus(group, needed, mode, v)
    return QuotientFamily(pres, moduli, mode)


def _smallest_modulus(group, needed: set, mode: ClassMode, vertex: str) -> int:
    """Least admissible modulus keeping every constraint value nonzero."""
    if group.kind == "Z":
        if mode.is_p_mode:
            m = 1
            while any(d % m == 0 for d in needed):
                m *= mode.p
            return m
        m = 1
        while any(d % m == 0 for d in needed):
            m += 1
        return m
    # integers mod n: admissible moduli are divisors of n; an unconstrained
    # vertex keeps its group whenever the mode allows, so already-finite
    # presentations get the identity family
    n = group.order
    if not needed and (not mode.is_p_mode or _is_p_power(n, mode.p)):
        return n
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    if mode.is_p_mode:
        divisors = [d for d in divisors if _is_p_power(d, mode.p)]
    for m in divisors:
        if all(d % m != 0 for d in needed):
            return m
    raise PresentationError(
        f"no admissible modulus at {vertex!r} keeps {sorted(needed)} nonzero"
    )


def shape_preserving_family(elements: Sequence[Element], mode: ClassMode) -> QuotientFamily:
    """Smallest per-vertex quotients under which every listed element keeps its
    length, support and end-letter data, and distinct listed elements stay
    distinct."""
    if not elements:
        raise ValueError("need at least one element")
    pres = elements[0].pres
    for e in elements:
        _check_same(elements[0], e)
    constraints: Dict[str, set] = {v: set() for v in pres.vertices}
    _collect_shape_constraints(constraints, elements)
    distinct = []
    seen = set()
    for e in elements:
        if e not in seen:
            seen.add(e)
            distinct.append(e)
    _collect_distinctness(constraints, distinct)
    return _family_from_constraints(pres, constraints, mode)


def retraction(pres: GroupPresentation, vertices: Iterable[str], e: Element) -> Element:
    """Kill the syllables outside the vertex set; a homomorphic retraction."""
    ids = {pres.vertex_index(v) for v in vertices}
    if e.pres is not pres:
        raise PresentationError("element does not belong to the presentation")
    return retract_key(pres, e.key, ids)


@dataclass(frozen=True)
class SeparationWitness:
    """A quotient family with re-checkable evidence that images separate."""

    family: QuotientFamily
    inputs: tuple  # source elements, in the family's presentation
    images: tuple  # their images in the target
    certificate_tag: str  # refutation tag, or "nontrivial-image"

    def verify(self) -> bool:
        """Recompute the images and re-run the certificate in the target."""
        recomputed = tuple(apply_quotient(self.family, e) for e in self.inputs)
        if recomputed != self.images:
            return False
        if self.certificate_tag == "nontrivial-image":
            return len(self.images) == 1 and not self.images[0].is_identity
        verdict = are_conjugate(self.images[0], self.images[1])
        return not verdict.conjugate and verdict.refutation == self.certificate_tag

    def to_json_obj(self) -> dict:
        return {
            "certificate_tag": self.certificate_tag,
            "images": [img.render() for img in self.images],
            "mode": self.family.mode.render(),
            "per_vertex_moduli": {v: self.family.moduli[v] for v in sorted(self.family.moduli)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def residual_witness(g: Element, mode: ClassMode = ALL_FINITE) -> SeparationWitness:
    """A finite-vertex quotient in which g survives as a nontrivial element."""
    if g.is_identity:
        raise ValueError("the identity cannot be separated from itself")
    family = shape_preserving_family([g], mode)
    image = apply_quotient(family, g)
    assert not image.is_identity
    return SeparationWitness(family, (g,), (image,), "nontrivial-image")


def conjugacy_witness(f: Element, g: Element, mode: ClassMode = ALL_FINITE) -> SeparationWitness:
    """A finite-vertex quotient in which the images stay non-conjugate.

    The inputs are retracted to their joint support, cyclically reduced, and
    the quotient is chosen per the failing conjugacy test: shape preservation
    for support/length failures, shape preservation of the moving parts and
    all their rotations for rotation failures, and vertex-level separation of
    the clique parts otherwise.  The certificate re-runs the target decision.
    """
    _check_same(f, g)
    verdict = are_conjugate(f, g)
    if verdict.conjugate:
        raise ValueError("inputs are conjugate; no witness exists")
    pres = f.pres
    joint = f.support() | g.support()
    sub = induced_presentation(pres, sorted(joint, key=pres.vertex_index))
    f_sub = reduce(sub, f.word())
    g_sub = reduce(sub, g.word())
    f0 = cyclically_reduce(f_sub).reduced
    g0 = cyclically_reduce(g_sub).reduced
    constraints: Dict[str, set] = {v: set() for v in sub.vertices}
    _collect_shape_constraints(constraints, [f0, g0])
    tag = verdict.refutation
    if tag == "p-part-not-cyclic-permutation":
        pf = ps_decompose(f0).p_part
        rotations = sorted(cyclic_permutations(ps_decompose(g0).p_part))
        _collect_shape_constraints(constraints, [pf] + rotations)
        _collect_distinctness(constraints, [pf] + rotations)
    elif tag == "s-part-not-conjugate":
        psf, psg = ps_decompose(f0), ps_decompose(g0)
        values_f = {vi: val for vi, val in psf.s_part.key}
        values_g = {vi: val for vi, val in psg.s_part.key}
        for v in sorted(psf.s_vertices, key=sub.vertex_index):
            vi = sub.vertex_index(v)
            group = sub.by_index[vi]
            if group.kind == "table":
                continue
            a = values_f.get(vi, 0)
            b = values_g.get(vi, 0)
            if group.conjugator_key(a, b) is None:
                constraints[v].update(x for x in (a, b, a - b) if x != 0)
    family = _family_from_constraints(sub, constraints, mode)
    images = (apply_quotient(family, f_sub), apply_quotient(family, g_sub))
    target_verdict = are_conjugate(images[0], images[1])
    assert not target_verdict.conjugate
    return SeparationWitness(family, (f_sub, g_sub), images, target_verdict.refutation)
