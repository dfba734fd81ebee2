"""The splitting of a graph product over one vertex, and what it decides.

Removing a vertex v splits the group as an amalgam of the full subgroup on
the remaining vertices (the A-side) with the vertex group of v (the C-side),
glued along the full subgroup on link(v) (the H-side, which commutes with
the C-side).  Every element then has an essentially unique alternating form
x0 c1 x1 ... cn xn whose C-factors -- the consonants -- depend only on the
group element.  The same machinery runs verbatim when the C-side is a whole
vertex subset, which is what the sigma-map construction needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .presentation import (
    GroupPresentation,
    PresentationError,
    SimplicialGraph,
    Word,
)
from .words import (
    Element,
    _check_same,
    _make,
    _reduce_key,
    conjugate,
    identity,
    invert,
    iter_ball,
    key_of_word,
    multiply,
    power,
    reduce,
    retract_key,
)
from .cyclic import cyclically_reduce


class AmalgamError(ValueError):
    """Bad splitting data or a violated amalgam precondition."""


class AmalgamView:
    """The splitting of the presentation over a single apex vertex."""

    def __init__(self, pres: GroupPresentation, apex: str):
        if len(pres.vertices) < 2:
            raise AmalgamError("single-vertex presentation does not split")
        self.pres = pres
        self.apex = apex
        self.apex_index = pres.vertex_index(apex)
        self.a_vertices = frozenset(v for v in pres.vertices if v != apex)
        self.h_vertices = pres.graph.link(apex)
        self.c_vertices = frozenset({apex})
        self.a_ids = frozenset(pres.vertex_index(v) for v in self.a_vertices)
        self.h_ids = frozenset(pres.vertex_index(v) for v in self.h_vertices)
        self.c_ids = frozenset({self.apex_index})


def decompose_at(pres: GroupPresentation, apex: str) -> AmalgamView:
    return AmalgamView(pres, apex)


# ---------------------------------------------------------------------------
# Alternating forms.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmalgamForm:
    """x0 c1 x1 ... cn xn with A-side pieces and single-vertex consonants."""

    x_pieces: tuple  # n+1 Elements supported on the A-side
    consonants: tuple  # n nontrivial values of the apex vertex group

    @property
    def consonant_length(self) -> int:
        return len(self.consonants)


def _general_form(pres, a_ids, c_ids, h_ids, key) -> Tuple[list, list]:
    """Alternating x/c pieces with interior x-pieces pushed out of the H-side.

    Returns (xs, cs): len(xs) == len(cs) + 1, consonants nontrivial, and every
    interior x-piece has support outside the H-side.  The consonant list
    depends only on the group element represented by the key.
    """
    blocks: List[Tuple[str, list]] = []
    for syl in key:
        side = "C" if syl[0] in c_ids else "A"
        if blocks and blocks[-1][0] == side:
            blocks[-1][1].append(syl)
        else:
            blocks.append((side, [syl]))
    xs: List[Element] = [identity(pres)]
    cs: List[Element] = []
    for side, syls in blocks:
        piece = _make(pres, _reduce_key(pres, syls))
        if side == "A":
            xs[-1] = multiply(xs[-1], piece)
        else:
            cs.append(piece)
            xs.append(identity(pres))

    def in_h(e: Element) -> bool:
        return all(vi in h_ids for vi, _ in e.key)

    changed = True
    while changed:
        changed = False
        for i, c in enumerate(cs):
            if c.is_identity:
                xs[i] = multiply(xs[i], xs[i + 1])
                del xs[i + 1]
                del cs[i]
                changed = True
                break
        if changed:
            continue
        for j in range(1, len(cs)):
            if in_h(xs[j]):
                xs[j - 1] = multiply(xs[j - 1], xs[j])
                cs[j - 1] = multiply(cs[j - 1], cs[j])
                del xs[j]
                del cs[j]
                changed = True
                break
    return xs, cs


def _single_vertex_form(view: AmalgamView, key) -> AmalgamForm:
    xs, cs = _general_form(view.pres, view.a_ids, view.c_ids, view.h_ids, key)
    group = view.pres.by_index[view.apex_index]
    values = []
    for c in cs:
        assert len(c.key) == 1 and c.key[0][0] == view.apex_index
        values.append(group.decode(c.key[0][1]))
    return AmalgamForm(tuple(xs), tuple(values))


def amalgam_form(view: AmalgamView, e: Element) -> AmalgamForm:
    """The reduced alternating form of an element at the view's apex."""
    if e.pres is not view.pres:
        raise PresentationError("element does not belong to the view's presentation")
    return _single_vertex_form(view, e.key)


def amalgam_form_of_word(view: AmalgamView, word: Word) -> AmalgamForm:
    """Same, computed directly from an arbitrary (possibly unreduced) word."""
    return _single_vertex_form(view, key_of_word(view.pres, word))


def form_in_h(view: AmalgamView, e: Element) -> bool:
    return all(vi in view.h_ids for vi, _ in e.key)


def multiply_out(view: AmalgamView, form: AmalgamForm) -> Element:
    pres = view.pres
    group = pres.by_index[view.apex_index]
    result = form.x_pieces[0]
    for value, piece in zip(form.consonants, form.x_pieces[1:]):
        c = Element(pres, ((view.apex_index, group.encode(value)),))
        result = multiply(multiply(result, c), piece)
    return result


def is_amalgam_cyclically_reduced(view: AmalgamView, form: AmalgamForm) -> bool:
    """True for consonant-leading forms whose tail piece leaves the H-side.

    A leading x-piece inside the H-side is allowed: it commutes past the
    first consonant and folds into the next piece.  With n = 1 the tail
    condition is vacuous.
    """
    n = form.consonant_length
    if n == 0:
        return False
    if not form.x_pieces[0].is_identity and not form_in_h(view, form.x_pieces[0]):
        return False
    if n >= 2 and form_in_h(view, form.x_pieces[-1]):
        return False
    return True


def consonant_leading_form(view: AmalgamView, e: Element) -> AmalgamForm:
    """The form with the leading piece folded away: c1 x1 ... cn xn."""
    form = amalgam_form(view, e)
    if form.consonant_length == 0:
        raise AmalgamError("element lies in the A-side: no consonant-leading form")
    x0 = form.x_pieces[0]
    if x0.is_identity:
        return form
    if not form_in_h(view, x0):
        raise AmalgamError("leading piece does not commute past the first consonant")
    pieces = (identity(view.pres), multiply(x0, form.x_pieces[1])) + form.x_pieces[2:]
    return AmalgamForm(pieces, form.consonants)


def _prefixes(view: AmalgamView, form: AmalgamForm) -> List[Element]:
    """Cumulative products c1 x1 ... cl xl for l = 0..n of a consonant-leading form."""
    pres = view.pres
    group = pres.by_index[view.apex_index]
    result = [identity(pres)]
    acc = identity(pres)
    for value, piece in zip(form.consonants, form.x_pieces[1:]):
        c = Element(pres, ((view.apex_index, group.encode(value)),))
        acc = multiply(multiply(acc, c), piece)
        result.append(acc)
    return result


# ---------------------------------------------------------------------------
# Conjugator classification.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjugatorClass:
    case: str  # "a", "b" or "c"
    h: Element  # H-side factor of the decomposition
    piece: Optional[Element]  # the prefix (case b) or suffix (case c)
    exponent: Optional[int]


def conjugator_classify(
    view: AmalgamView, g_form: AmalgamForm, f_form: AmalgamForm, u: Element
) -> ConjugatorClass:
    """Decompose a verified conjugator u (with u g u^-1 = f) into its case.

    Case a: u lies in the H-side.  Case b: u = h p^-1 g^-l for a prefix p.
    Case c: u = h s g^l for a suffix s.  The witnessing pieces are recovered
    by bounded search; ties break toward the shortest piece, then least l.
    """
    pres = view.pres
    for form in (g_form, f_form):
        if not is_amalgam_cyclically_reduced(view, form) or form.consonant_length < 1:
            raise AmalgamError("forms must be consonant-leading and cyclically reduced")
    if form_in_h(view, g_form.x_pieces[-1]):
        raise AmalgamError("tail piece of g must leave the H-side")
    g = multiply_out(view, g_form)
    f = multiply_out(view, f_form)
    if conjugate(u, g) != f:
        raise AmalgamError("u does not conjugate g to f")
    u_form = amalgam_form(view, u)
    m = u_form.consonant_length
    if m == 0:
        if not form_in_h(view, u):
            raise AmalgamError("A-side conjugator outside the H-side: broken precondition")
        return ConjugatorClass("a", u, None, None)
    prefixes = _prefixes(view, g_form)
    z_last = u_form.x_pieces[-1]
    x_last = g_form.x_pieces[-1]
    if form_in_h(view, z_last):
        for p in prefixes:
            for l in range(m + 1):
                h = multiply(multiply(u, power(g, l)), p)
                if form_in_h(view, h):
                    return ConjugatorClass("b", h, p, l)
    elif form_in_h(view, multiply(x_last, invert(z_last))):
        for p in reversed(prefixes):  # longest prefix first = shortest suffix first
            s = multiply(invert(p), g)
            for l in range(m + 1):
                h = multiply(multiply(u, power(g, -l)), invert(s))
                if form_in_h(view, h):
                    return ConjugatorClass("c", h, s, l)
    raise AmalgamError("no conjugator case matched within bounds: this is a bug")


# ---------------------------------------------------------------------------
# Conjugacy by a subgroup of the A-side.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupConjugacy:
    status: str  # "yes", "no" or "unknown"
    conjugator: Optional[Element]
    failed_condition: Optional[int]  # 1 or 2 on certified no


def amalgam_conjugate_by(
    view: AmalgamView,
    b_vertices: Iterable[str],
    f: Element,
    g: Element,
    radius: int,
) -> SubgroupConjugacy:
    """Decide f in g^B for the full subgroup B of the A-side.

    Consonant sequences must match (certified refutation otherwise); the
    A-side products must be conjugate under B (decided exactly when B is the
    whole A-side, by bounded search otherwise); finally an element of the
    coset intersection is searched for with H-side factors up to the radius.
    Exhaustion of a bounded search yields "unknown", never a false "no".
    """
    pres = view.pres
    _check_same(f, g)
    b_set = frozenset(b_vertices)
    if not b_set <= view.a_vertices:
        raise AmalgamError("B must be a vertex subset of the A-side")
    b_ids = frozenset(pres.vertex_index(v) for v in b_set)
    gf = amalgam_form(view, g)
    n = gf.consonant_length
    if n < 1:
        raise AmalgamError("g must have at least one consonant")
    ff = amalgam_form(view, f)
    if ff.consonants != gf.consonants:
        return SubgroupConjugacy("no", None, 1)
    xp = retract_key(pres, g.key, view.a_ids)
    yp = retract_key(pres, f.key, view.a_ids)
    from .conjugacy import are_conjugate

    # Conjugacy of A-side elements is intrinsic to the A-side, so a negative
    # ambient verdict certifies failure for every subgroup B.
    ambient = are_conjugate(xp, yp)
    if not ambient.conjugate:
        return SubgroupConjugacy("no", None, 2)
    if b_set == view.a_vertices:
        b0 = ambient.conjugator
    else:
        b0 = None
        for candidate in iter_ball(pres, radius, window=radius, vertices=b_set):
            if conjugate(candidate, xp) == yp:
                b0 = candidate
                break
        if b0 is None:
            return SubgroupConjugacy("unknown", None, None)

    x_cum = [gf.x_pieces[0]]
    y_cum = [ff.x_pieces[0]]
    for i in range(1, n):
        x_cum.append(multiply(x_cum[-1], gf.x_pieces[i]))
        y_cum.append(multiply(y_cum[-1], ff.x_pieces[i]))

    def in_h(e: Element) -> bool:
        return all(vi in view.h_ids for vi, _ in e.key)

    def in_b(e: Element) -> bool:
        return all(vi in b_ids for vi, _ in e.key)

    x0_inv = invert(gf.x_pieces[0])
    y0 = ff.x_pieces[0]
    b0_inv = invert(b0)
    for h in iter_ball(pres, radius, window=radius, vertices=view.h_vertices):
        b = multiply(multiply(y0, h), x0_inv)
        if not in_b(b):
            continue
        t = multiply(b0_inv, b)
        if not in_b(t) or conjugate(t, xp) != xp:
            continue
        ok = True
        for i in range(1, n):
            if not in_h(multiply(multiply(invert(y_cum[i]), b), x_cum[i])):
                ok = False
                break
        if not ok:
            continue
        assert conjugate(b, g) == f
        return SubgroupConjugacy("yes", b, None)
    return SubgroupConjugacy("unknown", None, None)


# ---------------------------------------------------------------------------
# Centralizer structure at the apex.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaDescription:
    prefixes: tuple  # the prefixes whose rotation is H-conjugate back to g
    matched: tuple  # the H-side conjugators, aligned with prefixes
    omega: tuple  # the resulting centralizing elements h p^-1


@dataclass(frozen=True)
class CentralizerReport:
    kind: str  # "product" (n=1, tail in H) or "rotations"
    omega: Optional[OmegaDescription]
    unresolved: tuple  # prefix lengths with inconclusive rotation tests
    ball_size: int
    centralizer: tuple  # centralizing ball elements, sorted
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def centralizer_check(view: AmalgamView, g: Element, radius: int) -> CentralizerReport:
    """Compare the predicted centralizer shape with a ball enumeration.

    For n = 1 with the tail piece in the H-side, the centralizer is the
    direct product of the apex-side and H-side centralizers.  Otherwise every
    centralizing element must factor as h g^l omega with h a centralizing
    H-side element and omega built from the matching rotation prefixes.
    """
    pres = view.pres
    form = consonant_leading_form(view, g)
    if not is_amalgam_cyclically_reduced(view, form):
        raise AmalgamError("element is not cyclically reduced at this apex")
    n = form.consonant_length
    members = []
    violations = []
    elements = list(iter_ball(pres, radius, window=radius))

    if n == 1 and form_in_h(view, form.x_pieces[-1]):
        group = pres.by_index[view.apex_index]
        c1 = Element(pres, ((view.apex_index, group.encode(form.consonants[0])),))
        x1 = form.x_pieces[-1]
        star_ids = view.c_ids | view.h_ids
        for u in elements:
            centralizes = conjugate(u, g) == g
            if centralizes:
                members.append(u)
            if all(vi in star_ids for vi, _ in u.key):
                uc = retract_key(pres, u.key, view.c_ids)
                uh = retract_key(pres, u.key, view.h_ids)
                factored = (
                    multiply(uc, uh) == u
                    and conjugate(uc, c1) == c1
                    and conjugate(uh, x1) == x1
                )
            else:
                factored = False
            if centralizes != factored:
                violations.append(u)
        return CentralizerReport(
            "product", None, (), len(elements), tuple(sorted(members)), tuple(violations)
        )

    prefixes = _prefixes(view, form)
    matched_prefixes, matched_h, omegas = [], [], []
    unresolved = []
    for l, p in enumerate(prefixes):
        rotated = multiply(multiply(invert(p), g), p)
        answer = amalgam_conjugate_by(view, view.h_vertices, g, rotated, radius)
        if answer.status == "yes":
            h = answer.conjugator
            omega = multiply(h, invert(p))
            assert conjugate(omega, g) == g
            matched_prefixes.append(p)
            matched_h.append(h)
            omegas.append(omega)
        elif answer.status == "unknown":
            unresolved.append(l)
    powers = {l: power(g, -l) for l in range(-radius, radius + 1)}
    for u in elements:
        centralizes = conjugate(u, g) == g
        if not centralizes:
            continue
        members.append(u)
        factored = False
        for omega in omegas:
            base = multiply(u, invert(omega))
            for l in range(-radius, radius + 1):
                h = multiply(base, powers[l])
                if form_in_h(view, h) and conjugate(h, g) == g:
                    factored = True
                    break
            if factored:
                break
        if not factored and not unresolved:
            violations.append(u)
    description = OmegaDescription(tuple(matched_prefixes), tuple(matched_h), tuple(omegas))
    return CentralizerReport(
        "rotations",
        description,
        tuple(unresolved),
        len(elements),
        tuple(sorted(members)),
        tuple(violations),
    )


# ---------------------------------------------------------------------------
# The sigma map of an amalgam of two finite graph products.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelSampleReport:
    samples: int
    nontrivial: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


class SigmaAmalgam:
    """Q amalgamated with S over the full subgroup R, as one graph product.

    Both factors must have finite vertex groups; sigma sends an element to
    its pair of retractions onto the factors, so the kernel misses both.
    """

    def __init__(self, q_pres: GroupPresentation, s_pres: GroupPresentation, r_vertices):
        r_set = frozenset(r_vertices)
        if not r_set <= set(q_pres.vertices):
            raise AmalgamError("R must be a vertex subset of Q")
        for pres in (q_pres, s_pres):
            for v in pres.vertices:
                if pres.groups[v].order is None:
                    raise AmalgamError("factor vertex groups must be finite")
        if set(q_pres.vertices) & set(s_pres.vertices):
            raise AmalgamError("factor vertex names must be disjoint")
        names = list(q_pres.vertices) + list(s_pres.vertices)
        edges = sorted(q_pres.graph.edges | s_pres.graph.edges)
        edges += [(r, s) for r in sorted(r_set) for s in s_pres.vertices]
        groups = dict(q_pres.groups)
        groups.update(s_pres.groups)
        self.q_pres = q_pres
        self.s_pres = s_pres
        self.presentation = GroupPresentation(SimplicialGraph(names, edges), groups)
        self.q_vertices = frozenset(q_pres.vertices)
        self.s_vertices = frozenset(s_pres.vertices)
        self.r_vertices = r_set
        pres = self.presentation
        self.q_ids = frozenset(pres.vertex_index(v) for v in self.q_vertices)
        self.s_ids = frozenset(pres.vertex_index(v) for v in self.s_vertices)
        self.r_ids = frozenset(pres.vertex_index(v) for v in r_set)

    def _transfer(self, e: Element, target: GroupPresentation) -> Element:
        return reduce(target, e.word())

    def sigma(self, e: Element) -> Tuple[Element, Element]:
        """The image (retraction to Q, retraction to S) in the factors."""
        q_part = retract_key(self.presentation, e.key, self.q_ids)
        s_part = retract_key(self.presentation, e.key, self.s_ids)
        return self._transfer(q_part, self.q_pres), self._transfer(s_part, self.s_pres)

    def kernel_element_from(self, w: Element) -> Element:
        """Push an arbitrary element into ker(sigma) by factor corrections."""
        u = multiply(w, invert(retract_key(self.presentation, w.key, self.s_ids)))
        k = multiply(u, invert(retract_key(self.presentation, u.key, self.q_ids)))
        q_img, s_img = self.sigma(k)
        assert q_img.is_identity and s_img.is_identity
        return k

    def kernel_sample_check(self, count: int, radius: int, seed: int = 0) -> KernelSampleReport:
        """Sample kernel elements and check the free-kernel necessary conditions.

        Every nontrivial sample, once cyclically reduced, must keep at least
        one consonant and must not be conjugate into either factor (its core
        support must leave both vertex sets).
        """
        pres = self.presentation
        rng = random.Random(seed)
        syllables = []
        for vi, group in enumerate(pres.by_index):
            for val in group.nontrivial_keys():
                syllables.append((vi, val))
        failures = []
        nontrivial = 0
        for _ in range(count):
            length = rng.randint(0, max(1, radius))
            key = tuple(rng.choice(syllables) for _ in range(length))
            w = _make(pres, _reduce_key(pres, key))
            k = self.kernel_element_from(w)
            if k.is_identity:
                continue
            nontrivial += 1
            core = cyclically_reduce(k).reduced
            _, cs = _general_form(pres, self.q_ids, self.s_ids, self.r_ids, core.key)
            consonant_count = len(cs)
            core_ids = {vi for vi, _ in core.key}
            conjugate_into_q = core_ids <= self.q_ids
            conjugate_into_rs = core_ids <= (self.r_ids | self.s_ids)
            if consonant_count < 1 or conjugate_into_q or conjugate_into_rs:
                failures.append(k)
        return KernelSampleReport(count, nontrivial, tuple(failures))


def sigma_map(q_pres: GroupPresentation, s_pres: GroupPresentation, r_vertices) -> SigmaAmalgam:
    return SigmaAmalgam(q_pres, s_pres, r_vertices)
