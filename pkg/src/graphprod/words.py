"""The reduction engine: normal forms, shapes, products, and a rewriting oracle.

Internally a word is a tuple of (vertex_index, value_key) pairs.  An Element
wraps the canonical fully-reduced form: no trivial syllables, no two joinable
syllables, linearized greedily so that the least available vertex always comes
first.  Two elements are equal in the graph product iff their canonical forms
are identical.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .presentation import (
    GroupPresentation,
    Word,
    WordError,
)

Key = Tuple[Tuple[int, int], ...]


class BudgetExceededError(RuntimeError):
    """The rewriting search ran out of its state budget before deciding."""


class PresentationMismatchError(ValueError):
    """Operands belong to different presentations."""


class Element:
    """A group element in canonical reduced form."""

    __slots__ = ("pres", "key", "_hash")

    def __init__(self, pres: GroupPresentation, key: Key):
        self.pres = pres
        self.key = key
        self._hash = hash(key)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.pres is other.pres
            and self.key == other.key
        )

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.key)

    def __lt__(self, other: "Element") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (len(self.key), self.key)

    @property
    def is_identity(self) -> bool:
        return not self.key

    def support(self) -> frozenset:
        names = self.pres.vertices
        return frozenset(names[vi] for vi, _ in self.key)

    def word(self) -> Word:
        return Word(tuple(self.pres.decode_syllable(vi, val) for vi, val in self.key))

    def render(self) -> str:
        from .presentation import render_word

        return render_word(self.pres, self.word())

    def __repr__(self) -> str:
        return f"<{self.render()}>"


@dataclass(frozen=True)
class ShapeReport:
    """Length, support and the sets of possible first/last letters."""

    length: int
    support: frozenset
    first_letters: frozenset
    last_letters: frozenset


def _check_same(a: Element, b: Element) -> None:
    if a.pres is not b.pres:
        raise PresentationMismatchError("elements come from different presentations")


def key_of_word(pres: GroupPresentation, word: Word) -> Key:
    return tuple(pres.encode_syllable(s) for s in word.syllables)


def _push(pres: GroupPresentation, out: List[Tuple[int, int]], vi: int, val: int) -> None:
    """Multiply one syllable onto a reduced word, keeping it reduced.

    Scans backwards over syllables that commute with vertex vi; joins with a
    matching syllable if one is reachable, otherwise appends.  A join that
    cancels deletes the syllable; by the commutation constraints no new join
    can appear afterwards, so no fixpoint pass is needed.
    """
    group = pres.by_index[vi]
    if group.is_identity(val):
        return
    link = pres.iadj[vi]
    i = len(out) - 1
    while i >= 0:
        ui, uval = out[i]
        if ui == vi:
            merged = group.mul(uval, val)
            if group.is_identity(merged):
                del out[i]
            else:
                out[i] = (vi, merged)
            return
        if ui in link:
            i -= 1
            continue
        break
    out.append((vi, val))


def _reduce_key(pres: GroupPresentation, syllables: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    out: List[Tuple[int, int]] = []
    for vi, val in syllables:
        _push(pres, out, vi, val)
    return out


def _frontable_positions(pres: GroupPresentation, key: Sequence[Tuple[int, int]]) -> List[int]:
    """Positions whose syllable can be shuffled to the front."""
    seen: set = set()
    positions = []
    iadj = pres.iadj
    for pos, (vi, _) in enumerate(key):
        if seen <= iadj[vi]:
            positions.append(pos)
        seen.add(vi)
    return positions


def _canonicalize(pres: GroupPresentation, key: Sequence[Tuple[int, int]]) -> Key:
    """Greedy least-vertex-first linearization of a reduced word."""
    remaining = list(key)
    out = []
    while remaining:
        best_pos = None
        best_vi = None
        seen: set = set()
        iadj = pres.iadj
        for pos, (vi, _) in enumerate(remaining):
            if seen <= iadj[vi] and (best_vi is None or vi < best_vi):
                best_pos, best_vi = pos, vi
            seen.add(vi)
        out.append(remaining.pop(best_pos))
    return tuple(out)


def _make(pres: GroupPresentation, reduced: Sequence[Tuple[int, int]]) -> Element:
    return Element(pres, _canonicalize(pres, reduced))


def identity(pres: GroupPresentation) -> Element:
    return Element(pres, ())


def reduce(pres: GroupPresentation, word: Word) -> Element:
    """The canonical reduced element equal to the given word."""
    return _make(pres, _reduce_key(pres, key_of_word(pres, word)))


def element_of(pres: GroupPresentation, text: str) -> Element:
    """Parse a word string and reduce it."""
    from .presentation import parse_word

    return reduce(pres, parse_word(pres, text))


def is_reduced_key(pres: GroupPresentation, key: Sequence[Tuple[int, int]]) -> bool:
    """No trivial syllables and no two joinable syllables."""
    for vi, val in key:
        if pres.by_index[vi].is_identity(val):
            return False
    for i in range(len(key)):
        vi = key[i][0]
        link = pres.iadj[vi]
        blocked = False
        for j in range(i + 1, len(key)):
            uj = key[j][0]
            if uj == vi:
                if not blocked:
                    return False
                break
            if uj not in link:
                blocked = True
    return True


def canonical_form(pres: GroupPresentation, word: Word) -> Word:
    """Canonical linearization of an already reduced word."""
    key = key_of_word(pres, word)
    if not is_reduced_key(pres, key):
        raise WordError("word is not reduced")
    canon = _canonicalize(pres, key)
    return Word(tuple(pres.decode_syllable(vi, val) for vi, val in canon))


def shape(e: Element) -> ShapeReport:
    names = e.pres.vertices
    reversed_key = tuple(reversed(e.key))
    fl = frozenset(names[e.key[p][0]] for p in _frontable_positions(e.pres, e.key))
    ll = frozenset(names[reversed_key[p][0]] for p in _frontable_positions(e.pres, reversed_key))
    return ShapeReport(len(e.key), e.support(), fl, ll)


def multiply(a: Element, b: Element) -> Element:
    _check_same(a, b)
    out = list(a.key)
    for vi, val in b.key:
        _push(a.pres, out, vi, val)
    return _make(a.pres, out)


def invert(a: Element) -> Element:
    groups = a.pres.by_index
    key = tuple((vi, groups[vi].inv(val)) for vi, val in reversed(a.key))
    return _make(a.pres, key)


def conjugate(w: Element, x: Element) -> Element:
    """w x w^-1."""
    return multiply(multiply(w, x), invert(w))


def power(e: Element, n: int) -> Element:
    result = identity(e.pres)
    step = e if n >= 0 else invert(e)
    for _ in range(abs(n)):
        result = multiply(result, step)
    return result


def is_reduced_product(parts: Sequence[Element]) -> bool:
    """True iff the lengths add up, i.e. no cancellation or join across parts."""
    if not parts:
        return True
    pres = parts[0].pres
    total = []
    for part in parts:
        _check_same(parts[0], part)
        for vi, val in part.key:
            _push(pres, total, vi, val)
    return len(total) == sum(len(p) for p in parts)


def single_step_rewrites(pres: GroupPresentation, key: Key) -> List[Key]:
    """All words reachable by one elementary transformation.

    The moves: drop a trivial syllable, merge two adjacent syllables of the
    same vertex group, or swap adjacent syllables of adjacent vertices.
    """
    groups = pres.by_index
    iadj = pres.iadj
    results = []
    for i, (vi, val) in enumerate(key):
        if groups[vi].is_identity(val):
            results.append(key[:i] + key[i + 1 :])
    for i in range(len(key) - 1):
        (ui, uval), (wi, wval) = key[i], key[i + 1]
        if ui == wi:
            results.append(key[:i] + ((ui, groups[ui].mul(uval, wval)),) + key[i + 2 :])
        elif wi in iadj[ui]:
            results.append(key[:i] + (key[i + 1], key[i]) + key[i + 2 :])
    return results


def brute_force_equal(pres: GroupPresentation, w1: Word, w2: Word, budget: int) -> bool:
    """Decide w1 = w2 by exhaustive closure of w1 w2^-1 under the elementary moves.

    Succeeds iff the empty word is reached.  Raises BudgetExceededError when
    the closure is not exhausted within the given number of states; that
    outcome is distinct from "not equal".
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    groups = pres.by_index
    k1 = key_of_word(pres, w1)
    k2 = key_of_word(pres, w2)
    start = k1 + tuple((vi, groups[vi].inv(val)) for vi, val in reversed(k2))
    if not start:
        return True
    seen = {start}
    queue = deque([start])
    explored = 0
    while queue:
        state = queue.popleft()
        explored += 1
        if explored > budget:
            raise BudgetExceededError(f"budget of {budget} states exhausted")
        for nxt in single_step_rewrites(pres, state):
            if not nxt:
                return True
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


# ---------------------------------------------------------------------------
# Ball enumeration, used by the bounded searches.
# ---------------------------------------------------------------------------


def _generator_syllables(
    pres: GroupPresentation, window: int, vertices: Optional[Iterable[str]] = None
) -> List[Tuple[int, int]]:
    if vertices is None:
        indices = range(len(pres.vertices))
    else:
        indices = sorted(pres.vertex_index(v) for v in vertices)
    gens = []
    for vi in indices:
        for val in sorted(pres.by_index[vi].nontrivial_keys(window)):
            gens.append((vi, val))
    return gens


def iter_ball(
    pres: GroupPresentation,
    radius: int,
    window: Optional[int] = None,
    vertices: Optional[Iterable[str]] = None,
):
    """Yield all elements of length <= radius in a deterministic order.

    Integer-vertex syllable exponents range over [-window, window]; the window
    defaults to the radius.  With a vertex subset, enumerates the ball of the
    corresponding full subgroup.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    window = radius if window is None else window
    gens = _generator_syllables(pres, window, vertices)
    root = identity(pres)
    yield root
    seen = {root.key}
    level = [root]
    for _ in range(radius):
        grown = []
        for e in level:
            for vi, val in gens:
                out = list(e.key)
                _push(pres, out, vi, val)
                if len(out) != len(e.key) + 1:
                    continue
                candidate = _make(pres, out)
                if candidate.key not in seen:
                    seen.add(candidate.key)
                    grown.append(candidate)
        grown.sort(key=Element.sort_key)
        for e in grown:
            yield e
        level = grown
        if not level:
            return


def ball(pres, radius, window=None, vertices=None) -> List[Element]:
    return list(iter_ball(pres, radius, window, vertices))


def retract_key(pres: GroupPresentation, key: Key, vertex_indices) -> Element:
    """Drop syllables outside the vertex set, then reduce."""
    keep = set(vertex_indices)
    return _make(pres, _reduce_key(pres, (s for s in key if s[0] in keep)))
