"""Presentations of graph products: simplicial graphs, vertex groups, words.

A presentation is a simplicial graph together with one concrete group per
vertex (a finite multiplication table, the integers, or the integers mod n).
Everything is immutable after construction and all operations are pure, so
values can be shared freely between threads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TOKEN_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\[([^\[\]\s]+)\]$")
_INT_RE = re.compile(r"^[+-]?\d+$")


class PresentationError(ValueError):
    """Invalid presentation document, graph, or vertex-group table."""


class WordError(ValueError):
    """Malformed word text or a syllable outside its vertex group."""


# ---------------------------------------------------------------------------
# Vertex groups.  Element "keys" are the internal representation: table
# indices for table groups, plain ints for the integers, residues in [0, n)
# for the integers mod n.  Public values are element names (table groups)
# or ints (the rest).
# ---------------------------------------------------------------------------


class FiniteTableGroup:
    """Finite group given by named elements and a multiplication table.

    The table is validated to be a genuine group at construction time:
    Latin square, two-sided identity, inverses, and associativity.
    """

    kind = "table"

    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[int]], identity: int):
        names = tuple(str(e) for e in elements)
        n = len(names)
        if n == 0:
            raise PresentationError("table group needs at least one element")
        if len(set(names)) != n:
            raise PresentationError("duplicate element names in table group")
        for name in names:
            if not name or "[" in name or "]" in name or any(c.isspace() for c in name):
                raise PresentationError(f"bad element name {name!r}")
        if not isinstance(identity, int) or not 0 <= identity < n:
            raise PresentationError("identity index out of range")
        rows = tuple(tuple(row) for row in table)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise PresentationError("multiplication table must be square")
        for r in rows:
            for x in r:
                if not isinstance(x, int) or not 0 <= x < n:
                    raise PresentationError("table entry out of range")
        for i in range(n):
            if sorted(rows[i]) != list(range(n)) or sorted(r[i] for r in rows) != list(range(n)):
                raise PresentationError("multiplication table is not a Latin square")
        for i in range(n):
            if rows[identity][i] != i or rows[i][identity] != i:
                raise PresentationError("identity row/column not fixed")
        inverse = [None] * n
        for i in range(n):
            for j in range(n):
                if rows[i][j] == identity and rows[j][i] == identity:
                    inverse[i] = j
                    break
            if inverse[i] is None:
                raise PresentationError(f"element {names[i]!r} has no two-sided inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                        raise PresentationError("multiplication table is not associative")
        self.elements = names
        self.table = rows
        self.identity_key = identity
        self._inverse = tuple(inverse)
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def is_identity(self, a: int) -> bool:
        return a == self.identity_key

    def contains_key(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < len(self.elements)

    def nontrivial_keys(self, window: Optional[int] = None) -> list:
        return [i for i in range(len(self.elements)) if i != self.identity_key]

    def encode(self, value) -> int:
        key = self._index.get(value)
        if key is None:
            raise WordError(f"{value!r} is not an element of this table group")
        return key

    def decode(self, key: int):
        return self.elements[key]

    def parse_value(self, text: str) -> int:
        if text not in self._index:
            raise WordError(f"unknown table element {text!r}")
        return self._index[text]

    def render_key(self, key: int) -> str:
        return self.elements[key]

    def conjugator_key(self, a: int, b: int) -> Optional[int]:
        """First t (in table order) with t a t^-1 == b, or None."""
        if a == b:
            return self.identity_key
        for t in range(len(self.elements)):
            if self.mul(self.mul(t, a), self._inverse[t]) == b:
                return t
        return None


class IntegerGroup:
    """The additive group of integers."""

    kind = "Z"
    order = None

    identity_key = 0

    def mul(self, a: int, b: int) -> int:
        return a + b

    def inv(self, a: int) -> int:
        return -a

    def is_identity(self, a: int) -> bool:
        return a == 0

    def contains_key(self, a) -> bool:
        return isinstance(a, int)

    def nontrivial_keys(self, window: Optional[int] = None) -> list:
        if window is None:
            raise ValueError("integer vertex group needs an exponent window")
        return [e for e in range(-window, window + 1) if e != 0]

    def encode(self, value) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise WordError(f"{value!r} is not an integer exponent")
        return value

    def decode(self, key: int) -> int:
        return key

    def parse_value(self, text: str) -> int:
        if not _INT_RE.match(text):
            raise WordError(f"expected an integer exponent, got {text!r}")
        return int(text)

    def render_key(self, key: int) -> str:
        return str(key)

    def conjugator_key(self, a: int, b: int) -> Optional[int]:
        return 0 if a == b else None


class IntegersModGroup:
    """The additive group of integers modulo n (n >= 1); keys live in [0, n)."""

    kind = "mod"

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or modulus < 1:
            raise PresentationError("modulus must be a positive integer")
        self.modulus = modulus
        self.identity_key = 0

    @property
    def order(self) -> int:
        return self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def inv(self, a: int) -> int:
        return (-a) % self.modulus

    def is_identity(self, a: int) -> bool:
        return a % self.modulus == 0

    def contains_key(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.modulus

    def nontrivial_keys(self, window: Optional[int] = None) -> list:
        return list(range(1, self.modulus))

    def encode(self, value) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise WordError(f"{value!r} is not an integer residue")
        return value % self.modulus

    def decode(self, key: int) -> int:
        return key

    def parse_value(self, text: str) -> int:
        if not _INT_RE.match(text):
            raise WordError(f"expected an integer residue, got {text!r}")
        return int(text) % self.modulus

    def render_key(self, key: int) -> str:
        return str(key)

    def conjugator_key(self, a: int, b: int) -> Optional[int]:
        return 0 if (a - b) % self.modulus == 0 else None


VertexGroup = Union[FiniteTableGroup, IntegerGroup, IntegersModGroup]


def vertex_group_from_config(config) -> VertexGroup:
    """Build a vertex group from its document form.

    Accepted forms: "Z", "cyclic n" (sugar for {"mod": n}), {"mod": n},
    {"table": {"elements": [...], "mul": [[...]], "identity": i}}.
    """
    if config == "Z":
        return IntegerGroup()
    if isinstance(config, str):
        parts = config.split()
        if len(parts) == 2 and parts[0] == "cyclic" and parts[1].isdigit():
            return IntegersModGroup(int(parts[1]))
        raise PresentationError(f"unknown vertex group {config!r}")
    if isinstance(config, dict):
        if set(config) == {"mod"}:
            return IntegersModGroup(config["mod"])
        if set(config) == {"table"}:
            t = config["table"]
            if not isinstance(t, dict) or set(t) != {"elements", "mul", "identity"}:
                raise PresentationError("table group needs elements, mul, identity")
            return FiniteTableGroup(t["elements"], t["mul"], t["identity"])
    raise PresentationError(f"unknown vertex group description {config!r}")


# ---------------------------------------------------------------------------
# Graphs and presentations.
# ---------------------------------------------------------------------------


class SimplicialGraph:
    """A finite simplicial graph: named vertices, loop-free unordered edges."""

    def __init__(self, vertices: Sequence[str], edges: Iterable[Sequence[str]]):
        names = tuple(vertices)
        if len(set(names)) != len(names):
            raise PresentationError("duplicate vertex names")
        for name in names:
            if not _NAME_RE.match(name):
                raise PresentationError(f"bad vertex name {name!r}")
        index = {v: i for i, v in enumerate(names)}
        seen = set()
        pairs = []
        for edge in edges:
            u, v = edge
            if u not in index or v not in index:
                raise PresentationError(f"edge {edge!r} mentions an unknown vertex")
            if u == v:
                raise PresentationError(f"loop edge at {u!r}")
            key = (min(u, v), max(u, v))
            if key in pairs:
                raise PresentationError(f"duplicate edge {key!r}")
            pairs.append(key)
            seen.add(key)
        self.vertices = names
        self.edges = frozenset(pairs)
        self._index = index
        link = {v: set() for v in names}
        for (u, v) in pairs:
            link[u].add(v)
            link[v].add(u)
        self._link = {v: frozenset(s) for v, s in link.items()}
        self.iadj = tuple(frozenset(index[u] for u in self._link[v]) for v in names)

    def index(self, vertex: str) -> int:
        if vertex not in self._index:
            raise PresentationError(f"unknown vertex {vertex!r}")
        return self._index[vertex]

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._index

    def link(self, vertex: str) -> frozenset:
        self.index(vertex)
        return self._link[vertex]

    def star(self, vertex: str) -> frozenset:
        self.index(vertex)
        return self._link[vertex] | {vertex}


def link_of(graph: SimplicialGraph, vertices: Iterable[str]) -> frozenset:
    """link(A) = intersection of the links; link of the empty set is all of V."""
    result = set(graph.vertices)
    for v in vertices:
        result &= graph.link(v)
    return frozenset(result)


def star_of(graph: SimplicialGraph, vertices: Iterable[str]) -> frozenset:
    """star(A) = intersection of the stars; star of the empty set is all of V."""
    result = set(graph.vertices)
    for v in vertices:
        result &= graph.star(v)
    return frozenset(result)


class GroupPresentation:
    """A simplicial graph with one vertex group per vertex."""

    def __init__(self, graph: SimplicialGraph, groups: dict):
        if set(groups) != set(graph.vertices):
            raise PresentationError("need exactly one vertex group per vertex")
        self.graph = graph
        self.groups = dict(groups)
        self.by_index = tuple(groups[v] for v in graph.vertices)
        self.iadj = graph.iadj
        self.istar = tuple(adj | {i} for i, adj in enumerate(graph.iadj))

    @property
    def vertices(self):
        return self.graph.vertices

    def vertex_index(self, vertex: str) -> int:
        return self.graph.index(vertex)

    def group(self, vertex: str) -> VertexGroup:
        if vertex not in self.groups:
            raise PresentationError(f"unknown vertex {vertex!r}")
        return self.groups[vertex]

    def encode_syllable(self, syllable: "Syllable") -> tuple:
        vi = self.graph.index(syllable.vertex)
        return vi, self.by_index[vi].encode(syllable.value)

    def decode_syllable(self, vi: int, key) -> "Syllable":
        return Syllable(self.graph.vertices[vi], self.by_index[vi].decode(key))


def presentation_from_config(config) -> GroupPresentation:
    if not isinstance(config, dict) or set(config) - {"vertices", "edges"}:
        raise PresentationError("document must be {vertices: [...], edges: [...]}")
    entries = config.get("vertices")
    if not isinstance(entries, list) or not entries:
        raise PresentationError("need a nonempty vertex list")
    names, groups = [], {}
    for entry in entries:
        if not isinstance(entry, dict) or set(entry) != {"name", "group"}:
            raise PresentationError(f"bad vertex entry {entry!r}")
        name = entry["name"]
        if not isinstance(name, str) or not _NAME_RE.match(name):
            raise PresentationError(f"bad vertex name {name!r}")
        names.append(name)
        groups[name] = vertex_group_from_config(entry["group"])
    edges = config.get("edges", [])
    if not isinstance(edges, list) or any(not isinstance(e, (list, tuple)) or len(e) != 2 for e in edges):
        raise PresentationError("edges must be a list of vertex pairs")
    graph = SimplicialGraph(names, edges)
    return GroupPresentation(graph, groups)


def parse_presentation(text: str) -> GroupPresentation:
    """Parse and validate the JSON presentation document."""
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"not valid JSON: {exc}") from None
    return presentation_from_config(config)


def load_presentation(path) -> GroupPresentation:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_presentation(handle.read())


# ---------------------------------------------------------------------------
# Words.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Syllable:
    """One vertex-group element used as a letter of a word."""

    vertex: str
    value: object  # element name for table groups, int otherwise


@dataclass(frozen=True)
class Word:
    """A finite, possibly unreduced, sequence of syllables."""

    syllables: tuple

    def __len__(self) -> int:
        return len(self.syllables)


EMPTY_WORD = Word(())


def parse_word(pres: GroupPresentation, text: str) -> Word:
    """Parse whitespace-separated NAME[VALUE] tokens; "1" or "" is the identity."""
    stripped = text.strip()
    if stripped in ("", "1"):
        return EMPTY_WORD
    syllables = []
    for token in stripped.split():
        match = _TOKEN_RE.match(token)
        if not match:
            raise WordError(f"bad token {token!r} (expected NAME[VALUE])")
        name, value_text = match.groups()
        if not pres.graph.has_vertex(name):
            raise WordError(f"unknown vertex {name!r}")
        group = pres.groups[name]
        key = group.parse_value(value_text)
        syllables.append(Syllable(name, group.decode(key)))
    return Word(tuple(syllables))


def render_word(pres: GroupPresentation, word: Word) -> str:
    """Inverse of parse_word on canonical values; the empty word renders as "1"."""
    if not word.syllables:
        return "1"
    parts = []
    for syl in word.syllables:
        group = pres.group(syl.vertex)
        parts.append(f"{syl.vertex}[{group.render_key(group.encode(syl.value))}]")
    return " ".join(parts)


def vertex_mul(group: VertexGroup, a, b):
    """Product of two public values in a vertex group."""
    return group.decode(group.mul(group.encode(a), group.encode(b)))


def vertex_conjugate_test(group: VertexGroup, a, b):
    """Decide b = t a t^-1 in the vertex group; returns (found, t or None)."""
    key = group.conjugator_key(group.encode(a), group.encode(b))
    if key is None:
        return False, None
    return True, group.decode(key)


def induced_presentation(pres: GroupPresentation, vertices: Iterable[str]) -> GroupPresentation:
    """The presentation of the full subgroup on the given vertex subset."""
    keep = set(vertices)
    for v in keep:
        pres.vertex_index(v)
    names = [v for v in pres.vertices if v in keep]
    edges = [e for e in sorted(pres.graph.edges) if e[0] in keep and e[1] in keep]
    graph = SimplicialGraph(names, edges)
    return GroupPresentation(graph, {v: pres.groups[v] for v in names})
