"""Tolerance relations on {1, ..., n}: storage, parsing, constructors, graph analysis.

A tolerance relation is reflexive and symmetric but not necessarily transitive.
It is stored as the loop-free undirected graph of its off-diagonal pairs; the
diagonal is implicit. Every public function speaks 1-indexed vertices.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CoverError, LoopError, MagmaAxiomError, ParseError, RangeError


@dataclass(frozen=True, eq=False)
class ToleranceRelation:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise RangeError(f"ground-set size must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        normalized = set()
        for pair in self.edges:
            try:
                i, j = (int(x) for x in pair)
            except (TypeError, ValueError) as exc:
                raise ParseError(f"edge {pair!r} is not a pair of integers") from exc
            for x in (i, j):
                if not 1 <= x <= self.n:
                    raise RangeError(f"vertex {x} outside 1..{self.n}")
            if i == j:
                raise LoopError(f"explicit loop {i}~{i}; the diagonal is implicit")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalized))

    def sim(self, i: int, j: int) -> bool:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise RangeError(f"vertex pair ({i}, {j}) outside 1..{self.n}")
        return i == j or (min(i, j), max(i, j)) in self.edges

    @cached_property
    def mask(self) -> np.ndarray:
        """Boolean n x n support matrix, diagonal included (read-only)."""
        m = np.eye(self.n, dtype=bool)
        for i, j in self.edges:
            m[i - 1, j - 1] = m[j - 1, i - 1] = True
        m.setflags(write=False)
        return m

    @cached_property
    def neighbors(self) -> tuple:
        """0-indexed closed neighbourhoods; internal use."""
        return tuple(tuple(int(x) for x in np.flatnonzero(row)) for row in self.mask)

    def __eq__(self, other):
        if not isinstance(other, ToleranceRelation):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"ToleranceRelation(n={self.n}, edges={sorted(self.edges)})"

    @classmethod
    def from_mask(cls, mask) -> "ToleranceRelation":
        m = np.asarray(mask, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ParseError("mask must be square")
        if not np.array_equal(m, m.T):
            raise ParseError("mask must be symmetric")
        n = m.shape[0]
        return cls(n, [(i + 1, j + 1) for i, j in zip(*np.nonzero(np.triu(m, 1)))])

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2


def complete(n: int) -> ToleranceRelation:
    return ToleranceRelation(n, itertools.combinations(range(1, n + 1), 2))


def edgeless(n: int) -> ToleranceRelation:
    return ToleranceRelation(n)


def path(n: int) -> ToleranceRelation:
    return ToleranceRelation(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> ToleranceRelation:
    if n < 3:
        raise RangeError("a cycle needs at least 3 vertices")
    return ToleranceRelation(n, [(i, i % n + 1) for i in range(1, n + 1)])


def all_relations(n: int):
    """Yield every tolerance relation on n points (2**(n(n-1)/2) of them)."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for bits in range(1 << len(pairs)):
        yield ToleranceRelation(n, [p for b, p in enumerate(pairs) if bits >> b & 1])


# parsing


def _relation_from_obj(obj) -> ToleranceRelation:
    if not isinstance(obj, dict) or "n" not in obj:
        raise ParseError('relation JSON must be an object with key "n"')
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError('"n" must be an integer')
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise ParseError('"edges" must be a list')
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise ParseError(f"edge {e!r} is not a pair of integers")
    return ToleranceRelation(n, [tuple(e) for e in edges])


def _relation_from_edge_list(text: str) -> ToleranceRelation:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty edge list")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"first line must be the ground-set size, got {lines[0]!r}") from exc
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'i j', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"non-integer vertex in {line!r}") from exc
    return ToleranceRelation(n, edges)


def parse_relation(text: str) -> ToleranceRelation:
    """Parse a relation from JSON (``{"n":..,"edges":[[i,j],..]}``) or edge-list text."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from exc
        return _relation_from_obj(obj)
    return _relation_from_edge_list(text)


# analysis


def connected_components(R: ToleranceRelation) -> list[list[int]]:
    seen = [False] * R.n
    comps = []
    for start in range(R.n):
        if seen[start]:
            continue
        seen[start] = True
        comp, queue = [], deque([start])
        while queue:
            x = queue.popleft()
            comp.append(x + 1)
            for y in R.neighbors[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def is_equivalence(R: ToleranceRelation) -> bool:
    """True iff every connected component of the graph is a clique."""
    m = R.mask
    for comp in connected_components(R):
        idx = np.array(comp) - 1
        if not m[np.ix_(idx, idx)].all():
            return False
    return True


def dominant_vertices(R: ToleranceRelation) -> list[list[int]]:
    m = R.mask
    out = []
    for comp in connected_components(R):
        idx = np.array(comp) - 1
        sub = m[np.ix_(idx, idx)]
        out.append([comp[c] for c in range(len(comp)) if sub[:, c].all()])
    return out


def non_transitive_triple(R: ToleranceRelation):
    """Return the lexicographically first (x, y, z) with x~y, y~z, x!~z, or None."""
    m = R.mask
    for y in range(R.n):
        nb = [x for x in R.neighbors[y] if x != y]
        for x, z in itertools.combinations(nb, 2):
            if not m[x, z]:
                return (x + 1, y + 1, z + 1)
    return None


def induced(R: ToleranceRelation, vertices: Sequence[int]) -> ToleranceRelation:
    """Sub-relation on the given 1-indexed vertices, relabelled 1..len(vertices)."""
    idx = np.asarray(vertices, dtype=int) - 1
    return ToleranceRelation.from_mask(R.mask[np.ix_(idx, idx)])


# constructors


def relation_from_cover(n: int, sets: Iterable[Iterable[int]]) -> ToleranceRelation:
    sets = [sorted(set(int(x) for x in s)) for s in sets]
    covered = set()
    edges = set()
    for s in sets:
        for x in s:
            if not 1 <= x <= n:
                raise RangeError(f"cover element {x} outside 1..{n}")
        covered.update(s)
        edges.update(itertools.combinations(s, 2))
    missing = sorted(set(range(1, n + 1)) - covered)
    if missing:
        raise CoverError(f"points not covered: {missing}")
    return ToleranceRelation(n, edges)


def relation_from_proximity(points, eps: float) -> ToleranceRelation:
    """i ~ j iff the Euclidean distance is strictly below eps."""
    if not np.isfinite(eps) or eps <= 0:
        raise RangeError("eps must be a positive finite real")
    p = np.asarray(points, dtype=float)
    if p.ndim == 1:
        p = p[:, None]
    if p.shape[0] < 1:
        raise RangeError("need at least one point")
    d = np.linalg.norm(p[:, None, :] - p[None, :, :], axis=-1)
    return ToleranceRelation.from_mask(d < eps)


@dataclass(frozen=True)
class FiniteMagma:
    """Magma with right inverse and unit, given by explicit 1-indexed tables.

    Checked at construction: (g*h)*h^-1 = g and g*1 = g for all g, h.
    """

    m: int
    mul: tuple
    inv: tuple
    unit: int

    def __post_init__(self):
        m = self.m
        mul = tuple(tuple(int(x) for x in row) for row in self.mul)
        inv = tuple(int(x) for x in self.inv)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "inv", inv)
        if m < 1 or len(mul) != m or any(len(r) != m for r in mul) or len(inv) != m:
            raise ParseError("magma tables must be m x m and length m")
        if not 1 <= self.unit <= m or any(not 1 <= x <= m for r in mul for x in r) or any(not 1 <= x <= m for x in inv):
            raise RangeError("magma table entry outside 1..m")
        for g in range(1, m + 1):
            if self(g, self.unit) != g:
                raise MagmaAxiomError(f"g*1 != g for g={g}")
            for h in range(1, m + 1):
                if self(self(g, h), inv[h - 1]) != g:
                    raise MagmaAxiomError(f"(g*h)*h^-1 != g for g={g}, h={h}")

    def __call__(self, g: int, h: int) -> int:
        return self.mul[g - 1][h - 1]


@dataclass(frozen=True)
class MagmaAction:
    """Right action x <| g of a finite magma on {1..x_size}; act[x-1][g-1] = x <| g."""

    magma: FiniteMagma
    x_size: int
    act: tuple

    def __post_init__(self):
        act = tuple(tuple(int(v) for v in row) for row in self.act)
        object.__setattr__(self, "act", act)
        G = self.magma
        if self.x_size < 1 or len(act) != self.x_size or any(len(r) != G.m for r in act):
            raise ParseError("action table must be x_size x m")
        if any(not 1 <= v <= self.x_size for r in act for v in r):
            raise RangeError("action value outside 1..x_size")
        for x in range(1, self.x_size + 1):
            if self(x, G.unit) != x:
                raise MagmaAxiomError(f"x<|1 != x for x={x}")
            for g in range(1, G.m + 1):
                if self(self(x, g), G.inv[g - 1]) != x:
                    raise MagmaAxiomError(f"(x<|g)<|g^-1 != x for x={x}, g={g}")

    def __call__(self, x: int, g: int) -> int:
        return self.act[x - 1][g - 1]


def parse_action(text: str) -> MagmaAction:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    try:
        magma = FiniteMagma(obj["m"], obj["mul"], obj["inv"], obj["unit"])
        return MagmaAction(magma, obj["x_size"], obj["act"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"action JSON missing or malformed field: {exc}") from exc


def relation_from_action(action: MagmaAction):
    """Image of (x, g) -> (x, x <| g), plus whether that map is injective / surjective."""
    X, G = action.x_size, action.magma.m
    image = {(x, action(x, g)) for x in range(1, X + 1) for g in range(1, G + 1)}
    R = ToleranceRelation(X, [(x, y) for x, y in image if x != y])
    free = len(image) == X * G
    transitive = len(image) == X * X
    return R, free, transitive
