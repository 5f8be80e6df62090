"""Barycentric and chromatic subdivision, iteration, and disjoint-facet search."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Callable, Hashable, Iterable, Iterator, Optional

from .complex_core import (
    Complex,
    order_key,
    sorted_vertices,
    vertex_label,
)
from .errors import ArgumentError, ColorError, SizeError

DEFAULT_FACET_CAP = 10**6
KINDS = ("bary", "chromatic")


@dataclass(frozen=True, eq=True)
class SubdivVertex:
    """Vertex of a subdivision.

    Chromatic vertices pair a vertex ``color`` of the subdivided complex with
    a simplex ``carrier`` containing it.  Barycentric vertices have
    ``color=None`` and stand for the face ``carrier`` itself.
    """

    color: Any
    carrier: frozenset

    @cached_property
    def order_key(self) -> tuple:
        col = () if self.color is None else order_key(self.color)
        return (1, col, tuple(sorted(order_key(v) for v in self.carrier)))

    @cached_property
    def label(self) -> str:
        inner = ",".join(vertex_label(v) for v in sorted_vertices(self.carrier))
        if self.color is None:
            return "{" + inner + "}"
        return f"({vertex_label(self.color)};{{{inner}}})"

    def payload(self) -> dict:
        return {
            "color": None if self.color is None else vertex_label(self.color),
            "carrier": [vertex_label(v) for v in sorted_vertices(self.carrier)],
        }

    @cached_property
    def chromatic_color(self):
        """Color in the original complex (follows colors through iterated rounds)."""
        if self.color is None:
            return None
        return root_color(self.color)

    @cached_property
    def root_carrier(self) -> frozenset:
        """Smallest simplex of the original complex carrying this vertex."""
        out: set = set()
        for v in self.carrier:
            out |= root_carrier(v)
        return frozenset(out)


def root_color(v):
    if isinstance(v, SubdivVertex) and v.color is not None:
        return v.chromatic_color
    return v


def root_carrier(v) -> frozenset:
    if isinstance(v, SubdivVertex):
        return v.root_carrier
    return frozenset([v])


def ordered_set_partitions(items: Iterable[Hashable]) -> Iterator[list[frozenset]]:
    """Every ordered set partition of ``items`` (blocks listed first-to-last)."""
    pool = list(items)
    if not pool:
        yield []
        return
    for r in range(1, len(pool) + 1):
        for first in itertools.combinations(pool, r):
            chosen = frozenset(first)
            rest = [x for x in pool if x not in chosen]
            for tail in ordered_set_partitions(rest):
                yield [chosen, *tail]


@lru_cache(maxsize=None)
def ordered_bell(n: int) -> int:
    """Number of ordered set partitions of an n-set (recurrence on the first block)."""
    if n == 0:
        return 1
    return sum(math.comb(n, r) * ordered_bell(n - r) for r in range(1, n + 1))


def _bary_facets(facet: frozenset) -> Iterator[frozenset]:
    for perm in itertools.permutations(sorted_vertices(facet)):
        chain = []
        prefix: frozenset = frozenset()
        for v in perm:
            prefix = prefix | {v}
            chain.append(SubdivVertex(None, prefix))
        yield frozenset(chain)


def _chromatic_facets(facet: frozenset) -> Iterator[frozenset]:
    for blocks in ordered_set_partitions(sorted_vertices(facet)):
        carrier: frozenset = frozenset()
        verts = []
        for block in blocks:
            carrier = carrier | block
            verts.extend(SubdivVertex(v, carrier) for v in block)
        yield frozenset(verts)


def barycentric(c: Complex) -> Complex:
    return Complex(itertools.chain.from_iterable(_bary_facets(f) for f in c.facets))


def _default_coloring(v):
    return root_color(v)


def chromatic(c: Complex, coloring: Callable[[Any], Hashable] | None = None) -> Complex:
    """Standard chromatic subdivision.

    ``coloring`` assigns colors to the vertices of ``c`` (default: the original
    vertex each one descends from); every facet must be properly colored.
    """
    color_of = coloring or _default_coloring
    for f in c.facets:
        cols = [color_of(v) for v in f]
        if len(set(cols)) != len(cols):
            raise ColorError(f"facet {[vertex_label(v) for v in sorted_vertices(f)]} repeats a color")
    return Complex(itertools.chain.from_iterable(_chromatic_facets(f) for f in c.facets))


def projected_facets(c: Complex, m: int, kind: str) -> int:
    per = ordered_bell if kind == "chromatic" else math.factorial
    return sum(per(len(f)) ** m for f in c.facets)


def iterate_div(c: Complex, m: int, kind: str = "chromatic", facet_cap: int = DEFAULT_FACET_CAP) -> Complex:
    if kind not in KINDS:
        raise ArgumentError(f"unknown subdivision kind {kind!r}; expected one of {KINDS}")
    if m < 0:
        raise ArgumentError("m must be >= 0")
    projected = projected_facets(c, m, kind)
    if projected > facet_cap:
        raise SizeError(f"{kind} subdivision x{m} projects {projected} facets (cap {facet_cap})")
    step = chromatic if kind == "chromatic" else barycentric
    for _ in range(m):
        c = step(c)
    return c


def carried_by(subdivided: Complex, simplex: Iterable[Hashable]) -> Optional[Complex]:
    """The part of a subdivision lying over ``simplex`` of the original complex."""
    base = frozenset(simplex)
    keep = [v for v in subdivided.vertices if root_carrier(v) <= base]
    if not keep:
        return None
    return subdivided.induced(keep)


def find_disjoint_facets(c: Complex, d: int, count: int) -> Optional[list[frozenset]]:
    """Backtracking search for ``count`` pairwise vertex-disjoint d-dimensional facets.

    Candidates are scanned in canonical facet order and the first solution is
    returned; ``None`` means no such family exists.
    """
    if count < 1:
        raise ArgumentError("count must be >= 1")
    if d < 0 or d > c.dim:
        raise ArgumentError(f"d must lie in [0, {c.dim}]")
    candidates = [f for f in c.facets if len(f) == d + 1]
    bit = {v: 1 << i for i, v in enumerate(c.vertices)}
    masks = [sum(bit[v] for v in f) for f in candidates]

    chosen: list[int] = []

    def extend(start: int, used: int) -> bool:
        if len(chosen) == count:
            return True
        need = count - len(chosen)
        for i in range(start, len(candidates) - need + 1):
            if masks[i] & used:
                continue
            chosen.append(i)
            if extend(i + 1, used | masks[i]):
                return True
            chosen.pop()
        return False

    if not extend(0, 0):
        return None
    return [candidates[i] for i in chosen]


def is_chromatic_simplex(vertices: Iterable[SubdivVertex]) -> bool:
    """Membership test for one round of chromatic subdivision.

    Colors are pairwise distinct, each color lies in its own carrier, the
    carriers form a chain, and a color seen by another vertex's carrier
    forces its own carrier inside that one.
    """
    vs = list(vertices)
    if any(not isinstance(v, SubdivVertex) or v.color is None or v.color not in v.carrier for v in vs):
        return False
    if len({v.color for v in vs}) != len(vs):
        return False
    for a, b in itertools.combinations(vs, 2):
        if not (a.carrier <= b.carrier or b.carrier <= a.carrier):
            return False
    for a in vs:
        for b in vs:
            if a.color in b.carrier and not a.carrier <= b.carrier:
                return False
    return True


def corner_facets(simplex: Iterable[Hashable]) -> list[frozenset]:
    """n+1 pairwise disjoint facets of the chromatic subdivision of an n-simplex.

    With the vertices in canonical cyclic order, facet c is the ordered
    partition into singletons starting at vertex c: the vertex of color x
    gets the cyclic interval from c to x as its carrier.  Two facets never
    share a vertex because equal end points with different start points give
    different intervals.
    """
    verts = sorted_vertices(simplex)
    n1 = len(verts)
    out = []
    for start in range(n1):
        carrier: frozenset = frozenset()
        cell = []
        for step in range(n1):
            x = verts[(start + step) % n1]
            carrier = carrier | {x}
            cell.append(SubdivVertex(x, carrier))
        out.append(frozenset(cell))
    return out


def pairwise_disjoint(simplices: Iterable[frozenset]) -> bool:
    items = list(simplices)
    return all(a.isdisjoint(b) for a, b in itertools.combinations(items, 2))


__all__ = [
    "SubdivVertex", "barycentric", "chromatic", "iterate_div", "find_disjoint_facets",
    "ordered_set_partitions", "ordered_bell", "carried_by", "projected_facets",
    "pairwise_disjoint", "root_color", "root_carrier", "is_chromatic_simplex", "corner_facets",
]
