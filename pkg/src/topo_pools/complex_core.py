"""Abstract simplicial complexes stored by their facets.

A complex is kept as the set of its maximal simplices; every other simplex is
implicit (a simplex belongs to the complex iff it is a subset of some facet).
Vertices are arbitrary hashable objects.  Domain vertex classes expose three
hooks used for canonical ordering and serialization:

``order_key``
    a tuple giving the deterministic total order on vertices,
``label``
    a string token, unique within a complex, used as the JSON/DOT key,
``payload()``
    a JSON-ready description of the vertex.

Plain ints, strs and tuples of those work out of the box.
"""
from __future__ import annotations

import itertools
import os
import random
from collections import defaultdict
from typing import Any, Hashable, Iterable, Iterator, Sequence

from .errors import ArgumentError, ConstructionError, JoinError

Simplex = frozenset
SEED_ORDER_ENV = "TOPO_POOLS_SEED_ORDER"


def order_key(v: Any) -> tuple:
    key = getattr(v, "order_key", None)
    if key is not None:
        return key
    if isinstance(v, bool):
        return (8, int(v))
    if isinstance(v, int):
        return (8, v)
    if isinstance(v, str):
        return (9, v)
    if isinstance(v, tuple):
        return (7, tuple(order_key(x) for x in v))
    return (10, type(v).__name__, repr(v))


def vertex_label(v: Any) -> str:
    label = getattr(v, "label", None)
    if label is not None:
        return label
    if isinstance(v, tuple):
        return "(" + ",".join(vertex_label(x) for x in v) + ")"
    return str(v)


def vertex_payload(v: Any) -> Any:
    payload = getattr(v, "payload", None)
    if payload is not None:
        return payload()
    if isinstance(v, (int, str)):
        return v
    if isinstance(v, tuple):
        return [vertex_payload(x) for x in v]
    return repr(v)


def sorted_vertices(vertices: Iterable[Hashable]) -> list:
    return sorted(vertices, key=order_key)


def simplex_key(simplex: Iterable[Hashable]) -> tuple:
    return tuple(sorted(order_key(v) for v in simplex))


def _seed_shuffle(items: list) -> list:
    seed = os.environ.get(SEED_ORDER_ENV)
    if seed:
        random.Random(int(seed)).shuffle(items)
    return items


def canonical_order(simplices: Iterable[frozenset]) -> list[frozenset]:
    """Sort simplices by their sorted vertex keys (the canonical facet order)."""
    cache: dict[Any, tuple] = {}

    def key(s):
        ks = []
        for v in s:
            k = cache.get(v)
            if k is None:
                k = cache[v] = order_key(v)
            ks.append(k)
        ks.sort()
        return tuple(ks)

    return _seed_shuffle(sorted(simplices, key=key))


def maximal_sets(sets: Iterable[frozenset]) -> list[frozenset]:
    """Drop every set that is contained in another one."""
    ordered = sorted(set(sets), key=len, reverse=True)
    kept: list[frozenset] = []
    star: dict[Any, set[int]] = defaultdict(set)
    for s in ordered:
        candidates = None
        for v in s:
            owners = star.get(v)
            if not owners:
                candidates = set()
                break
            candidates = set(owners) if candidates is None else candidates & owners
            if not candidates:
                break
        if candidates:
            continue
        idx = len(kept)
        kept.append(s)
        for v in s:
            star[v].add(idx)
    return kept


class UnionFind:
    """Disjoint sets over hashable items, with path halving and union by size."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict[Hashable, Hashable] = {}
        self.size: dict[Hashable, int] = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra

    def groups(self) -> dict[Hashable, list]:
        out: dict[Hashable, list] = defaultdict(list)
        for x in self.parent:
            out[self.find(x)].append(x)
        return dict(out)


class AbstractComplex:
    """Shared behaviour for explicit and implicitly generated complexes.

    Subclasses provide ``iter_facets`` and may override membership and
    counting with something cheaper than enumeration.
    """

    def iter_facets(self) -> Iterator[frozenset]:
        raise NotImplementedError

    def __contains__(self, simplex) -> bool:
        s = frozenset(simplex)
        return any(s <= f for f in self.iter_facets())

    @property
    def facet_count(self) -> int:
        return sum(1 for _ in self.iter_facets())

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.iter_facets()) - 1

    def vertex_set(self) -> set:
        out: set = set()
        for f in self.iter_facets():
            out.update(f)
        return out

    def is_subcomplex_of(self, other: "AbstractComplex") -> bool:
        return all(f in other for f in self.iter_facets())

    def materialize(self) -> "Complex":
        return make_complex(self.iter_facets())


class Complex(AbstractComplex):
    """An immutable simplicial complex given by its facets in canonical order."""

    __slots__ = ("facets", "vertices", "_star", "_hash")

    def __init__(self, facets: Iterable[Iterable[Hashable]]):
        fs = [frozenset(f) for f in facets]
        if not fs:
            raise ConstructionError("a complex needs at least one facet")
        if any(not f for f in fs):
            raise ConstructionError("facets must be nonempty")
        maximal = maximal_sets(fs)
        verts = set().union(*maximal)
        _check_labels(verts)
        self.facets: tuple[frozenset, ...] = tuple(canonical_order(maximal))
        self.vertices: tuple = tuple(sorted_vertices(verts))
        self._star = None
        self._hash = None

    def iter_facets(self):
        return iter(self.facets)

    @property
    def facet_count(self) -> int:
        return len(self.facets)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def vertex_set(self) -> set:
        return set(self.vertices)

    def _stars(self) -> dict:
        if self._star is None:
            star: dict[Any, list[int]] = defaultdict(list)
            for i, f in enumerate(self.facets):
                for v in f:
                    star[v].append(i)
            self._star = dict(star)
        return self._star

    def facets_containing(self, simplex) -> list[frozenset]:
        s = frozenset(simplex)
        if not s:
            return list(self.facets)
        star = self._stars()
        ids = None
        for v in s:
            owners = star.get(v)
            if owners is None:
                return []
            ids = set(owners) if ids is None else ids.intersection(owners)
            if not ids:
                return []
        return [self.facets[i] for i in sorted(ids)]

    def __contains__(self, simplex) -> bool:
        s = frozenset(simplex)
        if not s:
            return True
        return bool(self.facets_containing(s))

    def faces(self, k: int) -> list[frozenset]:
        """All k-dimensional simplices, canonically ordered."""
        out = set()
        for f in self.facets:
            if len(f) > k:
                out.update(frozenset(c) for c in itertools.combinations(f, k + 1))
        return canonical_order(out)

    def induced(self, vertices: Iterable[Hashable]) -> "Complex":
        """Subcomplex induced on a vertex subset."""
        keep = frozenset(vertices)
        parts = [f & keep for f in self.facets]
        return Complex(p for p in parts if p)

    def __iter__(self):
        return iter(self.facets)

    def __len__(self):
        return len(self.facets)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return set(self.facets) == set(other.facets)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.facets))
        return self._hash

    def __repr__(self):
        return f"Complex(dim={self.dim}, facets={len(self.facets)}, vertices={len(self.vertices)})"


def _check_labels(vertices: Iterable[Hashable]) -> None:
    seen: dict[str, Any] = {}
    for v in vertices:
        label = vertex_label(v)
        other = seen.setdefault(label, v)
        if other != v:
            raise ConstructionError(
                f"vertex key {label!r} is shared by conflicting payloads {other!r} and {v!r}"
            )


def make_complex(facets: Iterable[Iterable[Hashable]]) -> Complex:
    """Build a complex from generating simplices; non-maximal ones are absorbed."""
    return Complex(facets)


def standard_simplex(n: int, labels: Sequence[Hashable] | None = None) -> Complex:
    """The n-simplex on vertices ``0..n`` (or on the given labels)."""
    if n < 0:
        raise ArgumentError("dimension must be non-negative")
    verts = list(range(n + 1)) if labels is None else list(labels)
    if len(verts) != n + 1:
        raise ArgumentError("need exactly n + 1 labels")
    return Complex([verts])


def dim(c: AbstractComplex) -> int:
    return c.dim


def skeleton(c: Complex, k: int) -> Complex:
    if k < 0:
        raise ArgumentError(f"skeleton dimension must be >= 0, got {k}")
    parts: list[frozenset] = []
    for f in c.facets:
        if len(f) <= k + 1:
            parts.append(f)
        else:
            parts.extend(frozenset(s) for s in itertools.combinations(f, k + 1))
    return Complex(parts)


def join(a: Complex, b: Complex) -> Complex:
    shared = a.vertex_set() & b.vertex_set()
    if shared:
        raise JoinError(f"join needs disjoint vertex sets; shared: {sorted_vertices(shared)[:5]}")
    return Complex(f | g for f in a.facets for g in b.facets)


def components(c: AbstractComplex) -> list[Complex]:
    """Path-connected components, ordered by their least vertex."""
    uf = UnionFind()
    facets = list(c.iter_facets())
    for f in facets:
        it = iter(f)
        first = next(it)
        uf.add(first)
        for v in it:
            uf.add(v)
            uf.union(first, v)
    grouped: dict[Any, list[frozenset]] = defaultdict(list)
    for f in facets:
        grouped[uf.find(next(iter(f)))].append(f)
    comps = [Complex(fs) for fs in grouped.values()]
    comps.sort(key=lambda comp: order_key(comp.vertices[0]))
    return comps


def is_connected(c: AbstractComplex) -> bool:
    return len(components(c)) == 1
