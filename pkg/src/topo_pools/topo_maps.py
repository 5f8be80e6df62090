"""Vertex maps, carrier maps and the containment checks built on them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Mapping, Optional

from .complex_core import (
    AbstractComplex,
    Complex,
    canonical_order,
    make_complex,
    sorted_vertices,
    vertex_label,
)
from .errors import ArgumentError, DomainError


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a verification; ``witness`` is the first offending simplex."""

    ok: bool
    witness: Optional[frozenset] = None

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        w = None if self.witness is None else [vertex_label(v) for v in sorted_vertices(self.witness)]
        return {"ok": self.ok, "witness": w}


PASS = CheckResult(True)


class VertexMap:
    """A total function from the vertices of ``domain`` to vertices of ``codomain``."""

    def __init__(self, table: Mapping[Hashable, Hashable], domain: Complex, codomain: AbstractComplex,
                 validate: bool = True):
        self.table = dict(table)
        self.domain = domain
        self.codomain = codomain
        if validate:
            missing = [v for v in domain.vertices if v not in self.table]
            if missing:
                raise DomainError(f"vertex map is not total; missing {vertex_label(missing[0])}")
            for v in domain.vertices:
                if frozenset([self.table[v]]) not in codomain:
                    raise DomainError(f"image of {vertex_label(v)} is not a codomain vertex")

    def __call__(self, simplex: Iterable[Hashable]) -> frozenset:
        try:
            return frozenset(self.table[v] for v in simplex)
        except KeyError as exc:
            raise DomainError(f"vertex {exc.args[0]!r} outside the map's domain") from None

    def __getitem__(self, v):
        return self.table[v]

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        if not isinstance(other, VertexMap):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def compose(self, inner: "VertexMap") -> "VertexMap":
        """``self ∘ inner``: apply ``inner`` first."""
        return VertexMap({v: self.table[w] for v, w in inner.table.items()}, inner.domain, self.codomain,
                         validate=False)

    def restrict(self, sub: Complex) -> "VertexMap":
        return VertexMap({v: self.table[v] for v in sub.vertices}, sub, self.codomain, validate=False)

    def image(self) -> list[frozenset]:
        """Images of the domain facets, in domain facet order."""
        return [self(f) for f in self.domain.facets]

    def is_injective(self) -> bool:
        return len(set(self.table.values())) == len(self.table)

    def to_dict(self) -> dict:
        return {"map": {vertex_label(v): vertex_label(self.table[v]) for v in sorted_vertices(self.table)}}

    def __repr__(self):
        return f"VertexMap({len(self.table)} vertices)"


def identity_map(c: Complex) -> VertexMap:
    return VertexMap({v: v for v in c.vertices}, c, c, validate=False)


class CarrierMap:
    """Simplex-to-subcomplex map on ``domain``.

    Values are stored on facets.  A face takes the intersection of the images
    of the facets containing it, unless ``rule`` is given, in which case
    ``rule(simplex)`` defines the value everywhere.
    """

    def __init__(self, domain: Complex, codomain: AbstractComplex,
                 facet_images: Mapping[frozenset, AbstractComplex] | None = None,
                 rule: Callable[[frozenset], AbstractComplex] | None = None):
        if facet_images is None and rule is None:
            raise ArgumentError("a carrier map needs facet images or a rule")
        self.domain = domain
        self.codomain = codomain
        self.facet_images = {frozenset(k): v for k, v in (facet_images or {}).items()}
        self.rule = rule
        self._cache: dict[frozenset, AbstractComplex] = {}

    def __call__(self, simplex: Iterable[Hashable]) -> AbstractComplex:
        s = frozenset(simplex)
        hit = self._cache.get(s)
        if hit is not None:
            return hit
        if not s or s not in self.domain:
            raise DomainError("simplex outside the carrier map's domain")
        if self.rule is not None:
            value = self.rule(s)
        elif s in self.facet_images:
            value = self.facet_images[s]
        else:
            images = [self.facet_images[f] for f in self.domain.facets_containing(s) if f in self.facet_images]
            if not images:
                raise DomainError("no facet image covers this simplex")
            value = _intersect_all(images)
        self._cache[s] = value
        return value


def _intersect_all(images: list[AbstractComplex]) -> AbstractComplex:
    acc = list(images[0].iter_facets())
    for img in images[1:]:
        other = list(img.iter_facets())
        acc = [f & g for f in acc for g in other if f & g]
        if not acc:
            raise DomainError("facet images have empty intersection")
    return make_complex(acc)


def is_simplicial(m: VertexMap) -> CheckResult:
    for f in m.domain.facets:
        if m(f) not in m.codomain:
            return CheckResult(False, f)
    return PASS


def _faces_within(facet: frozenset, depth: int) -> list[frozenset]:
    n = len(facet)
    out = []
    for size in range(max(1, n - depth), n + 1):
        out.extend(frozenset(c) for c in itertools.combinations(sorted_vertices(facet), size))
    return out


def check_monotonic(cm: CarrierMap, sample_depth: int) -> CheckResult:
    """Verify ``σ ⊆ τ ⇒ cm(σ) ⊆ cm(τ)`` over face pairs of each domain facet.

    Faces down to codimension ``sample_depth`` are compared pairwise; a depth
    at least the facet size makes the check exhaustive.  The witness is the
    smaller simplex of the first violating pair.
    """
    if sample_depth < 1:
        raise ArgumentError("sample_depth must be >= 1")
    for key in cm.facet_images:
        if key not in cm.domain:
            raise DomainError("carrier map is defined on a simplex outside its domain")
    seen: set[tuple[frozenset, frozenset]] = set()
    for facet in cm.domain.facets:
        faces = _faces_within(facet, sample_depth)
        for tau in faces:
            big = cm(tau)
            for sigma in faces:
                if len(sigma) >= len(tau) or not sigma < tau or (sigma, tau) in seen:
                    continue
                seen.add((sigma, tau))
                if not cm(sigma).is_subcomplex_of(big):
                    return CheckResult(False, sigma)
    return PASS


def check_decision(delta: VertexMap, xi: CarrierMap, task_delta: CarrierMap) -> CheckResult:
    """Decision-map condition: ``δ(Ξ(σ)) ⊆ Δ(σ)`` for every input facet σ."""
    for sigma in xi.domain.facets:
        allowed = task_delta(sigma)
        for tau in xi(sigma).iter_facets():
            if delta(tau) not in allowed:
                return CheckResult(False, sigma)
    return PASS


def check_simulation(phi: VertexMap, xi_r: CarrierMap, xi_v: CarrierMap) -> CheckResult:
    """Simulation condition: ``(Φ ∘ Ξ_r)(σ) ⊆ Ξ_v(σ)`` for every input facet σ."""
    for sigma in xi_r.domain.facets:
        target = xi_v(sigma)
        for tau in xi_r(sigma).iter_facets():
            if phi(tau) not in target:
                return CheckResult(False, sigma)
    return PASS


def index_set(simplex: Iterable[Any]) -> frozenset:
    out = set()
    for v in simplex:
        idx = getattr(v, "index", None)
        if idx is None or not hasattr(v, "pool"):
            raise DomainError(f"{v!r} is not a pool vertex")
        out.add(idx)
    return frozenset(out)


def are_homeomorphic_pools(s: Iterable[Any], t: Iterable[Any]) -> bool:
    """Pool simplices are homeomorphic exactly when their index sets coincide.

    The index-matching function ``U ↦ V`` with ``index(U) = index(V)`` is then
    a bijection of the discrete spaces on the two vertex sets, continuous in
    both directions; with unequal index sets no such bijection exists.
    """
    return index_set(s) == index_set(t)


def index_matching(s: Iterable[Any], t: Iterable[Any]) -> dict:
    """Vertex bijection ``s → t`` pairing equal indices (pool simplices only)."""
    if not are_homeomorphic_pools(s, t):
        raise DomainError("index sets differ; no index-matching bijection")
    by_index = {v.index: v for v in t}
    return {u: by_index[u.index] for u in s}


def image_subcomplex(m: VertexMap) -> list[frozenset]:
    """Codomain facets carrying the image of some domain facet."""
    out = set()
    for img in m.image():
        if hasattr(m.codomain, "facets_containing"):
            out.update(m.codomain.facets_containing(img))
        else:
            out.add(img)
    return canonical_order(out)
