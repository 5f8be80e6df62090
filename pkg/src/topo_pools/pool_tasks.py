"""The pooling task: input/output complexes, carrier map, rotation map, swap rounds.

Pools, miner indices and views are 0-based internally.  Human-facing labels
(``p{pool}^{index}|{view}``) print pools and views 1-based; miner indices
stay 0-based.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .complex_core import AbstractComplex, Complex, order_key
from .errors import (
    ArgumentError,
    BoundExceeded,
    ConfigError,
    DomainError,
    NotEqualPoolError,
    SizeError,
)
from .topo_maps import CarrierMap, VertexMap

DEFAULT_MINER_CAP = 12
BOTTOM = None


@dataclass(frozen=True)
class PoolVertex:
    """Miner ``index`` of pool ``pool`` with its view (``None`` is ⊥).

    Output vertices also carry ``facet_tag``, the code of the assignment
    whose facet they belong to, so distinct output facets never share a
    vertex.
    """

    pool: int
    index: int
    view: Optional[int] = None
    facet_tag: Optional[int] = None

    @property
    def name(self) -> tuple[int, int]:
        return (self.pool, self.index)

    @property
    def order_key(self) -> tuple:
        return (0, self.pool, self.index,
                -1 if self.view is None else self.view,
                -1 if self.facet_tag is None else self.facet_tag)

    @property
    def label(self) -> str:
        view = "⊥" if self.view is None else str(self.view + 1)
        tag = "" if self.facet_tag is None else f"#{self.facet_tag}"
        return f"p{self.pool + 1}^{self.index}|{view}{tag}"

    def payload(self) -> dict:
        return {"pool": self.pool, "index": self.index, "view": self.view, "facet_tag": self.facet_tag}

    @classmethod
    def from_payload(cls, data: Mapping) -> "PoolVertex":
        return cls(data["pool"], data["index"], data.get("view"), data.get("facet_tag"))


def name_label(name: tuple[int, int]) -> str:
    return f"p{name[0] + 1}^{name[1]}"


def names_of(simplex: Iterable[PoolVertex]) -> frozenset:
    return frozenset(v.name for v in simplex)


@dataclass(frozen=True)
class PoolConfig:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 2:
            raise ConfigError(f"need at least 2 pools, got {len(sizes)}")
        for s in sizes:
            if not isinstance(s, int) or isinstance(s, bool) or s < 1:
                raise ConfigError(f"pool sizes must be positive integers, got {s!r}")

    @classmethod
    def parse(cls, text: str) -> "PoolConfig":
        try:
            sizes = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
        except ValueError:
            raise ConfigError(f"cannot parse pool sizes from {text!r}") from None
        return cls(sizes)

    @classmethod
    def from_json(cls, text: str) -> "PoolConfig":
        data = json.loads(text)
        if not isinstance(data, dict) or "sizes" not in data:
            raise ConfigError('expected a JSON object {"sizes": [...]}')
        return cls(tuple(data["sizes"]))

    @property
    def q(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def names(self) -> list[tuple[int, int]]:
        return [(i, j) for i, s in enumerate(self.sizes) for j in range(s)]

    @property
    def is_equal(self) -> bool:
        return len(set(self.sizes)) == 1

    def to_dict(self) -> dict:
        return {"sizes": list(self.sizes)}


def gen_input(cfg: PoolConfig) -> Complex:
    return Complex([[PoolVertex(i, j) for j in range(s)] for i, s in enumerate(cfg.sizes)])


def output_dimension(cfg: PoolConfig) -> int:
    """Dimension of every output facet: total miners minus one."""
    return cfg.total - 1


def surjection_count(n: int, q: int) -> int:
    """Maps from an n-set onto a q-set (inclusion–exclusion)."""
    return sum((-1) ** i * math.comb(q, i) * (q - i) ** n for i in range(q + 1))


class OutputComplex(AbstractComplex):
    """Output complex of the pooling task, generated on demand.

    One facet per assignment of every miner to a pool that reaches all pools
    and (unless ``no_stay=False``) moves at least one miner away from its own
    pool.  A facet is identified by the assignment's lexicographic code in
    base q, which doubles as the facet tag of its vertices.
    """

    def __init__(self, cfg: PoolConfig, no_stay: bool = True):
        self.cfg = cfg
        self.no_stay = no_stay
        self.names = cfg.names
        self.position = {n: p for p, n in enumerate(self.names)}
        self.q = cfg.q
        self.n = len(self.names)
        self.code_limit = self.q ** self.n

    def __eq__(self, other):
        if not isinstance(other, OutputComplex):
            return NotImplemented
        return self.cfg == other.cfg and self.no_stay == other.no_stay

    def __hash__(self):
        return hash((self.cfg, self.no_stay))

    def __repr__(self):
        return f"OutputComplex(sizes={self.cfg.sizes}, facets={self.facet_count})"

    def encode(self, views: Sequence[int]) -> int:
        code = 0
        for v in views:
            code = code * self.q + v
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            code, r = divmod(code, self.q)
            out.append(r)
        return tuple(reversed(out))

    def is_valid(self, views: Sequence[int]) -> bool:
        if len(set(views)) != self.q:
            return False
        if self.no_stay and all(v == name[0] for v, name in zip(views, self.names)):
            return False
        return True

    def facet(self, code: int) -> frozenset:
        views = self.decode(code)
        return frozenset(PoolVertex(i, j, v, code) for (i, j), v in zip(self.names, views))

    def facet_for(self, assignment: Mapping[tuple[int, int], int]) -> frozenset:
        views = [assignment[n] for n in self.names]
        if not self.is_valid(views):
            raise DomainError("assignment is not an output facet")
        return self.facet(self.encode(views))

    def iter_codes(self) -> Iterator[int]:
        for code, views in enumerate(itertools.product(range(self.q), repeat=self.n)):
            if self.is_valid(views):
                yield code

    def iter_facets(self) -> Iterator[frozenset]:
        for code in self.iter_codes():
            yield self.facet(code)

    @property
    def facet_count(self) -> int:
        return surjection_count(self.n, self.q) - (1 if self.no_stay else 0)

    @property
    def dim(self) -> int:
        return self.n - 1

    def __contains__(self, simplex) -> bool:
        s = frozenset(simplex)
        if not s:
            return True
        tags = set()
        for v in s:
            if not isinstance(v, PoolVertex) or v.view is None or v.facet_tag is None:
                return False
            tags.add(v.facet_tag)
        if len(tags) != 1:
            return False
        tag = tags.pop()
        if not 0 <= tag < self.code_limit:
            return False
        views = self.decode(tag)
        if not self.is_valid(views):
            return False
        for v in s:
            pos = self.position.get(v.name)
            if pos is None or views[pos] != v.view:
                return False
        return True

    def facets_containing(self, simplex) -> list[frozenset]:
        s = frozenset(simplex)
        if s and s in self:
            return [self.facet(next(iter(s)).facet_tag)]
        return []

    def restrict(self, names: Iterable[tuple[int, int]]) -> "RestrictedOutput":
        return RestrictedOutput(self, names)


class RestrictedOutput(AbstractComplex):
    """Faces of an output complex whose miners all lie in ``names``."""

    def __init__(self, base: OutputComplex, names: Iterable[tuple[int, int]]):
        self.base = base
        self.names = frozenset(names) & frozenset(base.names)
        if not self.names:
            raise DomainError("restriction to no known miner")

    def iter_facets(self) -> Iterator[frozenset]:
        # facet tags keep the restricted faces of distinct facets apart
        for f in self.base.iter_facets():
            yield frozenset(v for v in f if v.name in self.names)

    @property
    def facet_count(self) -> int:
        return self.base.facet_count

    @property
    def dim(self) -> int:
        return len(self.names) - 1

    def __contains__(self, simplex) -> bool:
        s = frozenset(simplex)
        return s in self.base and all(v.name in self.names for v in s)

    def facets_containing(self, simplex) -> list[frozenset]:
        return [frozenset(v for v in f if v.name in self.names) for f in self.base.facets_containing(simplex)
                if simplex in self]

    def is_subcomplex_of(self, other: AbstractComplex) -> bool:
        # Every base facet covers all miners, so containment reduces to the miner sets.
        if isinstance(other, RestrictedOutput) and other.base == self.base:
            return self.names <= other.names
        if isinstance(other, OutputComplex) and other == self.base:
            return True
        return super().is_subcomplex_of(other)

    def __repr__(self):
        return f"RestrictedOutput({sorted(self.names)})"


def gen_output(cfg: PoolConfig, miner_cap: Optional[int] = DEFAULT_MINER_CAP) -> OutputComplex:
    if miner_cap is not None and cfg.total > miner_cap:
        raise SizeError(f"{cfg.total} miners exceed the output enumeration cap {miner_cap}")
    return OutputComplex(cfg)


def no_stay_ok(facet: Iterable[PoolVertex]) -> bool:
    moved = False
    for v in facet:
        if not isinstance(v, PoolVertex) or v.view is None:
            raise DomainError("no-stay check needs output vertices with a view")
        if v.view != v.pool:
            moved = True
    return moved


def assignment_dict(facet: Iterable[PoolVertex]) -> dict:
    verts = sorted(facet, key=order_key)
    tags = {v.facet_tag for v in verts}
    return {
        "facet": tags.pop() if len(tags) == 1 else None,
        "assignment": {name_label(v.name): v.view + 1 for v in verts},
    }


def task_carrier(cfg: PoolConfig, miner_cap: Optional[int] = DEFAULT_MINER_CAP) -> CarrierMap:
    """Δ: an input simplex goes to the output faces on the same miners."""
    inp = gen_input(cfg)
    out = gen_output(cfg, miner_cap)
    return CarrierMap(inp, out, rule=lambda s: out.restrict(names_of(s)))


def rotation_assignment(cfg: PoolConfig) -> dict[tuple[int, int], int]:
    """Every miner moves to the next pool in cyclic order."""
    return {(i, j): (i + 1) % cfg.q for i, j in cfg.names}


def rotation_map(cfg: PoolConfig) -> VertexMap:
    if not cfg.is_equal:
        raise NotEqualPoolError(f"rotation map needs equal pools, got sizes {cfg.sizes}")
    out = OutputComplex(cfg)
    target = out.facet_for(rotation_assignment(cfg))
    by_name = {v.name: v for v in target}
    inp = gen_input(cfg)
    return VertexMap({v: by_name[v.name] for v in inp.vertices}, inp, out)


def restrict_map(m: VertexMap, facet_index: int) -> VertexMap:
    facets = m.domain.facets
    if not 0 <= facet_index < len(facets):
        raise ArgumentError(f"facet index {facet_index} outside [0, {len(facets)})")
    return m.restrict(Complex([facets[facet_index]]))


def merge_maps(maps: Sequence[VertexMap]) -> VertexMap:
    """Glue maps with compatible tables into one map on the union of domains."""
    if not maps:
        raise ArgumentError("nothing to merge")
    table: dict = {}
    for m in maps:
        for v, w in m.table.items():
            if table.setdefault(v, w) != w:
                raise ArgumentError(f"maps disagree on {v!r}")
    domain = Complex(f for m in maps for f in m.domain.facets)
    return VertexMap(table, domain, maps[0].codomain, validate=False)


@dataclass(frozen=True)
class Partition:
    """Pools grouped by size; classes are ordered by decreasing size."""

    classes: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(size for size, _ in self.classes)

    def class_of_pool(self, pool: int) -> int:
        for idx, (_, pools) in enumerate(self.classes):
            if pool in pools:
                return idx
        raise DomainError(f"pool {pool} not in partition")

    def pool_count(self, class_index: int) -> int:
        return len(self.classes[class_index][1])

    def representatives(self) -> list[int]:
        return [pools[0] for _, pools in self.classes]

    def to_dict(self) -> dict:
        return {"k": self.k, "classes": [{"size": s, "pools": list(p)} for s, p in self.classes]}


def partition_input(cfg: PoolConfig) -> Partition:
    groups: dict[int, list[int]] = {}
    for pool, size in enumerate(cfg.sizes):
        groups.setdefault(size, []).append(pool)
    return Partition(tuple((size, tuple(groups[size])) for size in sorted(groups, reverse=True)))


def part_of(s: Iterable, p: Partition) -> int:
    size = len(frozenset(s))
    for idx, (cls_size, _) in enumerate(p.classes):
        if cls_size == size:
            return idx
    raise DomainError(f"no partition class has simplices of size {size}")


def move_counts(cfg: PoolConfig, m_steps: int) -> dict[tuple[int, int], int]:
    """How many times each miner has switched pools after ``m_steps`` rounds.

    In round t a miner with index j moves iff ``j ≡ t (mod c)``, where c is
    the number of pools in its size class.
    """
    if m_steps < 0:
        raise ArgumentError("m_steps must be >= 0")
    part = partition_input(cfg)
    counts = {}
    for i, j in cfg.names:
        c = part.pool_count(part.class_of_pool(i))
        counts[(i, j)] = sum(1 for t in range(1, m_steps + 1) if (t - j) % c == 0)
    return counts


def swap_positions(cfg: PoolConfig, m_steps: int) -> dict[tuple[int, int], int]:
    return {name: (name[0] + moves) % cfg.q for name, moves in move_counts(cfg, m_steps).items()}


def swap_m(cfg: PoolConfig, m_steps: int) -> Complex:
    """Complex of co-located miners after ``m_steps`` swap rounds."""
    groups: dict[int, list[PoolVertex]] = {}
    for (i, j), pool in swap_positions(cfg, m_steps).items():
        groups.setdefault(pool, []).append(PoolVertex(i, j, pool))
    return Complex(groups[p] for p in sorted(groups))


def swap_vertex(cfg: PoolConfig, name: tuple[int, int], m_steps: int,
                positions: Optional[Mapping] = None) -> PoolVertex:
    pos = positions if positions is not None else swap_positions(cfg, m_steps)
    return PoolVertex(name[0], name[1], pos[name])


def full_simplex_round(cfg: PoolConfig, m_bound: int) -> int:
    """Least round count M ≤ m_bound after which every miner has switched at
    least once and each input pool sits together in one facet of swap^M.

    The largest pool then spans a simplex of dimension dim(I).
    """
    for m in range(0, m_bound + 1):
        counts = move_counts(cfg, m)
        if min(counts.values()) < 1:
            continue
        positions = swap_positions(cfg, m)
        if all(len({positions[(i, j)] for j in range(s)}) == 1 for i, s in enumerate(cfg.sizes)):
            return m
    raise BoundExceeded(f"no round count up to {m_bound} gathers every pool after a full swap")
