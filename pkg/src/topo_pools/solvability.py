"""Equilibrium verdicts, the brute-force equilibrium oracle, image connectivity."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

from .complex_core import Complex, components
from .errors import SizeError
from .ksa import (
    DEFAULT_M_BOUND,
    EXPLICIT_REDUCTION_CAP,
    MANY_SIZES_CITATION,
    TWO_SIZES_CITATION,
    build_2sa_to_2dp,
    build_kdp_to_ksa,
)
from .pool_tasks import (
    DEFAULT_MINER_CAP,
    OutputComplex,
    PoolConfig,
    assignment_dict,
    gen_input,
    no_stay_ok,
    partition_input,
    rotation_map,
)
from .subdivision import DEFAULT_FACET_CAP
from .topo_maps import VertexMap, image_subcomplex, is_simplicial

EQUAL_POOLS_CITATION = "equal pools: the rotation map is a simplicial map into one output facet"
EXISTS = "exists"
NOT_EXISTS = "not_exists"


class Connectivity(NamedTuple):
    ok: bool
    components: int


def certify_connected_image(m: VertexMap) -> Connectivity:
    """Is the image of ``m`` a connected subcomplex of the codomain?

    Each image simplex is taken together with the codomain facets carrying
    it; the union must be path-connected.
    """
    inside = all(img in m.codomain for img in m.image())
    carriers = image_subcomplex(m)
    count = len(components(Complex(carriers))) if carriers else 0
    return Connectivity(inside and count == 1, count)


def iter_equilibria(cfg: PoolConfig, miner_cap: Optional[int] = DEFAULT_MINER_CAP,
                    no_stay: bool = True) -> Iterator[VertexMap]:
    """Name-preserving simplicial maps from the input into a single output facet.

    Output facets are scanned in code order; inside a facet each input vertex
    may only go to the vertex carrying the same miner, which leaves exactly
    one candidate map per facet.
    """
    if miner_cap is not None and cfg.total > miner_cap:
        raise SizeError(f"{cfg.total} miners exceed the brute-force cap {miner_cap}")
    inp = gen_input(cfg)
    out = OutputComplex(cfg, no_stay=no_stay)
    for facet in out.iter_facets():
        by_name = {}
        for w in facet:
            by_name.setdefault(w.name, []).append(w)
        choices = {v: by_name.get(v.name, []) for v in inp.vertices}
        if any(len(c) != 1 for c in choices.values()):
            continue
        m = VertexMap({v: c[0] for v, c in choices.items()}, inp, out, validate=False)
        if not is_simplicial(m):
            continue
        if no_stay and not no_stay_ok(facet):
            continue
        if not certify_connected_image(m).ok:
            continue
        yield m


def brute_force_equilibria(cfg: PoolConfig, miner_cap: Optional[int] = DEFAULT_MINER_CAP,
                           no_stay: bool = True) -> list[VertexMap]:
    return list(iter_equilibria(cfg, miner_cap, no_stay))


def count_equilibria(cfg: PoolConfig, miner_cap: Optional[int] = DEFAULT_MINER_CAP, no_stay: bool = True) -> int:
    return sum(1 for _ in iter_equilibria(cfg, miner_cap, no_stay))


@dataclass
class Verdict:
    sizes: tuple
    k: int
    decision: str
    certificate: dict = field(default_factory=dict)
    citation: str = ""

    @property
    def exists(self) -> bool:
        return self.decision == EXISTS

    def to_dict(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "k": self.k,
            "decision": self.decision,
            "certificate": self.certificate,
            "citation": self.citation,
        }


def target_facet(m: VertexMap) -> frozenset:
    """Union of the images of all domain facets."""
    return frozenset().union(*m.image())


def _map_certificate(m: VertexMap) -> dict:
    target = target_facet(m)
    conn = certify_connected_image(m)
    return {
        "kind": "explicit_map",
        "map": m.to_dict()["map"],
        "target": assignment_dict(target),
        "simplicial": is_simplicial(m).ok,
        "no_stay": no_stay_ok(target),
        "connected": conn.ok,
        "components": conn.components,
    }


def equilibrium_verdict(cfg: PoolConfig, want_certificate: bool = True,
                        miner_cap: Optional[int] = DEFAULT_MINER_CAP,
                        facet_cap: int = DEFAULT_FACET_CAP,
                        m_bound: int = DEFAULT_M_BOUND) -> Verdict:
    """Decide equilibrium existence from the number k of distinct pool sizes.

    k = 1 is certified by the rotation map, k = 2 by the 2SA->2DP simulation
    (plus a brute-force count within the miner cap), k >= 3 by the KDP->KSA
    placement.
    """
    k = partition_input(cfg).k
    if k == 1:
        cert = _map_certificate(rotation_map(cfg)) if want_certificate else {"kind": "explicit_map"}
        return Verdict(cfg.sizes, k, EXISTS, cert, EQUAL_POOLS_CITATION)
    if k == 2:
        cert: dict = {"kind": "reduction_trace"}
        if want_certificate:
            red = build_2sa_to_2dp(cfg, m_bound=m_bound, facet_cap=min(facet_cap, EXPLICIT_REDUCTION_CAP),
                                   allow_symbolic=True)
            cert["reduction"] = red.report.to_dict()
            within = miner_cap is None or cfg.total <= miner_cap
            cert["brute_force_count"] = count_equilibria(cfg, miner_cap) if within else None
        return Verdict(cfg.sizes, k, EXISTS, cert, TWO_SIZES_CITATION)
    cert = {"kind": "reduction_trace"}
    if want_certificate:
        cert["reduction"] = build_kdp_to_ksa(cfg, facet_cap=facet_cap).report.to_dict()
    return Verdict(cfg.sizes, k, NOT_EXISTS, cert, MANY_SIZES_CITATION)
