"""k-set agreement tasks and the two reductions against the pooling problem.

* two distinct pool sizes: an iterated-subdivision protocol (the 2-set
  agreement side) is simulated by the swap protocol on pools;
* three or more distinct sizes: one chromatic subdivision of the largest
  pool holds k disjoint full-dimensional cells, onto which the
  representative pool of each size class maps injectively, so an
  equilibrium protocol would solve k-set agreement with k >= 3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Optional, Sequence

from .complex_core import AbstractComplex, Complex, order_key, sorted_vertices, vertex_label
from .errors import ArgumentError, InternalError, SizeError
from .pool_tasks import (
    PoolConfig,
    PoolVertex,
    full_simplex_round,
    gen_input,
    partition_input,
    swap_m,
    swap_positions,
)
from .subdivision import (
    DEFAULT_FACET_CAP,
    SubdivVertex,
    carried_by,
    chromatic,
    corner_facets,
    find_disjoint_facets,
    is_chromatic_simplex,
    iterate_div,
    ordered_bell,
    pairwise_disjoint,
    projected_facets,
    root_carrier,
)
from .topo_maps import CarrierMap, VertexMap, check_decision, check_simulation, is_simplicial

KSA_CITATION = "k-set agreement is solvable only for k <= 2"
TWO_SIZES_CITATION = "two distinct pool sizes: 2-set agreement reduces to the pooling problem"
MANY_SIZES_CITATION = "three or more distinct pool sizes: the pooling problem would solve k-set agreement, k >= 3"
DEFAULT_M_BOUND = 64
# above this many projected facets, verdicts check the simulation on attribution sets
EXPLICIT_REDUCTION_CAP = 20_000


@dataclass(frozen=True)
class AgreementVertex:
    """A member of an agreement task holding ``value``; ``stage`` is "in" or "out"."""

    member: Any
    value: Any
    stage: str = "out"

    @cached_property
    def order_key(self) -> tuple:
        return (2, 0 if self.stage == "in" else 1, order_key(self.member), order_key(self.value))

    @cached_property
    def label(self) -> str:
        member = vertex_label(self.member)
        return f"{member}:{self.stage}={vertex_label(self.value)}"

    def payload(self) -> dict:
        return {"member": vertex_label(self.member), "value": self.value, "stage": self.stage}


@dataclass
class KsaTask:
    n: int
    k: int
    v_in: tuple
    v_out: tuple
    input: Complex
    output: Complex
    delta: CarrierMap


@dataclass
class Protocol:
    input: Complex
    protocol_complex: AbstractComplex
    xi: CarrierMap


def _agreement_output(members: Sequence[Hashable], v_out: Sequence[Any]) -> Complex:
    return Complex([[AgreementVertex(m, val) for m in members] for val in v_out])


def _check_values(k: int, v_out: Sequence[Any]) -> tuple:
    values = tuple(v_out)
    if len(values) != k or len(set(values)) != k:
        raise ArgumentError(f"need exactly k={k} distinct output values, got {values!r}")
    return values


def gen_ksa(n: int, k: int, v_out: Sequence[Any], v_in: Sequence[Any] = (0,)) -> KsaTask:
    """k-set agreement among members 0..n.

    Input facets are all assignments of ``v_in`` values to members; the output
    is k disjoint n-simplices, the κ-th uniformly labelled ``v_out[κ]``.
    Every input simplex may end anywhere in the output.
    """
    if n < 0:
        raise ArgumentError("n must be >= 0")
    if not 1 <= k <= n + 1:
        raise ArgumentError(f"k must satisfy 1 <= k <= n+1 = {n + 1}, got {k}")
    values = _check_values(k, v_out)
    inputs = tuple(dict.fromkeys(v_in))
    if not inputs:
        raise ArgumentError("v_in must be nonempty")
    members = list(range(n + 1))
    facets = [[]]
    for m in members:
        facets = [f + [AgreementVertex(m, val, "in")] for f in facets for val in inputs]
    inp = Complex(facets)
    out = _agreement_output(members, values)
    return KsaTask(n, k, inputs, values, inp, out, CarrierMap(inp, out, rule=lambda s: out))


def agreement_task_over(inp: Complex, k: int, v_out: Sequence[Any]) -> KsaTask:
    """k-set agreement whose members are the miners of a pool input complex."""
    values = _check_values(k, v_out)
    members = [v.name for v in inp.vertices]
    out = _agreement_output(members, values)
    return KsaTask(len(members) - 1, k, (None,), values, inp, out, CarrierMap(inp, out, rule=lambda s: out))


def ksa_solvable(k: int) -> bool:
    """Whether the ambient model solves k-set agreement (taken as given: k <= 2)."""
    if k < 1:
        raise ArgumentError("k must be >= 1")
    return k <= 2


@dataclass
class ReductionReport:
    direction: str
    k: int
    M: Optional[int]
    verified: bool
    citation: str
    mode: str = "explicit"
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "k": self.k,
            "M": self.M,
            "verified": self.verified,
            "citation": self.citation,
            "mode": self.mode,
            "checks": self.checks,
        }


@dataclass
class Reduction:
    report: ReductionReport
    phi: Optional[VertexMap] = None
    real: Optional[Protocol] = None
    virtual: Optional[Protocol] = None
    decision: Optional[VertexMap] = None
    task: Optional[KsaTask] = None
    cells: list = field(default_factory=list)


def anchor(w) -> PoolVertex:
    """Input vertex a subdivision vertex is attributed to.

    Chromatic vertices follow their color back to the input; barycentric ones
    take the least vertex of their carrier.
    """
    if isinstance(w, SubdivVertex):
        if w.color is not None:
            return w.chromatic_color
        return sorted_vertices(root_carrier(w))[0]
    return w


def _swap_protocol(cfg: PoolConfig, inp: Complex, m: int) -> Protocol:
    p_v = swap_m(cfg, m)
    positions = swap_positions(cfg, m)

    def xi_v(s):
        return p_v.induced(PoolVertex(i, j, positions[(i, j)]) for i, j in (v.name for v in s))

    return Protocol(inp, p_v, CarrierMap(inp, p_v, rule=xi_v))


def build_2sa_to_2dp(cfg: PoolConfig, m_bound: int = DEFAULT_M_BOUND, kind: str = "chromatic",
                     facet_cap: int = DEFAULT_FACET_CAP, allow_symbolic: bool = False) -> Reduction:
    """Simulate the subdivision protocol ``(I, div^M I, div^M)`` by ``(I, swap^M I, swap^M)``.

    M is the least round count after which every miner has switched pools
    and every pool is gathered in one swap facet.  Φ sends a subdivision
    vertex to the current position of the miner it is attributed to.

    When ``div^M I`` would exceed ``facet_cap`` and ``allow_symbolic`` is set,
    the simulation is checked on the attribution sets instead: every simplex
    of ``div^M σ`` is attributed to a subset of σ's miners, so it suffices
    that all of σ's miners form one simplex of ``swap^M σ``.
    """
    part = partition_input(cfg)
    if part.k != 2:
        raise ArgumentError(f"2SA->2DP needs exactly two distinct pool sizes, got k={part.k}")
    m = full_simplex_round(cfg, m_bound)
    inp = gen_input(cfg)
    virtual = _swap_protocol(cfg, inp, m)
    positions = swap_positions(cfg, m)
    full_dim = any(len(f) - 1 >= inp.dim for f in virtual.protocol_complex.facets)

    if projected_facets(inp, m, kind) > facet_cap:
        if not allow_symbolic:
            raise SizeError(f"div^{m} of the input exceeds the facet cap {facet_cap}")
        gathered = all(
            frozenset(PoolVertex(i, j, positions[(i, j)]) for i, j in (v.name for v in sigma))
            in virtual.xi(sigma)
            for sigma in inp.facets
        )
        report = ReductionReport("2SA->2DP", 2, m, bool(gathered and full_dim), TWO_SIZES_CITATION,
                                 mode="attribution", checks={"simulation": gathered, "full_simplex": full_dim})
        return Reduction(report, virtual=virtual)

    p_r = iterate_div(inp, m, kind, facet_cap)
    real = Protocol(inp, p_r, CarrierMap(inp, p_r, rule=lambda s: carried_by(p_r, s)))
    phi = VertexMap({w: PoolVertex(*anchor(w).name, positions[anchor(w).name]) for w in p_r.vertices},
                    p_r, virtual.protocol_complex)
    sim = check_simulation(phi, real.xi, virtual.xi)
    simplicial = is_simplicial(phi)

    task = agreement_task_over(inp, 2, (0, 1))
    delta = VertexMap({w: AgreementVertex(anchor(w).name, part.class_of_pool(anchor(w).pool))
                       for w in p_r.vertices}, p_r, task.output)
    decided = check_decision(delta, real.xi, task.delta)

    report = ReductionReport(
        "2SA->2DP", 2, m, bool(sim and simplicial and decided and full_dim), TWO_SIZES_CITATION,
        checks={"simulation": sim.ok, "phi_simplicial": simplicial.ok, "decision": decided.ok,
                "full_simplex": full_dim},
    )
    return Reduction(report, phi=phi, real=real, virtual=virtual, decision=delta, task=task)


def build_kdp_to_ksa(cfg: PoolConfig, facet_cap: int = DEFAULT_FACET_CAP) -> Reduction:
    """Place the k representative pools into disjoint cells of Ch(largest pool).

    The cells come from the backtracking search when the subdivision fits
    under ``facet_cap``; otherwise the explicit cyclic corner cells are used
    and each is checked against the chromatic simplex condition.
    """
    part = partition_input(cfg)
    k = part.k
    if k < 3:
        raise ArgumentError(f"KDP->KSA needs at least three distinct pool sizes, got k={k}")
    inp = gen_input(cfg)
    largest = part.classes[0][1][0]
    if cfg.sizes[largest] < k:
        raise ArgumentError("the largest pool must have at least k miners")
    facet_of_pool = {next(iter(f)).pool: f for f in inp.facets}
    big = facet_of_pool[largest]

    if ordered_bell(len(big)) <= facet_cap:
        codomain = chromatic(Complex([big]))
        cells = find_disjoint_facets(codomain, len(big) - 1, k)
        if cells is None:
            raise InternalError(f"Ch of a {len(big) - 1}-simplex has no {k} disjoint facets")
        mode = "search"
    else:
        cells = corner_facets(big)[:k]
        if not all(is_chromatic_simplex(c) for c in cells):
            raise InternalError("corner cells violate the chromatic condition")
        codomain = Complex(cells)
        mode = "corner-cells"

    reps = [facet_of_pool[pools[0]] for _, pools in part.classes]
    domain = Complex(reps)
    table = {}
    for rep, cell in zip(reps, cells):
        targets = sorted_vertices(cell)
        for v in sorted_vertices(rep):
            table[v] = targets[v.index]
    phi = VertexMap(table, domain, codomain)

    simplicial = is_simplicial(phi)
    injective = all(len(phi(rep)) == len(rep) for rep in reps)
    images = [phi(rep) for rep in reps]
    disjoint = pairwise_disjoint(images)
    verified = bool(simplicial and injective and disjoint)
    report = ReductionReport(
        "KDP->KSA", k, 1, verified, MANY_SIZES_CITATION, mode=mode,
        checks={"phi_simplicial": simplicial.ok, "injective_per_class": injective,
                "pairwise_disjoint": disjoint, "ksa_solvable": ksa_solvable(k)},
    )
    return Reduction(report, phi=phi, cells=list(cells))
