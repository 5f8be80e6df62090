import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topo_pools import (
    ConfigError,
    DomainError,
    NotEqualPoolError,
    SizeError,
    components,
    gen_input,
    gen_output,
    is_simplicial,
    merge_maps,
    no_stay_ok,
    part_of,
    partition_input,
    restrict_map,
    rotation_map,
    swap_m,
    task_carrier,
)
from topo_pools.complex_core import Complex, order_key
from topo_pools.errors import ArgumentError, BoundExceeded
from topo_pools.export import dumps
from topo_pools.pool_tasks import (
    OutputComplex,
    PoolConfig,
    PoolVertex,
    assignment_dict,
    full_simplex_round,
    move_counts,
    names_of,
    output_dimension,
    surjection_count,
)

from conftest import pool_sizes, size_vectors


def assignment_oracle(sizes, no_stay=True):
    names = [(i, j) for i, s in enumerate(sizes) for j in range(s)]
    q = len(sizes)
    out = set()
    for views in itertools.product(range(q), repeat=len(names)):
        if set(views) != set(range(q)):
            continue
        if no_stay and all(v == i for v, (i, _) in zip(views, names)):
            continue
        out.add(frozenset(zip(names, views)))
    return out


def facet_assignment(f):
    return frozenset((v.name, v.view) for v in f)


def simulate_swaps(sizes, rounds):
    """Step the schedule one round at a time, tracking positions and move counts."""
    q = len(sizes)
    class_pools = {s: sum(1 for t in sizes if t == s) for s in sizes}
    pos = {(i, j): i for i, s in enumerate(sizes) for j in range(s)}
    moved = dict.fromkeys(pos, 0)
    for t in range(1, rounds + 1):
        for (i, j) in pos:
            if j % class_pools[sizes[i]] == t % class_pools[sizes[i]]:
                pos[(i, j)] = (pos[(i, j)] + 1) % q
                moved[(i, j)] += 1
    return pos, moved


def least_gathering_round(sizes, bound):
    for m in range(bound + 1):
        pos, moved = simulate_swaps(sizes, m)
        if min(moved.values()) >= 1 and all(
            len({pos[(i, j)] for j in range(s)}) == 1 for i, s in enumerate(sizes)
        ):
            return m
    return None


def test_gen_input_examples():
    c = gen_input(PoolConfig((2, 2)))
    assert len(c.facets) == 2 and len(c.vertices) == 4
    c = gen_input(PoolConfig((3, 2, 2)))
    assert sorted(len(f) for f in c.facets) == [2, 2, 3]
    assert len(components(c)) == 3
    with pytest.raises(ConfigError):
        PoolConfig((2,))
    with pytest.raises(ConfigError):
        PoolConfig((2, 0))
    with pytest.raises(ConfigError):
        PoolConfig.parse("2,x")


def test_config_parsing():
    assert PoolConfig.parse("3, 2,2").sizes == (3, 2, 2)
    assert PoolConfig.from_json('{"sizes": [4, 3]}').sizes == (4, 3)
    with pytest.raises(ConfigError):
        PoolConfig.from_json("[1, 2]")


def test_gen_output_two_pools():
    out = gen_output(PoolConfig((2, 2)))
    facets = list(out.iter_facets())
    assert len(facets) == out.facet_count == 13 == 2 ** 4 - 2 - 1
    assert {len(f) - 1 for f in facets} == {3}
    assert {facet_assignment(f) for f in facets} == assignment_oracle((2, 2))


def test_dimension_formulas():
    # equal pools of n+1 miners: N = q(n+1) - 1
    assert output_dimension(PoolConfig((2, 2))) == 2 * 2 - 1 == 3
    # one pool of n+1 and q-1 pools of m+1: N = n + (q-1)(m+1)
    assert output_dimension(PoolConfig((3, 2))) == 2 + 1 * 2 == 4
    assert gen_output(PoolConfig((3, 2))).dim == 4


@pytest.mark.parametrize("sizes", [(1, 1), (2, 1), (2, 2), (2, 1, 1), (3, 2), (2, 2, 1)])
def test_output_matches_enumeration_oracle(sizes):
    for no_stay in (True, False):
        out = OutputComplex(PoolConfig(sizes), no_stay=no_stay)
        facets = list(out.iter_facets())
        assert {facet_assignment(f) for f in facets} == assignment_oracle(sizes, no_stay)
        assert out.facet_count == len(facets)
        for f in facets:
            assert f in out and len({v.facet_tag for v in f}) == 1


def test_output_facets_are_vertex_disjoint():
    facets = list(gen_output(PoolConfig((2, 1, 1))).iter_facets())
    for a, b in itertools.combinations(facets, 2):
        assert a.isdisjoint(b)


def test_output_membership_rejects_mixed_and_foreign_vertices():
    cfg = PoolConfig((2, 2))
    out = gen_output(cfg)
    a, b = itertools.islice(out.iter_facets(), 2)
    va, vb = min(a, key=order_key), max(b, key=order_key)
    assert frozenset([va]) in out
    assert frozenset([va, vb]) not in out
    assert frozenset([PoolVertex(0, 0)]) not in out
    stay = out.encode([0, 0, 1, 1])
    assert frozenset([PoolVertex(0, 0, 0, stay)]) not in out
    assert frozenset([PoolVertex(0, 0, 1, 99)]) not in out
    with pytest.raises(DomainError):
        out.facet_for({(0, 0): 0, (0, 1): 0, (1, 0): 1, (1, 1): 1})


def test_output_cap():
    with pytest.raises(SizeError):
        gen_output(PoolConfig((7, 6)))
    assert gen_output(PoolConfig((7, 6)), miner_cap=None).facet_count == 2 ** 13 - 3


@given(st.integers(1, 7), st.integers(1, 4))
def test_surjection_count_matches_brute_force(n, q):
    brute = sum(1 for f in itertools.product(range(q), repeat=n) if len(set(f)) == q)
    assert surjection_count(n, q) == brute


def test_no_stay_examples():
    cfg = PoolConfig((2, 2))
    stay = frozenset(PoolVertex(i, j, i) for i, j in cfg.names)
    assert not no_stay_ok(stay)
    rot = frozenset(PoolVertex(i, j, 1 - i) for i, j in cfg.names)
    assert no_stay_ok(rot)
    one = frozenset(PoolVertex(i, j, 1 if (i, j) == (0, 0) else i) for i, j in cfg.names)
    assert no_stay_ok(one)
    with pytest.raises(DomainError):
        no_stay_ok([PoolVertex(0, 0)])


def test_task_carrier_examples():
    cfg = PoolConfig((2, 2))
    delta = task_carrier(cfg)
    out = gen_output(cfg)
    pool0 = gen_input(cfg).facets[0]
    assert delta(pool0).is_subcomplex_of(out)
    faces = list(delta(pool0).iter_facets())
    assert len(faces) == 13  # one tagged face per output facet
    assert len({facet_assignment(f) for f in faces}) == 4  # every view pair occurs
    vertex = frozenset([min(pool0, key=order_key)])
    assert delta(vertex).is_subcomplex_of(delta(pool0))
    with pytest.raises(DomainError):
        delta([PoolVertex(0, 0), PoolVertex(1, 0)])


@pytest.mark.parametrize("sizes", [(2, 2), (2, 1, 1), (3, 2), (1, 1, 1)])
def test_restricted_output_fast_path_matches_materialized(sizes):
    cfg = PoolConfig(sizes)
    out = gen_output(cfg)
    explicit_out = out.materialize()
    delta = task_carrier(cfg)
    inp = gen_input(cfg)
    faces = [frozenset(c) for f in inp.facets for r in range(1, len(f) + 1) for c in itertools.combinations(f, r)]
    explicit = {s: delta(s).materialize() for s in faces}
    for s in faces:
        names = names_of(s)
        # explicit oracle: faces of the materialized output on the same miners
        expected = Complex({frozenset(v for v in f if v.name in names) for f in explicit_out.facets})
        assert explicit[s] == expected
        assert delta(s).is_subcomplex_of(out) and explicit[s].is_subcomplex_of(explicit_out)
        for t in faces:
            fast = delta(s).is_subcomplex_of(delta(t))
            slow = all(f in explicit[t] for f in explicit[s].facets)
            assert fast == slow


def test_rotation_map_examples():
    m = rotation_map(PoolConfig((2, 2)))
    for v, w in m.table.items():
        assert w.view == 1 - v.pool and w.name == v.name
    target = frozenset().union(*m.image())
    assert no_stay_ok(target) and target in gen_output(PoolConfig((2, 2)))
    m3 = rotation_map(PoolConfig((3, 3, 3)))
    assert all(w.view == (v.pool + 1) % 3 for v, w in m3.table.items())
    assert len({w.facet_tag for w in m3.table.values()}) == 1
    with pytest.raises(NotEqualPoolError):
        rotation_map(PoolConfig((3, 2)))


@given(st.integers(2, 4), st.integers(1, 3))
def test_rotation_map_properties(q, n):
    m = rotation_map(PoolConfig((n,) * q))
    assert is_simplicial(m)
    assert all(v.name == w.name for v, w in m.table.items())
    target = frozenset().union(*m.image())
    assert len(target) == n * q and target in m.codomain and no_stay_ok(target)


def test_restrict_and_merge():
    m = rotation_map(PoolConfig((2, 2)))
    parts = [restrict_map(m, i) for i in range(2)]
    assert len(parts[0]) == 2
    assert all(is_simplicial(p) for p in parts)
    assert merge_maps(parts) == m
    with pytest.raises(ArgumentError):
        restrict_map(m, 2)
    with pytest.raises(ArgumentError):
        merge_maps([])


def test_partition_examples():
    p = partition_input(PoolConfig((3, 2, 2)))
    assert p.k == 2 and p.classes == ((3, (0,)), (2, (1, 2)))
    assert partition_input(PoolConfig((3, 3, 3))).k == 1
    assert partition_input(PoolConfig((4, 3, 2))).k == 3
    assert p.to_dict() == {"k": 2, "classes": [{"size": 3, "pools": [0]}, {"size": 2, "pools": [1, 2]}]}


@given(pool_sizes)
def test_partition_properties(sizes):
    p = partition_input(PoolConfig(sizes))
    assert len(set(p.sizes)) == p.k <= len(sizes)
    assert sorted(i for _, pools in p.classes for i in pools) == list(range(len(sizes)))
    assert all(sizes[i] == s for s, pools in p.classes for i in pools)


def test_part_of_examples():
    cfg = PoolConfig((3, 2, 2))
    p = partition_input(cfg)
    tri, e1, _ = sorted(gen_input(cfg).facets, key=len, reverse=True)
    assert part_of(tri, p) == 0
    assert part_of(e1, p) == 1
    with pytest.raises(DomainError):
        part_of([PoolVertex(5, j) for j in range(4)], p)


def test_swap_examples():
    cfg = PoolConfig((2, 2))
    m0 = swap_m(cfg, 0)
    assert [sorted((v.name, v.view) for v in f) for f in m0.facets] == \
        [[((0, 0), 0), ((0, 1), 0)], [((1, 0), 1), ((1, 1), 1)]]
    counts = move_counts(cfg, 1)
    assert all(counts[(i, j)] == (1 if j % 2 == 1 else 0) for i, j in cfg.names)
    assert dumps(swap_m(cfg, 3)) == dumps(swap_m(cfg, 3))


@given(pool_sizes, st.integers(0, 6))
def test_swap_matches_step_simulation(sizes, m):
    cfg = PoolConfig(sizes)
    pos, moved = simulate_swaps(sizes, m)
    assert move_counts(cfg, m) == moved
    assert {(v.name, v.view) for v in swap_m(cfg, m).vertices} == set(pos.items())


@pytest.mark.parametrize("sizes,expected", [((2, 1, 1), 2), ((2, 2, 1, 1), 2)])
def test_full_simplex_round_regression(sizes, expected):
    cfg = PoolConfig(sizes)
    assert least_gathering_round(sizes, 64) == expected
    m = full_simplex_round(cfg, 64)
    assert m == expected
    assert swap_m(cfg, m).dim >= gen_input(cfg).dim


def test_full_simplex_round_bound():
    with pytest.raises(BoundExceeded):
        full_simplex_round(PoolConfig((2, 1, 1)), 1)
    with pytest.raises(ArgumentError):
        move_counts(PoolConfig((2, 2)), -1)


@settings(max_examples=40)
@given(pool_sizes)
def test_full_simplex_round_matches_simulation(sizes):
    assert full_simplex_round(PoolConfig(sizes), 64) == least_gathering_round(sizes, 64)


def test_labels_and_payloads():
    v = PoolVertex(0, 1, 1, 5)
    assert v.label == "p1^1|2#5"
    assert PoolVertex(1, 0).label == "p2^0|⊥"
    assert PoolVertex.from_payload(v.payload()) == v
    f = gen_output(PoolConfig((1, 1))).facet(2)
    assert assignment_dict(f) == {"facet": 2, "assignment": {"p1^0": 2, "p2^0": 1}}


@pytest.mark.parametrize("sizes", size_vectors(5))
def test_input_components_and_dims(sizes):
    c = gen_input(PoolConfig(sizes))
    comps = components(c)
    assert len(comps) == len(sizes)
    assert sorted(comp.dim for comp in comps) == sorted(s - 1 for s in sizes)
