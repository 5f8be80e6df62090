import itertools
import math
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topo_pools import (
    ColorError,
    SizeError,
    barycentric,
    chromatic,
    components,
    find_disjoint_facets,
    iterate_div,
    make_complex,
    ordered_bell,
    standard_simplex,
)
from topo_pools.errors import ArgumentError
from topo_pools.subdivision import (
    SubdivVertex,
    carried_by,
    corner_facets,
    is_chromatic_simplex,
    ordered_set_partitions,
    pairwise_disjoint,
    projected_facets,
)

from conftest import small_complexes


@lru_cache(maxsize=None)
def chain_count(face):
    """Maximal inclusion chains ending at ``face``: drop one vertex at a time."""
    if len(face) == 1:
        return 1
    return sum(chain_count(face - {v}) for v in face)


def ranked_partition_count(n):
    """Ordered set partitions of an n-set as block-rank maps onto an initial segment."""
    count = 0
    for ranks in itertools.product(range(n), repeat=n):
        if set(ranks) == set(range(max(ranks) + 1)):
            count += 1
    return count


def brute_chromatic_facets(n):
    verts = range(n + 1)
    faces = [frozenset(c) for r in range(1, n + 2) for c in itertools.combinations(verts, r)]
    pool = [SubdivVertex(v, f) for f in faces for v in f]
    return {frozenset(c) for c in itertools.combinations(pool, n + 1) if is_chromatic_simplex(c)}


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_bary_facet_count_matches_chain_oracle(n):
    assert len(barycentric(standard_simplex(n)).facets) == chain_count(frozenset(range(n + 1)))
    assert chain_count(frozenset(range(n + 1))) == math.factorial(n + 1)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_chromatic_facet_count_matches_partition_oracle(n):
    assert len(chromatic(standard_simplex(n)).facets) == ranked_partition_count(n + 1)


def test_ordered_bell_values():
    assert [ordered_bell(n) for n in range(6)] == [1, 1, 3, 13, 75, 541]
    assert [len(list(ordered_set_partitions(range(n)))) for n in range(5)] == [1, 1, 3, 13, 75]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_chromatic_facets_match_combinatorial_condition(n):
    assert set(chromatic(standard_simplex(n)).facets) == brute_chromatic_facets(n)


def test_subdivision_examples():
    bary = barycentric(standard_simplex(1))
    assert len(bary.facets) == 2 and len(bary.vertices) == 3
    assert len(barycentric(standard_simplex(2)).facets) == 6
    assert len(barycentric(standard_simplex(3)).facets) == 24
    ch1 = chromatic(standard_simplex(1))
    assert len(ch1.facets) == 3
    assert len(chromatic(standard_simplex(2)).facets) == 13
    assert len(chromatic(standard_simplex(3)).facets) == 75


def test_iterate_div_examples():
    edge = standard_simplex(1)
    assert len(iterate_div(edge, 2, "bary").facets) == 4
    assert len(iterate_div(edge, 2, "chromatic").facets) == 9
    tri = standard_simplex(2)
    assert iterate_div(tri, 0, "bary") == tri
    assert iterate_div(tri, 0, "chromatic") == tri


def test_iterate_div_guards():
    with pytest.raises(SizeError):
        iterate_div(standard_simplex(3), 2, "chromatic", facet_cap=1000)
    with pytest.raises(ArgumentError):
        iterate_div(standard_simplex(1), 1, "cubical")
    with pytest.raises(ArgumentError):
        iterate_div(standard_simplex(1), -1)
    assert projected_facets(standard_simplex(3), 2, "chromatic") == 75 ** 2


def test_chromatic_rejects_repeated_colors():
    with pytest.raises(ColorError):
        chromatic(make_complex([{"a", "b"}]), coloring=lambda v: 0)


def test_shared_faces_are_identified():
    c = make_complex([{0, 1}, {1, 2}])
    ch = chromatic(c)
    assert len(ch.facets) == 6
    # the middle vertex of the original path appears once, not once per edge
    assert sum(1 for v in ch.vertices if v.carrier == frozenset({1})) == 1
    assert len(components(ch)) == 1


def test_find_disjoint_facets_examples():
    found = find_disjoint_facets(chromatic(standard_simplex(2)), 2, 3)
    assert found is not None and pairwise_disjoint(found)
    edges = find_disjoint_facets(chromatic(standard_simplex(1)), 1, 2)
    corners = {frozenset({SubdivVertex(0, frozenset({0})), SubdivVertex(1, frozenset({0, 1}))}),
               frozenset({SubdivVertex(1, frozenset({1})), SubdivVertex(0, frozenset({0, 1}))})}
    assert set(edges) == corners
    assert find_disjoint_facets(barycentric(standard_simplex(2)), 2, 3) is None


def test_find_disjoint_facets_arguments():
    ch = chromatic(standard_simplex(1))
    with pytest.raises(ArgumentError):
        find_disjoint_facets(ch, 1, 0)
    with pytest.raises(ArgumentError):
        find_disjoint_facets(ch, 3, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_corner_facets_are_disjoint_chromatic_cells(n):
    cells = corner_facets(range(n + 1))
    assert len(cells) == n + 1 and pairwise_disjoint(cells)
    assert all(is_chromatic_simplex(c) and len(c) == n + 1 for c in cells)
    if n <= 3:
        assert set(cells) <= set(chromatic(standard_simplex(n)).facets)


def test_carried_by():
    ch = chromatic(standard_simplex(2))
    edge = carried_by(ch, [0, 1])
    assert len(edge.facets) == 3
    assert all(v.carrier <= {0, 1} for v in edge.vertices)
    assert carried_by(ch, [7]) is None


def test_vertex_labels_and_payload():
    v = SubdivVertex(1, frozenset({0, 1}))
    assert v.label == "(1;{0,1})"
    assert v.payload() == {"color": "1", "carrier": ["0", "1"]}
    b = SubdivVertex(None, frozenset({0}))
    assert b.label == "{0}" and b.chromatic_color is None


@settings(max_examples=25, deadline=None)
@given(small_complexes(max_vertex=5, max_facets=3), st.sampled_from(["bary", "chromatic"]))
def test_subdivision_preserves_components_and_purity(c, kind):
    sub = iterate_div(c, 1, kind)
    assert len(components(sub)) == len(components(c))
    assert len(sub.facets) == projected_facets(c, 1, kind)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_chromatic_facets_carry_every_color_once(n):
    for f in chromatic(standard_simplex(n)).facets:
        assert sorted(v.color for v in f) == list(range(n + 1))
    for f in barycentric(standard_simplex(n)).facets:
        assert len(f) == n + 1


def test_iterated_chromatic_colors_trace_to_input():
    ch2 = iterate_div(standard_simplex(1), 2, "chromatic")
    for f in ch2.facets:
        assert sorted(v.chromatic_color for v in f) == [0, 1]
