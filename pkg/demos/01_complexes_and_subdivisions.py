# %% [markdown]
# # Complexes and subdivisions
#
# Complexes are stored by their facets; faces are implied. This walk-through
# builds a few small complexes, subdivides them and searches the chromatic
# subdivision for disjoint full-dimensional cells.

# %%
from topo_pools import (
    barycentric,
    chromatic,
    components,
    find_disjoint_facets,
    iterate_div,
    join,
    make_complex,
    skeleton,
    standard_simplex,
)
from topo_pools.export import to_dot

tri = standard_simplex(2)
print(tri, "edges:", len(skeleton(tri, 1).facets))
print("vertex * edge:", join(make_complex([{"v"}]), make_complex([{"a", "b"}])))
print("components of two disjoint edges:", len(components(make_complex([{0, 1}, {2, 3}]))))

# %% [markdown]
# Barycentric subdivision of the n-simplex has (n+1)! facets; the chromatic
# one has as many facets as there are ordered set partitions of n+1 colors.

# %%
for n in range(4):
    s = standard_simplex(n)
    print(n, len(barycentric(s).facets), len(chromatic(s).facets))

# %%
print("Ch^2 of an edge:", len(iterate_div(standard_simplex(1), 2).facets), "edges")

# %% [markdown]
# Ch of the n-simplex holds n+1 pairwise disjoint n-cells; a barycentric
# subdivision does not, since every facet contains the barycenter.

# %%
for n in (1, 2, 3):
    cells = find_disjoint_facets(chromatic(standard_simplex(n)), n, n + 1)
    print(n, [sorted(v.label for v in c) for c in cells][:2], "...")
print("Bary(triangle):", find_disjoint_facets(barycentric(tri), 2, 3))

# %%
print(to_dot(chromatic(standard_simplex(1)), "ch_edge"))
