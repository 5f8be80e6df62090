# %% [markdown]
# # The pooling task
#
# Each pool is one simplex of the input complex. An output facet assigns every
# miner a pool, must reach every pool, and must move at least one miner.

# %%
from topo_pools import (
    check_monotonic,
    components,
    gen_input,
    gen_output,
    is_simplicial,
    partition_input,
    rotation_map,
    swap_m,
    task_carrier,
)
from topo_pools.pool_tasks import PoolConfig, assignment_dict, full_simplex_round

cfg = PoolConfig.parse("2,2")
inp, out = gen_input(cfg), gen_output(cfg)
print(inp, "components:", len(components(inp)))
print("output facets:", out.facet_count, "dimension:", out.dim)
print(assignment_dict(next(out.iter_facets())))

# %% [markdown]
# The carrier map sends an input face to the output faces on the same miners.
# It is monotone, which the checker confirms exhaustively.

# %%
print("monotone:", bool(check_monotonic(task_carrier(cfg), cfg.total)))

# %% [markdown]
# With equal pools every miner can move to the next pool in cyclic order.
# The rotation map is simplicial and lands in a single output facet.

# %%
rot = rotation_map(PoolConfig((3, 3, 3)))
print("simplicial:", bool(is_simplicial(rot)))
print(assignment_dict(frozenset().union(*rot.image())))

# %% [markdown]
# Unequal pools are grouped by size. The swap schedule moves one cohort of
# each size class per round until every pool sits together again.

# %%
cfg = PoolConfig((2, 2, 1, 1))
print(partition_input(cfg).to_dict())
m = full_simplex_round(cfg, 64)
print("first full round:", m)
for f in swap_m(cfg, m).facets:
    print(sorted(v.label for v in f))
