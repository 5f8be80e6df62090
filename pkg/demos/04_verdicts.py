# %% [markdown]
# # Equilibrium verdicts
#
# The verdict depends only on the number k of distinct pool sizes: k <= 2
# admits an equilibrium and k >= 3 does not. Each verdict carries a
# certificate that can be checked on its own.

# %%
from topo_pools import brute_force_equilibria, certify_connected_image, equilibrium_verdict
from topo_pools.pool_tasks import PoolConfig

for sizes in [(3, 3), (3, 3, 3), (3, 2), (4, 2, 2), (4, 3, 2), (5, 4, 3, 2)]:
    v = equilibrium_verdict(PoolConfig(sizes))
    print(sizes, v.k, v.decision, v.certificate["kind"])

# %% [markdown]
# Within the miner cap the brute-force oracle lists every name-preserving map
# into a single output facet; every one of them has a connected image.

# %%
maps = brute_force_equilibria(PoolConfig((2, 2)))
print(len(maps), "equilibria for (2,2)")
print(certify_connected_image(maps[0]))
