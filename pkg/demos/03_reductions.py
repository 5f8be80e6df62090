# %% [markdown]
# # Reductions between agreement and pooling
#
# Two distinct pool sizes: an iterated-subdivision protocol for 2-set
# agreement is simulated by the swap protocol. Three or more distinct sizes:
# the representative pools fit into disjoint cells of one chromatic
# subdivision, so an equilibrium would solve k-set agreement for k >= 3.

# %%
from topo_pools import build_2sa_to_2dp, build_kdp_to_ksa, gen_ksa, ksa_solvable
from topo_pools.pool_tasks import PoolConfig

task = gen_ksa(2, 2, [0, 1])
print("2-set agreement output:", task.output)
print("solvable for k = 1, 2, 3:", [ksa_solvable(k) for k in (1, 2, 3)])

# %%
red = build_2sa_to_2dp(PoolConfig((2, 1, 1)))
print(red.report.to_dict())
print("subdivided protocol complex:", red.real.protocol_complex)
print("swap protocol complex:", red.virtual.protocol_complex)

# %% [markdown]
# Large configurations switch to the attribution check, which only inspects
# which miners each subdivision vertex descends from.

# %%
print(build_2sa_to_2dp(PoolConfig((9, 9, 4)), allow_symbolic=True).report.to_dict())

# %%
red = build_kdp_to_ksa(PoolConfig((5, 4, 3, 2)))
print(red.report.to_dict())
for cell in red.cells:
    print(sorted(v.label for v in cell))
