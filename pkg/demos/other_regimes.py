"""
Trading colours for diameter
============================

``staged`` lowers beta as the graph empties and spends about
``4k (cn)^(1/k)`` colours; ``inverse`` fixes the number of colours to lambda
and lets the cluster diameter grow instead.
"""

import math

from netdecomp import AlgoParams, block_bound, build_schedule, decompose, generate, strong_diameter
from netdecomp.verification import staged_survival

g = generate("gnp", 200, {"p": 0.05}, seed=7)

staged = AlgoParams("staged", k=math.ceil(math.log(g.n)), c=20.0)
sched = build_schedule(staged, g.n)
print("staged:", sched.stage_count, "stages,", sched.max_phases, "phases, budget", round(block_bound(staged, g.n), 1))
for seed in range(3):
    d, stats = decompose(g, AlgoParams("staged", k=staged.k, c=20.0, seed=seed))
    print("  seed", seed, "blocks", d.blocks_used, "success", d.success)

curve = staged_survival(g, staged, trials=100)
print("  alive at each stage start vs e^(-2i):")
print("  ", [f"{p.empirical:.3f}/{p.bound:.3f}" for p in curve.points[:4]])

for lam in (1, 2, 3, 4):
    params = AlgoParams("inverse", lam=lam, c=10.0, seed=1)
    d, stats = decompose(g, params)
    diam = max((strong_diameter(g, cl.members) for cl in d.clusters), default=0)
    print(f"inverse lambda={lam}: k_eff={build_schedule(params, g.n).k_eff:4d}  blocks={d.blocks_used}  max diameter={diam}  success={d.success}")
