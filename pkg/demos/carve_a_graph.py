"""
Carving a random graph into low-diameter blocks
===============================================

One run of the basic regime on a sparse random graph, followed by a look at
what came out.
"""

import numpy as np

from netdecomp import AlgoParams, block_bound, decompose, diameter_bound, generate, strong_diameter, validate

g = generate("gnp", 500, {"p": 0.02}, seed=1)
print(g.n, "vertices,", g.edge_count, "edges")

# k defaults to ceil(ln(cn)); c controls the failure probability
params = AlgoParams("basic", c=10.0, seed=42).resolved(g.n)
print("k =", params.k, " block budget =", block_bound(params, g.n), " diameter bound =", diameter_bound(params, g.n))

d, stats = decompose(g, params)
print("blocks used:", d.blocks_used, " clusters:", len(d.clusters), " success:", d.success)
print("rounds:", stats.total_rounds, " words per edge per round:", stats.max_words_per_edge)

# cluster sizes and diameters
sizes = np.array([len(cl.members) for cl in d.clusters])
diams = np.array([strong_diameter(g, cl.members) for cl in d.clusters])
print("cluster size  min/median/max:", sizes.min(), int(np.median(sizes)), sizes.max())
print("strong diam   min/median/max:", diams.min(), int(np.median(diams)), diams.max())

# most of the graph goes in the first few phases
print("survivors after each phase:", stats.survivors[:8], "...")

report = validate(g, d, params, stats)
for check in report.checks:
    print(f"  {check.name:18s} {'ok' if check.passed else 'FAILED'}  {check.value} vs {check.bound}")
