"""
How fast the graph empties
==========================

The fraction of vertices still unassigned after ``t`` phases should sit at
or below ``(1 - (cn)^(-1/k))^t``.  For a fixed alive set the join probability
is exactly ``e^(-beta)``, so the curve hugs the bound.
"""

from netdecomp import AlgoParams, generate
from netdecomp.verification import survival_curve

g = generate("gnp", 100, {"p": 0.1}, seed=3)

for k in (3, 7):
    curve = survival_curve(g, AlgoParams("basic", k=k, c=10.0), trials=300)
    print(f"k={k}  ({len(curve.points) - 1} phases, all within 3 sigma: {curve.passed})")
    print("   t  empirical   bound")
    for pt in curve.points[:6]:
        print(f"  {pt.phase:2d}   {pt.empirical:.4f}    {pt.bound:.4f}")
