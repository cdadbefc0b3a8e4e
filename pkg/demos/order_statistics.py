"""
The gap between the two best shifted values
===========================================

Draw q exponentials, subtract fixed offsets, and ask how often the best two
end up within 1 of each other.  That probability never exceeds
``1 - e^(-beta)``, and equals it for a single draw against 0.
"""

import numpy as np

from netdecomp.verification import check_order_statistics

rng = np.random.default_rng(1)
for beta in (0.1, 0.5, 1.0):
    row = []
    for q in (1, 2, 5, 20):
        d = [0.0] if q == 1 else np.sort(rng.uniform(0, 10, q))
        res = check_order_statistics(q, d, beta, trials=50_000, seed=q)
        row.append(f"q={q}: {res.frequency:.4f}")
    print(f"beta={beta}  bound {1 - np.exp(-beta):.4f}  ", "  ".join(row))
