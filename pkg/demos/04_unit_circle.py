"""Cost and conditioning of Li2 around the unit circle.

Run with ``python demos/04_unit_circle.py [out.csv]``. The same data is
produced by ``bindilog sweep --out out.csv``.
"""

# %%
import collections
import sys

import numpy as np

from bindilog.cli import sweep_rows, write_sweep_csv

rows = sweep_rows(points=720, radius=1.0)
terms = np.array([r.terms for r in rows])
cond = np.array([r.cond for r in rows])
theta = np.array([r.theta for r in rows])

# %%
## Terms summed per point
print(f"terms: max {terms.max()}, mean {terms.mean():.1f}, min {terms.min()}")
print("identity use:", dict(collections.Counter(r.identity for r in rows)))

# %%
## Condition number of the series sum
i = int(np.argmax(cond))
print(f"condition number: max {cond[i]:.4f} at theta = {theta[i]:.4f} (pi/3 = {np.pi / 3:.4f})")

# %%
## A coarse text profile of terms against theta
for lo in range(0, 720, 60):
    chunk = terms[lo:lo + 60]
    print(f"theta ~ {theta[min(lo, len(theta) - 1)]:5.2f}  {'#' * int(chunk.max())}")

if len(sys.argv) > 1:
    write_sweep_csv(rows, sys.argv[1])
    print("wrote", sys.argv[1])
