"""Pushing a p-recursive recurrence through the binomial transform.

Run with ``python demos/02_recurrence_closure.py``.
"""

# %%
## k^p C(n,k) as a combination of C(n-j,k)
from fractions import Fraction

from bindilog.recurrence import (
    annihilation_residual,
    binomial_reduction,
    generate_from_recurrence,
    q_recurrence,
    transform_recurrence,
)
from bindilog.transform import TransformParams, binomial_transform

for p in range(4):
    print(f"p={p}:", binomial_reduction(p))

# %%
## The dilogarithm summand Q[k] = x^(k+1)/(k+1)^2
# Q obeys (n+2)^2 Q[n+1] = x (n+1)^2 Q[n]. Its transform obeys an order-3 recurrence.
x, alpha = Fraction(3), Fraction(2)
rec = q_recurrence(x)
out = transform_recurrence(rec, TransformParams(alpha, 1))
print("order", out.order, "valid from n =", out.offset)
for j, poly in enumerate(out.coeffs):
    print(f"  P{j}(n) coefficients (ascending):", [str(c) for c in poly.coeffs])

# %%
## Check by annihilation, in exact rational arithmetic
Q = generate_from_recurrence(rec, [x], 30).tolist()
G = binomial_transform(Q, TransformParams(alpha, 1)).tolist()
print("residual on B Q:", annihilation_residual(out, G))

# %%
## Two closed-form solutions: a^n/(n+1) and a^n H(n+1)/(n+1)
f1 = [alpha**n / (n + 1) for n in range(30)]
harmonic = [sum(Fraction(1, k + 1) for k in range(n + 1)) for n in range(30)]
f2 = [f * h for f, h in zip(f1, harmonic)]
print("residuals:", annihilation_residual(out, f1), annihilation_residual(out, f2))

# %%
## The third solution grows like (a + x)^n / n^2 and dominates
ratios = [float(G[n + 1] / G[n]) for n in (5, 10, 20, 28)]
print("G[n+1]/G[n]:", [round(r, 3) for r in ratios], "-> |a + x| =", float(alpha + x))
