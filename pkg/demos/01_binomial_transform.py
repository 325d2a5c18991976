"""Generalized binomial transforms: definition, algebra, and series summation.

Run with ``python demos/01_binomial_transform.py``.
"""

# %%
## The transform B_{a,b} F = n -> sum_k C(n,k) a^(n-k) b^k F_k
from fractions import Fraction

import numpy as np

from bindilog.transform import (
    TransformParams,
    binomial_transform,
    compose_params,
    euler_sum,
    invert_params,
)

F = [1, 1, 1, 1, 1, 1]
print("B_{1,1} of all ones:", binomial_transform(F, TransformParams(1, 1)).tolist())  # powers of two
print("B_{1,-1} of all ones:", binomial_transform(F, TransformParams(1, -1)).tolist())  # 1, 0, 0, ...

# %%
## Composition and inverse are parameter arithmetic
p = TransformParams(Fraction(1, 2), Fraction(3))
q = TransformParams(Fraction(-2), Fraction(1, 3))
print("compose(p, q) =", compose_params(p, q))
print("inverse(p)    =", invert_params(p))

G = [Fraction(k * k + 1, k + 2) for k in range(8)]
twice = binomial_transform(binomial_transform(G, q), p)
once = binomial_transform(G, compose_params(p, q))
print("exact composition holds:", twice.tolist() == once.tolist())
back = binomial_transform(binomial_transform(G, p), invert_params(p))
print("exact round trip holds: ", back.tolist() == G)

# %%
## Floating point: the laws hold to rounding, relative to the size of the sums involved
# Cancellation is the enemy: the inverse of (1.7, -0.6) is (2.83.., -1.66..), and the
# intermediate sums reach |B_{|a|,|b|}| |F| in size. Errors are small against that scale.
rng = np.random.default_rng(0)
F = rng.normal(size=15)
p = TransformParams(1.7, -0.6)
inv = invert_params(p)
back = binomial_transform(binomial_transform(F, p), inv)
scale = binomial_transform(
    binomial_transform(np.abs(F), TransformParams(abs(p.alpha), abs(p.beta))),
    TransformParams(abs(inv.alpha), abs(inv.beta)),
)
print(f"round trip: max error {np.max(np.abs(back - F)):.1e}, "
      f"max error relative to scale {np.max(np.abs(back - F) / scale):.1e}")

# %%
## Summing a slowly convergent series
# sum_k (-1)^k/(k+1) = ln 2 converges like 1/k. Summing B_{a,1}F / (a+1)^(k+1)
# instead, with a = 1, turns it into a geometric-rate series.
terms = [(-1) ** k / (k + 1) for k in range(80)]
value, diag = euler_sum(terms, 1.0, 2.0**-53)
print(f"ln 2 ~ {value!r} from {diag.terms_used} transformed terms (error {abs(value - np.log(2)):.1e})")
print(f"plain partial sum of 80 terms is off by {abs(sum(terms) - np.log(2)):.1e}")
