"""Evaluating Li2 with the accelerated series.

Run with ``python demos/03_dilogarithm.py``.
"""

# %%
## Point evaluations with diagnostics
import cmath
import math

import mpmath

from bindilog import EXTENDED, Extended, dispatch, li2, optimal_alpha
from bindilog.dilog import w_prefix

for x in (-1.0, 0.5, 0.9, -100.0, 0.3 + 0.8j, cmath.exp(1j * math.pi / 3)):
    r = li2(x)
    print(f"x={x!s:>28}  Li2={r.value!s:>44}  terms={r.terms_used:3d}  "
          f"cond={r.condition_number:.3f}  via={r.identity_used}")

# %%
## How dispatch picks an identity: smallest rate |z/(2-z)| of the mapped argument
rep = dispatch(0.9)
print(f"x=0.9 rates: direct {rep.rate_direct:.3f}, reflection {rep.rate_reflection:.3f}, "
      f"reciprocal {rep.rate_reciprocal}")

# %%
## The summand decays at rate |x/(x-2)|
W = w_prefix(-1.0, 12)
print("W ratios at x=-1:", [round(W[k + 1] / W[k], 4) for k in range(6, 11)], "-> 1/3")

# %%
## The branch cut needs an explicit side
for side in ("above", "below"):
    print(f"Li2(2 {side}) =", li2(2.0, on_cut=side).value)

# %%
## Extended precision uses the same code path
r = li2(-1, precision=Extended(bits=200))
print("Li2(-1) at 200 bits:", mpmath.nstr(r.value, 50), "bound", mpmath.nstr(r.error_bound, 3))
with mpmath.workprec(200):
    print("-pi^2/12           :", mpmath.nstr(-mpmath.pi**2 / 12, 50))
print("default extended   :", li2(0.25 + 0.5j, precision=EXTENDED).value)

# %%
## A complex transform parameter reaches points the real choice cannot
x = 0.3 + 0.8j
alpha, rate = optimal_alpha(x)
print(f"x={x}: best alpha {alpha:.4f} gives rate {rate:.4f}; alpha=-x/2 gives {abs(x / (x - 2)):.4f}")
