"""Sequence prefixes and the generalized binomial transform.

A sequence prefix is a one-dimensional numpy array ``F[0..N]``. Element
types are left alone: floats and complex numbers give numeric arrays,
while ``Fraction`` or mpmath values give object arrays, so every
operation here also works in exact or extended arithmetic.

The transform with parameters ``(alpha, beta)`` is::

    (B F)[n] = sum_{k=0}^{n} C(n, k) alpha**(n-k) beta**k F[k]
"""

from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from .errors import DomainError, InsufficientPrefixError, NotConvergedError, NotInvertibleError
from .numerics import FLOAT64, KahanAccumulator

__all__ = [
    "TransformParams",
    "IDENTITY",
    "as_prefix",
    "backward_shift",
    "forward_shift",
    "index_multiply",
    "binomial_transform",
    "compose_params",
    "invert_params",
    "adjoint_transform",
    "euler_sum",
    "SumDiagnostics",
]


@dataclass(frozen=True)
class TransformParams:
    alpha: Any
    beta: Any = 1


IDENTITY = TransformParams(0, 1)


def as_prefix(values):
    """Return ``values`` as a non-empty 1-D array, keeping exotic scalars as objects."""
    values = list(values)
    if not values:
        raise InsufficientPrefixError("a sequence prefix needs at least one term")
    if all(isinstance(v, (bool, int, float, complex, np.number)) for v in values):
        arr = np.asarray(values)
        if arr.dtype.kind in "biu":
            arr = arr.astype(object)
        return arr
    arr = np.empty(len(values), dtype=object)
    arr[:] = values
    return arr


def _zero_like(v):
    return v * 0


def backward_shift(F):
    F = as_prefix(F)
    out = F.copy()
    out[1:] = F[:-1]
    out[0] = _zero_like(F[0])
    return out


def forward_shift(F):
    F = as_prefix(F)
    if len(F) < 2:
        raise InsufficientPrefixError("forward shift of a length-1 prefix is empty")
    return F[1:].copy()


def index_multiply(F):
    F = as_prefix(F)
    return as_prefix([n * F[n] for n in range(len(F))])


def _powers(z, count):
    out = [z**0]
    for _ in range(count - 1):
        out.append(out[-1] * z)
    return out


def binomial_transform(F, params):
    """Apply ``B_{alpha, beta}`` to a prefix.

    Direct O(N**2) summation. Binomial coefficients come from exact
    integer Pascal rows, so they add no rounding of their own.

    >>> binomial_transform([1.0, 1.0, 1.0], TransformParams(1.0, 1.0)).tolist()
    [1.0, 2.0, 4.0]
    """
    F = as_prefix(F)
    N = len(F)
    apow = _powers(params.alpha, N)
    bpow = _powers(params.beta, N)
    weighted = [bpow[k] * F[k] for k in range(N)]
    out = []
    row = [1]
    for n in range(N):
        if n:
            row = [1] + [row[k - 1] + row[k] for k in range(1, n)] + [1]
        acc = apow[n] * weighted[0]
        for k in range(1, n + 1):
            acc = acc + row[k] * apow[n - k] * weighted[k]
        out.append(acc)
    return as_prefix(out)


def compose_params(p, q):
    """Parameters of ``B_p B_q`` (apply ``q`` first)."""
    return TransformParams(p.alpha + q.alpha * p.beta, p.beta * q.beta)


def invert_params(p):
    if p.beta == 0:
        raise NotInvertibleError("binomial transform with beta = 0 is not invertible")
    return TransformParams(-p.alpha / p.beta, 1 / p.beta)


def adjoint_transform(F, params, n_max):
    """Truncated adjoint ``sum_{k=n}^{N} C(k, n) alpha**(k-n) beta**n F[k]``.

    The true adjoint is an infinite tail sum; the caller is responsible for
    supplying a prefix long enough that the neglected tail is harmless.
    """
    F = as_prefix(F)
    N = len(F)
    if n_max >= N:
        raise InsufficientPrefixError(f"n_max={n_max} needs a prefix longer than {N}")
    apow = _powers(params.alpha, N)
    bpow = _powers(params.beta, n_max + 1)
    out = []
    for n in range(n_max + 1):
        c = 1
        acc = F[n]
        for k in range(n + 1, N):
            c = c * k // (k - n)
            acc = acc + c * apow[k - n] * F[k]
        out.append(bpow[n] * acc)
    return as_prefix(out)


class SumDiagnostics(NamedTuple):
    terms_used: int
    condition_number: Any
    error_bound: Any


def euler_sum(F, alpha, tol, precision=FLOAT64):
    """Sum ``F`` through its binomial transform with ``beta = 1``.

    Evaluates ``sum_k (B_{alpha,1} F)[k] / (alpha + 1)**(k + 1)`` with
    compensated summation, stopping once two consecutive terms are at
    most ``tol`` times the running sum. Returns ``(value, diagnostics)``.
    """
    if alpha + 1 == 0:
        raise DomainError("divergent weight: alpha = -1")
    G = binomial_transform(F, TransformParams(alpha, 1))
    acc = KahanAccumulator(precision)
    w = 1 / (alpha + 1)
    weight = w
    small = 0
    for g in G.tolist():
        term = g * weight
        acc.add(term)
        weight = weight * w
        small = small + 1 if abs(term) <= tol * abs(acc.value) else 0
        if small == 2:
            break
    diag = _diagnostics(acc)
    if small < 2:
        raise NotConvergedError("prefix exhausted before convergence", (acc.value, diag))
    return acc.value, diag


def _diagnostics(acc):
    if acc.value == 0:
        return SumDiagnostics(acc.count, 1.0 if acc.abs_total == 0 else float("inf"), acc.abs_total * 0)
    return SumDiagnostics(acc.count, acc.condition_number(), acc.error_bound())
