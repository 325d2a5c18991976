"""Linear recurrences with polynomial coefficients and their binomial transforms.

A :class:`Recurrence` of order ``r`` asserts::

    sum_{j=0}^{r} P_j(n) F[n + j] = 0        for n >= offset

Coefficients are numeric polynomials in ``n`` (ints, ``Fraction``,
floats, complex or mpmath scalars). Nothing here is symbolic: parameters
such as ``x`` or ``alpha`` are fixed numbers, and correctness is checked
by annihilating concrete sequence prefixes.
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import (
    AlgebraError,
    DomainError,
    InsufficientPrefixError,
    NotInvertibleError,
    SingularRecurrenceError,
)
from .transform import as_prefix

__all__ = [
    "Poly",
    "ShiftOperator",
    "Recurrence",
    "binomial_reduction",
    "transform_recurrence",
    "generate_from_recurrence",
    "annihilation_residual",
    "q_recurrence",
    "recurrence_from_json",
    "recurrence_to_json",
    "load_recurrence",
    "dump_recurrence",
    "RecurrenceFormatError",
]

_EXACT = (int, Fraction)


def _exactify(c):
    return Fraction(c) if isinstance(c, int) and not isinstance(c, bool) else c


class Poly:
    """Polynomial in ``n`` with ascending coefficients; trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def n(cls):
        return cls([0, 1])

    @property
    def degree(self):
        # the zero polynomial gets -inf so degree arithmetic stays consistent
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self):
        return not self.coeffs

    def __call__(self, n):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, s):
        """Return ``n -> p(n + s)``."""
        out = Poly()
        step = Poly([s, 1])
        for c in reversed(self.coeffs):
            out = out * step + c
        return out

    def divide_linear(self, root):
        """Synthetic division by ``(n - root)``; returns ``(quotient, remainder)``."""
        if self.is_zero():
            return Poly(), 0
        q = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * root + c
            q.append(acc)
        rem = q.pop()
        return Poly(reversed(q)), rem


class ShiftOperator:
    """Operator ``sum_d c_d(n) T**d`` with polynomials left of every shift.

    ``T**d`` is the forward shift ``E**d`` for ``d > 0`` and the backward
    shift ``S**(-d)`` for ``d < 0``; applied at index ``n`` a term reads
    ``c_d(n) X[n + d]``. Products use ``E p(n) = p(n+1) E`` and
    ``S p(n) = p(n-1) S``. Since ``S E`` equals the identity only for
    ``n >= 1``, each operator also carries ``valid_from``: the first index
    at which the normal form agrees with the composed operator.
    """

    def __init__(self, terms=None, valid_from=0):
        self.terms = {d: p for d, p in (terms or {}).items() if not p.is_zero()}
        self.valid_from = valid_from

    @classmethod
    def identity(cls):
        return cls({0: Poly.const(1)})

    @classmethod
    def forward(cls):
        return cls({1: Poly.const(1)})

    @classmethod
    def backward(cls):
        # (S X)[0] = 0, so reading X[n - 1] is only right from n = 1 on
        return cls({-1: Poly.const(1)}, valid_from=1)

    @classmethod
    def index(cls):
        return cls({0: Poly.n()})

    @classmethod
    def scalar(cls, c):
        return cls({0: Poly.const(c)})

    def __add__(self, other):
        terms = dict(self.terms)
        for d, p in other.terms.items():
            terms[d] = terms[d] + p if d in terms else p
        return ShiftOperator(terms, max(self.valid_from, other.valid_from))

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if not isinstance(other, ShiftOperator):
            return ShiftOperator({d: p * other for d, p in self.terms.items()}, self.valid_from)
        terms = {}
        for a, pa in self.terms.items():
            for b, pb in other.terms.items():
                t = pa * pb.shift(a)
                terms[a + b] = terms[a + b] + t if a + b in terms else t
        lowest = min(self.terms, default=0)
        valid = max(self.valid_from, other.valid_from - lowest, 0)
        return ShiftOperator(terms, valid)

    def __pow__(self, k):
        out = ShiftOperator.identity()
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"ShiftOperator({self.terms!r}, valid_from={self.valid_from})"


@dataclass(frozen=True)
class Recurrence:
    """``sum_j coeffs[j](n) F[n + j] = 0`` for ``n >= offset``."""

    coeffs: Tuple[Poly, ...]
    offset: int = 0

    def __post_init__(self):
        coeffs = tuple(c if isinstance(c, Poly) else Poly(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("a recurrence needs order >= 1")
        if coeffs[-1].is_zero():
            raise ValueError("leading coefficient of a recurrence is identically zero")
        if self.offset < 0:
            raise ValueError("offset must be nonnegative")

    @property
    def order(self):
        return len(self.coeffs) - 1

    def as_operator(self):
        terms = {}
        for j, p in enumerate(self.coeffs):
            if not p.is_zero():
                terms[j] = p
        return ShiftOperator(terms, self.offset)

    def evaluate(self, n, F):
        """Return ``(sum_j P_j(n) F[n+j], sum_j |P_j(n) F[n+j]|)``."""
        total = 0
        mag = 0
        for j, p in enumerate(self.coeffs):
            t = p(n) * F[n + j]
            total = total + t
            mag = mag + abs(t)
        return total, mag


def binomial_reduction(p, max_power=8):
    """Coefficients ``c_0(n)..c_p(n)`` with ``k**p C(n,k) = sum_j c_j(n) C(n-j,k)``.

    Built by iterating ``k C(m,k) = m C(m,k) - m C(m-1,k)`` with ``m = n - j``.

    >>> binomial_reduction(2)
    [Poly([0, 0, 1]), Poly([0, 1, -2]), Poly([0, -1, 1])]
    """
    if not 0 <= p <= max_power:
        raise ValueError(f"p must lie in [0, {max_power}]")
    row = [Poly.const(1)]
    for _ in range(p):
        nxt = [Poly()] * (len(row) + 1)
        for j, c in enumerate(row):
            m = Poly([-j, 1])
            nxt[j] = nxt[j] + c * m
            nxt[j + 1] = nxt[j + 1] - c * m
        row = nxt
    return row


def _is_exact(rec_terms):
    return all(isinstance(c, _EXACT) for p in rec_terms for c in p.coeffs)


def _trim_common_roots(coeffs, offset, search=16):
    # Dividing out (n - r) changes the relation only at n = r, so roots at or
    # beyond the validity offset are kept.
    coeffs = list(coeffs)
    for r in range(-search, offset):
        while all(p(r) == 0 for p in coeffs):
            coeffs = [p.divide_linear(r)[0] for p in coeffs]
            if all(p.is_zero() for p in coeffs):
                raise AlgebraError("common-factor trimming annihilated the recurrence")
    return coeffs


def transform_recurrence(rec, params):
    """Recurrence satisfied by ``B_{alpha,beta} F`` whenever ``rec`` annihilates ``F``.

    Each monomial ``n**m E**j`` of the input operator maps to
    ``(n (I - alpha S))**m (E - alpha I)**j / beta**j``; the whole operator
    is scaled by ``beta**r`` so no division is needed. Backward shifts are
    then removed by re-basing the index, and for exact scalars common linear
    factors are divided out.
    """
    alpha, beta = _exactify(params.alpha), _exactify(params.beta)
    if beta == 0:
        raise NotInvertibleError("not invertible transform: beta = 0")
    if rec.offset:
        # B mixes all of F[0..n], so relations that fail below the offset leak into every index
        raise DomainError("transform_recurrence needs an input recurrence valid from n = 0")
    r = rec.order
    n_image = ShiftOperator.index() * (ShiftOperator.identity() - ShiftOperator.backward() * alpha)
    e_image = ShiftOperator.forward() - ShiftOperator.scalar(alpha)
    n_powers = [ShiftOperator.identity()]
    e_powers = [ShiftOperator.identity()]
    out = ShiftOperator()
    for j, p in enumerate(rec.coeffs):
        while len(e_powers) <= j:
            e_powers.append(e_powers[-1] * e_image)
        for m, c in enumerate(p.coeffs):
            if c == 0:
                continue
            while len(n_powers) <= m:
                n_powers.append(n_powers[-1] * n_image)
            out = out + n_powers[m] * e_powers[j] * (_exactify(c) * beta ** (r - j))
    if not out.terms:
        raise AlgebraError("transformed operator vanished")
    low, high = min(out.terms), max(out.terms)
    base = -low
    coeffs = [out.terms[d].shift(base) if d in out.terms else Poly() for d in range(low, high + 1)]
    offset = max(0, out.valid_from - base)
    if _is_exact(coeffs):
        coeffs = _trim_common_roots(coeffs, offset)
    if len(coeffs) < 2:
        raise AlgebraError("transformed recurrence has order zero")
    return Recurrence(tuple(coeffs), offset)


def generate_from_recurrence(rec, initial, count):
    """Extend ``initial`` to ``count`` terms by forward recursion."""
    F = list(as_prefix(initial).tolist())
    r = rec.order
    if len(F) < r + rec.offset:
        raise InsufficientPrefixError(
            f"need {r + rec.offset} initial values for order {r} from offset {rec.offset}"
        )
    lead = rec.coeffs[-1]
    while len(F) < count:
        n = len(F) - r
        d = lead(n)
        if d == 0:
            raise SingularRecurrenceError(n)
        acc = 0
        for j in range(r):
            acc = acc + rec.coeffs[j](n) * F[n + j]
        F.append(-acc / d)
    return as_prefix(F[:count])


def annihilation_residual(rec, F, tiny=1e-300):
    """Largest scale-free residual ``|sum_j P_j F| / (sum_j |P_j F| + tiny)``."""
    F = as_prefix(F).tolist()
    last = len(F) - rec.order - 1
    if last < rec.offset:
        raise InsufficientPrefixError(
            f"prefix of length {len(F)} too short for order {rec.order} from offset {rec.offset}"
        )
    worst = 0
    for n in range(rec.offset, last + 1):
        total, mag = rec.evaluate(n, F)
        worst = max(worst, abs(total) / (mag + tiny))
    return worst


def q_recurrence(x):
    """``(n+2)**2 Q[n+1] - x (n+1)**2 Q[n] = 0`` for ``Q[n] = x**(n+1)/(n+1)**2``."""
    return Recurrence((Poly([-x, -2 * x, -x]), Poly([4, 4, 1])))


class RecurrenceFormatError(ValueError):
    """Malformed recurrence JSON; the message names the offending field."""


def _parse_scalar(value, where):
    if isinstance(value, bool):
        raise RecurrenceFormatError(f"{where}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, list) and len(value) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        return complex(float(value[0]), float(value[1]))
    raise RecurrenceFormatError(f"{where}: expected a number or [re, im], got {value!r}")


def recurrence_from_json(obj):
    """Build a :class:`Recurrence` from the decoded JSON object."""
    if not isinstance(obj, dict):
        raise RecurrenceFormatError("top level: expected an object")
    for key in ("order", "coefficients"):
        if key not in obj:
            raise RecurrenceFormatError(f"missing field {key!r}")
    order = obj["order"]
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise RecurrenceFormatError("order: expected a positive integer")
    offset = obj.get("offset", 0)
    if not isinstance(offset, int) or isinstance(offset, bool) or offset < 0:
        raise RecurrenceFormatError("offset: expected a nonnegative integer")
    coeffs = obj["coefficients"]
    if not isinstance(coeffs, list) or len(coeffs) != order + 1:
        raise RecurrenceFormatError(f"coefficients: expected a list of {order + 1} arrays")
    polys = []
    for j, row in enumerate(coeffs):
        if not isinstance(row, list):
            raise RecurrenceFormatError(f"coefficients[{j}]: expected an array")
        polys.append(Poly([_parse_scalar(v, f"coefficients[{j}][{m}]") for m, v in enumerate(row)]))
    if polys[-1].is_zero():
        raise RecurrenceFormatError(f"coefficients[{order}]: leading polynomial is zero")
    return Recurrence(tuple(polys), offset)


def _dump_scalar(c):
    if isinstance(c, complex) or hasattr(c, "imag") and c.imag != 0:
        c = complex(c)
        if c.imag != 0:
            return [c.real, c.imag]
        return c.real
    return float(c)


def recurrence_to_json(rec):
    return {
        "order": rec.order,
        "offset": rec.offset,
        "coefficients": [[_dump_scalar(c) for c in p.coeffs] for p in rec.coeffs],
    }


def load_recurrence(path):
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RecurrenceFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return recurrence_from_json(obj)


def dump_recurrence(rec, path):
    with open(path, "w") as fh:
        json.dump(recurrence_to_json(rec), fh, indent=2)
        fh.write("\n")
