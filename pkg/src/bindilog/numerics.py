"""Working-precision scalars and compensated summation.

Two precisions are provided. :data:`FLOAT64` uses Python ``float`` and
``complex`` (IEEE binary64, signed zeros honored by :mod:`cmath`).
:class:`Extended` wraps a private :class:`mpmath.MPContext` so several
precisions can coexist without touching mpmath's global state.
"""

import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np

from .errors import UndefinedConditionError

__all__ = [
    "Float64",
    "Extended",
    "FLOAT64",
    "EXTENDED",
    "KahanAccumulator",
    "kahan_sum",
]


class Float64:
    """IEEE binary64, real or complex."""

    name = "f64"
    eps = 2.0**-53
    tiny = 2.2250738585072014e-308

    def __repr__(self):
        return "Float64()"

    def scalar(self, value):
        if isinstance(value, complex) or hasattr(value, "_mpc_") or np.iscomplexobj(value):
            return complex(value)
        return float(value)

    def is_complex(self, value):
        return isinstance(value, complex)

    def to_complex(self, value):
        return complex(value)

    def conj(self, value):
        return value.conjugate()

    @property
    def pi(self):
        return math.pi

    def abs(self, value):
        return abs(value)

    def log(self, value):
        if isinstance(value, complex):
            return cmath.log(value)
        return math.log(value)

    def sqrt(self, value):
        if isinstance(value, complex):
            return cmath.sqrt(value)
        return math.sqrt(value)

    def isfinite(self, value):
        if isinstance(value, complex):
            return cmath.isfinite(value)
        return math.isfinite(value)

    def close(self, a, b, rel=None, abs_tol=0.0):
        """Equality within ``rel`` (default 4 eps) relative to the larger magnitude."""
        rel = 4 * self.eps if rel is None else rel
        return abs(a - b) <= max(rel * max(abs(a), abs(b)), abs_tol)


class Extended:
    """Extended precision backed by an mpmath context.

    The default of 113 significand bits matches IEEE binary128. The unit
    roundoff ``eps`` is ``2**-bits``. Complex values are ``mpc`` and carry
    no signed zero, so callers needing a side of a branch cut must say so
    explicitly.
    """

    name = "extended"

    def __init__(self, bits=113):
        if bits < 64:
            raise ValueError("extended precision needs at least 64 significand bits")
        self.bits = bits
        self.ctx = mpmath.MPContext()
        self.ctx.prec = bits
        self.eps = self.ctx.ldexp(self.ctx.mpf(1), -bits)
        self.tiny = self.ctx.ldexp(self.ctx.mpf(1), -1000000)

    def __repr__(self):
        return f"Extended(bits={self.bits})"

    def scalar(self, value):
        if hasattr(value, "_mpf_") or hasattr(value, "_mpc_"):
            return self.ctx.convert(value)
        if isinstance(value, complex) or np.iscomplexobj(value):
            return self.ctx.mpc(complex(value))
        if isinstance(value, tuple):
            return self.ctx.mpc(*value)
        if isinstance(value, Fraction):
            return self.ctx.mpf(value.numerator) / value.denominator
        return self.ctx.mpf(value)

    def is_complex(self, value):
        return hasattr(value, "_mpc_") or isinstance(value, complex)

    def to_complex(self, value):
        return self.ctx.mpc(value)

    def conj(self, value):
        return self.ctx.conj(value)

    @property
    def pi(self):
        return +self.ctx.pi

    def abs(self, value):
        return abs(value)

    def log(self, value):
        return self.ctx.log(value)

    def sqrt(self, value):
        return self.ctx.sqrt(value)

    def isfinite(self, value):
        return self.ctx.isfinite(value)

    def close(self, a, b, rel=None, abs_tol=0):
        rel = 4 * self.eps if rel is None else rel
        return abs(a - b) <= max(rel * max(abs(a), abs(b)), abs_tol)


FLOAT64 = Float64()
EXTENDED = Extended()


def _two_sum(a, b):
    # Knuth's error-free transformation; componentwise for complex values.
    s = a + b
    bp = s - a
    err = (a - (s - bp)) + (b - bp)
    return s, err


class KahanAccumulator:
    """Running compensated sum with a side tally of absolute values.

    The compensation is the branch-free TwoSum form of Kahan's idea: each
    addition's rounding error is captured exactly and accumulated into
    ``compensation``. Unlike the textbook single-correction loop, it keeps
    the low-order bits when a later term cancels the leading part.

    >>> acc = KahanAccumulator()
    >>> for t in (1.0, 1e-17, -1.0):
    ...     _ = acc.add(t)
    >>> acc.value
    1e-17
    """

    def __init__(self, precision=FLOAT64, zero=0.0):
        self.precision = precision
        self.total = zero
        self.compensation = zero
        self.abs_total = abs(zero)
        self.count = 0

    def add(self, term):
        self.total, err = _two_sum(self.total, term)
        self.compensation += err
        # plain summation is enough here: the tally only feeds a diagnostic quotient
        self.abs_total += abs(term)
        self.count += 1
        return self

    @property
    def value(self):
        return self.total + self.compensation

    def condition_number(self):
        """``sum |t_k| / |sum t_k|``; raises if the sum is exactly zero."""
        s = abs(self.value)
        if s == 0:
            raise UndefinedConditionError("condition number undefined for a zero sum")
        # the uncompensated tally can round a hair below |sum|; the exact ratio is >= 1
        ratio = self.abs_total / s
        return ratio if ratio >= 1 else ratio * 0 + 1

    def relative_error_bound(self):
        return 2 * self.precision.eps * self.condition_number()

    def error_bound(self):
        """Absolute rounding bound ``2 * eps * cond * |sum|``."""
        return self.relative_error_bound() * abs(self.value)


def kahan_sum(terms, precision=FLOAT64):
    acc = KahanAccumulator(precision)
    for t in terms:
        acc.add(t)
    return acc
