"""The dilogarithm through a binomially accelerated Maclaurin series.

With ``alpha = -x/2`` the transformed Maclaurin summand

    W[k] = (B_{alpha,1} Q)[k] / (1 + alpha)**(k+1),   Q[k] = x**(k+1)/(k+1)**2

obeys a three-term recurrence and ``Li2(x) = sum_k W[k]`` for
``Re(x) < 1``, converging linearly with rate ``|x/(x-2)|``. The reflection
and reciprocal identities move any point of ``C \\ [1, inf)`` to an
argument where that rate is small.
"""

import enum
import math
from dataclasses import dataclass
from typing import Any, Optional

from .errors import BranchCutError, DomainError, NotConvergedError
from .numerics import FLOAT64, KahanAccumulator

__all__ = [
    "Identity",
    "DilogResult",
    "RateReport",
    "w_initial",
    "w_step",
    "w_prefix",
    "sum_w_series",
    "dispatch",
    "li2",
    "optimal_alpha",
    "convergence_rate",
    "min_rate",
    "DEFAULT_MAX_TERMS",
]

DEFAULT_MAX_TERMS = 500


class Identity(str, enum.Enum):
    DIRECT = "direct"
    REFLECTION = "reflection"
    RECIPROCAL = "reciprocal"
    CLOSED_FORM = "closed_form"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class DilogResult:
    value: Any
    terms_used: int
    condition_number: Any
    error_bound: Any
    identity_used: Identity
    alpha_used: Optional[Any]

    @property
    def relative_error_bound(self):
        if self.value == 0:
            return self.error_bound * 0
        return self.error_bound / abs(self.value)


@dataclass(frozen=True)
class RateReport:
    rate_direct: float
    rate_reflection: float
    rate_reciprocal: float
    chosen: Identity

    @property
    def rate(self):
        return {
            Identity.DIRECT: self.rate_direct,
            Identity.REFLECTION: self.rate_reflection,
            Identity.RECIPROCAL: self.rate_reciprocal,
        }[self.chosen]


def _check_pole(x):
    if x == 2:
        raise DomainError("pole in parameterization at x = 2")


def w_initial(x):
    """``(W0, W1, W2)`` from their closed forms."""
    _check_pole(x)
    d = 1 - x / 2
    return x / d, -(x * x) / (4 * d * d), x**3 / (9 * d**3)


def w_step(x, n, w0, w1, w2):
    """``W[n+3]`` from ``W[n], W[n+1], W[n+2]``.

    Solves ``(x-2)**3 (n+4)**2 W[n+3] = -x**3 (n+1)(n+2) W[n]
    + x**2 (x-2) (n+2)**2 W[n+1] + x (x-2)**2 (n+3)(n+4) W[n+2]``,
    written in terms of ``r = x/(x-2)`` to keep intermediate powers small.
    """
    _check_pole(x)
    return _w_next(x / (x - 2), n, w0, w1, w2)


def _w_next(r, n, w0, w1, w2):
    return (
        r * ((n + 3) * (n + 4)) * w2
        + r * r * ((n + 2) * (n + 2)) * w1
        - r * r * r * ((n + 1) * (n + 2)) * w0
    ) / ((n + 4) * (n + 4))


def w_prefix(x, count):
    """First ``count`` summands ``W[0..count-1]`` generated by forward recursion."""
    w = list(w_initial(x))
    r = x / (x - 2)
    while len(w) < count:
        n = len(w) - 3
        w.append(_w_next(r, n, w[n], w[n + 1], w[n + 2]))
    return w[:count]


def _re(z):
    return z.real if hasattr(z, "real") else z


def sum_w_series(x, precision=FLOAT64, max_terms=DEFAULT_MAX_TERMS, initial=None):
    """Sum ``W[k]`` at ``alpha = -x/2``; requires ``Re(x) < 1``.

    Stops when ``|W[k]| <= eps |sum|`` for two consecutive ``k``.
    ``initial`` overrides ``(W0, W1, W2)``; it exists for perturbation
    studies.
    """
    x = precision.scalar(x)
    if not precision.isfinite(x):
        raise DomainError("argument must be finite")
    if not _re(x) < 1:
        raise DomainError("outside convergence region: Re(x) >= 1")
    eps = precision.eps
    w = list(initial) if initial is not None else list(w_initial(x))
    r = x / (x - 2)
    acc = KahanAccumulator(precision, zero=x * 0)
    small = 0
    k = 0
    while True:
        if k >= max_terms:
            raise NotConvergedError(
                f"series not converged after {max_terms} terms", _series_result(acc, x, precision)
            )
        if k >= 3:
            w = [w[1], w[2], _w_next(r, k - 3, w[0], w[1], w[2])]
            term = w[2]
        else:
            term = w[k]
        acc.add(term)
        k += 1
        small = small + 1 if abs(term) <= eps * abs(acc.value) else 0
        if small == 2:
            return _series_result(acc, x, precision)


def _series_result(acc, x, precision):
    value = acc.value
    if value == 0:
        # nothing summed but zeros: no cancellation and no rounding
        cond = 1.0 if acc.abs_total == 0 else math.inf
        err = acc.abs_total * 2 * precision.eps
    else:
        cond = acc.condition_number()
        err = acc.error_bound()
    return DilogResult(value, acc.count, cond, err, Identity.DIRECT, -x / 2)


def _rate(z):
    return abs(z / (2 - z))


def _on_unit_interval(x):
    return _imag(x) == 0 and 0 <= _re(x) <= 1


def _imag(z):
    return z.imag if hasattr(z, "imag") else 0


def _one_minus(x):
    # 1 - x with the sign of a zero imaginary part flipped, as for an exact negation
    if isinstance(x, complex):
        return complex(1 - x.real, -x.imag)
    return 1 - x


def dispatch(x, tie_rtol=1e-12):
    """Pick the identity whose mapped argument has the smallest rate ``|z/(2-z)|``.

    Invalid candidates report ``inf``. Rates within ``tie_rtol`` count as
    equal and the earlier of direct, reflection, reciprocal wins.
    """
    inf = math.inf
    rate_direct = _rate(x) if _re(x) < 1 else inf
    rate_reflection = _rate(_one_minus(x)) if _re(x) > 0 and x != 0 and x != 1 else inf
    if x != 0 and not _on_unit_interval(x):
        inv = 1 / x
        rate_reciprocal = _rate(inv) if _re(inv) < 1 else inf
    else:
        rate_reciprocal = inf
    candidates = [
        (rate_direct, Identity.DIRECT),
        (rate_reflection, Identity.REFLECTION),
        (rate_reciprocal, Identity.RECIPROCAL),
    ]
    best_rate, chosen = inf, None
    for rate, ident in candidates:
        if rate < 1 and (chosen is None or rate < best_rate * (1 - tie_rtol)):
            best_rate, chosen = rate, ident
    if chosen is None:
        raise BranchCutError("on branch cut: no identity maps x into the convergence region")
    return RateReport(float(rate_direct), float(rate_reflection), float(rate_reciprocal), chosen)


def _log_sided(precision, z, side):
    # principal log, except that a negative real z on the cut takes the
    # limit from the requested side (+1 above, -1 below)
    if side and _imag(z) == 0 and _re(z) < 0:
        return precision.to_complex(precision.log(-_re(z))) + side * precision.pi * 1j
    return precision.log(z)


def li2(x, precision=FLOAT64, on_cut="error", max_terms=DEFAULT_MAX_TERMS, via=None):
    """Evaluate the dilogarithm ``Li2(x)``.

    Real input below 1 gives a real result; anything else is complex.
    ``on_cut`` decides real ``x > 1``: ``"error"`` raises
    :class:`BranchCutError`, ``"above"``/``"below"`` return the limit from
    ``x + i0`` / ``x - i0``. ``via`` forces one identity (it must be valid
    at ``x``) instead of the automatic choice.

    >>> r = li2(-1.0)
    >>> round(r.value, 15), str(r.identity_used)
    (-0.822467033424113, 'direct')
    """
    if on_cut not in ("error", "above", "below"):
        raise ValueError(f"unknown on_cut policy {on_cut!r}")
    x = precision.scalar(x)
    if not precision.isfinite(x):
        raise DomainError("argument must be finite")
    pi2_6 = precision.pi**2 / 6
    if x == 0:
        return DilogResult(x * 0, 0, 1.0, x * 0, Identity.CLOSED_FORM, None)
    if x == 1:
        return DilogResult(
            pi2_6 if not precision.is_complex(x) else precision.to_complex(pi2_6),
            0, 1.0, 2 * precision.eps * pi2_6, Identity.CLOSED_FORM, None,
        )
    side = 0
    if _imag(x) == 0 and _re(x) > 1:
        if on_cut == "error":
            raise BranchCutError(f"on branch cut: x = {_re(x)!r} lies on [1, inf)")
        side = 1 if on_cut == "above" else -1
        x = precision.to_complex(x)

    report = dispatch(x)
    ident = via or report.chosen
    eps = precision.eps
    if ident is Identity.DIRECT:
        if not _re(x) < 1:
            raise DomainError("direct series needs Re(x) < 1")
        return sum_w_series(x, precision, max_terms)
    if ident is Identity.REFLECTION:
        if x == 0 or x == 1:
            raise DomainError("reflection needs x not in {0, 1}")
        z = _one_minus(x)
        s = sum_w_series(z, precision, max_terms)
        # 1 - (X + i0) sits at (1 - X) - i0
        prod = _log_sided(precision, x, side) * _log_sided(precision, z, -side)
        value = pi2_6 - prod - s.value
        # rounding of the identity: 2 eps per operation on each component
        err = s.error_bound + 2 * eps * (abs(pi2_6) + 3 * abs(prod) + abs(s.value) + abs(value))
    elif ident is Identity.RECIPROCAL:
        if _on_unit_interval(x):
            raise DomainError("reciprocal identity needs x outside [0, 1]")
        z = 1 / x
        s = sum_w_series(z, precision, max_terms)
        lg = _log_sided(precision, -x, -side)
        half_sq = lg * lg / 2
        value = -pi2_6 - half_sq - s.value
        err = s.error_bound + 2 * eps * (abs(pi2_6) + 2 * abs(half_sq) + abs(s.value) + abs(value))
    else:
        raise ValueError(f"cannot evaluate via {ident!r}")
    return DilogResult(value, s.terms_used, s.condition_number, err, ident, s.alpha_used)


def convergence_rate(alpha, x):
    """``max(|alpha/(alpha+1)|, |(alpha+x)/(alpha+1)|)`` for the transformed series."""
    d = alpha + 1
    if d == 0:
        return math.inf
    return max(abs(alpha / d), abs((alpha + x) / d))


def optimal_alpha(x, precision=FLOAT64):
    """Complex ``alpha`` minimising :func:`convergence_rate`; returns ``(alpha, rate)``.

    Both roots ``u = +-sqrt((conj(x) - 1)/(x - 1))`` are tried with
    ``alpha = x u / (1 - u)``, which balances ``|alpha| = |alpha + x|``;
    the one with the smaller rate wins. For real ``x`` the good root is
    ``u = -1``, giving ``alpha = -x/2``.
    """
    x = precision.scalar(x)
    if _imag(x) == 0 and _re(x) >= 1:
        raise BranchCutError("optimal_alpha needs x off [1, inf)")
    if not precision.is_complex(x):
        alpha = -x / 2
        return alpha, convergence_rate(alpha, x)
    base = precision.sqrt((precision.conj(x) - 1) / (x - 1))
    best = None
    for u in (base, -base):
        if u == 1:
            continue
        alpha = x * u / (1 - u)
        rate = convergence_rate(alpha, x)
        if best is None or rate < best[1]:
            best = (alpha, rate)
    if best is None:
        alpha = -x / 2
        best = (alpha, convergence_rate(alpha, x))
    return best


def min_rate(R, omega, squared=False):
    """Smallest attainable rate at ``x = 1 + R exp(i omega)``.

    The closed form is ``min(N/(R-1)**2, N/(R+1)**2)`` with
    ``N = 2 R cos(omega) + R**2 + 1 = |x|**2``; that expression is the
    squared rate and is returned as is when ``squared=True``. The second
    branch is never larger, so ``R = 1`` simply drops the first.
    """
    if R < 0:
        raise ValueError("R must be nonnegative")
    num = 2 * R * math.cos(omega) + R * R + 1
    sq = num / (R + 1) ** 2
    if R != 1:
        sq = min(num / (R - 1) ** 2, sq)
    return sq if squared else math.sqrt(sq)
