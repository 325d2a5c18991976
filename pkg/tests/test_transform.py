from fractions import Fraction

import numpy as np
import pytest

from bindilog.errors import DomainError, InsufficientPrefixError, NotConvergedError, NotInvertibleError
from bindilog.transform import (
    IDENTITY,
    TransformParams,
    adjoint_transform,
    backward_shift,
    binomial_transform,
    compose_params,
    euler_sum,
    forward_shift,
    index_multiply,
    invert_params,
)
from oracles import extrapolated_transform

EPS = 2.0**-52


def magnitude(F, *params):
    """|B_{|a_k|,|b_k|} ... |F||: the scale against which rounding in chained transforms is measured."""
    out = np.abs(np.asarray(F, dtype=complex)).astype(float)
    for p in reversed(params):
        out = binomial_transform(out, TransformParams(abs(p.alpha), abs(p.beta))).astype(float)
    return out


def test_backward_shift_examples():
    assert backward_shift([1, 2, 3]).tolist() == [0, 1, 2]
    assert backward_shift([0, 0, 0]).tolist() == [0, 0, 0]
    assert backward_shift([5]).tolist() == [0]


def test_forward_shift_examples():
    assert forward_shift([1, 2, 3]).tolist() == [2, 3]
    assert forward_shift(backward_shift([1, 2, 3])).tolist() == [1, 2]
    assert forward_shift([7, 9]).tolist() == [9]
    with pytest.raises(InsufficientPrefixError):
        forward_shift([1])


def test_index_multiply_examples():
    assert index_multiply([1, 1, 1, 1]).tolist() == [0, 1, 2, 3]
    assert index_multiply([0, 5]).tolist() == [0, 5]
    assert index_multiply(index_multiply([1, 1, 1])).tolist() == [0, 1, 4]


def test_empty_prefix_rejected():
    with pytest.raises(InsufficientPrefixError):
        binomial_transform([], IDENTITY)


@pytest.mark.parametrize("alpha, beta", [(2, 3), (-0.5, 1.5), (1 + 2j, -1j)])
def test_transform_of_unit_impulse(alpha, beta):
    out = binomial_transform([1, 0, 0, 0], TransformParams(alpha, beta))
    assert out.tolist() == [1, alpha, alpha**2, alpha**3]


def test_identity_params():
    F = [0.3, -1.7, 2.5, 1e-3]
    assert binomial_transform(F, IDENTITY).tolist() == F


def test_powers_of_two():
    # sum_k C(n,k) = 2**n
    assert binomial_transform([1, 1, 1], TransformParams(1, 1)).tolist() == [1, 2, 4]


def test_matches_extrapolated_sequences():
    rng = np.random.default_rng(3)
    for _ in range(20):
        F = rng.normal(size=15)
        p = TransformParams(rng.uniform(-2, 2), rng.uniform(-2, 2))
        got = binomial_transform(F, p)
        want = np.array([float(v) for v in extrapolated_transform(F, p.alpha, p.beta)])
        assert np.all(np.abs(got - want) <= 8 * EPS * magnitude(F, p))


def test_exact_rational_transform():
    F = [Fraction(1, k + 1) for k in range(6)]
    p = TransformParams(Fraction(1, 3), Fraction(-2))
    got = binomial_transform(F, p)
    assert got.tolist() == extrapolated_exact(F, p)


def extrapolated_exact(F, p):
    cur, out = list(F), []
    for n in range(len(F)):
        out.append(cur[n])
        cur = [p.beta * cur[i] + (p.alpha * cur[i - 1] if i else 0) for i in range(len(cur))]
    return out


def test_compose_examples():
    q = TransformParams(3, 4)
    assert compose_params(IDENTITY, q) == q
    assert compose_params(TransformParams(2, 1), TransformParams(5, 1)) == TransformParams(7, 1)
    assert compose_params(TransformParams(1, 2), TransformParams(3, 4)) == TransformParams(7, 8)


def test_invert_examples():
    assert invert_params(IDENTITY) == TransformParams(0, 1)
    assert invert_params(TransformParams(1, 1)) == TransformParams(-1, 1)
    assert invert_params(TransformParams(Fraction(2), Fraction(4))) == TransformParams(Fraction(-1, 2), Fraction(1, 4))
    p = TransformParams(Fraction(3, 7), Fraction(-5, 2))
    assert compose_params(invert_params(p), p) == TransformParams(0, 1)
    with pytest.raises(NotInvertibleError):
        invert_params(TransformParams(1, 0))


def test_adjoint_examples():
    out = adjoint_transform([1, 0, 0, 0, 0], TransformParams(0.7, 1.3), 3)
    assert out.tolist() == [1, 0, 0, 0]
    F = [0.5, -1.0, 2.0, 4.0]
    assert adjoint_transform(F, IDENTITY, 3).tolist() == F
    with pytest.raises(InsufficientPrefixError):
        adjoint_transform(F, IDENTITY, 4)


def test_adjoint_geometric_limit():
    z, alpha = 1 / 3, 0.5
    F = [z**k for k in range(80)]
    out = adjoint_transform(F, TransformParams(alpha, 1), 0)
    assert out[0] == pytest.approx(1 / (1 - alpha * z), rel=1e-14)


def test_adjoint_summation_identity():
    # sum F G = sum (B*_{inv p} G)_k (B_p F)_k for absolutely convergent geometric pairs
    rng = np.random.default_rng(11)
    for _ in range(20):
        f, g = rng.uniform(-0.4, 0.4, 2)
        p = TransformParams(rng.uniform(-0.3, 0.3), rng.uniform(0.7, 1.3))
        N = 120
        F = [f**k for k in range(N)]
        G = [g**k for k in range(N)]
        lhs = sum(a * b for a, b in zip(F, G))
        BF = binomial_transform(F, p)
        AG = adjoint_transform(G, invert_params(p), 60)
        rhs = sum(AG[k] * BF[k] for k in range(61))
        assert rhs == pytest.approx(lhs, rel=1e-12)


def test_euler_sum_single_term():
    value, diag = euler_sum([2.5, 0, 0, 0, 0], 0, 1e-15)
    assert value == 2.5
    assert diag.terms_used == 3


def test_euler_sum_geometric():
    F = [0.5 ** (k + 1) for k in range(60)]
    value, diag = euler_sum(F, -0.25, 2.0**-53)
    assert value == pytest.approx(1.0, abs=4 * 2.0**-53)
    assert diag.condition_number == 1


def test_euler_sum_dilog_at_minus_one():
    x = -1.0
    F = [x ** (k + 1) / (k + 1) ** 2 for k in range(60)]
    value, diag = euler_sum(F, -x / 2, 2.0**-53)
    assert value == pytest.approx(-np.pi**2 / 12, abs=diag.error_bound + 4e-16)
    assert diag.terms_used < 40


def test_euler_sum_errors():
    with pytest.raises(DomainError):
        euler_sum([1.0, 2.0], -1, 1e-16)
    with pytest.raises(NotConvergedError) as info:
        euler_sum([1.0, 1.0, 1.0, 1.0], 0, 1e-16)
    value, diag = info.value.partial
    assert value == 4.0 and diag.terms_used == 4


def random_case(rng):
    N = int(rng.integers(1, 21))
    F = rng.normal(size=N) * 10.0 ** rng.uniform(-3, 3, N)
    sign = rng.choice([-1, 1])
    p = TransformParams(rng.uniform(-2, 2), sign * rng.uniform(0.25, 2))
    return F, p


def test_linearity():
    rng = np.random.default_rng(101)
    for _ in range(300):
        F, p = random_case(rng)
        G = rng.normal(size=len(F))
        a, b = rng.normal(size=2)
        lhs = binomial_transform(a * F + b * G, p)
        rhs = a * binomial_transform(F, p) + b * binomial_transform(G, p)
        scale = magnitude(np.abs(a * F) + np.abs(b * G), p)
        assert np.all(np.abs(lhs - rhs) <= 8 * EPS * scale)


def test_prefix_locality():
    rng = np.random.default_rng(102)
    for _ in range(100):
        F, p = random_case(rng)
        base = binomial_transform(F, p)
        for n in range(len(F)):
            G = F.copy()
            G[n + 1:] = rng.normal(size=len(F) - n - 1)
            assert binomial_transform(G, p)[: n + 1].tolist() == base[: n + 1].tolist()


def test_composition_and_round_trip():
    rng = np.random.default_rng(103)
    for _ in range(300):
        F, p = random_case(rng)
        _, q = random_case(rng)
        chained = binomial_transform(binomial_transform(F, q), p)
        direct = binomial_transform(F, compose_params(p, q))
        assert np.all(np.abs(chained - direct) <= 1e-12 * magnitude(F, p, q))
        inv = invert_params(p)
        back = binomial_transform(binomial_transform(F, p), inv)
        assert np.all(np.abs(back - F) <= 1e-12 * magnitude(F, inv, p))


def test_index_multiplication_conjugation():
    rng = np.random.default_rng(104)
    for _ in range(300):
        F, p = random_case(rng)
        G = binomial_transform(F, p)
        lhs = binomial_transform(index_multiply(F), p)
        rhs = index_multiply(G - p.alpha * backward_shift(G))
        scale = magnitude(index_multiply(np.abs(F)), p) + index_multiply(
            magnitude(F, p) * (1 + abs(p.alpha))
        )
        assert np.all(np.abs(lhs - rhs) <= 1e-12 * scale)


def test_forward_shift_conjugation():
    rng = np.random.default_rng(105)
    for _ in range(300):
        F, p = random_case(rng)
        if len(F) < 2:
            continue
        G = binomial_transform(F, p)
        lhs = p.beta * binomial_transform(forward_shift(F), p)
        rhs = forward_shift(G) - p.alpha * G[:-1]
        scale = magnitude(F, p)
        scale = scale[1:] + abs(p.alpha) * scale[:-1]
        assert np.all(np.abs(lhs - rhs) <= 1e-12 * scale)
