from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from modpde.operators import (ThetaOperator, LogPair, NotMUM, parse_operator, theta_apply,
                              frobenius, annihilator_check)
from modpde.series import PSeries

T, X = ThetaOperator.theta("x"), ThetaOperator.var("x")
Ty, Y = ThetaOperator.theta("y"), ThetaOperator.var("y")

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def operators(draw, names=("x",)):
    atoms = [ThetaOperator.const(1)]
    for n in names:
        atoms += [ThetaOperator.var(n), ThetaOperator.theta(n)]
    op = ThetaOperator()
    for _ in range(draw(st.integers(1, 4))):
        term = ThetaOperator.const(draw(small))
        for _ in range(draw(st.integers(0, 3))):
            term = term * draw(st.sampled_from(atoms))
        op = op + term
    return op


def test_commutation_rule():
    # theta x = x theta + x
    assert T * X == X * T + X
    assert T * X ** 3 == X ** 3 * T + 3 * X ** 3
    # different variables commute
    assert T * Y == Y * T


@given(operators(("x", "y")), operators(("x", "y")), operators(("x", "y")))
def test_product_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(operators(("x", "y")), operators(("x", "y")), operators(("x", "y")))
def test_product_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(operators(), small.filter(lambda c: c != 0))
def test_scale_round_trip(op, c):
    assert op.scale("x", c).scale("x", 1 / c) == op


@given(operators(), operators(), small.filter(lambda c: c != 0))
def test_scale_is_multiplicative(a, b, c):
    assert (a * b).scale("x", c) == a.scale("x", c) * b.scale("x", c)


@settings(max_examples=20)
@given(operators(), operators(), st.lists(small, min_size=6, max_size=6))
def test_application_respects_products(a, b, cs):
    s = PSeries(cs, prec=6)
    lhs = theta_apply(a * b, s)
    rhs = theta_apply(a, theta_apply(b, s))
    n = int(min(p for p in (lhs.prec, rhs.prec, 6) if p is not None))
    assert all(lhs[k] == rhs[k] for k in range(n))


@pytest.mark.parametrize("n", [0, 1, 4, 7])
def test_theta_on_monomials(n):
    s = theta_apply(T, PSeries.monomial(1, n, prec=10))
    assert s[n] == n
    assert theta_apply(X * T ** 2, PSeries.monomial(1, n, prec=10))[n + 1] == n * n


def test_theta_on_logarithm():
    # theta(log x) = 1
    r = theta_apply(T, LogPair(PSeries([1], prec=5), PSeries([], prec=5)))
    assert not r.log_part.coeffs
    assert r.plain[0] == 1


def test_parser():
    assert parse_operator("theta^2 - x") == T ** 2 - X
    assert parse_operator("T^3 - 8x(2T+1)^3") == T ** 3 - 8 * X * (2 * T + 1) ** 3
    assert parse_operator("Tx(Tx - 2Ty)") == T * (T - 2 * Ty)
    assert parse_operator("theta_y y") == Y * Ty + Y
    assert parse_operator("x(T + 1/2)") == X * T + X * F(1, 2)
    assert parse_operator("-T * 3") == -3 * T


@pytest.mark.parametrize("bad", ["T^", "(T + 1", "T / x", "T / 0", "q + 1", "T^-1", "x)"])
def test_parser_errors(bad):
    with pytest.raises(ValueError):
        parse_operator(bad)


def test_repr_is_parseable():
    op = T ** 3 - 8 * X * (2 * T + 1) ** 3
    assert parse_operator(repr(op).replace("Tx", "T")) == op


def test_frobenius_matches_factorial_formula():
    # theta^3 - 4x(4T+3)(4T+2)(4T+1) has f0 = sum (4n)!/n!^4 x^n
    op = parse_operator("T^3 - 4x(4T+3)(4T+2)(4T+1)")
    b = frobenius(op, 15)
    assert [b.f0[n] for n in range(16)] == [oracles.table_coefficient("II", n) for n in range(16)]


def test_frobenius_log_solution():
    op = parse_operator("T^3 - 8x(6T+5)(6T+3)(6T+1)")
    b = frobenius(op, 12)
    r = theta_apply(op, b.f1())
    assert not any(r.log_part[k] for k in range(13))
    assert not any(r.plain[k] for k in range(13))
    assert b.g[0] == 0


def test_frobenius_coefficients_by_hand():
    # L = T^2 - x(T+1): f0 = e^x, and L(e^x log x) = x e^x forces g = -x - 3x^2/4 + ...
    b = frobenius(T ** 2 - X * (T + 1), 5)
    assert [b.f0[n] for n in range(6)] == [F(1, factorial(n)) for n in range(6)]
    assert (b.g[0], b.g[1], b.g[2]) == (0, -1, F(-3, 4))


def test_frobenius_degenerate_operator():
    b = frobenius(T ** 3, 6)
    assert [b.f0[n] for n in range(7)] == [1, 0, 0, 0, 0, 0, 0]
    assert not any(b.g[n] for n in range(7))


@pytest.mark.parametrize("op", ["T - x", "T^2 + T - x", "x - 1", "T^2 - y"])
def test_not_maximally_unipotent(op):
    with pytest.raises((NotMUM, ValueError)):
        frobenius(parse_operator(op), 5)


def test_annihilator_check_precision():
    with pytest.raises(ValueError):
        annihilator_check(X * T, PSeries([1, 1], prec=2), 5)


def test_normalized_and_difference():
    op = 3 * T ** 2 - X
    assert op.normalized() == T ** 2 - F(1, 3) * X
    assert (T ** 2).difference(T ** 2 + X) == "x: 0 vs 1"
    with pytest.raises(ValueError):
        X.normalized()
    with pytest.raises(ValueError):
        T.scale("x", 0)
    with pytest.raises(ValueError):
        T ** -1


def test_central_binomial_oracle():
    # T^2 - 16x(T+1/2)^2 has f0 = 2F1(1/2,1/2;1;16x) = sum binom(2n, n)^2 x^n
    b = frobenius(T ** 2 - 16 * X * (T + F(1, 2)) ** 2, 10)
    want = oracles.pfq([F(1, 2), F(1, 2)], [F(1)], 11, 16)
    assert [b.f0[n] for n in range(11)] == want
    assert want[3] == F(factorial(6), factorial(3) ** 2) ** 2
