from fractions import Fraction as F

import pytest
from hypothesis import given, assume, strategies as st

import oracles
from modpde.series import (PSeries, SeriesError, pow_rational, dq, exp, log,
                           compose, reversion, rescale, dump, parse_dump, inverse)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def coeff_lists(min_size=1, max_size=12):
    return st.lists(small, min_size=min_size, max_size=max_size)


def unit_lists(max_size=12):
    return st.tuples(small.filter(lambda c: c != 0), coeff_lists(0, max_size - 1)).map(
        lambda t: [t[0]] + t[1])


def as_series(cs, n):
    return PSeries(cs, prec=n)


def known(s, n):
    return [s[k] for k in range(n)]


# -- arithmetic against schoolbook oracles -------------------------------------

@given(coeff_lists(), coeff_lists())
def test_product_matches_schoolbook(a, b):
    n = 10
    got = as_series(a, n) * as_series(b, n)
    assert known(got, n) == oracles.mul(a + [F(0)] * n, b + [F(0)] * n, n)


@given(unit_lists())
def test_inverse_matches_term_by_term_solve(a):
    n = 10
    got = 1 / as_series(a, n)
    assert known(got, n) == oracles.inverse(a + [F(0)] * n, n)


@given(coeff_lists(), coeff_lists(), coeff_lists())
def test_product_associates(a, b, c):
    x, y, z = (as_series(v, 8) for v in (a, b, c))
    assert ((x * y) * z).identical(x * (y * z))


@given(unit_lists(), st.integers(1, 4), st.integers(1, 3))
def test_rational_power_round_trip(a, p, q):
    s = as_series([F(1)] + a[1:], 9)
    r = pow_rational(s, F(p, q))
    back = pow_rational(r, q)
    assert known(back, 9) == known(s ** p, 9)


@given(coeff_lists(max_size=8))
def test_exp_log_inverse(a):
    s = as_series([F(0)] + a, 9)
    assert known(log(exp(s)), 9) == known(s, 9)


@given(coeff_lists(), coeff_lists())
def test_euler_derivative_is_a_derivation(a, b):
    x, y = as_series(a, 8), as_series(b, 8)
    assert known(dq(x * y), 7) == known(dq(x) * y + x * dq(y), 7)


@given(coeff_lists(max_size=8), coeff_lists(max_size=8))
def test_compose_matches_oracle(outer, inner):
    n = 8
    assume(any(inner))
    inner = [F(0)] + inner
    got = compose(as_series(outer, n), as_series(inner, n))
    want = oracles.compose(outer + [F(0)] * n, inner + [F(0)] * n, n)
    assert known(got, n) == want


@given(small.filter(lambda c: c != 0), coeff_lists(max_size=7))
def test_reversion_matches_oracle_and_round_trips(c, rest):
    n = 8
    a = [F(0), c] + rest
    s = as_series(a, n)
    r = reversion(s)
    assert known(r, n) == oracles.reversion(a + [F(0)] * n, n)
    assert known(compose(s, r), n) == [F(0), F(1)] + [F(0)] * (n - 2)


@given(coeff_lists(), st.integers(1, 4))
def test_rescale_spreads_coefficients(a, k):
    s = as_series(a, 6)
    r = rescale(s, k)
    assert r.prec == 6 * k
    for e in range(6 * k):
        assert r[e] == (s[e // k] if e % k == 0 else 0)


@given(coeff_lists(), st.integers(0, 3), st.integers(1, 4))
def test_dump_round_trip(a, shift, ram):
    s = PSeries(a, shift=F(shift, ram), ram=ram, prec=shift + 3)
    assert parse_dump(dump(s)).identical(s)


# -- precision bookkeeping ------------------------------------------------------

def test_unknown_coefficients_raise():
    s = PSeries([1, 2, 3], prec=3)
    assert s[2] == 3
    with pytest.raises(SeriesError):
        s[3]


def test_division_by_positive_valuation_loses_precision():
    q = PSeries.gen(prec=10)
    s = PSeries([1, 1, 1], prec=10) / (q + q * q)
    assert s.shift == -1 and s.prec == 8


def test_puiseux_exponents_merge():
    a = PSeries.monomial(1, F(1, 2), prec=3)
    b = PSeries.monomial(1, F(1, 3), prec=3)
    c = a * b
    assert c[F(5, 6)] == 1 and c.ram in (1, 6)


def test_trivial_values():
    q = PSeries.gen()
    assert (q * q)[2] == 1
    assert dq(PSeries.monomial(3, 5))[5] == 15
    assert exp(PSeries([], prec=5))[0] == 1


def test_reversion_rejects_non_linear_start():
    with pytest.raises(SeriesError):
        reversion(PSeries([1, 1], prec=5))


def test_log_needs_unit():
    with pytest.raises(SeriesError):
        log(PSeries([0, 1], prec=5))


def test_inverse_of_zero_series_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(PSeries([], prec=4))
