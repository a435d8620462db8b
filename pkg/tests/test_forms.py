from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

import oracles
from modpde import forms
from modpde.forms import FormSpec, build_form
from modpde.series import pow_rational, dq


def known(s, n, start=0):
    return [s[k] for k in range(start, start + n)]


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_eisenstein_matches_divisor_sums(k):
    assert known(forms.eisenstein(k, 30), 31) == oracles.eisenstein(k, 31)


def test_eta_matches_product():
    e = forms.eta(30)
    assert e.shift == F(1, 24)
    assert [e[F(1, 24) + n] for n in range(30)] == oracles.euler_product(30)


def test_delta_matches_product_and_tau_values():
    d = forms.delta(30)
    assert known(d, 30) == oracles.delta(30)
    # Ramanujan tau: 1, -24, 252, -1472, 4830
    assert known(d, 5, start=1) == [1, -24, 252, -1472, 4830]


def test_j_matches_oracle():
    j = forms.j_invariant(25)
    want = oracles.j_laurent(27)
    assert [j[e] for e in range(-1, 26)] == want
    assert (j[-1], j[0], j[1], j[2]) == (1, 744, 196884, 21493760)


@pytest.mark.parametrize("name, oracle", [("theta3", oracles.theta3), ("theta4", oracles.theta4)])
def test_theta_matches_square_sums(name, oracle):
    assert known(build_form(FormSpec(name, 40)), 41) == oracle(41)


def test_theta2_matches_sum():
    t = forms.theta2(40)
    assert t.shift == F(1, 4)
    assert [t[F(1, 4) + n] for n in range(40)] == oracles.theta2_over_q14(40)


@pytest.mark.parametrize("order", [2, 10, 50])
def test_ramanujan_system(order):
    assert all(it.status == "pass" for it in forms.ramanujan_items(order))


def test_jacobi_quartic_and_delta():
    assert all(it.status == "pass" for it in forms.forms_items(40))


def test_ramanujan_against_oracle():
    # D E2 = (E2^2 - E4)/12 with every series taken from the divisor-sum oracle
    n = 20
    e2, e4 = oracles.eisenstein(2, n), oracles.eisenstein(4, n)
    lhs = [m * c for m, c in enumerate(e2)]
    rhs = [(x - y) / 12 for x, y in zip(oracles.mul(e2, e2, n), e4)]
    assert lhs == rhs
    assert known(dq(forms.eisenstein(2, n - 1)), n) == lhs


def test_hauptmoduln_leading_terms():
    assert known(forms.haupt1(3), 3, 1) == [1728, -1285632, 616294656]
    assert known(forms.haupt2(2), 2, 1) == [-64, -1536]
    assert known(forms.haupt3(2), 2, 1) == [-27, -324]
    assert known(forms.haupt4(2), 2, 1) == [16, -128]
    assert known(forms.t_example(2), 2, 1) == [-432, -51840]


def test_haupt1_is_1728_over_j():
    n = 15
    j = forms.j_invariant(n + 1)
    # relative precision of the product is that of the factor with valuation one
    assert known(forms.haupt1(n) * j, n) == [1728] + [0] * (n - 1)


@pytest.mark.parametrize("case", ["a", "b", "c", "d"])
def test_weight_one_pairs_start_at_one(case):
    h, t = forms.w1pair(case, 10)
    assert h[0] == 1 and t[0] == 0 and t[1] != 0


def test_weight_one_pair_a_is_theta4_squared():
    h, _ = forms.w1pair("a", 20)
    assert known(h, 21) == oracles.mul(oracles.theta4(21), oracles.theta4(21), 21)


def test_weight_one_pair_d_fourth_power_is_e4():
    h, _ = forms.w1pair("d", 20)
    assert known(pow_rational(h, 4), 21) == oracles.eisenstein(4, 21)


@given(st.integers(1, 25))
def test_orders_are_consistent(n):
    # a lower-order build is a truncation of a higher-order build
    for name in ("E4", "delta", "j", "haupt4"):
        lo, hi = build_form(FormSpec(name, n)), build_form(FormSpec(name, 30))
        assert lo.prec == n + 1
        assert lo.identical(hi.truncate(n + 1))


def test_unknown_form_and_bad_order():
    with pytest.raises(KeyError):
        build_form(FormSpec("E10", 5))
    with pytest.raises(ValueError):
        build_form(FormSpec("E4", 0))
    with pytest.raises(ValueError):
        forms.eisenstein(10, 5)
