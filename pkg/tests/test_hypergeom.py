from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

import oracles
from modpde import hypergeom as hg
from modpde.hypergeom import HypergeomParams, pfq_series, hyp2f1, transform_item
from modpde.series import PSeries

# parameters with small denominators, away from the non-positive integers
param = st.fractions(min_value=F(1, 12), max_value=F(11, 12), max_denominator=12)


def known(s, n):
    return [s[k] for k in range(n)]


@given(st.lists(param, min_size=1, max_size=3), st.lists(param, min_size=0, max_size=2),
       st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_pfq_matches_product_formula(upper, lower, scale):
    got = pfq_series(HypergeomParams(upper, lower), 12, scale)
    assert known(got, 13) == oracles.pfq(upper, lower, 13, scale)


@given(param, param)
def test_hypergeometric_ode_holds(a, b):
    f = hyp2f1(a, b, 1, 20)
    res = hg.hg_ode_residual(a, b, f)
    assert not any(res[k] for k in range(19))


@given(param, param)
def test_ode_fails_for_wrong_parameters(a, b):
    f = hyp2f1(a, b, 1, 10)
    res = hg.hg_ode_residual(a + 1, b, f)
    assert any(res[k] for k in range(9))


@given(param, param, st.sampled_from([F(1), F(3, 2), F(5, 3)]))
def test_euler_transformation(a, b, c):
    assert transform_item("euler", (a, b, c), 15).status == "pass"


@given(param, param)
def test_kummer_quadratic_transformation(a, b):
    assert transform_item("kummer_quadratic", (a, b), 12).status == "pass"


@given(param, param)
def test_quadratic_transformation(alpha, beta):
    assert transform_item("quadratic_abm1", (alpha, beta), 12).status == "pass"


@given(param, param)
def test_clausen_square(a, b):
    assert transform_item("clausen", (a, b), 12).status == "pass"


@pytest.mark.parametrize("a, b", hg.CLAUSEN_PAIRS)
def test_clausen_pairs_at_order_30(a, b):
    lhs, rhs = hg.clausen_sides(a, b, 30)
    want = oracles.pfq([2 * a, a + b, 2 * b], [a + b + F(1, 2), 2 * a + 2 * b], 31)
    assert known(lhs, 31) == want
    assert known(rhs, 31) == want


def test_clausen_fails_off_the_balanced_line():
    # the square of 2F1(a,b;c) is a 3F2 only when c = a + b + 1/2
    a = b = F(1, 3)
    f = hyp2f1(a, b, 1, 10)
    g = oracles.pfq([2 * a, a + b, 2 * b], [F(1), 2 * a + 2 * b], 11)
    assert known(f * f, 11) != g


def test_forbidden_lower_parameter():
    with pytest.raises(ValueError):
        HypergeomParams((F(1, 2),), (0,))
    with pytest.raises(ValueError):
        HypergeomParams((F(1, 2),), (-3,))
    item = transform_item("euler", (F(1, 2), F(1, 2), 0), 5)
    assert item.status == "skipped" and "forbidden" in item.detail


def test_unknown_transformation():
    with pytest.raises(KeyError):
        transform_item("pfaff-2", (F(1, 2), F(1, 2)), 5)


def test_classical_e4():
    items = hg.classical_e4_items(30)
    assert [it.status for it in items] == ["pass", "pass"]


def test_trivial_values():
    # 2F1(1, 1; 1; z) = 1/(1 - z); 2F1(1/2, 1/2; 1; z) starts 1 + z/4 + 9z^2/64
    assert known(hyp2f1(1, 1, 1, 6), 7) == [1] * 7
    assert known(hyp2f1(F(1, 2), F(1, 2), 1, 3), 3) == [1, F(1, 4), F(9, 64)]
    assert pfq_series(HypergeomParams((), ()), 3)[3] == F(1, 6)


@pytest.mark.parametrize("a, b", hg.PAIRS)
def test_modular_pairs(a, b):
    assert all(it.status == "pass" for it in hg.pair_items(a, b, 20))


def test_level_three_steps():
    assert all(it.status == "pass" for it in hg.thm52_transform_items(20))


def test_pair_without_realization():
    with pytest.raises(KeyError):
        hg.pair_realization(F(1, 5), F(2, 5), 5)


def test_unperturbed_series_detected():
    h, t, _ = hg.pair_realization(F(1, 12), F(5, 12), 10)
    assert hg.series_item("x", "", 10, h + PSeries.monomial(1, 7), h).first_failure.startswith("q^7")
