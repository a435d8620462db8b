from fractions import Fraction as F

import pytest

import oracles
from modpde import forms, weight1
from modpde.series import dq, pow_rational


def by_id(items):
    return {it.id: it for it in items}


@pytest.mark.parametrize("case", weight1.CASES)
def test_weight_one_ode_items(case):
    items = weight1.weight1_items(case, 25)
    failed = [it.id for it in items if it.status == "fail"]
    assert not failed
    assert by_id(items)[f"w1.{case}.ratio_R_negated"].status == "skipped"


@pytest.mark.parametrize("case", weight1.CASES)
def test_ratio_r_has_positive_sign(case):
    a = forms.PAIR_PARAM[case]
    h, t = forms.w1pair(case, 20)
    f = h / pow_rational(1 - t, a)
    _, _, _, r = weight1.coefficient_ratios(f, t)
    target = a * a * t / (1 - t)
    assert all(r[k] == target[k] for k in range(18))


@pytest.mark.xfail(strict=True, reason="the negated ratio -a^2 t/(1-t) is refuted at q^1")
@pytest.mark.parametrize("case", weight1.CASES)
def test_ratio_r_negated_sign(case):
    a = forms.PAIR_PARAM[case]
    h, t = forms.w1pair(case, 12)
    _, _, _, r = weight1.coefficient_ratios(h / pow_rational(1 - t, a), t)
    target = -a * a * t / (1 - t)
    assert all(r[k] == target[k] for k in range(10))


def test_level_three_log_derivative_is_eisenstein():
    # D_q t / t for t = -27 eta(3tau)^12/eta^12 equals (3E2(3tau) - E2)/2, from divisor sums
    n = 20
    t = forms.haupt3(n + 1)
    gt = dq(t) / t
    e2 = oracles.eisenstein(2, n)
    e2_3 = [F(0)] * n
    for k in range(0, n, 3):
        e2_3[k] = e2[k // 3]
    want = [(3 * u - v) / 2 for u, v in zip(e2_3, e2)]
    assert [gt[k] for k in range(n)] == want


def test_unknown_case():
    with pytest.raises(ValueError):
        weight1.weight1_items("e", 5)
    with pytest.raises(ValueError):
        weight1.weight1_ode_check("a", 1)
