"""Weight-one forms h and their Hauptmoduln t: the second-order ODE in t.

For any f and nonconstant t, with G_t = D_q t / t and G_f = D_q f / f,

    D_t^2 f + P D_t f - R f = 0,   P = (D_q G_t - 2 G_f G_t)/G_t^2,
                                   R = (D_q G_f - G_f^2)/G_t^2,

where D_t = G_t^{-1} D_q. For f = h (1 - t)^(-a) = 2F1(a, a; 1; t) the
hypergeometric equation (1 - t) D_t^2 f - 2a t D_t f - a^2 t f = 0 forces
P = -2a t/(1 - t) and R = +a^2 t/(1 - t).
"""
from fractions import Fraction

from . import forms
from .series import PSeries, pow_rational, compose, dq
from .hypergeom import hyp2f1
from .report import VerificationReport, series_item, skip_item

F = Fraction

CASES = ("a", "b", "c", "d")


def coefficient_ratios(f, t):
    """(G_t, G_f, P, R) for q-series f and t."""
    gt = dq(t) / t
    gf = dq(f) / f
    p = (dq(gt) - 2 * gf * gt) / (gt * gt)
    r = (dq(gf) - gf * gf) / (gt * gt)
    return gt, gf, p, r


def d_t(g, gt):
    """D_t g = D_q g / G_t."""
    return dq(g) / gt


def _first_difference(lhs, rhs, order):
    diff = lhs - rhs
    for e, c in diff.terms():
        if e <= order:
            return f"q^{e}: {lhs[e]} vs {rhs[e]}"
    return None


def weight1_items(case, order):
    if case not in CASES:
        raise ValueError(f"unknown weight-one case {case!r}; expected one of {CASES}")
    a = forms.PAIR_PARAM[case]
    w = order + 2
    h, t = forms.w1pair(case, w)
    tag = f"w1.{case}"
    items = []
    rhs = compose(hyp2f1(a, a, 1, w), t) * pow_rational(1 - t, a)
    items.append(series_item(f"{tag}.hypergeometric", f"h = 2F1(a,a;1;t)(1-t)^a with a = {a}",
                             order, h, rhs))
    gt = dq(t) / t
    items.append(series_item(f"{tag}.dlog_t", "D_q t / t = h^2", order, gt, h * h))
    if case == "b":
        items.append(series_item(f"{tag}.G_t_eisenstein", "G_t = (3E2(3tau) - E2)/2", order,
                                 gt, forms.e2_combination(3, w)))
    if case == "a":
        t3 = forms.theta3(w)
        items.append(series_item(f"{tag}.theta3_square", "theta3^2 = 2F1(1/2,1/2;1;theta2^4/theta3^4)",
                                 order, t3 * t3, compose(hyp2f1(a, a, 1, w), t)))
    f = h / pow_rational(1 - t, a)
    _, _, p, r = coefficient_ratios(f, t)
    one_minus = 1 - t
    p_target = -2 * a * t / one_minus
    r_target = a * a * t / one_minus
    items.append(series_item(f"{tag}.ratio_P", "(D_q G_t - 2 G_f G_t)/G_t^2 = -2a t/(1-t)",
                             order, p, p_target))
    items.append(series_item(f"{tag}.ratio_R", "(D_q G_f - G_f^2)/G_t^2 = a^2 t/(1-t)",
                             order, r, r_target))
    negated = -a * a * t / one_minus
    hit = _first_difference(r, negated, order)
    if hit is None:
        items.append(series_item(f"{tag}.ratio_R_negated", "(D_q G_f - G_f^2)/G_t^2 = -a^2 t/(1-t)",
                                 order, r, negated))
    else:
        items.append(skip_item(f"{tag}.ratio_R_negated", "(D_q G_f - G_f^2)/G_t^2 = -a^2 t/(1-t)",
                               order, f"negated ratio is refuted ({hit}); the equation forces "
                                      f"+a^2 t/(1-t) given the sign of the f term"))
    dtf = d_t(f, gt)
    dttf = d_t(dtf, gt)
    items.append(series_item(f"{tag}.ratio_residual", "D_t^2 f + P D_t f - R f = 0", order,
                             dttf + p * dtf - r * f, PSeries([])))
    items.append(series_item(f"{tag}.ode", "(1-t) D_t^2 f - 2a t D_t f - a^2 t f = 0", order,
                             one_minus * dttf - 2 * a * t * dtf - a * a * t * f, PSeries([])))
    # the same ratios for h itself
    _, _, ph, rh = coefficient_ratios(h, t)
    items.append(series_item(f"{tag}.ratio_P_h", "(D_q G_t - 2 G_h G_t)/G_t^2 = 0 since G_t = h^2",
                             order, ph, PSeries([])))
    items.append(series_item(f"{tag}.ratio_R_h", "(D_q G_h - G_h^2)/G_t^2 = -a(1-a) t/(1-t)^2",
                             order, rh, -a * (1 - a) * t / (one_minus * one_minus)))
    return items


def weight1_ode_check(case, order):
    if order < 2:
        raise ValueError("order must be at least 2")
    rep = VerificationReport(f"weight1({case})", order)
    rep.extend(weight1_items(case, order))
    return rep
