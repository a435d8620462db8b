"""Generalized hypergeometric series and transformation identities."""
from dataclasses import dataclass
from fractions import Fraction

from .series import PSeries, pow_rational, compose, dq, SeriesError
from .report import VerificationReport, series_item, skip_item
from . import forms

F = Fraction


@dataclass(frozen=True)
class HypergeomParams:
    upper: tuple
    lower: tuple

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(F(u) for u in self.upper))
        object.__setattr__(self, "lower", tuple(F(v) for v in self.lower))
        for v in self.lower:
            if v <= 0 and v.denominator == 1:
                raise ValueError(f"lower parameter {v} is zero or a negative integer")


def pfq_series(params, order, scale=1):
    """sum_n prod(upper)_n / (prod(lower)_n n!) (scale z)^n through z^order."""
    scale = F(scale)
    c = F(1)
    coeffs = [c]
    for n in range(order):
        num = scale
        for u in params.upper:
            num *= u + n
        den = n + 1
        for v in params.lower:
            den *= v + n
        c = c * num / den
        coeffs.append(c)
    return PSeries(coeffs, prec=order + 1)


def hyp2f1(a, b, c, order, scale=1):
    return pfq_series(HypergeomParams((a, b), (c,)), order, scale)


def deriv(f):
    """d/dt of an integer-exponent series."""
    return PSeries([c * (f.shift + k) for k, c in enumerate(f.coeffs)],
                   f.shift - 1, f.ram, None if f.prec is None else f.prec - 1) \
        if f.coeffs else PSeries([], prec=None if f.prec is None else f.prec - 1)


def hg_ode_residual(a, b, f, order=None, c=1):
    """t(1-t) f'' + [c - (1+a+b) t] f' - a b f."""
    a, b, c = F(a), F(b), F(c)
    t = PSeries.gen()
    f1 = deriv(f)
    f2 = deriv(f1)
    res = t * (1 - t) * f2 + (c - (1 + a + b) * t) * f1 - a * b * f
    if order is not None and (res.prec is None or res.prec > order + 1):
        res = res.truncate(order + 1)
    return res


def _sqrt1m(z):
    """(1 - z)^(1/2) for z of positive valuation."""
    return pow_rational(1 - z, F(1, 2))


# -- transformation identities, each as (lhs, rhs) in the free variable ----

def euler_sides(a, b, c, order):
    """(1-t)^a 2F1(a,b;c;t) and 2F1(a,c-b;c;t/(t-1))."""
    n = order + 1
    t = PSeries.gen(prec=n)
    lhs = pow_rational(1 - t, a) * hyp2f1(a, b, c, order)
    rhs = compose(hyp2f1(a, c - b, c, order), t / (t - 1))
    return lhs, rhs


def kummer_sides(a, b, order):
    """((1+sqrt(1-z))/2)^(2a) 2F1(a,b;a+b+1/2;z) and
    2F1(2a, a-b+1/2; a+b+1/2; (sqrt(1-z)-1)/(sqrt(1-z)+1))."""
    n = order + 1
    z = PSeries.gen(prec=n)
    r = _sqrt1m(z)
    c = a + b + F(1, 2)
    lhs = pow_rational((1 + r) / 2, 2 * a) * hyp2f1(a, b, c, order)
    rhs = compose(hyp2f1(2 * a, a - b + F(1, 2), c, order), (r - 1) / (r + 1))
    return lhs, rhs


def quadratic_sides(alpha, beta, order):
    """2F1(al,be;al-be+1;x) and (1-x)^(-al) 2F1(al/2,(1+al)/2-be;al-be+1;-4x/(1-x)^2)."""
    n = order + 1
    x = PSeries.gen(prec=n)
    c = alpha - beta + 1
    lhs = hyp2f1(alpha, beta, c, order)
    arg = -4 * x / ((1 - x) * (1 - x))
    rhs = pow_rational(1 - x, -alpha) * compose(
        hyp2f1(alpha / 2, (1 + alpha) / 2 - beta, c, order), arg)
    return lhs, rhs


def clausen_sides(a, b, order):
    """2F1(a,b;a+b+1/2;z)^2 and 3F2(2a,a+b,2b;a+b+1/2,2a+2b;z)."""
    c = a + b + F(1, 2)
    f = hyp2f1(a, b, c, order)
    g = pfq_series(HypergeomParams((2 * a, a + b, 2 * b), (c, 2 * a + 2 * b)), order)
    return f * f, g


TRANSFORMS = ("euler", "kummer_quadratic", "quadratic_abm1", "clausen")

_ANCHORS = {
    "euler": "(1-t)^a 2F1(a,b;c;t) = 2F1(a,c-b;c;t/(t-1))",
    "kummer_quadratic": "((1+sqrt(1-z))/2)^(2a) 2F1(a,b;a+b+1/2;z) = "
                        "2F1(2a,a-b+1/2;a+b+1/2;(sqrt(1-z)-1)/(sqrt(1-z)+1))",
    "quadratic_abm1": "2F1(al,be;al-be+1;x) = (1-x)^(-al) 2F1(al/2,(1+al)/2-be;al-be+1;-4x/(1-x)^2)",
    "clausen": "2F1(a,b;a+b+1/2;z)^2 = 3F2(2a,a+b,2b;a+b+1/2,2a+2b;z)",
}


def transform_item(kind, params, order, ident=None):
    """One identity check; params is (a, b) or (a, b, c) for euler."""
    params = tuple(F(p) for p in params)
    ident = ident or f"{kind}{tuple(str(p) for p in params)}".replace("'", "")
    anchor = _ANCHORS[kind]
    try:
        if kind == "euler":
            a, b, c = params if len(params) == 3 else (params[0], params[1], F(1))
            lhs, rhs = euler_sides(a, b, c, order)
        elif kind == "kummer_quadratic":
            lhs, rhs = kummer_sides(params[0], params[1], order)
        elif kind == "quadratic_abm1":
            lhs, rhs = quadratic_sides(params[0], params[1], order)
        elif kind == "clausen":
            lhs, rhs = clausen_sides(params[0], params[1], order)
        else:
            raise KeyError(f"unknown transformation {kind!r}")
    except ValueError as exc:
        return skip_item(ident, anchor, order, f"forbidden parameters: {exc}")
    return series_item(ident, anchor, order, lhs, rhs)


def transform_check(kind, params, order):
    rep = VerificationReport(f"transform-{kind}", order)
    rep.add(transform_item(kind, params, order))
    return rep


# -- modular specializations -------------------------------------------------

def classical_e4_items(order):
    z = forms.haupt1(order)
    lhs = pow_rational(compose(hyp2f1(F(1, 12), F(5, 12), 1, order), z), 4)
    t = PSeries.gen(prec=order + 1)
    left = pow_rational(1 - t, F(1, 6)) * hyp2f1(F(1, 6), F(1, 6), 1, order)
    right = compose(hyp2f1(F(1, 6), F(5, 6), 1, order), t / (t - 1))
    return [
        series_item("e4.classical", "E4 = 2F1(1/12,5/12;1;1728/j)^4", order,
                    lhs, forms.eisenstein(4, order)),
        series_item("e4.euler_1_6", "(1-t)^(1/6) 2F1(1/6,1/6;1;t) = 2F1(1/6,5/6;1;t/(t-1))",
                    order, left, right),
    ]


def classical_e4_check(order):
    if order < 2:
        raise ValueError("order must be at least 2")
    rep = VerificationReport("classical-e4", order)
    rep.extend(classical_e4_items(order))
    return rep


# The eight (a, b) pairs for which the two-parameter family is realized by
# modular forms, with the weight-one series h and argument t as q-series.
PAIRS = (
    (F(1, 12), F(5, 12)), (F(1, 12), F(7, 12)),
    (F(1, 8), F(3, 8)), (F(1, 8), F(5, 8)),
    (F(1, 6), F(1, 3)), (F(1, 6), F(2, 3)),
    (F(1, 4), F(1, 4)), (F(1, 4), F(3, 4)),
)

CLAUSEN_PAIRS = ((F(1, 12), F(5, 12)), (F(1, 8), F(3, 8)), (F(1, 6), F(1, 3)), (F(1, 4), F(1, 4)))


def _ratio_sqrt(s, sign):
    """((1 + sign*s)/(1 - sign*s))^(1/2)."""
    return pow_rational((1 + sign * s) / (1 - sign * s), F(1, 2))


def pair_realization(a, b, order):
    """(h, t, description) with h = 2F1(a,b;1;t) (1-t)^((a+b)/2) expected as q-series."""
    a, b = F(a), F(b)
    w = order + 1
    key = (a, b)
    if key == (F(1, 12), F(5, 12)):
        e4, e6 = forms.eisenstein(4, w), forms.eisenstein(6, w)
        return pow_rational(e6 / e4, F(1, 2)), forms.haupt1(w), "h = (E6/E4)^(1/2), t = 1728/j"
    if key == (F(1, 12), F(7, 12)):
        e6, e8 = forms.eisenstein(6, w), forms.eisenstein(8, w)
        z = forms.haupt1(w)
        return pow_rational(e8 / e6, F(1, 2)), z / (z - 1), "h = (E8/E6)^(1/2), t = z/(z-1), z = 1728/j"
    if key in ((F(1, 8), F(3, 8)), (F(1, 8), F(5, 8))):
        s = forms.haupt2(w)
        hc = forms.w1pair("c", w)[0]
        if b == F(3, 8):
            return (hc * _ratio_sqrt(s, 1), -4 * s / ((1 - s) * (1 - s)),
                    "h = h_c ((1+s)/(1-s))^(1/2), t = -4s/(1-s)^2, s = -64 eta(2tau)^24/eta^24")
        return (hc * _ratio_sqrt(s, -1), 4 * s / ((1 + s) * (1 + s)),
                "h = h_c ((1-s)/(1+s))^(1/2), t = 4s/(1+s)^2, s = -64 eta(2tau)^24/eta^24")
    if key in ((F(1, 6), F(1, 3)), (F(1, 6), F(2, 3))):
        s = forms.haupt3(w)
        hb = forms.w1pair("b", w)[0]
        if b == F(1, 3):
            return (hb * _ratio_sqrt(s, 1), -4 * s / ((1 - s) * (1 - s)),
                    "h = h_b ((1+s)/(1-s))^(1/2), t = -4s/(1-s)^2, s = -27 eta(3tau)^12/eta^12")
        return (hb * _ratio_sqrt(s, -1), 4 * s / ((1 + s) * (1 + s)),
                "h = h_b ((1-s)/(1+s))^(1/2), t = 4s/(1+s)^2, s = -27 eta(3tau)^12/eta^12")
    if key in ((F(1, 4), F(1, 4)), (F(1, 4), F(3, 4))):
        x = forms.haupt4(w)
        hc = forms.w1pair("c", w)[0]
        if b == F(1, 4):
            return (hc, -4 * x / ((1 - x) * (1 - x)),
                    "h = (2E2(2tau)-E2)^(1/2), t = -4x/(1-x)^2, x = theta2^4/theta3^4")
        return (hc * (1 - x) / (1 + x), 4 * x / ((1 + x) * (1 + x)),
                "h = (2E2(2tau)-E2)^(1/2) (1-x)/(1+x), t = 4x/(1+x)^2, x = theta2^4/theta3^4")
    raise KeyError(f"no modular realization stored for (a, b) = ({a}, {b})")


def pair_items(a, b, order):
    """h = 2F1(a,b;1;t)(1-t)^((a+b)/2) and D_q t / t = h^2 for one pair."""
    a, b = F(a), F(b)
    h, t, desc = pair_realization(a, b, order)
    tag = f"({a},{b})"
    f = compose(hyp2f1(a, b, 1, order + 1), t)
    rhs = f * pow_rational(1 - t, (a + b) / 2)
    return [
        series_item(f"pair{tag}.h", "h = 2F1(a,b;1;t) (1-t)^((a+b)/2)", order, h, rhs, desc),
        series_item(f"pair{tag}.dlog_t", "D_q t / t = h^2", order, dq(t) / t, h * h, desc),
    ]


def thm52_transform_items(order):
    """The quadratic and Euler steps of the level-three derivation, in s and in q."""
    items = [
        transform_item("quadratic_abm1", (F(1, 3), F(1, 3)), order,
                       ident="level3.quadratic(1/3,1/3)"),
        transform_item("euler", (F(1, 6), F(1, 3), F(1)), order, ident="level3.euler(1/6,1/3;1)"),
    ]
    w = order + 1
    s = forms.haupt3(w)
    hb = forms.w1pair("b", w)[0]
    q1 = compose(hyp2f1(F(1, 6), F(1, 3), 1, w), -4 * s / ((1 - s) * (1 - s)))
    q2 = pow_rational((1 - s) / (1 + s), F(1, 3)) * compose(
        hyp2f1(F(1, 6), F(2, 3), 1, w), 4 * s / ((1 + s) * (1 + s)))
    items.append(series_item("level3.h_b_quadratic",
                             "((3E2(3tau)-E2)/2)^(1/2) = 2F1(1/6,1/3;1;-4s/(1-s)^2)", order, hb, q1))
    items.append(series_item("level3.h_b_euler",
                             "((3E2(3tau)-E2)/2)^(1/2) = ((1-s)/(1+s))^(1/3) 2F1(1/6,2/3;1;4s/(1+s)^2)",
                             order, hb, q2))
    # Level-two counterpart of the (1/4,1/4) realization: both arguments agree
    x = forms.haupt4(w)
    items.append(series_item("level2.hauptmodul_match",
                             "-4x/(1-x)^2 with x = theta2^4/theta3^4 equals -64 eta(2tau)^24/eta^24",
                             order, -4 * x / ((1 - x) * (1 - x)), forms.haupt2(w)))
    return items


def thm52_items(order):
    items = thm52_transform_items(order)
    for a, b in PAIRS:
        items.extend(pair_items(a, b, order))
        items.append(transform_item("euler", (a, b, F(1)), order, ident=f"pair({a},{b}).euler"))
    return items


def self_consistency_items(order):
    """Every 2F1(a,b;1;t) used anywhere solves its own ODE."""
    seen = set()
    items = []
    params = [(F(1, 2), F(1, 2)), (F(1, 3), F(1, 3)), (F(1, 4), F(1, 4)), (F(1, 6), F(1, 6)),
              (F(1, 12), F(5, 12)), (F(1, 6), F(5, 6))] + list(PAIRS)
    for a, b in params:
        if (a, b) in seen:
            continue
        seen.add((a, b))
        f = hyp2f1(a, b, 1, order + 1)
        items.append(series_item(f"ode({a},{b})", "t(1-t)f'' + [1-(1+a+b)t]f' - ab f = 0",
                                 order - 1, hg_ode_residual(a, b, f), PSeries([])))
    return items


def hypergeom_items(order):
    items = []
    items.extend(self_consistency_items(order))
    for a, b in CLAUSEN_PAIRS:
        items.append(transform_item("clausen", (a, b), order, ident=f"clausen({a},{b})"))
    for a, b in PAIRS:
        if (a, b) not in CLAUSEN_PAIRS:
            items.append(transform_item("clausen", (a, b), order, ident=f"clausen({a},{b})"))
    items.append(transform_item("kummer_quadratic", (F(1, 12), F(5, 12)), order,
                                ident="kummer(1/12,5/12)"))
    items.extend(classical_e4_items(order))
    return items
