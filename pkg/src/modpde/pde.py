"""Second-order systems satisfied by weight-(1,1) functions of two variables.

Given F, x, y as bivariate fractions together with the derivations
D_{q_j} = w_j * theta_j, this module computes the logarithmic derivatives
G_{t,j} = D_{q_j} t / t, the eight coefficient functions a_0..a_3, b_0..b_3,
the derivatives D_x F, D_y F, D_x^2 F, D_y D_x F, D_y^2 F through the inverse
Jacobian, and the residuals of

    D_x^2 F + a0 D_x D_y F + a1 D_x F + a2 D_y F + a3 F = 0
    D_y^2 F + b0 D_x D_y F + b1 D_x F + b2 D_y F + b3 F = 0.

D_x and D_y are Euler operators x d/dx and y d/dy throughout.
"""
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .bivariate import BiSeries, BiFrac
from .report import bi_zero_item


@dataclass
class TwoVarContext:
    F: BiFrac
    x: BiFrac
    y: BiFrac
    coords: str = "q"
    # D_{q_j} = weights[j-1] * theta_j; None means plain theta_j (q-coordinates)
    weights: tuple = (None, None)
    label: str = ""
    params: dict = field(default_factory=dict)
    order: int = 0

    def __post_init__(self):
        self.F, self.x, self.y = (BiFrac.of(v) for v in (self.F, self.x, self.y))
        if self.coords not in ("q", "t"):
            raise ValueError("coords must be 'q' or 't'")

    def D(self, v, j):
        """D_{q_j} applied to a bivariate value."""
        return BiFrac.of(v).theta(j, self.weights[j - 1])

    def logderiv(self, v, j):
        v = BiFrac.of(v)
        return self.D(v, j) / v

    def swap_variables(self):
        """Exchange q1 and q2 (transpose every series)."""
        w1, w2 = self.weights
        return replace(self, F=self.F.swap(), x=self.x.swap(), y=self.y.swap(),
                       weights=(None if w2 is None else w2.swap(),
                                None if w1 is None else w1.swap()))

    def swap_roles(self):
        """Exchange the roles of x and y."""
        return replace(self, x=self.y, y=self.x)


@dataclass
class GSet:
    Gx1: BiFrac
    Gx2: BiFrac
    Gy1: BiFrac
    Gy2: BiFrac
    GF1: BiFrac
    GF2: BiFrac
    ctx: TwoVarContext = None


@dataclass
class CoefficientSet:
    a0: BiFrac
    a1: BiFrac
    a2: BiFrac
    a3: BiFrac
    b0: BiFrac
    b1: BiFrac
    b2: BiFrac
    b3: BiFrac

    def as_dict(self):
        return {k: getattr(self, k) for k in ("a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3")}


@dataclass
class Derivatives:
    DxF: BiFrac
    DyF: BiFrac
    DxxF: BiFrac
    DyxF: BiFrac
    DyyF: BiFrac


class DegenerateSystem(ArithmeticError):
    """x and y look functionally dependent to the working order."""


def logderivs(ctx):
    lg = ctx.logderiv
    return GSet(lg(ctx.x, 1), lg(ctx.x, 2), lg(ctx.y, 1), lg(ctx.y, 2),
                lg(ctx.F, 1), lg(ctx.F, 2), ctx)


def _nonzero(v, what):
    if v.is_zero():
        raise DegenerateSystem(f"{what} vanishes to the working order")
    return v


def coefficient_set(g):
    ctx = g.ctx
    D = ctx.D
    Gx1, Gx2, Gy1, Gy2, GF1, GF2 = g.Gx1, g.Gx2, g.Gy1, g.Gy2, g.GF1, g.GF2
    s = _nonzero(Gx1 * Gy2 + Gy1 * Gx2, "G_x1 G_y2 + G_y1 G_x2")
    den = _nonzero(Gx1 * Gx1 * Gy2 * Gy2 - Gy1 * Gy1 * Gx2 * Gx2,
                   "G_x1^2 G_y2^2 - G_y1^2 G_x2^2")
    px1 = D(Gx1, 1) - 2 * GF1 * Gx1
    px2 = D(Gx2, 2) - 2 * GF2 * Gx2
    py1 = D(Gy1, 1) - 2 * GF1 * Gy1
    py2 = D(Gy2, 2) - 2 * GF2 * Gy2
    qf1 = D(GF1, 1) - GF1 * GF1
    qf2 = D(GF2, 2) - GF2 * GF2
    y1s, y2s, x1s, x2s = Gy1 * Gy1, Gy2 * Gy2, Gx1 * Gx1, Gx2 * Gx2
    inv = den.inverse()
    return CoefficientSet(
        a0=2 * Gy1 * Gy2 / s,
        a1=(y2s * px1 - y1s * px2) * inv,
        a2=(y2s * py1 - y1s * py2) * inv,
        a3=-(y2s * qf1 - y1s * qf2) * inv,
        b0=2 * Gx1 * Gx2 / s,
        b1=(-x2s * px1 + x1s * px2) * inv,
        b2=(-x2s * py1 + x1s * py2) * inv,
        b3=-(-x2s * qf1 + x1s * qf2) * inv,
    )


def jacobian(g):
    """(Delta, Delta_x, Delta_y) of the inverse-Jacobian route."""
    delta = g.Gx1 * g.Gy2 - g.Gx2 * g.Gy1
    dx = g.GF1 * g.Gy2 - g.GF2 * g.Gy1
    dy = -g.Gx2 * g.GF1 + g.Gx1 * g.GF2
    return _nonzero(delta, "Delta = G_x1 G_y2 - G_x2 G_y1"), dx, dy


def derivatives(g):
    """D_x F, D_y F and the second derivatives by the explicit product-rule formulas."""
    ctx = g.ctx
    D = ctx.D
    F = ctx.F
    delta, dx, dy = jacobian(g)
    inv = delta.inverse()
    rx, ry = dx * inv, dy * inv
    d1rx, d2rx = D(rx, 1), D(rx, 2)
    d1ry, d2ry = D(ry, 1), D(ry, 2)
    f_over = F * inv
    return Derivatives(
        DxF=F * rx,
        DyF=F * ry,
        DxxF=F * rx * rx + f_over * (g.Gy2 * d1rx - g.Gy1 * d2rx),
        DyxF=F * rx * ry + f_over * (-g.Gx2 * d1rx + g.Gx1 * d2rx),
        DyyF=F * ry * ry + f_over * (-g.Gx2 * d1ry + g.Gx1 * d2ry),
    )


def op_Dx(g, h):
    """Generic x d/dx of a bivariate value through the inverse Jacobian."""
    D = g.ctx.D
    delta = g.Gx1 * g.Gy2 - g.Gx2 * g.Gy1
    return (g.Gy2 * D(h, 1) - g.Gy1 * D(h, 2)) / delta


def op_Dy(g, h):
    D = g.ctx.D
    delta = g.Gx1 * g.Gy2 - g.Gx2 * g.Gy1
    return (-g.Gx2 * D(h, 1) + g.Gx1 * D(h, 2)) / delta


def residual_main(ctx, c, g=None, d=None):
    """Residuals of the two equations of the system with coefficients c."""
    g = g or logderivs(ctx)
    d = d or derivatives(g)
    F = ctx.F
    r1 = d.DxxF + c.a0 * d.DyxF + c.a1 * d.DxF + c.a2 * d.DyF + c.a3 * F
    r2 = d.DyyF + c.b0 * d.DyxF + c.b1 * d.DxF + c.b2 * d.DyF + c.b3 * F
    return r1, r2


# -- pseudorandom formal instances ---------------------------------------

def _random_poly(rng, order, const, linear, degree=4, spread=3):
    terms = {(0, 0): const, (1, 0): linear[0], (0, 1): linear[1]}
    for d in range(2, degree + 1):
        for i in range(d + 1):
            v = rng.randint(-spread, spread)
            if v:
                terms[(i, d - i)] = v
    return BiSeries.poly(terms, order)


def random_context(seed, order, degree=4):
    """F, x, y random integer polynomials of degree <= 4 with nonzero constant terms.

    The linear parts (a1, a2) of x and (b1, b2) of y satisfy a1 b2 - a2 b1 != 0
    and a1 b2 + a2 b1 != 0, so Delta and G_x1 G_y2 + G_y1 G_x2 are u1 u2 times a
    unit and every coefficient function is a genuine bivariate series.
    """
    rng = random.Random(seed)
    while True:
        a1, a2, b1, b2 = (rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(4))
        if a1 * b2 - a2 * b1 and a1 * b2 + a2 * b1:
            break
    cx, cy, cf = (rng.choice([-2, -1, 1, 2]) for _ in range(3))
    x = _random_poly(rng, order, cx, (a1, a2), degree)
    y = _random_poly(rng, order, cy, (b1, b2), degree)
    fl = (rng.randint(-3, 3), rng.randint(-3, 3))
    F = _random_poly(rng, order, cf, fl, degree)
    return TwoVarContext(F, x, y, "q", label=f"random(seed={seed})",
                         params={"seed": seed}, order=order)


def random_contexts(seed, count, order):
    base = random.Random(seed)
    return [random_context(base.randrange(2 ** 32), order) for _ in range(count)]


def rescaled_context(ctx, k1, k2):
    """Substitute q1 -> q1^k1, q2 -> q2^k2 (q-coordinates only)."""
    if ctx.coords != "q":
        raise ValueError("rescaling is defined for q-coordinate contexts")
    return replace(ctx, F=ctx.F.rescale(k1, k2), x=ctx.x.rescale(k1, k2),
                   y=ctx.y.rescale(k1, k2), label=f"{ctx.label} rescaled ({k1},{k2})")


def one(order):
    return BiSeries.const(Fraction(1), order)


def random_instance_items(seed, count, order, margin=4):
    """Residuals of the system for ``count`` seeded random contexts, certified through ``order``."""
    items = []
    for k, ctx in enumerate(random_contexts(seed, count, order + margin)):
        tag = f"random[{k:02d}](seed={ctx.params['seed']})"
        c = coefficient_set(logderivs(ctx))
        r1, r2 = residual_main(ctx, c)
        items.append(bi_zero_item(f"{tag}.main.1", "D_x^2F + a0 D_xD_yF + a1 D_xF + a2 D_yF + a3 F = 0",
                                  order, r1))
        items.append(bi_zero_item(f"{tag}.main.2", "D_y^2F + b0 D_xD_yF + b1 D_xF + b2 D_yF + b3 F = 0",
                                  order, r2))
    return items
