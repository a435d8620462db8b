"""q-expansions of classical modular objects.

Every builder takes an ``order`` N and returns a series whose coefficients of
q^e are known for all e <= N (precision N + 1). Intermediate results are
computed with a little extra room so that divisions by series with positive
valuation (eta^24, theta3^4) still land at the requested order.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import PSeries, pow_rational, rescale, dq
from .report import VerificationReport, series_item

BERNOULLI = {2: Fraction(1, 6), 4: Fraction(-1, 30), 6: Fraction(1, 42), 8: Fraction(-1, 30)}

FORM_NAMES = ("E2", "E4", "E6", "E8", "eta", "theta2", "theta3", "theta4", "delta", "j",
              "haupt1", "haupt2", "haupt3", "haupt4",
              "w1pair_a", "w1pair_b", "w1pair_c", "w1pair_d")

# a-parameter of the weight-one pairs
PAIR_PARAM = {"a": Fraction(1, 2), "b": Fraction(1, 3), "c": Fraction(1, 4), "d": Fraction(1, 6)}


@dataclass(frozen=True)
class FormSpec:
    name: str
    order: int


def _trunc(s, order):
    return s.truncate(order + 1)


def divisor_sums(k, n):
    """[sigma_k(0)=0, sigma_k(1), ..., sigma_k(n)] by a sieve."""
    out = [0] * (n + 1)
    for d in range(1, n + 1):
        p = d ** k
        for m in range(d, n + 1, d):
            out[m] += p
    return out


@lru_cache(maxsize=None)
def eisenstein(k, order):
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k not in BERNOULLI:
        raise ValueError(f"no Bernoulli constant stored for weight {k}")
    factor = -Fraction(2 * k) / BERNOULLI[k]
    sig = divisor_sums(k - 1, order)
    coeffs = [Fraction(1)] + [factor * s for s in sig[1:]]
    return PSeries(coeffs, prec=order + 1)


@lru_cache(maxsize=None)
def eta(order):
    """q^(1/24) prod (1 - q^n), via the pentagonal number theorem."""
    coeffs = [0] * (order + 1)
    k = 0
    while True:
        hit = False
        for m in ((k, -k) if k else (0,)):
            e = m * (3 * m - 1) // 2
            if e <= order:
                coeffs[e] += -1 if m % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    # exponent q^(1/24 + n): coefficients known for 1/24 + n <= order
    return PSeries(coeffs, shift=Fraction(1, 24), prec=order + 1)


def _sparse_product(factors, n):
    """Product of sparse polynomials (dicts exponent -> int) truncated below q^n."""
    acc = [0] * n
    acc[0] = 1
    for f in factors:
        new = [0] * n
        for e, c in f.items():
            if e >= n:
                continue
            for i in range(n - e):
                if acc[i]:
                    new[i + e] += c * acc[i]
        acc = new
    return acc


@lru_cache(maxsize=None)
def theta3(order):
    """sum q^(n^2) via the triple product prod (1-q^2n)(1+q^(2n-1))^2."""
    n = order + 1
    factors = []
    for m in range(1, n):
        if 2 * m < n:
            factors.append({0: 1, 2 * m: -1})
        if 2 * m - 1 < n:
            factors.append({0: 1, 2 * m - 1: 2, 4 * m - 2: 1})
    return PSeries(_sparse_product(factors, n), prec=n)


@lru_cache(maxsize=None)
def theta4(order):
    """sum (-1)^n q^(n^2) via prod (1-q^2n)(1-q^(2n-1))^2."""
    n = order + 1
    factors = []
    for m in range(1, n):
        if 2 * m < n:
            factors.append({0: 1, 2 * m: -1})
        if 2 * m - 1 < n:
            factors.append({0: 1, 2 * m - 1: -2, 4 * m - 2: 1})
    return PSeries(_sparse_product(factors, n), prec=n)


@lru_cache(maxsize=None)
def theta2(order):
    """q^(1/4) sum q^(n(n+1)) via 2 q^(1/4) prod (1-q^2n)(1+q^2n)^2."""
    n = order + 1
    factors = []
    for m in range(1, n):
        if 2 * m < n:
            factors.append({0: 1, 2 * m: -1})
            factors.append({0: 1, 2 * m: 2, 4 * m: 1})
    coeffs = [2 * c for c in _sparse_product(factors, n)]
    return PSeries(coeffs, shift=Fraction(1, 4), prec=n)


def _scaled(series_fn, k, order):
    """series(k tau) known through q^order."""
    base = series_fn(order // k + 1)
    return _trunc(rescale(base, k), order)


@lru_cache(maxsize=None)
def delta(order):
    return _trunc(pow_rational(eta(order + 1), 24), order)


@lru_cache(maxsize=None)
def j_invariant(order):
    """E4^3 / eta^24."""
    w = order + 2
    return _trunc(pow_rational(eisenstein(4, w), 3) / pow_rational(eta(w), 24), order)


@lru_cache(maxsize=None)
def haupt1(order):
    """1728 / j."""
    w = order + 1
    return _trunc(1728 * pow_rational(eta(w), 24) / pow_rational(eisenstein(4, w), 3), order)


@lru_cache(maxsize=None)
def haupt2(order):
    """-64 eta(2 tau)^24 / eta(tau)^24."""
    w = order + 1
    num = pow_rational(_scaled(eta, 2, w), 24)
    return _trunc(-64 * num / pow_rational(eta(w), 24), order)


@lru_cache(maxsize=None)
def haupt3(order):
    """-27 eta(3 tau)^12 / eta(tau)^12."""
    w = order + 1
    num = pow_rational(_scaled(eta, 3, w), 12)
    return _trunc(-27 * num / pow_rational(eta(w), 12), order)


@lru_cache(maxsize=None)
def haupt4(order):
    """theta2^4 / theta3^4."""
    w = order + 1
    return _trunc(pow_rational(theta2(w), 4) / pow_rational(theta3(w), 4), order)


def e2_combination(k, order):
    """(k E2(k tau) - E2(tau)) / (k - 1), normalized to constant term 1."""
    e2 = eisenstein(2, order)
    return (k * _scaled(lambda n: eisenstein(2, n), k, order) - e2) / (k - 1)


@lru_cache(maxsize=None)
def sqrt_one_minus_haupt1(order):
    """(1 - 1728/j)^(1/2) on the principal branch, as E6 / E4^(3/2)."""
    return _trunc(eisenstein(6, order) / pow_rational(eisenstein(4, order), Fraction(3, 2)), order)


@lru_cache(maxsize=None)
def t_example(order):
    """(s - 1)/(s + 1) with s = (1 - 1728/j)^(1/2); valuation one."""
    w = order + 1
    s = sqrt_one_minus_haupt1(w)
    return _trunc((s - 1) / (s + 1), order)


@lru_cache(maxsize=None)
def w1pair(case, order):
    """(h, t): weight-one series h with constant term 1 and its Hauptmodul t."""
    if case == "a":
        return _trunc(pow_rational(theta4(order), 2), order), haupt4(order)
    if case == "b":
        return _trunc(pow_rational(e2_combination(3, order), Fraction(1, 2)), order), haupt3(order)
    if case == "c":
        return _trunc(pow_rational(e2_combination(2, order), Fraction(1, 2)), order), haupt2(order)
    if case == "d":
        return _trunc(pow_rational(eisenstein(4, order), Fraction(1, 4)), order), t_example(order)
    raise ValueError(f"unknown weight-one case {case!r}")


_BUILDERS = {
    "E2": lambda n: eisenstein(2, n),
    "E4": lambda n: eisenstein(4, n),
    "E6": lambda n: eisenstein(6, n),
    "E8": lambda n: eisenstein(8, n),
    "eta": eta,
    "theta2": theta2,
    "theta3": theta3,
    "theta4": theta4,
    "delta": delta,
    "j": j_invariant,
    "haupt1": haupt1,
    "haupt2": haupt2,
    "haupt3": haupt3,
    "haupt4": haupt4,
    "w1pair_a": lambda n: w1pair("a", n),
    "w1pair_b": lambda n: w1pair("b", n),
    "w1pair_c": lambda n: w1pair("c", n),
    "w1pair_d": lambda n: w1pair("d", n),
}


def build_form(spec):
    """Series (or (h, t) pair for the w1pair_* names) for a FormSpec."""
    if spec.name not in _BUILDERS:
        raise KeyError(f"unknown form {spec.name!r}; known: {', '.join(FORM_NAMES)}")
    if spec.order < 1:
        raise ValueError("order must be at least 1")
    return _BUILDERS[spec.name](spec.order)


# -- checks -------------------------------------------------------------------

def ramanujan_items(order):
    e2, e4, e6 = (eisenstein(k, order) for k in (2, 4, 6))
    return [
        series_item("ramanujan.E2", "D_q E2 = (E2^2 - E4)/12", order,
                    dq(e2), (e2 * e2 - e4) / 12),
        series_item("ramanujan.E4", "D_q E4 = (E2 E4 - E6)/3", order,
                    dq(e4), (e2 * e4 - e6) / 3),
        series_item("ramanujan.E6", "D_q E6 = (E2 E6 - E4^2)/2", order,
                    dq(e6), (e2 * e6 - e4 * e4) / 2),
    ]


def ramanujan_check(order):
    if order < 2:
        raise ValueError("order must be at least 2")
    rep = VerificationReport("ramanujan", order)
    rep.extend(ramanujan_items(order))
    return rep


def theta_jacobi_items(order):
    t2, t3, t4 = theta2(order), theta3(order), theta4(order)
    p3 = pow_rational(t3, 4)
    return [
        series_item("theta.jacobi", "theta3^4 = theta2^4 + theta4^4", order,
                    p3, pow_rational(t2, 4) + pow_rational(t4, 4)),
        series_item("theta.theta4_square", "theta3^2 (1 - theta2^4/theta3^4)^(1/2) = theta4^2",
                    order,
                    pow_rational(t3, 2) * pow_rational(1 - haupt4(order), Fraction(1, 2)),
                    pow_rational(t4, 2)),
    ]


def theta_jacobi_check(order):
    if order < 1:
        raise ValueError("order must be at least 1")
    rep = VerificationReport("theta", order)
    rep.extend(theta_jacobi_items(order))
    return rep


def forms_items(order):
    """Ramanujan's three equations, Jacobi's quartic, the theta4 square and eta^24 = Delta."""
    e4, e6 = eisenstein(4, order), eisenstein(6, order)
    items = ramanujan_items(order) + theta_jacobi_items(order)
    items.append(series_item("eta.delta", "eta^24 = (E4^3 - E6^2)/1728", order,
                             _trunc(pow_rational(eta(order), 24), order),
                             (e4 * e4 * e4 - e6 * e6) / 1728))
    return items
