"""Truncated Puiseux series over Q.

A :class:`PSeries` stands for

    q^shift * (c[0] + c[1] q^(1/ram) + c[2] q^(2/ram) + ...) + O(q^prec)

with exact :class:`fractions.Fraction` coefficients. Every coefficient whose
exponent is below ``prec`` is known; everything at or above ``prec`` is
unknown (never silently zero). ``prec=None`` marks an exact object such as a
polynomial. The leading exponent ``shift`` may lie off the ``1/ram`` grid of
increments, which is how q^(1/24) * (1 - q - q^2 + ...) keeps integer steps.
"""
from fractions import Fraction
from math import ceil, gcd

from . import kernel

ZERO = Fraction(0)
ONE = Fraction(1)


class SeriesError(ArithmeticError):
    """Base class for truncated-series failures."""


class OrderUnderflow(SeriesError):
    """Raised when a result would carry no known coefficients at all."""


class UnboundedPrecision(SeriesError):
    """Raised when an infinite expansion is requested from exact inputs."""


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _lcm(a, b):
    return a // gcd(a, b) * b


def _count(lo, hi, ram):
    """Number of grid points lo + k/ram strictly below hi."""
    if hi is None:
        raise UnboundedPrecision("exact series has no finite length")
    n = ceil((hi - lo) * ram)
    return max(n, 0)


class PSeries:
    __slots__ = ("coeffs", "shift", "ram", "prec")

    def __init__(self, coeffs, shift=0, ram=1, prec=None):
        shift = _frac(shift)
        ram = int(ram)
        if ram < 1:
            raise ValueError("ramification index must be positive")
        if prec is not None:
            prec = _frac(prec)
        coeffs = [_frac(c) for c in coeffs]
        if prec is not None:
            n = _count(shift, prec, ram)
            if len(coeffs) > n:
                coeffs = coeffs[:n]
            else:
                coeffs.extend([ZERO] * (n - len(coeffs)))
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        if k == len(coeffs):
            coeffs = []
            shift = prec if prec is not None else ZERO
        elif k:
            coeffs = coeffs[k:]
            shift += Fraction(k, ram)
        if prec is None:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.shift = shift
        self.ram = ram
        self.prec = prec

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def gen(cls, prec=None):
        """The variable q itself."""
        return cls([1], shift=1, prec=prec)

    @classmethod
    def monomial(cls, c, exponent, prec=None):
        exponent = _frac(exponent)
        return cls([c], shift=exponent, ram=exponent.denominator, prec=prec)

    @classmethod
    def from_dict(cls, terms, prec=None):
        """Build from {exponent: coefficient}."""
        terms = {_frac(e): _frac(c) for e, c in terms.items() if c != 0}
        if not terms:
            return cls([], prec=prec)
        lo = min(terms)
        ram = 1
        for e in terms:
            ram = _lcm(ram, (e - lo).denominator)
        n = max(round((e - lo) * ram) for e in terms) + 1
        coeffs = [ZERO] * n
        for e, c in terms.items():
            coeffs[round((e - lo) * ram)] = c
        return cls(coeffs, shift=lo, ram=ram, prec=prec)

    @staticmethod
    def coerce(x):
        if isinstance(x, PSeries):
            return x
        return PSeries.const(_frac(x))

    # -- basic queries ------------------------------------------------
    @property
    def exact(self):
        return self.prec is None

    @property
    def valuation(self):
        """Leading exponent; equals ``prec`` for a series zero to its order."""
        return self.shift

    @property
    def order(self):
        """Largest grid exponent whose coefficient is known (None if exact)."""
        if self.prec is None:
            return None
        return self.prec - Fraction(1, self.ram) if self.coeffs else self.prec

    def is_zero(self):
        """True if every known coefficient vanishes."""
        return not self.coeffs

    def exponents(self):
        return [self.shift + Fraction(k, self.ram) for k in range(len(self.coeffs))]

    def terms(self):
        """(exponent, coefficient) pairs with nonzero coefficient."""
        return [(self.shift + Fraction(k, self.ram), c)
                for k, c in enumerate(self.coeffs) if c]

    def __getitem__(self, e):
        """Coefficient of q^e; raises if e is at or beyond ``prec``."""
        e = _frac(e)
        if self.prec is not None and e >= self.prec:
            raise SeriesError(f"coefficient of q^{e} is unknown (prec {self.prec})")
        k = (e - self.shift) * self.ram
        if k < 0 or k.denominator != 1:
            return ZERO
        k = int(k)
        return self.coeffs[k] if k < len(self.coeffs) else ZERO

    def leading(self):
        if not self.coeffs:
            raise SeriesError("series is zero to its known order")
        return self.coeffs[0]

    def first_nonzero(self):
        """(exponent, coefficient) of the first nonzero term, or None."""
        if not self.coeffs:
            return None
        return self.shift, self.coeffs[0]

    def has_integer_exponents(self):
        return all(e.denominator == 1 for e, _ in self.terms()) and (
            self.ram == 1 and self.shift.denominator == 1 or not self.coeffs)

    def truncate(self, prec):
        """Forget everything at exponent >= prec."""
        prec = _frac(prec)
        if self.prec is not None and prec > self.prec:
            raise SeriesError(f"cannot raise precision from {self.prec} to {prec}")
        return PSeries(self.coeffs, self.shift, self.ram, prec)

    def with_grid(self, ram):
        """Same series re-expressed with increments 1/ram (ram a multiple)."""
        if ram % self.ram:
            raise ValueError("new ramification must be a multiple of the old one")
        step = ram // self.ram
        if step == 1:
            return self
        coeffs = [ZERO] * ((len(self.coeffs) - 1) * step + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            coeffs[k * step] = c
        return PSeries(coeffs, self.shift, ram, self.prec)

    def _grid(self, start, ram, n):
        """Coefficients at start + k/ram for k < n (zeros off support)."""
        out = [ZERO] * n
        if not self.coeffs:
            return out
        off = (self.shift - start) * ram
        step = Fraction(ram, self.ram)
        if off.denominator != 1 or step.denominator != 1:
            raise ValueError("grids are incompatible")
        off, step = int(off), int(step)
        for k, c in enumerate(self.coeffs):
            idx = off + k * step
            if idx >= n:
                break
            if idx >= 0:
                out[idx] = c
        return out

    # -- ring operations ----------------------------------------------
    def __neg__(self):
        return PSeries([-c for c in self.coeffs], self.shift, self.ram, self.prec)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = PSeries.coerce(other)
        except TypeError:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = PSeries.coerce(other)
        except TypeError:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        return PSeries.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            if other == 0:
                return PSeries([], prec=None if self.prec is None else self.prec)
            return PSeries([c * other for c in self.coeffs], self.shift, self.ram, self.prec)
        if not isinstance(other, PSeries):
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            return PSeries([c / other for c in self.coeffs], self.shift, self.ram, self.prec)
        if not isinstance(other, PSeries):
            return NotImplemented
        return _div(self, other)

    def __rtruediv__(self, other):
        return _div(PSeries.coerce(other), self)

    def __pow__(self, e):
        return pow_rational(self, e)

    def __repr__(self):
        body = " + ".join(f"({c})*q^({e})" for e, c in self.terms()[:6])
        tail = "" if self.prec is None else f" + O(q^({self.prec}))"
        return f"PSeries({body or '0'}{tail})"

    def identical(self, other):
        """Structural equality: same known data and same precision."""
        return (self.terms() == other.terms() and self.prec == other.prec)

    def __call__(self, inner):
        return compose(self, inner)


def _merge_grid(a, b):
    lo = min(a.shift, b.shift)
    ram = _lcm(a.ram, b.ram)
    for s in (a.shift, b.shift):
        ram = _lcm(ram, (s - lo).denominator)
    return lo, ram


def _min_prec(*ps):
    known = [p for p in ps if p is not None]
    return min(known) if known else None


def _add(a, b):
    if not b.coeffs and b.prec is None:
        return a
    if not a.coeffs and a.prec is None:
        return b
    prec = _min_prec(a.prec, b.prec)
    lo, ram = _merge_grid(a, b)
    if prec is None:
        hi = max(a.shift + Fraction(len(a.coeffs), a.ram),
                 b.shift + Fraction(len(b.coeffs), b.ram))
        n = _count(lo, hi, ram)
    else:
        n = _count(lo, prec, ram)
    ca, cb = a._grid(lo, ram, n), b._grid(lo, ram, n)
    return PSeries([x + y for x, y in zip(ca, cb)], lo, ram, prec)


def _mul(a, b):
    if (not a.coeffs and a.prec is None) or (not b.coeffs and b.prec is None):
        return PSeries([])
    cand = []
    if a.prec is not None:
        cand.append(a.prec + b.shift)
    if b.prec is not None:
        cand.append(b.prec + a.shift)
    prec = min(cand) if cand else None
    shift = a.shift + b.shift
    ram = _lcm(a.ram, b.ram)
    if prec is None:
        n = (len(a.coeffs) - 1) * (ram // a.ram) + (len(b.coeffs) - 1) * (ram // b.ram) + 1
    else:
        n = _count(shift, prec, ram)
    if n <= 0:
        return PSeries([], shift, ram, prec)
    ca = a.with_grid(ram).coeffs
    cb = b.with_grid(ram).coeffs
    return PSeries(kernel.mul(list(ca), list(cb), n), shift, ram, prec)


def _rel_prec(a):
    return None if a.prec is None else a.prec - a.shift


def _div(a, b):
    if not b.coeffs:
        raise ZeroDivisionError("division by a series that is zero to its known order")
    if len(b.coeffs) == 1 and b.prec is None:
        c = b.coeffs[0]
        return PSeries([x / c for x in a.coeffs], a.shift - b.shift,
                       a.ram, None if a.prec is None else a.prec - b.shift)
    if not a.coeffs:
        if a.prec is None:
            return PSeries([])
        prec = a.prec - b.shift
        return PSeries([], prec=prec)
    ra, rb = _rel_prec(a), _rel_prec(b)
    rel = _min_prec(ra, rb)
    if rel is None:
        raise UnboundedPrecision("quotient of exact series needs a truncated operand")
    ram = _lcm(a.ram, b.ram)
    shift = a.shift - b.shift
    n = _count(ZERO, rel, ram)
    ua = a.with_grid(ram).coeffs
    ub = b.with_grid(ram).coeffs
    inv = kernel.inverse(list(ub[:n]) + [ZERO] * max(0, n - len(ub)), n)
    return PSeries(kernel.mul(list(ua), inv, n), shift, ram, shift + rel)


def inverse(a):
    return _div(PSeries.const(1), a)


# -- analytic operations ------------------------------------------------

def _unit_power(u, e, n):
    """First n coefficients of (u[0] + u[1] z + ...)^e, u[0] == 1.

    Uses the recurrence from u * D(u^e) = e * u^e * D(u).
    """
    u = list(u[:n]) + [ZERO] * max(0, n - len(u))
    out = [ONE] + [ZERO] * (n - 1)
    for k in range(1, n):
        s = ZERO
        for j in range(1, k + 1):
            uj = u[j]
            if uj:
                s += ((e + 1) * j - k) * uj * out[k - j]
        out[k] = s / k
    return out


def pow_rational(a, e):
    """a**e for rational e.

    Non-integer exponents need a leading coefficient 1; the result lives on
    the same increment grid with leading exponent e * shift.
    """
    e = _frac(e)
    if e.denominator == 1:
        n = int(e)
        if n == 0:
            return PSeries.const(1)
        if n < 0:
            return inverse(pow_rational(a, -n))
        if a.prec is None:
            result = PSeries.const(1)
            base = a
            while n:
                if n & 1:
                    result = result * base
                n >>= 1
                if n:
                    base = base * base
            return result
    if not a.coeffs:
        if e > 0 and a.prec is not None:
            return PSeries([], prec=a.prec * e)
        raise ZeroDivisionError("power of a series that is zero to its known order")
    lead = a.coeffs[0]
    if e.denominator != 1 and lead != 1:
        raise SeriesError("non-integer power needs leading coefficient 1")
    rel = _rel_prec(a)
    if rel is None:
        raise UnboundedPrecision("non-polynomial power of an exact series needs a truncation")
    n = _count(ZERO, rel, a.ram)
    unit = [c / lead for c in a.coeffs]
    coeffs = _unit_power(unit, e, n)
    if lead != 1:
        scale = lead ** int(e)
        coeffs = [c * scale for c in coeffs]
    shift = a.shift * e
    return PSeries(coeffs, shift, a.ram, shift + rel)


def dq(a):
    """Euler derivative q d/dq."""
    coeffs = [c * (a.shift + Fraction(k, a.ram)) for k, c in enumerate(a.coeffs)]
    return PSeries(coeffs, a.shift, a.ram, a.prec)


def exp(a):
    """exp of a series with no constant term and positive exponents."""
    if not a.coeffs:
        if a.prec is None:
            return PSeries.const(1)
        return PSeries([1], prec=min(a.prec, _frac(a.prec)))
    if a.shift <= 0:
        raise SeriesError("exp needs a series with strictly positive valuation")
    if a.prec is None:
        raise UnboundedPrecision("exp of an exact series needs a truncation")
    # work on the grid shift + k/ram refined so that 0 is a grid point
    ram = _lcm(a.ram, a.shift.denominator)
    n = _count(ZERO, a.prec, ram)
    c = a._grid(ZERO, ram, n)
    # D(b) = b D(a) on grid indices
    out = [ONE] + [ZERO] * (n - 1)
    da = [k * c[k] for k in range(n)]
    for k in range(1, n):
        s = ZERO
        for j in range(1, k + 1):
            if da[j]:
                s += da[j] * out[k - j]
        out[k] = s / k
    return PSeries(out, 0, ram, a.prec)


def log(a):
    """log of a series with leading term 1 (valuation zero)."""
    if not a.coeffs or a.shift != 0 or a.coeffs[0] != 1:
        raise SeriesError("log needs leading term exactly 1")
    if a.prec is None:
        if len(a.coeffs) == 1:
            return PSeries([])
        raise UnboundedPrecision("log of an exact series needs a truncation")
    n = _count(ZERO, a.prec, a.ram)
    ratio = _div(dq(a), a)
    r = ratio._grid(ZERO, a.ram, n)
    out = [ZERO] + [r[k] * a.ram / k for k in range(1, n)]
    return PSeries(out, 0, a.ram, a.prec)


def compose(outer, inner):
    """outer(inner) for outer with integer exponents, inner of positive valuation."""
    if not inner.coeffs:
        raise SeriesError("inner series is zero to its known order")
    if inner.shift <= 0:
        raise SeriesError("inner series must have strictly positive valuation")
    if outer.coeffs and (outer.ram != 1 or outer.shift.denominator != 1):
        raise SeriesError("outer series must have integer exponents")
    v = inner.shift
    cap = None if outer.prec is None else outer.prec * v
    if not outer.coeffs:
        return PSeries([], prec=cap)
    if cap is not None and (inner.prec is None or inner.prec > cap):
        inner = inner.truncate(cap)
    start = int(outer.shift)
    acc = PSeries.const(outer.coeffs[-1])
    for c in reversed(outer.coeffs[:-1]):
        acc = acc * inner + c
    if start:
        acc = acc * pow_rational(inner, start)
    if cap is not None and (acc.prec is None or acc.prec > cap):
        acc = acc.truncate(cap)
    return acc


def reversion(a):
    """Compositional inverse of a = c q + ..., by Lagrange inversion."""
    if not a.coeffs or a.shift != 1 or a.ram != 1:
        raise SeriesError("reversion needs a series c*q + ... with integer exponents")
    if a.prec is None:
        raise UnboundedPrecision("reversion of an exact series needs a truncation")
    n = int(ceil(a.prec)) - 1
    # h = q / a(q), known to relative precision n
    h = _div(PSeries.gen(), a)
    hc = list(h.coeffs) + [ZERO] * n
    hc = hc[:n]
    out = [ZERO] * (n + 1)
    power = [ONE] + [ZERO] * (n - 1)
    for k in range(1, n + 1):
        power = kernel.mul(power, hc, n)
        out[k] = power[k - 1] / k
    return PSeries(out, 0, 1, a.prec)


def rescale(a, k):
    """Substitute q -> q^k."""
    k = int(k)
    if k < 1:
        raise ValueError("rescale factor must be a positive integer")
    g = gcd(a.ram, k)
    ram, stride = a.ram // g, k // g
    coeffs = []
    if a.coeffs:
        coeffs = [ZERO] * ((len(a.coeffs) - 1) * stride + 1)
        for j, c in enumerate(a.coeffs):
            coeffs[j * stride] = c
    prec = None if a.prec is None else a.prec * k
    return PSeries(coeffs, a.shift * k, ram, prec)


# -- text dump -----------------------------------------------------------

def _ratstr(x):
    x = _frac(x)
    return f"{x.numerator}/{x.denominator}"


def dump(a, var="q"):
    """One term per line: ``num/den * q^(a/b)``; a final ``O(q^(a/b))`` line if truncated."""
    lines = [f"{_ratstr(c)} * {var}^({_ratstr(e)})" for e, c in a.terms()]
    if a.prec is not None:
        lines.append(f"O({var}^({_ratstr(a.prec)}))")
    return "\n".join(lines)


def parse_dump(text, var="q"):
    """Inverse of :func:`dump`."""
    terms = {}
    prec = None
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("O("):
            prec = Fraction(line[len(f"O({var}^("):-2])
            continue
        coef, _, mono = line.partition(" * ")
        exponent = Fraction(mono[len(f"{var}^("):-1])
        terms[exponent] = terms.get(exponent, ZERO) + Fraction(coef)
    return PSeries.from_dict(terms, prec=prec)
