"""Box-truncated bivariate series and fractions of them.

A :class:`BiSeries` is ``u1^s1 u2^s2 * C(u1, u2)`` where the monomial factor
is structural (it comes from how the value was built, never guessed from
zero coefficients) and the cofactor ``C`` is known on the box
``0 <= i < n1, 0 <= j < n2``. With ``s = (0, 0)`` and ``n1 = n2 = N + 1`` this
is the plain box truncation of order N.

Only cofactor entries of total degree below ``min(n1, n2)`` are trusted:
every operation is compatible with truncation by total degree, and the
exact division by linear forms used when factoring denominators produces
valid data only on that triangle. Zero tests look at the triangle alone.

A :class:`BiFrac` is ``num * prod(A_k ** e_k)``: a series times integer
powers of *atoms*, the non-unit factors that cannot be inverted as power
series. Linear atoms ``u1 - r u2`` are split off exactly and cancel against
each other; any other non-unit remainder is kept as a generic atom.
Derivatives use the logarithmic rule, so each derivative adds at most one
power of each atom to the denominator.
"""
from fractions import Fraction

from . import kernel
from .series import PSeries, SeriesError, OrderUnderflow

ZERO = Fraction(0)
ONE = Fraction(1)


def _fr(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class BiSeries:
    __slots__ = ("c", "s1", "s2", "n1", "n2")

    def __init__(self, rows, n1, n2, s1=0, s2=0):
        if n1 < 0 or n2 < 0:
            raise OrderUnderflow("bivariate box has negative size")
        out = []
        for i in range(n1):
            row = rows[i] if i < len(rows) else ()
            r = [_fr(v) for v in row[:n2]]
            if len(r) < n2:
                r.extend([ZERO] * (n2 - len(r)))
            out.append(r)
        self.c = out
        self.n1, self.n2 = n1, n2
        self.s1, self.s2 = s1, s2

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, n1, n2, s1=0, s2=0):
        return cls([], n1, n2, s1, s2)

    @classmethod
    def const(cls, value, order):
        return cls([[value]], order + 1, order + 1)

    @classmethod
    def poly(cls, terms, order):
        """Polynomial {(i, j): c} with i, j >= 0 truncated to the box of ``order``."""
        n = order + 1
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), v in terms.items():
            if i < n and j < n:
                rows[i][j] += _fr(v)
        return cls(rows, n, n)

    @classmethod
    def monomial(cls, i, j, order, coeff=1):
        """coeff * u1^i u2^j as a structural shift (i, j may be negative)."""
        return cls([[coeff]], order + 1 - i, order + 1 - j, i, j)

    @classmethod
    def embed(cls, p, slot, order):
        """Lift a univariate PSeries with integer exponents into u1 (slot 1) or u2 (slot 2)."""
        if p.coeffs and (p.ram != 1 or p.shift.denominator != 1):
            raise SeriesError("only integer-exponent series can be embedded")
        shift = int(p.shift) if p.coeffs else 0
        top = order + 1
        if p.prec is not None:
            top = min(top, int(-(-p.prec // 1)))
        n = top - shift
        if n < 0:
            raise OrderUnderflow("embedded series carries no known coefficients")
        coeffs = list(p.coeffs[:n]) + [ZERO] * max(0, n - len(p.coeffs))
        other = order + 1
        if slot == 1:
            return cls([[c] for c in coeffs], n, other, shift, 0)
        if slot == 2:
            return cls([coeffs], other, n, 0, shift)
        raise ValueError("slot must be 1 or 2")

    # -- queries --------------------------------------------------------
    @property
    def prec(self):
        """Absolute box: exponents (i, j) with i < P1 and j < P2 are known."""
        return self.s1 + self.n1, self.s2 + self.n2

    def __getitem__(self, ij):
        i, j = ij
        p1, p2 = self.prec
        if i >= p1 or j >= p2:
            raise SeriesError(f"coefficient of u1^{i} u2^{j} is beyond the known box")
        i -= self.s1
        j -= self.s2
        if i < 0 or j < 0:
            return ZERO
        return self.c[i][j]

    def is_unit(self):
        return self.n1 > 0 and self.n2 > 0 and self.c[0][0] != 0

    def valid_degree(self):
        """Cofactor entries of total degree below this are trusted (the box minimum)."""
        return min(self.n1, self.n2)

    def is_zero(self):
        return self.first_nonzero() is None

    def first_nonzero(self):
        """(i, j, c) of the trusted nonzero term of least total degree, or None."""
        best = None
        m = self.valid_degree()
        for i, row in enumerate(self.c[:m]):
            for j, v in enumerate(row[:m - i]):
                if v:
                    key = (i + j, i)
                    if best is None or key < best[0]:
                        best = (key, i + self.s1, j + self.s2, v)
        return None if best is None else best[1:]

    def total_valuation(self):
        """Least total degree with a known nonzero coefficient (None if none)."""
        hit = self.first_nonzero()
        return None if hit is None else hit[0] + hit[1]

    def terms(self):
        return [(i + self.s1, j + self.s2, v)
                for i, row in enumerate(self.c) for j, v in enumerate(row) if v]

    def is_symmetric(self):
        if self.s1 != self.s2 or self.n1 != self.n2:
            return False
        return all(self.c[i][j] == self.c[j][i]
                   for i in range(self.n1) for j in range(i))

    def identical(self, other):
        return (self.prec == other.prec and
                sorted(self.terms()) == sorted(other.terms()))

    def __repr__(self):
        t = ", ".join(f"{v}*u1^{i}u2^{j}" for i, j, v in self.terms()[:6])
        return f"BiSeries({t or '0'}; box {self.prec})"

    # -- reshaping ------------------------------------------------------
    def reshift(self, s1, s2):
        """Same value with a smaller structural shift (s1 <= self.s1 etc.)."""
        d1, d2 = self.s1 - s1, self.s2 - s2
        if d1 < 0 or d2 < 0:
            raise ValueError("can only lower the structural shift")
        if d1 == 0 and d2 == 0:
            return self
        n1, n2 = self.n1 + d1, self.n2 + d2
        rows = [[ZERO] * n2 for _ in range(n1)]
        for i, row in enumerate(self.c):
            rows[i + d1][d2:d2 + self.n2] = row
        return BiSeries(rows, n1, n2, s1, s2)

    def truncate(self, p1, p2):
        """Restrict to the absolute box i < p1, j < p2."""
        n1 = min(self.n1, p1 - self.s1)
        n2 = min(self.n2, p2 - self.s2)
        return BiSeries([row[:n2] for row in self.c[:n1]], n1, n2, self.s1, self.s2)

    def swap(self):
        rows = [[self.c[i][j] for i in range(self.n1)] for j in range(self.n2)]
        return BiSeries(rows, self.n2, self.n1, self.s2, self.s1)

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return BiSeries([[-v for v in row] for row in self.c], self.n1, self.n2, self.s1, self.s2)

    def scale(self, k):
        k = _fr(k)
        return BiSeries([[v * k for v in row] for row in self.c], self.n1, self.n2, self.s1, self.s2)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiSeries([[other]], *self._const_box())
        if not isinstance(other, BiSeries):
            return NotImplemented
        s1, s2 = min(self.s1, other.s1), min(self.s2, other.s2)
        a, b = self.reshift(s1, s2), other.reshift(s1, s2)
        n1, n2 = min(a.n1, b.n1), min(a.n2, b.n2)
        rows = [[a.c[i][j] + b.c[i][j] for j in range(n2)] for i in range(n1)]
        return BiSeries(rows, n1, n2, s1, s2)

    __radd__ = __add__

    def _const_box(self):
        p1, p2 = self.prec
        return p1, p2

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-_fr(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, BiSeries):
            return NotImplemented
        n1, n2 = min(self.n1, other.n1), min(self.n2, other.n2)
        if n1 == 0 or n2 == 0:
            return BiSeries.zeros(n1, n2, self.s1 + other.s1, self.s2 + other.s2)
        rows = kernel.mul2d(self.c, other.c, n1, n2)
        return BiSeries(rows, n1, n2, self.s1 + other.s1, self.s2 + other.s2)

    __rmul__ = __mul__

    def inverse(self):
        """1/self for a unit cofactor; the monomial shift is negated."""
        if not self.is_unit():
            raise ZeroDivisionError("bivariate inverse needs a nonzero constant cofactor")
        n1, n2 = self.n1, self.n2
        x = [[ONE / self.c[0][0]]]
        k = 1
        limit = n1 + n2
        while True:
            # Newton step x <- x (2 - b x), exact modulo total degree 2k
            k = min(2 * k, limit)
            bx = kernel.mul2d(self.c, x, n1, n2)
            corr = [[-v for v in row] for row in bx]
            corr[0][0] += 2
            x = kernel.mul2d(x, corr, n1, n2)
            if k >= limit:
                break
        return BiSeries(x, n1, n2, -self.s1, -self.s2)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(ONE / _fr(other))
        return self * other.inverse()

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = BiSeries([[ONE]], self.n1, self.n2)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def theta(self, slot):
        """Euler derivative u_k d/du_k.

        With no shift in that variable the u_k^0 layer is annihilated exactly,
        so the result carries a structural factor u_k.
        """
        if slot == 1:
            rows = [[v * (self.s1 + i) for v in row] for i, row in enumerate(self.c)]
            if self.s1 == 0 and self.n1 > 0:
                return BiSeries(rows[1:], self.n1 - 1, self.n2, 1, self.s2)
        else:
            rows = [[v * (self.s2 + j) for j, v in enumerate(row)] for row in self.c]
            if self.s2 == 0 and self.n2 > 0:
                return BiSeries([r[1:] for r in rows], self.n1, self.n2 - 1, self.s1, 1)
        return BiSeries(rows, self.n1, self.n2, self.s1, self.s2)

    def partial(self, slot):
        """Ordinary derivative d/du_k (needs a nonnegative shift in that variable)."""
        if (self.s1 if slot == 1 else self.s2) < 0:
            raise SeriesError("partial derivative of a Laurent series is not supported")
        t = self.theta(slot)
        if slot == 1:
            return BiSeries(t.c, t.n1, t.n2, t.s1 - 1, t.s2)
        return BiSeries(t.c, t.n1, t.n2, t.s1, t.s2 - 1)

    def restrict(self, slot):
        """Keep the u_slot terms: set the other variable to 0 and return a PSeries in u_slot."""
        if slot == 2:
            return self.swap().restrict(1)
        if self.s2 < 0:
            raise SeriesError("restriction of a Laurent series in u2")
        n = self.valid_degree()
        if self.s2 > 0:
            return PSeries([], prec=self.s1 + n)
        return PSeries([row[0] for row in self.c[:n]], shift=self.s1, prec=self.s1 + n)

    def rescale(self, k1, k2):
        """Substitute u1 -> u1^k1, u2 -> u2^k2."""
        # exponents off the k-lattice are exactly zero, so the box scales by k
        n1, n2 = self.n1 * k1, self.n2 * k2
        rows = [[ZERO] * n2 for _ in range(n1)]
        for i, row in enumerate(self.c):
            for j, v in enumerate(row):
                if v:
                    rows[i * k1][j * k2] = v
        return BiSeries(rows, n1, n2, self.s1 * k1, self.s2 * k2)


def embed1(p, order):
    return BiSeries.embed(p, 1, order)


def embed2(p, order):
    return BiSeries.embed(p, 2, order)


# -- fractions --------------------------------------------------------------

# r in (u1 - r u2) tried when splitting a non-unit factor; every linear factor
# met by the constructed families has a root in this set
_SMALL_ROOTS = sorted({Fraction(s * p, q) for s in (1, -1) for p in range(1, 5) for q in range(1, 5)})


def _lowest_form(c, v):
    """Coefficients of u1^i u2^(v-i), i = 0..v, of a shift-free series."""
    return [c.c[i][v - i] if i < c.n1 and v - i < c.n2 else ZERO for i in range(v + 1)]


def _strip_u1(c):
    """c / u1 when the u1^0 layer vanishes on the valid triangle, else None."""
    m = c.valid_degree()
    if any(c.c[0][j] for j in range(min(c.n2, m))):
        return None
    return BiSeries(c.c[1:], c.n1 - 1, c.n2)


def _divide_linear(c, r):
    """B with c = (u1 - r u2) B modulo the valid degree, or None if c is not divisible."""
    m = min(c.n1, c.n2)
    if m < 1 or c.c[0][0]:
        return None
    n = m - 1
    b = [[ZERO] * n for _ in range(n)]
    for d in range(n):
        # degree-d layer of B from the degree-(d+1) layer of c, top u1-power first
        b[d][0] = c.c[d + 1][0]
        for i in range(d - 1, -1, -1):
            b[i][d - i] = c.c[i + 1][d - i] + r * b[i + 1][d - i - 1]
        if c.c[0][d + 1] != -r * b[0][d]:
            return None
    return BiSeries(b, n, n)


class Atom:
    """A non-unit factor kept symbolically.

    Either an exact linear form ``u1 - r u2`` (known on every box) or a
    generic series normalized to a monic lowest term.
    """

    __slots__ = ("series", "key", "val", "root")

    def __init__(self, series=None, root=None):
        self.root = root
        if root is not None:
            self.series = None
            self.key = ("linear", root)
            self.val = 1
        else:
            self.series = series
            self.key = ("series", series.n1, series.n2, tuple(tuple(r) for r in series.c))
            self.val = series.total_valuation()

    @property
    def exact(self):
        return self.root is not None

    def at(self, n1, n2):
        """The factor as a BiSeries on (at most) the box n1 x n2."""
        if self.root is None:
            return self.series
        return BiSeries.poly({(1, 0): 1, (0, 1): -self.root}, max(n1, n2) - 1).truncate(n1, n2)

    def __eq__(self, other):
        return isinstance(other, Atom) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return repr(self.key) < repr(other.key)


def split_factor(s):
    """Write s as (part, {atom: exponent}) with part a monomial times a unit.

    Monomial factors and linear factors u1 - r u2 with small rational r are
    divided out exactly; whatever non-unit remains becomes one generic atom.
    """
    hit = s.first_nonzero()
    if hit is None:
        raise ZeroDivisionError("division by a series that is zero on its whole box")
    c = BiSeries(s.c, s.n1, s.n2)
    s1, s2 = s.s1, s.s2
    atoms = {}
    while not c.is_unit():
        v = c.total_valuation()
        if v is None:
            raise ZeroDivisionError("factor vanishes on its valid range")
        low = _lowest_form(c, v)
        if low[0] == 0:
            q = _strip_u1(c)
            if q is not None:
                c, s1 = q, s1 + 1
                continue
        if low[-1] == 0:
            q = _strip_u1(c.swap())
            if q is not None:
                c, s2 = q.swap(), s2 + 1
                continue
        for r in _SMALL_ROOTS:
            if sum(ci * r ** i for i, ci in enumerate(low)) == 0:
                q = _divide_linear(c, r)
                if q is not None:
                    key = Atom(root=r)
                    atoms[key] = atoms.get(key, 0) + 1
                    c = q
                    break
        else:
            lead = c.first_nonzero()[2]
            atom = Atom(BiSeries([[v_ / lead for v_ in row] for row in c.c], c.n1, c.n2))
            atoms[atom] = atoms.get(atom, 0) + 1
            c = BiSeries([[lead]], c.n1, c.n2)
    return BiSeries(c.c, c.n1, c.n2, s1, s2), atoms


class BiFrac:
    """num * prod(atom ** e)."""

    __slots__ = ("num", "atoms")

    def __init__(self, num, atoms=None):
        self.num = num
        self.atoms = {a: e for a, e in (atoms or {}).items() if e}

    # -- constructors ---------------------------------------------------
    @classmethod
    def of(cls, x):
        if isinstance(x, BiFrac):
            return x
        if isinstance(x, BiSeries):
            return cls(x)
        raise TypeError(f"cannot convert {type(x).__name__} to BiFrac")

    @classmethod
    def factor(cls, s):
        """A series kept in factored form (unit cofactors stay in num)."""
        if s.is_unit():
            return cls(s)
        part, atoms = split_factor(s)
        return cls(part, atoms)

    @classmethod
    def ratio(cls, num, den):
        return cls.of(num) / cls.factor(den) if isinstance(den, BiSeries) else cls.of(num) / den

    # -- queries --------------------------------------------------------
    def den_valuation(self):
        return sum(-e * a.val for a, e in self.atoms.items() if e < 0)

    def cleared_order(self):
        """Highest total degree through which the cleared numerator is known."""
        n = self.num
        box = min(n.n1, n.n2)
        for a in self.atoms:
            if not a.exact:
                box = min(box, a.series.n1, a.series.n2)
        return n.s1 + n.s2 + box - 1

    def effective_order(self):
        """Total degree to which a vanishing cleared numerator forces the value itself to vanish."""
        return self.cleared_order() - self.den_valuation()

    def _atom(self, a):
        return a.at(self.num.n1, self.num.n2)

    def numerator(self):
        """num times the positive atom powers, as a plain series."""
        out = self.num
        for a, e in self.atoms.items():
            if e > 0:
                out = out * self._atom(a) ** e
        return out

    def denominator(self):
        """Product of negative atom powers (constant 1 if none)."""
        p1, p2 = self.num.prec
        out = BiSeries([[ONE]], max(p1, 1), max(p2, 1))
        for a, e in self.atoms.items():
            if e < 0:
                out = out * a.at(max(p1, 1), max(p2, 1)) ** (-e)
        return out

    def is_zero(self):
        return self.num.is_zero()

    def to_series(self):
        """Plain series when no atom has a negative exponent."""
        if any(e < 0 for e in self.atoms.values()):
            raise SeriesError("fraction still has a non-unit denominator")
        return self.numerator()

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return BiFrac(-self.num, self.atoms)

    def scale(self, k):
        return BiFrac(self.num.scale(k), self.atoms)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = BiFrac.of(other)
        atoms = dict(self.atoms)
        for a, e in other.atoms.items():
            atoms[a] = atoms.get(a, 0) + e
        return BiFrac(self.num * other.num, atoms)

    __rmul__ = __mul__

    def inverse(self):
        atoms = {a: -e for a, e in self.atoms.items()}
        num = self.num
        if num.is_unit():
            return BiFrac(num.inverse(), atoms)
        part, extra = split_factor(num)
        for a, e in extra.items():
            atoms[a] = atoms.get(a, 0) - e
        return BiFrac(part.inverse(), atoms)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(ONE / _fr(other))
        return self * BiFrac.of(other).inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse().scale(other)
        return BiFrac.of(other) * self.inverse()

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            p1, p2 = self.num.prec
            other = BiSeries([[_fr(other)]], p1, p2)
        other = BiFrac.of(other)
        keys = set(self.atoms) | set(other.atoms)
        common = {}
        na, nb = self.num, other.num
        for a in sorted(keys):
            ea, eb = self.atoms.get(a, 0), other.atoms.get(a, 0)
            m = min(ea, eb)
            common[a] = m
            if ea > m:
                na = na * a.at(na.n1, na.n2) ** (ea - m)
            if eb > m:
                nb = nb * a.at(nb.n1, nb.n2) ** (eb - m)
        return BiFrac(na + nb, common)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-_fr(other))
        return self + (-BiFrac.of(other))

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        atoms = {a: k * e for a, k in self.atoms.items()}
        return BiFrac(self.num ** e, atoms)

    def theta(self, slot, weight=None):
        """Apply weight * u_slot d/du_slot (weight a BiSeries/BiFrac or None)."""
        n1, n2 = self.num.n1, self.num.n2
        moving = []
        for a, e in sorted(self.atoms.items()):
            s = a.at(n1, n2)
            d = s.theta(slot)
            if not d.is_zero():
                moving.append((a, e, s, d))
        total = self.num.theta(slot)
        for _, _, s, _ in moving:
            total = total * s
        for a, e, _, d in moving:
            term = self.num * d.scale(e)
            for b, _, s, _ in moving:
                if b is not a:
                    term = term * s
            total = total + term
        atoms = dict(self.atoms)
        for a, e, _, _ in moving:
            atoms[a] = e - 1
        out = BiFrac(total, atoms)
        if weight is not None:
            out = out * weight
        return out

    def _map(self, fn):
        out = BiFrac(fn(self.num))
        for a, e in self.atoms.items():
            out = out * BiFrac.factor(fn(a.at(self.num.n1, self.num.n2))) ** e
        return out

    def rescale(self, k1, k2):
        return self._map(lambda s: s.rescale(k1, k2))

    def swap(self):
        return self._map(lambda s: s.swap())

    def __repr__(self):
        atoms = ", ".join(f"{a.key[0]}{a.key[1] if a.exact else ''}^{e}"
                          for a, e in self.atoms.items())
        return f"BiFrac(num={self.num!r}, atoms=[{atoms}])"


def frac_equal(a, b):
    """Cross-multiplied equality: (is_equal, cleared order, first differing term)."""
    d = BiFrac.of(a) - BiFrac.of(b)
    hit = d.num.first_nonzero()
    return hit is None, d.cleared_order(), hit


# -- text dump ------------------------------------------------------------

def dump(s):
    """One term per line: ``num/den * u1^i u2^j``, sorted by (i, j)."""
    lines = [f"{v.numerator}/{v.denominator} * u1^{i} u2^{j}" for i, j, v in sorted(s.terms())]
    p1, p2 = s.prec
    lines.append(f"O(u1^{p1}, u2^{p2})")
    return "\n".join(lines)


def parse_dump(text):
    terms = {}
    p1 = p2 = None
    for line in text.strip().splitlines():
        line = line.strip()
        if line.startswith("O("):
            a, b = line[2:-1].split(",")
            p1 = int(a.strip()[3:])
            p2 = int(b.strip()[3:])
            continue
        coef, _, mono = line.partition(" * ")
        m1, m2 = mono.split()
        terms[(int(m1[3:]), int(m2[3:]))] = Fraction(coef)
    s1 = min([i for i, _ in terms] + [0])
    s2 = min([j for _, j in terms] + [0])
    rows = [[ZERO] * (p2 - s2) for _ in range(p1 - s1)]
    for (i, j), v in terms.items():
        rows[i - s1][j - s2] = v
    return BiSeries(rows, p1 - s1, p2 - s2, s1, s2)
