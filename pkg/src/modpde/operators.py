"""Theta-operators with rational coefficients, in one or two variables.

An operator is a finite sum of terms  c * x^m * theta^k  (multi-indexed over
the variable names), always written with the monomial to the left of the
theta-monomial. Products are normalized with  theta_v x_v^m = x_v^m (theta_v + m).
Equality is equality of the canonical term dictionaries.

The small expression grammar accepted by :func:`parse_operator` has integers,
rationals written a/b, variables x, y, z, the Euler symbols T (= theta_x),
Tx, Ty, Tz (also spelled theta, theta_x, ...), + - * / ^, parentheses and
implicit multiplication, e.g. ``"theta^3 - 8x(6T+5)(6T+3)(6T+1)"``.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .series import PSeries

F = Fraction


def _mono(pairs):
    """Canonical monomial: sorted tuple of (name, exponent) with exponent > 0."""
    acc = {}
    for name, e in pairs:
        acc[name] = acc.get(name, 0) + e
    return tuple(sorted((n, e) for n, e in acc.items() if e))


def _mono_str(mono, sym):
    parts = []
    for name, e in mono:
        base = sym(name)
        parts.append(base if e == 1 else f"{base}^{e}")
    return "*".join(parts)


class ThetaOperator:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (xm, tm), c in (terms or {}).items():
            c = F(c)
            if c:
                key = (_mono(xm), _mono(tm))
                clean[key] = clean.get(key, F(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({((), ()): c})

    @classmethod
    def var(cls, name):
        return cls({(((name, 1),), ()): 1})

    @classmethod
    def theta(cls, name="x"):
        return cls({((), ((name, 1),)): 1})

    @staticmethod
    def coerce(v):
        return v if isinstance(v, ThetaOperator) else ThetaOperator.const(v)

    # -- queries ------------------------------------------------------
    def variables(self):
        names = set()
        for xm, tm in self.terms:
            names.update(n for n, _ in xm)
            names.update(n for n, _ in tm)
        return sorted(names)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ThetaOperator.const(other)
        return isinstance(other, ThetaOperator) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for (xm, tm), c in self.sorted_terms():
            body = "*".join(s for s in (_mono_str(xm, str), _mono_str(tm, lambda n: f"T{n}")) if s)
            if not body:
                out.append(str(c))
            elif c == 1:
                out.append(body)
            elif c == -1:
                out.append(f"-{body}")
            else:
                out.append(f"{c}*{body}")
        return " + ".join(out).replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = ThetaOperator.coerce(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, F(0)) + c
        return ThetaOperator(acc)

    __radd__ = __add__

    def __neg__(self):
        return ThetaOperator({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ThetaOperator.coerce(other))

    def __rsub__(self, other):
        return ThetaOperator.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ThetaOperator({k: c * other for k, c in self.terms.items()})
        acc = {}
        for (xm1, tm1), c1 in self.terms.items():
            for (xm2, tm2), c2 in other.terms.items():
                shifts = dict(xm2)
                # theta_v^k x^m = x^m (theta_v + m_v)^k
                poly = {(): F(1)}
                for name, k in tm1:
                    m = shifts.get(name, 0)
                    poly = _poly_mul(poly, _shifted_power(name, m, k))
                for tm, c in poly.items():
                    key = (_mono(xm1 + xm2), _mono(tm + tm2))
                    acc[key] = acc.get(key, F(0)) + c1 * c2 * c
        return ThetaOperator(acc)

    def __rmul__(self, other):
        return ThetaOperator.coerce(other) * self

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers of operators are undefined")
        out = ThetaOperator.const(1)
        for _ in range(n):
            out = out * self
        return out

    # -- substitutions ------------------------------------------------
    def scale(self, name, c):
        """Substitute name -> c * name (theta_name is unchanged)."""
        c = F(c)
        if not c:
            raise ValueError("scaling factor must be nonzero")
        return ThetaOperator({(xm, tm): v * c ** dict(xm).get(name, 0)
                              for (xm, tm), v in self.terms.items()})

    def rename(self, mapping):
        """Rename variables (and their Euler symbols) simultaneously."""
        def ren(mono):
            return tuple((mapping.get(n, n), e) for n, e in mono)
        return ThetaOperator({(ren(xm), ren(tm)): v for (xm, tm), v in self.terms.items()})

    def normalized(self):
        """Divide by the coefficient of the theta-monomial of highest degree without x."""
        heads = [(sum(e for _, e in tm), tm, c) for (xm, tm), c in self.terms.items() if not xm]
        if not heads:
            raise ValueError("operator has no x-free part")
        _, _, c = max(heads)
        return self * (1 / c)

    def difference(self, other):
        """First differing term as a readable string, or None."""
        d = self - other
        if d.is_zero():
            return None
        (xm, tm), c = d.sorted_terms()[0]
        mine = self.terms.get((xm, tm), F(0))
        theirs = other.terms.get((xm, tm), F(0))
        mono = "*".join(s for s in (_mono_str(xm, str), _mono_str(tm, lambda n: f"T{n}")) if s) or "1"
        return f"{mono}: {mine} vs {theirs}"

    # -- one-variable view ----------------------------------------------
    def by_power(self, name="x"):
        """{m: polynomial in theta as {k: c}} for an operator in the single variable ``name``."""
        extra = [v for v in self.variables() if v != name]
        if extra:
            raise ValueError(f"operator involves variables {extra} besides {name!r}")
        out = {}
        for (xm, tm), c in self.terms.items():
            m = dict(xm).get(name, 0)
            k = dict(tm).get(name, 0)
            poly = out.setdefault(m, {})
            poly[k] = poly.get(k, F(0)) + c
        return out


def _poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            key = _mono(m1 + m2)
            out[key] = out.get(key, F(0)) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _shifted_power(name, m, k):
    """(theta_name + m)^k as {theta-monomial: coefficient}."""
    return {_mono(((name, i),)): F(comb(k, i)) * F(m) ** (k - i) for i in range(k + 1)}


def eval_poly(poly, n):
    return sum((c * F(n) ** k for k, c in poly.items()), F(0))


def deriv_poly(poly):
    return {k - 1: k * c for k, c in poly.items() if k}


# -- application ------------------------------------------------------------

@dataclass(frozen=True)
class LogPair:
    """log_part * log x + plain, both integer-exponent series."""
    log_part: PSeries
    plain: PSeries


def _theta_series(s):
    return PSeries([c * (s.shift + k) for k, c in enumerate(s.coeffs)], s.shift, s.ram, s.prec)


def _shift_series(s, m):
    if not s.coeffs:
        return PSeries([], prec=None if s.prec is None else s.prec + m)
    return PSeries(s.coeffs, s.shift + m, s.ram, None if s.prec is None else s.prec + m)


def theta_apply(op, s, name="x"):
    """Apply op to a series in ``name`` or to a LogPair; theta(h log x) = (theta h) log x + h."""
    by = op.by_power(name)
    if isinstance(s, LogPair):
        total_log, total = PSeries([]), PSeries([])
        for m, poly in by.items():
            for k, c in poly.items():
                lp, pl = s.log_part, s.plain
                for _ in range(k):
                    lp, pl = _theta_series(lp), _theta_series(pl) + lp
                total_log = total_log + c * _shift_series(lp, m)
                total = total + c * _shift_series(pl, m)
        return LogPair(total_log, total)
    s = PSeries.coerce(s)
    if not s.has_integer_exponents():
        raise ValueError("theta_apply needs integer exponents")
    total = PSeries([])
    for m, poly in by.items():
        v = PSeries([c * eval_poly(poly, s.shift + k) for k, c in enumerate(s.coeffs)],
                    s.shift, 1, s.prec)
        total = total + _shift_series(v, m)
    return total


def annihilator_check(op, s, order, name="x"):
    """The residual op(s), truncated to exponents <= order."""
    r = theta_apply(op, s, name)
    if r.prec is not None and r.prec <= order:
        raise ValueError(f"series known only below x^{r.prec}, need order {order}")
    return r.truncate(order + 1)


# -- Frobenius solutions at a point of maximal unipotent monodromy ------------

class NotMUM(ValueError):
    """The x-free part of the operator is not c * theta^k with k >= 2."""


@dataclass
class FrobeniusBasis:
    """f0 holomorphic with f0(0) = 1; f1 = f0 log x + g with g(0) = 0."""
    f0: PSeries
    g: PSeries
    op: ThetaOperator = None
    order: int = 0

    def f1(self):
        return LogPair(self.f0, self.g)


def frobenius(op, order, name="x"):
    by = op.by_power(name)
    head = by.get(0, {})
    if len(head) != 1:
        raise NotMUM(f"indicial part {head} is not a single power of theta")
    (k, c0), = head.items()
    if k < 2:
        raise NotMUM(f"indicial equation theta^{k} gives no logarithmic solution")
    if any(m < 0 for m in by):
        raise NotMUM("negative powers of x")
    rest = {m: p for m, p in by.items() if m}
    drest = {m: deriv_poly(p) for m, p in rest.items()}
    dhead = deriv_poly(head)
    a = [F(1)]
    b = [F(0)]
    for n in range(1, order + 1):
        lead = eval_poly(head, n)
        sa = sum((eval_poly(p, n - m) * a[n - m] for m, p in rest.items() if m <= n), F(0))
        an = -sa / lead
        a.append(an)
        sb = sum((eval_poly(p, n - m) * b[n - m] for m, p in rest.items() if m <= n), F(0))
        sd = eval_poly(dhead, n) * an + sum(
            (eval_poly(p, n - m) * a[n - m] for m, p in drest.items() if m <= n), F(0))
        b.append(-(sb + sd) / lead)
    return FrobeniusBasis(PSeries(a, prec=order + 1), PSeries(b, prec=order + 1), op, order)


# -- parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(theta_[xyz]|theta|T[xyz]|T|[xyz])|([-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse operator near {text[pos:pos + 10]!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def _symbol(ident):
    if ident in ("x", "y", "z"):
        return ThetaOperator.var(ident)
    if ident in ("T", "theta"):
        return ThetaOperator.theta("x")
    return ThetaOperator.theta(ident[-1])


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, o = self.take()
            w = self.term()
            v = v + w if o == "+" else v - w
        return v

    def _starts_factor(self):
        kind, val = self.peek()
        return kind in ("num", "id") or (kind, val) == ("op", "(")

    def term(self):
        v = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                v = v * self.unary()
            elif (kind, val) == ("op", "/"):
                self.take()
                d = self.unary()
                if len(d.terms) != 1 or ((), ()) not in d.terms:
                    raise ValueError("division only by nonzero constants")
                v = v * (1 / d.terms[((), ())])
            elif self._starts_factor():
                v = v * self.power()
            else:
                return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return ThetaOperator.const(val)
        if kind == "id":
            return _symbol(val)
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return v
        raise ValueError(f"unexpected token {val!r}")


def parse_operator(text):
    p = _Parser(_tokenize(text))
    v = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input in operator {text!r}")
    return v
