"""Low-level exact convolution kernels on lists of Fractions.

Products are computed by Kronecker substitution: the operands are scaled to
integers, packed into single Python integers with enough guard bits per slot,
multiplied once by the big-integer multiplier, and unpacked. For the sizes
used here this is one to two orders of magnitude faster than the schoolbook
loop over Fractions, and it is exact.
"""
from fractions import Fraction
from math import gcd

ZERO = Fraction(0)
ONE = Fraction(1)

# below this many multiply-adds the schoolbook loop wins
_NAIVE_CUTOFF = 64


def _lcm(a, b):
    return a // gcd(a, b) * b


def to_ints(coeffs):
    """Return (ints, den) with coeffs[k] == ints[k] / den."""
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1 and den % d:
            den = _lcm(den, d)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _pack(ints, width):
    acc = 0
    for c in reversed(ints):
        acc = (acc << width) + c
    return acc


def _unpack(acc, width, count):
    mask = (1 << width) - 1
    half = 1 << (width - 1)
    full = 1 << width
    out = []
    for _ in range(count):
        low = acc & mask
        if low >= half:
            low -= full
        out.append(low)
        acc = (acc - low) >> width
    return out


def _maxbits(ints):
    m = 0
    for c in ints:
        b = c.bit_length() if c >= 0 else (-c).bit_length()
        if b > m:
            m = b
    return m


def int_mul(a, b, n):
    """First n coefficients of the product of integer lists a and b."""
    la, lb = min(len(a), n), min(len(b), n)
    if la == 0 or lb == 0:
        return [0] * n
    a, b = a[:la], b[:lb]
    if la * lb <= _NAIVE_CUTOFF:
        out = [0] * n
        for i, ai in enumerate(a):
            if ai:
                for j in range(min(lb, n - i)):
                    out[i + j] += ai * b[j]
        return out
    width = _maxbits(a) + _maxbits(b) + min(la, lb).bit_length() + 2
    prod = _pack(a, width) * _pack(b, width)
    return _unpack(prod, width, n)


def mul(a, b, n):
    """First n coefficients of the product of Fraction lists a and b."""
    ia, da = to_ints(a[:n])
    ib, db = to_ints(b[:n])
    raw = int_mul(ia, ib, n)
    d = da * db
    if d == 1:
        return [Fraction(c) for c in raw]
    return [Fraction(c, d) for c in raw]


def mul2d(a, b, n1, n2):
    """Box-truncated product of 2-D Fraction arrays.

    a and b are lists of rows (index i in the first variable, j in the
    second); the result has shape (n1, n2).
    """
    stride = 2 * n2 - 1
    fa = _flatten(a, n1, n2, stride)
    fb = _flatten(b, n1, n2, stride)
    ia, da = to_ints(fa)
    ib, db = to_ints(fb)
    size = (n1 - 1) * stride + n2
    raw = int_mul(ia, ib, size)
    d = da * db
    out = []
    for i in range(n1):
        base = i * stride
        row = raw[base:base + n2]
        if d == 1:
            out.append([Fraction(c) for c in row])
        else:
            out.append([Fraction(c, d) for c in row])
    return out


def _flatten(rows, n1, n2, stride):
    flat = [ZERO] * ((n1 - 1) * stride + n2)
    for i in range(min(n1, len(rows))):
        row = rows[i]
        base = i * stride
        for j in range(min(n2, len(row))):
            flat[base + j] = row[j]
    return flat


def inverse(b, n):
    """First n coefficients of 1/b; b[0] must be nonzero."""
    b0 = b[0]
    if b0 == 0:
        raise ZeroDivisionError("series inverse needs a nonzero constant term")
    inv0 = ONE / b0
    out = [inv0]
    # Newton iteration: x <- x (2 - b x), doubling the correct length
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        bx = mul(b[:k2], out, k2)
        corr = [-c for c in bx]
        corr[0] += 2
        out = mul(out, corr, k2)
        k = k2
    return out[:n]
