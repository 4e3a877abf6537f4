"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A CyclotomicNumber is stored at an explicit level N in the power basis
1, zeta, ..., zeta^{phi(N)-1} with zeta = e^{2 pi i / N} and Fraction
coefficients, always reduced modulo the N-th cyclotomic polynomial.  Two
numbers at different levels are compared (and combined) by embedding both
into Q(zeta_lcm) via zeta_a -> zeta_L^{L/a}; since the power-basis
representation modulo Phi_L is unique, vector equality there is equality
of field elements.  Levels are never compressed automatically.
"""

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .numth import divisors, euler_phi

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _poly_divmod_int(num, den):
    # Exact division of integer polynomials (used for Phi_n only).
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c, rem = divmod(num[i + len(den) - 1], den[-1])
        assert rem == 0
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficients of Phi_n, ascending; computed by dividing x^n - 1
    by Phi_d for every proper divisor d of n."""
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs a positive integer")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_divmod_int(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(n):
    # Row k-phi(n) holds the coefficients of x^k reduced mod Phi_n,
    # for phi(n) <= k < n.
    phi_poly = cyclotomic_polynomial(n)
    d = len(phi_poly) - 1
    rows = [tuple(-c for c in phi_poly[:-1])]
    for _ in range(d + 1, n):
        prev = rows[-1]
        over = prev[-1]
        nxt = [0] + list(prev[:-1])
        if over:
            nxt = [a + over * b for a, b in zip(nxt, rows[0])]
        rows.append(tuple(nxt))
    return tuple(rows)


def _reduce_mod_phi(n, coeffs):
    """Reduce an arbitrary-length coefficient list to length phi(n) mod Phi_n."""
    d = euler_phi(n)
    folded = [_ZERO] * n
    for k, c in enumerate(coeffs):
        if c:
            folded[k % n] += c  # x^n = 1 in the field
    out = folded[:d]
    if d < n:
        rows = _reduction_rows(n)
        for k in range(d, n):
            c = folded[k]
            if c:
                row = rows[k - d]
                for j, b in enumerate(row):
                    if b:
                        out[j] += c * b
    return tuple(out)


class CyclotomicNumber:
    """An element of Q(zeta_level); coeffs is a tuple of phi(level) Fractions."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if level < 1 or len(coeffs) != euler_phi(level):
            raise ValueError("coefficient vector does not match the level")
        self.level = level
        self.coeffs = coeffs

    @classmethod
    def from_rational(cls, x, level=1):
        c = [_ZERO] * euler_phi(level)
        c[0] = Fraction(x)
        return cls(level, c)

    @classmethod
    def zero(cls, level=1):
        return cls.from_rational(0, level)

    @classmethod
    def one(cls, level=1):
        return cls.from_rational(1, level)

    def _embedded(self, big):
        # Coefficient vector of self inside Q(zeta_big), big a multiple of level.
        step = big // self.level
        raw = [_ZERO] * big
        for i, c in enumerate(self.coeffs):
            if c:
                raw[(i * step) % big] += c
        return _reduce_mod_phi(big, raw)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = lcm(self.level, other.level)
        a = self._embedded(n)
        b = other._embedded(n)
        return CyclotomicNumber(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.level, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = lcm(self.level, other.level)
        a = self._embedded(n)
        b = other._embedded(n)
        conv = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CyclotomicNumber(n, _reduce_mod_phi(n, conv))

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm in
        Q[x] against Phi_level (which is irreducible, so the gcd is a unit)."""
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero")
        n = self.level
        r0 = [Fraction(c) for c in cyclotomic_polynomial(n)]
        r1 = list(self.coeffs)
        t0, t1 = [_ZERO], [_ONE]
        while any(r1):
            q, rem = _poly_divmod_q(r0, r1)
            r0, r1 = r1, rem
            t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
        r0 = _strip(r0)
        assert len(r0) == 1
        inv = [c / r0[0] for c in t0]
        return CyclotomicNumber(n, _reduce_mod_phi(n, inv))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.one(self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = lcm(self.level, other.level)
        return self._embedded(n) == other._embedded(n)

    __hash__ = None

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def to_complex(self):
        return sum(
            float(c) * cmath.exp(2j * cmath.pi * k / self.level)
            for k, c in enumerate(self.coeffs)
            if c
        ) + 0j

    def __complex__(self):
        return self.to_complex()

    def to_json(self):
        return {"level": self.level, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(data["level"], [Fraction(c) for c in data["coeffs"]])

    def __repr__(self):
        return "CyclotomicNumber(%d, (%s))" % (
            self.level,
            ", ".join(str(c) for c in self.coeffs),
        )


def _coerce(x):
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CyclotomicNumber.from_rational(x)
    return NotImplemented


def _strip(p):
    end = len(p)
    while end > 1 and p[end - 1] == 0:
        end -= 1
    return p[:end]


def _poly_divmod_q(a, b):
    a = _strip(list(a))
    b = _strip(list(b))
    if len(a) < len(b):
        return [_ZERO], a
    q = [_ZERO] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _strip(a)


def _poly_mul(a, b):
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [_ZERO] * (n - len(a))
    b = list(b) + [_ZERO] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


@lru_cache(maxsize=None)
def root_of_unity(n, k=1):
    """zeta_n^k = e^{2 pi i k / n} as a CyclotomicNumber at level n."""
    if n < 1:
        raise ValueError("root_of_unity needs a positive order")
    k %= n
    raw = [_ZERO] * (k + 1)
    raw[k] = _ONE
    return CyclotomicNumber(n, _reduce_mod_phi(n, raw))


def as_root_of_unity(z):
    """Write z = e^{2 pi i j / n} with gcd(j, n) = 1 and return (j, n).

    The roots of unity inside Q(zeta_N) form the cyclic group of order N
    (N even) or 2N (N odd), so scanning that group is exhaustive.
    Raises ValueError when z is not a root of unity.
    """
    m = z.level if z.level % 2 == 0 else 2 * z.level
    for j in range(m):
        if z == root_of_unity(m, j):
            g = gcd(j, m)  # j = 0 gives g = m, hence (0, 1)
            return (j // g, m // g)
    raise ValueError("not a root of unity")
