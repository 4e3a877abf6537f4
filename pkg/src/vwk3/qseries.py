"""Sparse Puiseux series with exact cyclotomic coefficients.

A PuiseuxSeries stores finitely many terms coeff * q^x with Fraction
exponents x on the lattice (1/den)Z, together with an explicit precision
bound prec: exponents >= prec are unknown, not zero.  All arithmetic
propagates the precision honestly, so a coefficient can be read off only
when it is actually determined.
"""

from fractions import Fraction
from math import ceil, gcd, lcm

from .cyclotomic import CyclotomicNumber, as_root_of_unity, root_of_unity


class PrecisionError(Exception):
    """A coefficient at or beyond the precision bound was requested."""


def _coerce_coeff(c):
    if isinstance(c, CyclotomicNumber):
        return c
    return CyclotomicNumber.from_rational(c)


def _phase(x):
    # e^{2 pi i x} for rational x, as an exact root of unity
    x = Fraction(x)
    return root_of_unity(x.denominator, x.numerator % x.denominator)


class PuiseuxSeries:
    __slots__ = ("den", "prec", "terms")

    def __init__(self, den, prec, terms):
        den = int(den)
        if den < 1:
            raise ValueError("den must be a positive integer")
        prec = Fraction(prec)
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for x, c in items:
            x = Fraction(x)
            if (x * den).denominator != 1:
                raise ValueError("exponent %s is not on the (1/%d)Z lattice" % (x, den))
            if x >= prec:
                continue  # beyond the precision bound: unknown, never stored
            c = _coerce_coeff(c)
            if x in clean:
                c = clean[x] + c
            if c:
                clean[x] = c
            elif x in clean:
                del clean[x]
        self.den = den
        self.prec = prec
        self.terms = clean

    @classmethod
    def zero(cls, prec, den=1):
        return cls(den, prec, {})

    @classmethod
    def one(cls, prec, den=1):
        return cls(den, prec, {Fraction(0): 1})

    @classmethod
    def monomial(cls, coeff, exp, prec, den=None):
        exp = Fraction(exp)
        if den is None:
            den = exp.denominator
        return cls(den, prec, {exp: coeff})

    def lowest_exponent(self):
        """Smallest stored exponent, or the precision bound when empty."""
        return min(self.terms) if self.terms else self.prec

    def coefficient(self, x):
        x = Fraction(x)
        if x >= self.prec:
            raise PrecisionError(
                "coefficient at %s is beyond the precision bound %s" % (x, self.prec)
            )
        return self.terms.get(x, CyclotomicNumber.zero())

    def truncate(self, new_prec):
        new_prec = min(self.prec, Fraction(new_prec))
        return PuiseuxSeries(self.den, new_prec, self.terms)

    def shift(self, delta):
        """Multiply by q^delta exactly (precision shifts along)."""
        delta = Fraction(delta)
        den = lcm(self.den, delta.denominator)
        return PuiseuxSeries(
            den, self.prec + delta, {x + delta: c for x, c in self.terms.items()}
        )

    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        den = lcm(self.den, other.den)
        prec = min(self.prec, other.prec)
        terms = dict(self.terms)
        for x, c in other.terms.items():
            terms[x] = terms[x] + c if x in terms else c
        return PuiseuxSeries(den, prec, terms)

    def __neg__(self):
        return PuiseuxSeries(self.den, self.prec, {x: -c for x, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PuiseuxSeries):
            return self._mul_series(other)
        c = _coerce_coeff(other)
        return PuiseuxSeries(
            self.den, self.prec, {x: v * c for x, v in self.terms.items()}
        )

    __rmul__ = __mul__

    def _mul_series(self, other):
        # An unknown tail in either factor contaminates products against the
        # other factor's lowest term first, hence the min() precision rule.
        la = self.lowest_exponent()
        lb = other.lowest_exponent()
        prec = min(self.prec + lb, other.prec + la)
        den = lcm(self.den, other.den)
        terms = {}
        for x, cx in self.terms.items():
            for y, cy in other.terms.items():
                e = x + y
                if e >= prec:
                    continue
                c = cx * cy
                terms[e] = terms[e] + c if e in terms else c
        return PuiseuxSeries(den, prec, terms)

    def invert(self):
        """Multiplicative inverse.

        Writing the series as c*q^l*(1 + u), the result is known below
        prec - 2l: dividing out the lowest term costs relative precision
        once on the way in and once on the way out.
        """
        if not self.terms:
            raise ZeroDivisionError("cannot invert a series with no known terms")
        l = min(self.terms)
        c = self.terms[l]
        rel = self.prec - l
        cinv = c.inverse()
        u = PuiseuxSeries(
            self.den,
            rel,
            {x - l: v * cinv for x, v in self.terms.items() if x != l},
        )
        total = PuiseuxSeries.one(rel, self.den)
        power = total
        while True:
            power = (power * (-u)).truncate(rel)
            if not power.terms:
                break
            total = total + power
        return (total * cinv).shift(-l)

    def substitute(self, zeta, num, denom=1):
        """Replace q by zeta * q^{num/denom} for a root of unity zeta.

        Writing zeta = e^{2 pi i j / n} in lowest terms, a term c*q^x maps to
        c * e^{2 pi i j x / n} * q^{x num/denom}; for fractional x that phase
        convention is part of the definition.
        """
        num = int(num)
        denom = int(denom)
        if num < 1 or denom < 1:
            raise ValueError("substitute needs num >= 1 and denom >= 1")
        j, n = as_root_of_unity(_coerce_coeff(zeta))
        scale = Fraction(num, denom)
        big = self.den * denom
        new_den = big // gcd(num, big)
        terms = {}
        for x, c in self.terms.items():
            terms[x * scale] = c * _phase(Fraction(j, n) * x)
        return PuiseuxSeries(new_den, self.prec * scale, terms)

    def phase_twist(self, s):
        """Multiply the coefficient at each exponent x by e^{2 pi i s x}."""
        s = int(s)
        return PuiseuxSeries(
            self.den,
            self.prec,
            {x: c * _phase(s * x) for x, c in self.terms.items()},
        )

    def root_average(self, k):
        """Average of the k phase twists (1/k) sum_m e^{2 pi i m x}.

        On a series whose exponents lie in (1/k)Z this keeps exactly the
        integer-exponent terms and kills the rest.
        """
        k = int(k)
        if k < 1:
            raise ValueError("root_average needs a positive k")
        total = self.phase_twist(0)
        for m in range(1, k):
            total = total + self.phase_twist(m)
        return total * Fraction(1, k)

    def exp(self):
        """Exponential of a series with positive valuation (no constant term)."""
        if self.terms and min(self.terms) <= 0:
            raise ValueError("exp needs all exponents positive")
        total = PuiseuxSeries.one(self.prec, self.den)
        term = total
        k = 0
        while True:
            k += 1
            term = (term * self).truncate(self.prec) * Fraction(1, k)
            if not term.terms:
                break
            total = total + term
        return total

    def log(self):
        """Logarithm of a series with constant term 1."""
        u = self - PuiseuxSeries.one(self.prec, self.den)
        if u.terms and min(u.terms) <= 0:
            raise ValueError("log needs constant term 1 and no negative exponents")
        total = PuiseuxSeries.zero(self.prec, self.den)
        power = PuiseuxSeries.one(self.prec, self.den)
        k = 0
        while True:
            k += 1
            power = (power * u).truncate(self.prec)
            if not power.terms:
                break
            total = total + power * Fraction((-1) ** (k + 1), k)
        return total

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        if self.prec != other.prec:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[x] for x, c in self.terms.items())

    __hash__ = None

    def agrees_with(self, other, below=None):
        """Term-for-term equality below the joint precision (and `below`)."""
        bound = min(self.prec, other.prec)
        if below is not None:
            bound = min(bound, Fraction(below))
        for x in set(self.terms) | set(other.terms):
            if x >= bound:
                continue
            if not self.terms.get(x, _CZERO) == other.terms.get(x, _CZERO):
                return False
        return True

    def to_json(self):
        return {
            "den": self.den,
            "prec": str(self.prec),
            "terms": [
                {"exp": str(x), "coeff": c.to_json()}
                for x, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            data["den"],
            Fraction(data["prec"]),
            {
                Fraction(t["exp"]): CyclotomicNumber.from_json(t["coeff"])
                for t in data["terms"]
            },
        )

    def __repr__(self):
        items = ", ".join("q^%s: %r" % (x, c) for x, c in sorted(self.terms.items()))
        return "PuiseuxSeries(den=%d, prec=%s, {%s})" % (self.den, self.prec, items)


_CZERO = CyclotomicNumber.zero()


def series_diff(a, b, below=None):
    """Exponents below the joint precision where a and b disagree, sorted,
    as (exp, coeff_a, coeff_b) triples."""
    bound = min(a.prec, b.prec)
    if below is not None:
        bound = min(bound, Fraction(below))
    out = []
    for x in sorted(set(a.terms) | set(b.terms)):
        if x >= bound:
            continue
        ca = a.terms.get(x, _CZERO)
        cb = b.terms.get(x, _CZERO)
        if not ca == cb:
            out.append((x, ca, cb))
    return out
