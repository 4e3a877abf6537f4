"""Euler characteristics of Hilbert schemes of points on K3.

The generating series is G(q) = q^{-1} prod_{k>=1} (1 - q^k)^{-24}
= sum_{N>=0} c_N q^{N-1} with c_N the Euler characteristic of the
Hilbert scheme of N points.  The table is computed two independent
ways (product expansion and a divisor-sum recursion) and the results
are cross-checked before being cached.
"""

from fractions import Fraction
from functools import lru_cache
from math import ceil, comb

from .numth import sigma1_table
from .qseries import PuiseuxSeries

# cross-checking both methods is cheap up to this many terms; beyond it
# only the recursion is extended (the product method is the slow one)
_CROSS_CHECK_LIMIT = 60


class HilbTable:
    """Table of chi(Hilb^N(K3)) for 0 <= N <= n_max."""

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = list(values)

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


def hilb_product_method(n_max):
    """Coefficients of prod_{k>=1} (1-q^k)^{-24} up to q^n_max.

    Multiplies in one Euler factor at a time, using the binomial
    expansion (1-x)^{-24} = sum_j C(j+23, 23) x^j.
    """
    coeffs = [0] * (n_max + 1)
    coeffs[0] = 1
    for k in range(1, n_max + 1):
        new = list(coeffs)
        for j in range(1, n_max // k + 1):
            b = comb(j + 23, 23)
            for i in range(0, n_max - k * j + 1):
                if coeffs[i]:
                    new[i + k * j] += b * coeffs[i]
        coeffs = new
    return coeffs

def hilb_recursion_method(n_max):
    """Same coefficients via n c_n = 24 sum_{j<=n} sigma_1(j) c_{n-j}."""
    sig = sigma1_table(n_max)
    c = [0] * (n_max + 1)
    c[0] = 1
    for n in range(1, n_max + 1):
        s = sum(sig[j] * c[n - j] for j in range(1, n + 1))
        assert (24 * s) % n == 0
        c[n] = 24 * s // n
    return c


@lru_cache(maxsize=None)
def _hilb_values(n_max):
    rec = hilb_recursion_method(n_max)
    check_to = min(n_max, _CROSS_CHECK_LIMIT)
    prod = hilb_product_method(check_to)
    assert rec[: check_to + 1] == prod, "product and recursion methods disagree"
    return tuple(rec)


def hilb_euler_table(n_max):
    return HilbTable(_hilb_values(n_max))


def G_series(prec):
    """G(q) = q^{-1} prod (1-q^k)^{-24} as an exact series below q^prec."""
    prec = Fraction(prec)
    # terms sit at exponents N-1; need N-1 < prec, i.e. N <= ceil(prec+1)-1
    n_max = max(ceil(prec + 1) - 1, 0)
    table = hilb_euler_table(n_max)
    return PuiseuxSeries(
        1, prec, {Fraction(n - 1): table[n] for n in range(n_max + 1)}
    )


def G_at(zeta, num, denom=1, prec=6):
    """G(zeta * q^{num/denom}) as a series below q^prec.

    zeta must be an exact root of unity; the result keeps the honest
    precision bound prec after rescaling exponents by num/denom.
    """
    prec = Fraction(prec)
    inner = Fraction(prec * denom, num)
    return G_series(inner).substitute(zeta, num, denom).truncate(prec)
