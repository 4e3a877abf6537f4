"""Small number-theoretic helpers shared across the package."""

from functools import lru_cache
from math import gcd, isqrt


def divisors(n):
    """Positive divisors of n, ascending."""
    if n < 1:
        raise ValueError("divisors needs a positive integer")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


@lru_cache(maxsize=None)
def factorize(n):
    """Prime factorization of n >= 1 as a tuple of (p, multiplicity) pairs."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def mobius(n):
    mu = 1
    for _, k in factorize(n):
        if k > 1:
            return 0
        mu = -mu
    return mu


def euler_phi(n):
    phi = n
    for p, _ in factorize(n):
        phi = phi // p * (p - 1)
    return phi


def is_prime(n):
    return n >= 2 and factorize(n) == ((n, 1),)


def sigma1_table(n_max):
    """table[n] = sum of divisors of n for 1 <= n <= n_max; table[0] = 0."""
    table = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            table[m] += d
    return table


def jacobi(a, n):
    """Jacobi symbol (a | n) for odd positive n."""
    if n < 1 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs odd positive n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def crt_pair(r1, m1, r2, m2):
    """The residue mod m1*m2 congruent to r1 mod m1 and r2 mod m2 (coprime moduli)."""
    if gcd(m1, m2) != 1:
        raise ValueError("crt_pair needs coprime moduli")
    inv = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)
