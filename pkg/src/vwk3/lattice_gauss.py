"""Gauss sums on H^2(K3, mu_o) computed from the lattice.

The K3 lattice is realized as U + U + U + E8(-1) + E8(-1).  Sums of
e^{2 pi i (-s q(g)/o)} with q(g) = (g.Ag)/2 factorize over the orthogonal
blocks, so each block is reduced to a histogram of q mod d over (Z_d)^rank
(direct enumeration at prime powers, CRT composition at composite d) and
one phase pass per histogram.  Exact-order sums come from Moebius inversion
over the subgroup sums; a rank-22 brute force is kept as an oracle.
"""

from functools import lru_cache
from math import gcd

import numpy as np

from .cyclotomic import CyclotomicNumber, root_of_unity
from .numth import crt_pair, divisors, factorize, jacobi, mobius

U_GRAM = ((0, 1), (1, 0))


def _e8_minus():
    # node 5 is the trident: arms of length 4 (nodes 4,3,2,1), 2 (6,7), 1 (8)
    a = [[0] * 8 for _ in range(8)]
    for i in range(8):
        a[i][i] = -2
    for i, j in ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)):
        a[i - 1][j - 1] = a[j - 1][i - 1] = 1
    return tuple(tuple(row) for row in a)


E8_MINUS = _e8_minus()
K3_BLOCKS = (U_GRAM, U_GRAM, U_GRAM, E8_MINUS, E8_MINUS)


def _block_diagonal(blocks):
    n = sum(len(b) for b in blocks)
    gram = [[0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                gram[at + i][at + j] = b[i][j]
        at += k
    return tuple(tuple(row) for row in gram)


class K3Lattice:
    """Ordered Gram blocks of the K3 lattice (rank 22)."""

    __slots__ = ("blocks",)

    def __init__(self, blocks=None):
        if blocks is None:
            blocks = K3_BLOCKS
        self.blocks = [tuple(tuple(int(x) for x in row) for row in b) for b in blocks]

    def rank(self):
        return sum(len(b) for b in self.blocks)

    def gram(self):
        return _block_diagonal(self.blocks)


def k3_gram():
    return _block_diagonal(K3_BLOCKS)


def det_bareiss(m):
    """Exact integer determinant by fraction-free elimination."""
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


# hard-coded Gram data sanity: symmetric, even, unimodular blocks
for _b in K3_BLOCKS:
    assert all(_b[i][j] == _b[j][i] for i in range(len(_b)) for j in range(len(_b)))
    assert all(_b[i][i] % 2 == 0 for i in range(len(_b)))
assert det_bareiss(U_GRAM) == -1
assert abs(det_bareiss(E8_MINUS)) == 1
assert abs(det_bareiss(k3_gram())) == 1


# largest d**rank a single direct enumeration may visit
_DIRECT_LIMIT = 10**8


def _enumerate_histogram(gram, d):
    """counts[t] = #{h in (Z_d)^rank : (h.Ah)/2 = t mod d}, by enumeration."""
    k = len(gram)
    total = d**k
    if total > _DIRECT_LIMIT:
        raise ValueError("enumeration of %d^%d points refused" % (d, k))
    if d == 1:
        return (1,)
    a = np.array(gram, dtype=np.float64)
    radix = d ** np.arange(k, dtype=np.int64)
    counts = np.zeros(d, dtype=np.int64)
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        h = ((idx[:, None] // radix[None, :]) % d).astype(np.float64)
        # |h.Ah| stays tiny, so float64 matmul is exact
        vals = np.rint((h @ a * h).sum(axis=1)).astype(np.int64)
        assert not np.any(vals & 1)  # the form is even
        counts += np.bincount((vals >> 1) % d, minlength=d)
    return tuple(int(x) for x in counts)


@lru_cache(maxsize=None)
def _block_histogram(gram, d):
    """Histogram of q mod d on one block, CRT-composed at composite d."""
    if d == 1:
        return (1,)
    fac = factorize(d)
    if len(fac) > 1:
        p, e = fac[0]
        d1 = p**e
        d2 = d // d1
        c1 = _block_histogram(gram, d1)
        c2 = _block_histogram(gram, d2)
        out = [0] * d
        for t1, n1 in enumerate(c1):
            if n1:
                for t2, n2 in enumerate(c2):
                    if n2:
                        out[crt_pair(t1, d1, t2, d2)] += n1 * n2
        return tuple(out)
    return _enumerate_histogram(gram, d)


def _phase_sum(counts, o, s):
    # sum_t counts[t] zeta_o^{-s t}, grouping residues before any root math
    weights = [0] * o
    for t, n in enumerate(counts):
        if n:
            weights[(-s * t) % o] += n
    total = CyclotomicNumber.zero()
    for k, n in enumerate(weights):
        if n:
            total = total + root_of_unity(o, k) * n
    return total


@lru_cache(maxsize=None)
def _full_sum(o, s):
    # sum over all of (Z_o)^22, as a product over the five blocks
    total = CyclotomicNumber.one()
    for gram in K3_BLOCKS:
        total = total * _phase_sum(_block_histogram(gram, o), o, s)
    return total


def gauss_sum(o, s, order_filter="all"):
    """Sum of zeta_o^{-s q(g)} over g in (Z_o)^22.

    order_filter "all" sums over every g; "exact" keeps only the g of exact
    order o, via Moebius inversion over the subgroup sums: the elements of
    order dividing d form ((o/d) Z_o)^22, whose sum equals the full sum at
    modulus d with twist s(o/d).
    """
    o = int(o)
    if o < 1:
        raise ValueError("o must be a positive integer")
    s = int(s) % o
    if order_filter == "all":
        return _full_sum(o, s)
    if order_filter != "exact":
        raise ValueError("order_filter must be 'all' or 'exact'")
    total = CyclotomicNumber.zero()
    for d in divisors(o):
        mu = mobius(o // d)
        if mu:
            total = total + _full_sum(d, (s * (o // d)) % d) * mu
    return total


def brute_force_sum(blocks, o, s):
    """Oracle: the same sum by one direct pass over all o^rank vectors."""
    counts = _enumerate_histogram(_block_diagonal(blocks), int(o))
    return _phase_sum(counts, int(o), int(s) % int(o))


def u_block_phase_sum(o, s):
    """Closed form for one U block: sum_{a,b} zeta_o^{-s a b} = o gcd(s, o)."""
    return o * gcd(s, o)


def discriminant_phase(g, o, s):
    """zeta_o^{-s q(g)} for an integer lift g, q(g) = (g.Ag)/2.

    Independent of the lift mod o because the lattice is even.
    """
    g = [int(x) for x in g]
    gram = k3_gram()
    if len(g) != len(gram):
        raise ValueError("g must have length %d" % len(gram))
    v = sum(g[i] * gram[i][j] * g[j] for i in range(len(g)) for j in range(len(g)))
    assert v % 2 == 0
    return root_of_unity(int(o), (-int(s) * (v // 2)) % int(o))


def exact_order_count(n, k, o):
    """#{g in (Z_n)^k : order(g) = o} = sum_{d|o} mu(o/d) d^k."""
    n, k, o = int(n), int(k), int(o)
    if n < 1 or k < 1 or o < 1 or n % o:
        raise ValueError("o must divide n")
    return sum(mobius(o // d) * d**k for d in divisors(o))


def epsilon(s, r):
    """The quadratic-residue sign attached to a twist s mod an odd r."""
    s, r = int(s), int(r)
    if r % 2 == 0:
        raise ValueError("epsilon is undefined for even r")
    if not 1 <= s <= r - 1:
        raise ValueError("s must satisfy 1 <= s <= r-1")
    half = s // 2 if s % 2 == 0 else (s + r) // 2
    return jacobi(half % r, r)


_PROVIDER_MODES = {
    "lattice": "lattice-computed",
    "lattice-computed": "lattice-computed",
    "paper": "paper-asserted",
    "paper-asserted": "paper-asserted",
}


class GaussSumProvider:
    """Order-o sector weights: asserted closed values or honest lattice sums.

    lattice-computed mode returns gauss_sum(o, s, "exact"); paper-asserted
    mode returns the exact-order element count at s = 0 and o^11 otherwise.
    """

    __slots__ = ("mode", "_cache")

    def __init__(self, mode="lattice-computed"):
        try:
            self.mode = _PROVIDER_MODES[mode]
        except KeyError:
            raise ValueError("unknown provider mode %r" % (mode,)) from None
        self._cache = {}

    def value(self, o, s):
        o = int(o)
        if o < 1:
            raise ValueError("o must be a positive integer")
        key = (o, int(s) % o)
        if key not in self._cache:
            if self.mode == "paper-asserted":
                v = exact_order_count(o, 22, o) if key[1] == 0 else o**11
                self._cache[key] = CyclotomicNumber.from_rational(v)
            else:
                self._cache[key] = gauss_sum(o, key[1], "exact")
        return self._cache[key]
