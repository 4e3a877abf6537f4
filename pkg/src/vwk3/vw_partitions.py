"""Vafa-Witten partition functions for SU(r)/Z_r on a K3 surface.

Every partition function here is a finite combination of series
G(e^{2 pi i phase} q^{scale}) with a global q^r prefactor, where G is the
Hilbert-scheme generating series.  Combinations are kept symbolically as
lists of GTerm records and expanded to PuiseuxSeries on demand, so closed
forms, assembled sums and twists can be compared either family-by-family
or coefficient-by-coefficient.

The independent oracle multiple_cover sums Euler characteristics over
second Chern classes directly, without going through GTerm expansion, and
is used to validate every closed form.
"""

from collections import namedtuple
from fractions import Fraction
from math import gcd

from .cyclotomic import root_of_unity
from .eta_hilb import G_at, hilb_euler_table
from .lattice_gauss import GaussSumProvider, exact_order_count
from .numth import divisors
from .qseries import PuiseuxSeries, series_diff

KINDS = ("trivial", "essentially-trivial", "optimal")

# coeff * G(e^{2 pi i phase} q^{scale}); phase is reduced into [0, 1)
GTerm = namedtuple("GTerm", ["coeff", "phase", "scale"])


def _gterm(coeff, phase, scale):
    phase = Fraction(phase)
    return GTerm(coeff, phase - (phase.numerator // phase.denominator), Fraction(scale))


class GerbeSpec:
    """A mu_r-gerbe sector: rank, kind, order of the defining class, twist.

    order is the essential order for essentially-trivial gerbes (need not
    divide r), the Brauer order for optimal ones (must divide r, > 1), and
    1 for the trivial gerbe.  The twist index is reduced mod order.
    """

    __slots__ = ("rank", "kind", "order", "twist")

    def __init__(self, rank, kind, order=1, twist=0):
        rank, order, twist = int(rank), int(order), int(twist)
        if rank < 1:
            raise ValueError("rank must be positive")
        if kind not in KINDS:
            raise ValueError("kind must be one of %s" % (KINDS,))
        if order < 1:
            raise ValueError("order must be positive")
        if kind == "trivial" and order != 1:
            raise ValueError("the trivial gerbe has order 1")
        if kind == "optimal" and (order == 1 or rank % order):
            raise ValueError("an optimal gerbe needs order | rank with order > 1")
        self.rank = rank
        self.kind = kind
        self.order = order
        self.twist = twist % order


class MukaiData:
    """Inputs of the exponent formulas: rank r, essential order s (0 in the
    optimal case), rational second Chern number c2, divisor d, gerbe order o."""

    __slots__ = ("r", "s", "c2", "d", "o")

    def __init__(self, r, s=0, c2=0, d=1, o=1):
        self.r = int(r)
        self.s = int(s)
        self.c2 = Fraction(c2)
        self.d = int(d)
        self.o = int(o)


def mukai_exponent_ess(m):
    """Hilbert-scheme index s^2/(2d^2)(1 - r/d) + (r/d)(c2/d - r/d) + 1."""
    val = (
        Fraction(m.s * m.s, 2 * m.d * m.d) * (1 - Fraction(m.r, m.d))
        + Fraction(m.r, m.d) * (m.c2 / m.d - Fraction(m.r, m.d))
        + 1
    )
    if val.denominator != 1:
        raise ValueError("exponent %s is not an integer" % val)
    return int(val)


def mukai_exponent_opt(m):
    """Hilbert-scheme index (r/d)(c2/d - r/d) + 1."""
    val = Fraction(m.r, m.d) * (m.c2 / m.d - Fraction(m.r, m.d)) + 1
    if val.denominator != 1:
        raise ValueError("exponent %s is not an integer" % val)
    return int(val)


def trivial_terms(r):
    """G-terms of the trivial-gerbe partition function at rank r."""
    r = int(r)
    if r < 1:
        raise ValueError("rank must be positive")
    out = []
    for d in divisors(r):
        for j in range(d):
            out.append(_gterm(Fraction(d, r * r), Fraction(j, d), Fraction(r, d * d)))
    return out


def ess_terms(r, s):
    """G-terms for an essentially trivial gerbe of essential order s."""
    r, s = int(r), int(s)
    if r < 1 or s < 1:
        raise ValueError("need r >= 1 and s >= 1")
    dg = gcd(r, s)
    rbar = r // dg
    out = []
    for d in divisors(dg):
        dgbar = dg // d
        k = rbar * dgbar
        for m in range(k):
            out.append(
                _gterm(Fraction(dgbar, dg * r), Fraction(m, k), Fraction(dg, rbar * dgbar * dgbar))
            )
    return out


def _check_opt(r, o):
    r, o = int(r), int(o)
    if r < 1 or o < 2 or r % o:
        raise ValueError("optimal order must divide the rank and exceed 1")
    return r, o


def opt_terms(r, o):
    """G-terms for an optimal gerbe of order o (untwisted)."""
    r, o = _check_opt(r, o)
    out = []
    for d in divisors(r // o):
        dbar = r // (d * o)
        for j in range(dbar):
            out.append(
                _gterm(Fraction(1, o * d * d * dbar), Fraction(j, dbar), Fraction(r, dbar * dbar * o * o))
            )
    return out


def opt_twisted_terms(r, o, s):
    """opt_terms with the twist folded into each branch's root of unity.

    A twist by s multiplies the coefficient at exponent x by e^{2 pi i s x},
    which on the branch (d, dbar) shifts the phase by s d/(dbar o); the
    shift depends on the branch, not just on s/o.
    """
    r, o = _check_opt(r, o)
    s = int(s)
    out = []
    for d in divisors(r // o):
        dbar = r // (d * o)
        for j in range(dbar):
            out.append(
                _gterm(
                    Fraction(1, o * d * d * dbar),
                    Fraction(s * d + j * o, o * dbar),
                    Fraction(r, dbar * dbar * o * o),
                )
            )
    return out


def opt_prime_terms(r, o, s):
    """The primed optimal series: j = 0 branches only, uniform phase s/o,
    and (for o < r) only branch divisors d > 1."""
    r, o = _check_opt(r, o)
    s = int(s) % o
    if o == r:
        return [_gterm(Fraction(1, o), Fraction(s, o), Fraction(r, o * o))]
    out = []
    for d in divisors(r // o):
        if d == 1:
            continue
        dbar = r // (d * o)
        out.append(
            _gterm(Fraction(1, o * d * d * dbar), Fraction(s, o), Fraction(r, dbar * dbar * o * o))
        )
    return out


def solve_s(m, e, d):
    """The unique s in [1, e/d) with s (m/d) = -1 mod (e/d)."""
    m, e, d = int(m), int(e), int(d)
    if m < 1 or d >= e or d != gcd(m, e):
        raise ValueError("need m >= 1 and d = gcd(m, e) < e")
    o = e // d
    return (-pow((m // d) % o, -1, o)) % o


def prime_closed_terms(r):
    """G-terms of the closed-form SU(r)/Z_r partition function."""
    r = int(r)
    if r < 1:
        raise ValueError("rank must be positive")
    if r == 1:
        return [_gterm(Fraction(1), 0, 1)]
    out = [_gterm(Fraction(1, r * r), 0, r), _gterm(Fraction(r**21), 0, Fraction(1, r))]
    for m in range(1, r):
        out.append(_gterm(Fraction(r**10), Fraction(m, r), Fraction(1, r)))
    for d in divisors(r):
        if d in (1, r):
            continue
        out.append(_gterm(Fraction((r // d) ** 21, d * d), 0, Fraction(d * d, r)))
    for e in divisors(r):
        if e in (1, r):
            continue
        dbar = r // e
        for m in range(1, e):
            d = gcd(m, e)
            if d == 1:
                continue
            o = e // d
            s = solve_s(m, e, d)
            out.append(_gterm(Fraction(o**10, d * d * dbar), Fraction(s, o), Fraction(d, dbar * o)))
    for m in range(1, r):
        d = gcd(m, r)
        if d == 1:
            continue
        o = r // d
        s = solve_s(m, r, d)
        out.append(_gterm(Fraction(o**10, d * d), Fraction(s, o), Fraction(d * d, r)))
    return out


def prime_assembled_terms(r, provider=None):
    """Trivial sector plus every twisted primed optimal sector, each order-o
    twist weighted by the provider's exact-order Gauss sum."""
    r = int(r)
    if r < 1:
        raise ValueError("rank must be positive")
    if provider is None:
        provider = GaussSumProvider()
    out = list(trivial_terms(r))
    for o in divisors(r):
        if o == 1:
            continue
        for m in range(o):
            w = provider.value(o, m)
            for t in opt_prime_terms(r, o, m):
                out.append(GTerm(w * t.coeff, t.phase, t.scale))
    return out


def total_rho_terms(r, rho):
    """Phase-free total over all r^22 gerbe classes at Picard number rho.

    Algebraic classes of order t (counted in (Z_r)^rho) contribute the
    essentially trivial series with content gcd r/t; non-algebraic classes
    of Brauer order o > 1 contribute the untwisted optimal series.
    """
    r, rho = int(r), int(rho)
    if r < 1:
        raise ValueError("rank must be positive")
    if not 1 <= rho <= 20:
        raise ValueError("rho must lie in 1..20")
    out = list(trivial_terms(r))
    for t in divisors(r):
        if t == 1:
            continue
        n = exact_order_count(r, rho, t)
        for g in ess_terms(r, r // t):
            out.append(GTerm(n * g.coeff, g.phase, g.scale))
    for o in divisors(r):
        if o == 1:
            continue
        n = r**rho * exact_order_count(r, 22 - rho, o)
        for g in opt_terms(r, o):
            out.append(GTerm(n * g.coeff, g.phase, g.scale))
    return out


def collect_families(terms):
    """Total coefficient per (phase, scale) family, in sorted key order."""
    fam = {}
    for t in terms:
        key = (t.phase, t.scale)
        fam[key] = fam[key] + t.coeff if key in fam else t.coeff
    return dict(sorted(fam.items()))


def expand_terms(terms, r, prec):
    """Expand sum(coeff G(e^{2 pi i phase} q^{scale})) * q^r below q^prec."""
    prec = Fraction(prec)
    inner = prec - r
    total = PuiseuxSeries.zero(inner)
    for (phase, scale), coeff in collect_families(terms).items():
        if not coeff:
            continue
        zeta = root_of_unity(phase.denominator, phase.numerator)
        g = G_at(zeta, scale.numerator, scale.denominator, inner)
        total = total + g * coeff
    return total.shift(r)


def z_trivial(r, prec):
    return expand_terms(trivial_terms(r), r, prec)


def z_ess(r, s, prec):
    return expand_terms(ess_terms(r, s), r, prec)


def z_opt(r, o, prec):
    return expand_terms(opt_terms(r, o), r, prec)


def z_opt_twisted(r, o, s, prec):
    return expand_terms(opt_twisted_terms(r, o, s), r, prec)


def z_opt_prime(r, o, s, prec):
    return expand_terms(opt_prime_terms(r, o, s), r, prec)


def z_prime_assembled(r, prec, provider=None):
    return expand_terms(prime_assembled_terms(r, provider), r, prec)


def z_prime_closed(r, prec):
    return expand_terms(prime_closed_terms(r), r, prec)


def z_total_rho(r, rho, prec):
    return expand_terms(total_rho_terms(r, rho), r, prec)


def multiple_cover(r, o, kind, s=0, prec=None):
    """Oracle: direct Euler-characteristic summation over second Chern classes.

    Each divisor branch contributes (1/(o d^2)) chi(Hilb^{stride n + 1}) at
    exponent (n step + r); the n = -1 term is admitted exactly when the
    stride is 1.  Twists act on the optimal series by exponent phases.
    """
    r, o, s = int(r), int(o), int(s)
    if kind not in KINDS:
        raise ValueError("kind must be one of %s" % (KINDS,))
    if prec is None:
        raise ValueError("prec is required")
    prec = Fraction(prec)
    inner = prec - r
    if kind == "optimal":
        GerbeSpec(r, kind, order=o, twist=s)
        branches = [
            (r // (d * o), Fraction(d, o), Fraction(1, o * d * d)) for d in divisors(r // o)
        ]
        den = o
    else:
        if o != 1:
            raise ValueError("%s gerbes have order parameter 1" % kind)
        if kind == "essentially-trivial":
            GerbeSpec(r, kind, order=max(s, 1))
            if s < 1:
                raise ValueError("essential order s must be >= 1")
            dlist = divisors(gcd(r, s))
        else:
            GerbeSpec(r, kind)
            dlist = divisors(r)
        branches = [(r // d, Fraction(d), Fraction(1, d * d)) for d in dlist]
        den = 1
    entries = []
    for stride, step, w in branches:
        n = -1 if stride == 1 else 0
        while n * step < inner:
            entries.append((stride * n + 1, n * step + r, w))
            n += 1
    table = hilb_euler_table(max((i for i, _, _ in entries), default=0))
    terms = {}
    for idx, x, w in entries:
        c = w * table[idx]
        terms[x] = terms[x] + c if x in terms else c
    series = PuiseuxSeries(den, prec, terms)
    if kind == "optimal" and s % o:
        series = series.phase_twist(s)
    return series


def verify_main_identity(r, prec, provider=None):
    """Compare assembled and closed partition functions coefficient-wise."""
    r = int(r)
    prec = Fraction(prec)
    za = z_prime_assembled(r, prec, provider)
    zc = z_prime_closed(r, prec)
    diff = series_diff(za, zc)
    return {
        "rank": r,
        "prec": prec,
        "equal": not diff,
        "assembled": za,
        "closed": zc,
        "diff": diff,
    }
