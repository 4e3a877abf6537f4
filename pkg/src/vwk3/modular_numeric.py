"""Floating-point checks of the modular transformation laws.

This layer never touches the exact series: eta is evaluated by its
pentagonal-number expansion (with an Euler-product oracle alongside),
G = eta^{-24}, and each partition function is evaluated as its finite
G-combination.  The S-transformation rules and the S-duality prefactor
are then verified numerically at sample points of the upper half plane.

All partition-function combinations are evaluated bare, without the
global q^r prefactor: the prefactor is not modular and the clean
transformation statements hold for the bare combinations.
"""

import cmath
from fractions import Fraction
from math import gcd, log

from .vw_partitions import prime_closed_terms, solve_s, trivial_terms

MIN_IM = 0.05

# sample points: S-rule grid and S-duality comparisons
RULE_TAUS = (1j, Fraction(1, 3) + 1j, Fraction(-1, 5) + 2j)
SDUALITY_TAUS = (1j, Fraction(1, 7) + 1j)


def _check_tau(tau):
    tau = complex(tau)
    if tau.imag < MIN_IM:
        raise ValueError("Im(tau) must be at least %s" % MIN_IM)
    return tau


def eta(tau, terms=200):
    """Dedekind eta by the pentagonal-number expansion of prod(1 - q^k)."""
    tau = _check_tau(tau)
    q = cmath.exp(2j * cmath.pi * tau)
    acc = 1 + 0j
    aq = abs(q)
    for k in range(1, terms + 1):
        e1 = k * (3 * k - 1) // 2
        acc += (-1) ** k * (q**e1 + q ** (e1 + k))
        if aq**e1 < 1e-18:
            break
    return cmath.exp(1j * cmath.pi * tau / 12) * acc


def eta_via_product(tau, terms=200):
    """Oracle: the literal truncated product q^{1/24} prod (1 - q^k)."""
    tau = _check_tau(tau)
    q = cmath.exp(2j * cmath.pi * tau)
    acc = 1 + 0j
    qk = 1 + 0j
    for _ in range(terms):
        qk *= q
        acc *= 1 - qk
    return cmath.exp(1j * cmath.pi * tau / 12) * acc


def G_num(tau, terms=200):
    return eta(tau, terms) ** -24


def eval_terms(gterms, tau, terms=200):
    """Evaluate sum(coeff G(e^{2 pi i phase} q^{scale})) at q = e^{2 pi i tau}.

    Each G-term becomes G_num(phase + scale tau); the q^r prefactor is not
    applied here.
    """
    tau = complex(tau)
    total = 0j
    for t in gterms:
        total += complex(t.coeff) * G_num(float(t.phase) + float(t.scale) * tau, terms)
    return total


def _rel_err(lhs, rhs):
    scale = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale if scale else 0.0


def s_rule_check(r, e, m, tau, terms=200):
    """One S-rule instance: (rule number, lhs, rhs) at the point tau.

    Rule 1 (e = 1): G(r (-1/tau)) vs tau^{-12} r^{12} G(tau/r).
    Rule 2 (m = 0 < e): G((r/e^2)(-1/tau)) vs tau^{-12} (r/e^2)^{12} G((e^2/r) tau).
    Rule 3 (m > 0): G(((r/e)(-1/tau) + m)/e) vs
                    tau^{-12} (dbar/d)^{12} G(d tau/(dbar o) + s/o)
    with d = gcd(m, e), dbar = r/e, o = e/d and s the solved congruence twist.
    """
    r, e, m = int(r), int(e), int(m)
    if r < 1 or e < 1 or r % e or not 0 <= m < e:
        raise ValueError("need e | r and 0 <= m < e")
    tau = _check_tau(tau)
    st = -1 / tau
    if e == 1:
        lhs = G_num(r * st, terms)
        rhs = tau**-12 * r**12 * G_num(tau / r, terms)
        return 1, lhs, rhs
    if m == 0:
        c = Fraction(r, e * e)
        lhs = G_num(float(c) * st, terms)
        rhs = tau**-12 * float(c) ** 12 * G_num(float(1 / c) * tau, terms)
        return 2, lhs, rhs
    d = gcd(m, e)
    dbar = r // e
    o = e // d
    s = solve_s(m, e, d)
    lhs = G_num((dbar * st + m) / e, terms)
    rhs = (
        tau**-12
        * float(Fraction(dbar, d)) ** 12
        * G_num(d * tau / (dbar * o) + float(Fraction(s, o)), terms)
    )
    return 3, lhs, rhs


def check_S_rules(r, e, m, tolerance=1e-6, taus=None, terms=200):
    """Reports for one (r, e, m) across the sample points."""
    out = []
    for tau in RULE_TAUS if taus is None else taus:
        rule, lhs, rhs = s_rule_check(r, e, m, tau, terms)
        err = _rel_err(lhs, rhs)
        out.append(
            {
                "rule": rule,
                "e": e,
                "m": m,
                "tau": complex(tau),
                "lhs": lhs,
                "rhs": rhs,
                "rel_err": err,
                "pass": err < tolerance,
            }
        )
    return out


def s_rules_report(r, tolerance=1e-6, taus=None, terms=200):
    """All S-rule instances for rank r: every e | r and 0 <= m < e."""
    r = int(r)
    out = []
    for e in range(1, r + 1):
        if r % e:
            continue
        for m in range(e):
            out.extend(check_S_rules(r, e, m, tolerance, taus, terms))
    return out


def check_sduality_prefactor(r, tolerance=1e-6, taus=None, terms=200):
    """Resolve and verify the S-duality prefactor between the SU(r) and
    SU(r)/Z_r combinations.

    The trivial-sector combination at -1/tau is compared with the closed
    combination at tau; the constant sign r^a tau^k is fitted at two
    internal reference points, then verified at the sample points.  The
    report carries the resolved constants and, for reference, the relative
    error of the nominal +/- r^{-12} (tau/i)^{12} prefactor.
    """
    r = int(r)
    if r < 1:
        raise ValueError("rank must be positive")
    su_terms = trivial_terms(r)
    quot_terms = prime_closed_terms(r)

    def lhs(tau):
        return eval_terms(su_terms, -1 / complex(tau), terms)

    def rhs(tau):
        return eval_terms(quot_terms, complex(tau), terms)

    t1, t2 = 0.9j, 1.3j
    rho1 = lhs(t1) / rhs(t1)
    rho2 = lhs(t2) / rhs(t2)
    k = round(log(abs(rho1 / rho2)) / log(0.9 / 1.3))
    a = round(log(abs(rho1) / 0.9**k) / log(r)) if r > 1 else 0
    ref = rho1 / (t1**k * r**a)
    sign = 1 if ref.real > 0 else -1
    samples = []
    ok = abs(abs(ref) - 1) < tolerance
    for tau in SDUALITY_TAUS if taus is None else taus:
        tau = complex(tau)
        err = _rel_err(lhs(tau), sign * r**a * tau**k * rhs(tau))
        nominal = min(
            _rel_err(lhs(tau), r**-12 * (tau / 1j) ** 12 * rhs(tau)),
            _rel_err(lhs(tau), -(r**-12) * (tau / 1j) ** 12 * rhs(tau)),
        )
        samples.append(
            {"tau": tau, "rel_err": err, "nominal_rel_err": nominal, "pass": err < tolerance}
        )
        ok = ok and err < tolerance
    return {
        "rank": r,
        "sign": sign,
        "r_exponent": a,
        "tau_exponent": k,
        "resolution_residual": abs(abs(ref) - 1),
        "samples": samples,
        "pass": ok,
    }
