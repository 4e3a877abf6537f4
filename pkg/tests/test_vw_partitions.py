import random
from fractions import Fraction

import pytest

from vwk3.lattice_gauss import GaussSumProvider
from vwk3.qseries import PuiseuxSeries, series_diff
from vwk3.vw_partitions import (
    GerbeSpec,
    GTerm,
    MukaiData,
    collect_families,
    ess_terms,
    mukai_exponent_ess,
    mukai_exponent_opt,
    multiple_cover,
    opt_prime_terms,
    opt_terms,
    prime_assembled_terms,
    prime_closed_terms,
    solve_s,
    total_rho_terms,
    trivial_terms,
    verify_main_identity,
    z_ess,
    z_opt,
    z_opt_prime,
    z_opt_twisted,
    z_prime_assembled,
    z_prime_closed,
    z_total_rho,
    z_trivial,
)


def test_gerbe_spec():
    g = GerbeSpec(4, "optimal", order=2, twist=5)
    assert g.twist == 1
    assert GerbeSpec(3, "trivial").order == 1
    with pytest.raises(ValueError):
        GerbeSpec(3, "trivial", order=2)
    with pytest.raises(ValueError):
        GerbeSpec(4, "optimal", order=3)  # order must divide the rank
    with pytest.raises(ValueError):
        GerbeSpec(4, "optimal", order=1)
    with pytest.raises(ValueError):
        GerbeSpec(4, "special")


def test_mukai_exponents():
    assert mukai_exponent_ess(MukaiData(2, 2, 2, 1)) == -1
    assert mukai_exponent_ess(MukaiData(1, 1, 3, 1)) == 3
    assert mukai_exponent_ess(MukaiData(3, 3, 3, 3)) == 1
    assert mukai_exponent_opt(MukaiData(2, 0, 2, 1)) == 1
    assert mukai_exponent_opt(MukaiData(4, 0, 2, 2, 4)) == -1
    with pytest.raises(ValueError):
        mukai_exponent_ess(MukaiData(2, 1, 1, 1))  # non-integral exponent


def test_solve_s():
    assert solve_s(1, 4, 1) == 3
    assert solve_s(2, 4, 2) == 1
    assert solve_s(2, 6, 2) == 2
    assert solve_s(3, 6, 3) == 1
    assert solve_s(4, 6, 2) == 1
    for e in (3, 4, 5, 6, 8):
        assert solve_s(e - 1, e, 1) == 1
    # defining property: s * (m/d) = -1 mod (e/d)
    for e in (4, 6, 8, 9, 12):
        for m in range(1, e):
            from math import gcd

            d = gcd(m, e)
            if d == e:
                continue
            s = solve_s(m, e, d)
            o = e // d
            assert (s * (m // d) + 1) % o == 0
            assert 0 <= s < o
    with pytest.raises(ValueError):
        solve_s(0, 4, 4)
    with pytest.raises(ValueError):
        solve_s(2, 4, 1)  # d is not gcd(m, e)


def test_trivial_terms_rank_one():
    assert trivial_terms(1) == [(1, 0, 1)]
    z = z_trivial(1, 3)
    assert z.coefficient(0) == 1
    assert z.coefficient(1) == 24
    assert z.coefficient(2) == 324


def test_trivial_rank_two_values():
    z = z_trivial(2, 4)
    assert z.coefficient(0) == Fraction(1, 4)
    assert z.coefficient(Fraction(3, 2)) == 0
    assert z.coefficient(2) == 30
    assert z.coefficient(Fraction(7, 2)) == 0


def test_multiple_cover_matches_closed_forms():
    for r in (1, 2, 3, 4, 6):
        prec = r + 4
        assert multiple_cover(r, 1, "trivial", prec=prec) == z_trivial(r, prec)
        for s in range(1, r + 1):
            got = multiple_cover(r, 1, "essentially-trivial", s=s, prec=prec)
            assert got == z_ess(r, s, prec)
        for o in (2, 3, 4, 6):
            if o == 1 or r % o:
                continue
            assert multiple_cover(r, o, "optimal", prec=prec) == z_opt(r, o, prec)
            for s in range(o):
                got = multiple_cover(r, o, "optimal", s=s, prec=prec)
                assert got == z_opt_twisted(r, o, s, prec)


def test_multiple_cover_validation():
    with pytest.raises(ValueError):
        multiple_cover(2, 1, "trivial")  # precision is required
    with pytest.raises(ValueError):
        multiple_cover(2, 2, "trivial", prec=4)
    with pytest.raises(ValueError):
        multiple_cover(2, 1, "essentially-trivial", s=0, prec=4)
    with pytest.raises(ValueError):
        multiple_cover(4, 3, "optimal", prec=4)
    with pytest.raises(ValueError):
        multiple_cover(2, 2, "covering", prec=4)


def test_ess_at_full_twist_is_trivial():
    for r in (2, 3, 4, 6):
        assert z_ess(r, r, r + 4) == z_trivial(r, r + 4)
        assert sorted(ess_terms(r, r)) == sorted(trivial_terms(r))


def test_opt_twisted_is_phase_twist():
    for r, o in ((2, 2), (4, 2), (4, 4), (6, 3)):
        base = z_opt(r, o, r + 3)
        for s in range(o):
            assert z_opt_twisted(r, o, s, r + 3) == base.phase_twist(s)


def test_opt_prime_term_shapes():
    assert opt_prime_terms(2, 2, 1) == [(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))]
    assert opt_prime_terms(3, 3, 2) == [(Fraction(1, 3), Fraction(2, 3), Fraction(1, 3))]
    # o = r means a single branch; o < r drops the d = 1 branch
    assert opt_prime_terms(4, 2, 1) == [(Fraction(1, 8), Fraction(1, 2), Fraction(1))]
    full = opt_terms(4, 2)
    assert len(full) == 3  # d = 1 contributes two phases, d = 2 one
    z = z_opt_prime(2, 2, 0, 4)
    assert z.coefficient(Fraction(3, 2)) == Fraction(1, 2)


def test_closed_rank_one_is_hilbert_series():
    assert z_prime_closed(1, 5) == z_trivial(1, 5)
    assert z_prime_assembled(1, 5) == z_trivial(1, 5)
    assert z_total_rho(1, 7, 5) == z_trivial(1, 5)


def test_closed_coefficients():
    for r in (2, 3, 4):
        z = z_prime_closed(r, r + 2)
        assert z.lowest_exponent() == 0
        assert z.coefficient(0) == Fraction(1, r * r)
        zz = z_prime_closed(r, r)
        assert zz.coefficient(Fraction(r * r - 1, r)) == r**21 - r**10


def test_closed_families_rank_four():
    fams = collect_families(prime_closed_terms(4))
    assert fams == {
        (Fraction(0), Fraction(1, 4)): Fraction(4**21),
        (Fraction(0), Fraction(1)): Fraction(2**21, 4),
        (Fraction(0), Fraction(4)): Fraction(1, 16),
        (Fraction(1, 2), Fraction(1)): Fraction(2**10, 4),
        (Fraction(1, 4), Fraction(1, 4)): Fraction(4**10),
        (Fraction(1, 2), Fraction(1, 4)): Fraction(4**10),
        (Fraction(3, 4), Fraction(1, 4)): Fraction(4**10),
    }


def test_closed_families_rank_six():
    fams = collect_families(prime_closed_terms(6))
    assert fams[(Fraction(0), Fraction(2, 3))] == Fraction(3**21, 4)
    assert fams[(Fraction(0), Fraction(3, 2))] == Fraction(2**21, 9)
    assert fams[(Fraction(2, 3), Fraction(2, 3))] == Fraction(3**10, 4)
    assert fams[(Fraction(1, 2), Fraction(3, 2))] == Fraction(2**10, 9)
    assert fams[(Fraction(1, 3), Fraction(2, 3))] == Fraction(3**10, 4)
    assert fams[(Fraction(0), Fraction(1, 6))] == Fraction(6**21)
    assert fams[(Fraction(0), Fraction(6))] == Fraction(1, 36)


def test_assembled_families_rank_two():
    fams = collect_families(prime_assembled_terms(2))
    assert fams[(Fraction(0), Fraction(1, 2))] == Fraction(2**21)
    assert fams[(Fraction(1, 2), Fraction(1, 2))] == Fraction(2**10)
    z = z_prime_assembled(2, 4)
    assert z.coefficient(Fraction(3, 2)) == 2**21 - 2**10


def test_total_rho_families_prime_rank():
    for r, rho in ((2, 5), (3, 7)):
        fams = collect_families(total_rho_terms(r, rho))
        assert fams[(Fraction(0), Fraction(1, r))] == Fraction(r**21)
        assert fams[(Fraction(0), Fraction(r))] == Fraction(1, r * r)
        for m in range(1, r):
            assert fams[(Fraction(m, r), Fraction(1, r))] == Fraction(r ** (rho - 1))
    with pytest.raises(ValueError):
        total_rho_terms(2, 0)
    with pytest.raises(ValueError):
        total_rho_terms(2, 21)


def test_total_rho_contains_closed_families_at_prime_rank():
    # the rho-graded total shares its (phase, scale) support with the
    # closed form at prime rank; only the twisted-sector weights differ
    for r in (2, 3, 5):
        closed = collect_families(prime_closed_terms(r))
        total = collect_families(total_rho_terms(r, 11))
        assert set(closed) == set(total)


def test_main_identity_prime():
    for r in (2, 3):
        out = verify_main_identity(r, r + 4)
        assert out["equal"] is True
        assert out["rank"] == r and out["prec"] == r + 4
        assert out["diff"] == []
        assert out["assembled"] == out["closed"]


def test_main_identity_rank_four_mismatch():
    out = verify_main_identity(4, 5)
    assert out["equal"] is False
    assert out["diff"]
    d = dict(
        (x, (a, b)) for x, a, b in series_diff(out["assembled"], out["closed"])
    )
    exp = Fraction(15, 4)
    assert exp in d
    a, b = d[exp]
    assert a == 2**31 * (2**11 - 1)  # 4395899027456
    assert b == 2**20 * (2**22 - 1)  # 4398045462528
    # every reported row really is a coefficient disagreement
    for x, ca, cb in out["diff"]:
        assert ca != cb
        assert out["assembled"].coefficient(x) == ca
        assert out["closed"].coefficient(x) == cb


def test_main_identity_fails_with_paper_provider_even_at_prime_rank():
    out = verify_main_identity(2, 4, provider=GaussSumProvider("paper-asserted"))
    assert out["equal"] is False
    xs = [x for x, _, _ in out["diff"]]
    assert Fraction(3, 2) in xs


def test_assembled_equals_closed_series_prime():
    for r in (2, 3):
        assert z_prime_assembled(r, r + 5) == z_prime_closed(r, r + 5)


def test_expand_precision_and_prefactor():
    z = z_opt(2, 2, 5)
    assert z.prec == 5
    assert z.lowest_exponent() == Fraction(3, 2)  # q^r G(q^{1/2}) starts at r - 1/2
    w = z_trivial(3, 6)
    assert w.lowest_exponent() == 0


def test_collect_families_merges_duplicates():
    terms = [
        GTerm(Fraction(1), Fraction(0), Fraction(1)),
        GTerm(Fraction(2), Fraction(0), Fraction(1)),
        GTerm(Fraction(5), Fraction(1, 2), Fraction(1)),
    ]
    fams = collect_families(terms)
    assert fams == {
        (Fraction(0), Fraction(1)): Fraction(3),
        (Fraction(1, 2), Fraction(1)): Fraction(5),
    }
