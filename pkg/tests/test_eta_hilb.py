from fractions import Fraction

import pytest

from vwk3.cyclotomic import root_of_unity
from vwk3.eta_hilb import (
    G_at,
    G_series,
    HilbTable,
    hilb_euler_table,
    hilb_product_method,
    hilb_recursion_method,
)
from vwk3.qseries import PuiseuxSeries

KNOWN = (1, 24, 324, 3200, 25650, 176256)


def test_known_coefficients():
    table = hilb_euler_table(5)
    assert tuple(table[n] for n in range(6)) == KNOWN
    assert len(table) == 6


def test_methods_agree_to_fifty():
    assert hilb_product_method(50) == hilb_recursion_method(50)


def test_table_protocol():
    t = HilbTable([1, 24])
    assert t[1] == 24 and len(t) == 2
    with pytest.raises(IndexError):
        t[2]


def test_g_series_shape():
    g = G_series(4)
    assert g.lowest_exponent() == -1
    assert g.coefficient(-1) == 1
    assert g.coefficient(0) == 24
    assert g.coefficient(3) == 25650
    assert g.prec == 4


def test_g_series_inverts_eta_power():
    """G(q) times q * prod (1-q^k)^24 is exactly 1."""
    prec = 9
    g = G_series(prec)
    factor = PuiseuxSeries.one(prec + 2)
    for k in range(1, prec + 3):
        step = PuiseuxSeries(1, prec + 2, {0: 1, k: -1})
        for _ in range(24):
            factor = (factor * step).truncate(prec + 2)
    eta24 = factor.shift(1)
    prod = g * eta24
    assert prod == PuiseuxSeries.one(prod.prec)


def test_g_at_examples():
    s = G_at(root_of_unity(2), 1, 2)
    assert s.coefficient(Fraction(-1, 2)) == -1
    t = G_at(1, 2, 1)
    assert t.coefficient(2) == 324
    assert t.coefficient(-2) == 1


def test_g_at_precision():
    s = G_at(1, 1, 3, prec=2)
    assert s.prec == 2
    assert s.coefficient(Fraction(5, 3)) == hilb_euler_table(6)[6]


def test_root_average_filters_g():
    """Averaging G over k-th root twists keeps N = 1 mod k terms only."""
    for k in (2, 3):
        prec = 4
        avg = PuiseuxSeries.zero(prec, den=k)
        for m in range(k):
            avg = avg + G_at(root_of_unity(k, m), 1, k, prec=prec)
        avg = avg * Fraction(1, k)
        direct = G_at(1, 1, k, prec=prec).root_average(k)
        assert avg == direct
        table = hilb_euler_table(int(prec * k) + 1)
        for x, c in avg.terms.items():
            assert x.denominator == 1
            n = int(x) * k + 1
            assert n % k == 1 % k and c == table[n]
