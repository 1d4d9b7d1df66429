import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from closed_forms import (DELEGATED, FORMULA_IDS, FORMULAS, IndexOutOfRange, NoClosedForm,
                          UnknownFormula, bell, binomial, catalan, dyck_last, fibonacci,
                          formula_value, large_schroder, stirling2, triangle_T)


def values(tag, nmax=8):
    return [formula_value(tag, n) for n in range(1, nmax + 1)]


def test_helpers():
    assert [fibonacci(n) for n in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
    assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]
    assert [large_schroder(n) for n in range(6)] == [1, 2, 6, 22, 90, 394]
    assert [bell(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert binomial(6, 3) == 20
    assert binomial(3, 5) == 0
    assert binomial(1200, 1) == 1200


def test_stirling_rows():
    assert [stirling2(4, k) for k in range(1, 5)] == [1, 7, 6, 1]
    assert sum(stirling2(6, k) for k in range(1, 7)) == bell(6)
    with pytest.raises(IndexOutOfRange):
        stirling2(3, 0)


@pytest.mark.parametrize('tag, a8', [
    ('N', 8), ('LAZY', 29), ('FIB1', 34), ('FIB2M1', 54), ('CAKE', 64), ('POW2', 128),
    ('POW2MN', 248), ('VEX', 411), ('FIBBIS', 610), ('SUMPOW', 733), ('CATALAN', 1430),
    ('SCHRODER', 8558), ('BELL', 4140), ('A279561', 4082),
])
def test_length_eight_values(tag, a8):
    assert formula_value(tag, 8) == a8


def test_small_values():
    assert values('CAKE', 5) == [1, 2, 4, 8, 15]
    assert values('SCHRODER', 5) == [1, 2, 6, 22, 90]
    assert values('A279561', 5) == [1, 2, 6, 21, 77]
    assert values('VEX', 4) == [1, 2, 5, 13]


def test_oeis_formula_tags():
    # Rows (100,011) and (101,012) of the second table
    assert values('NEXUS', 7) == [1, 2, 5, 14, 43, 144, 523]
    assert values('PADOVAN_BT', 7) == [1, 2, 5, 12, 28, 65, 151]


def test_formula_errors():
    with pytest.raises(UnknownFormula):
        formula_value('NOPE', 3)
    with pytest.raises(IndexOutOfRange):
        formula_value('CATALAN', 0)
    for tag in DELEGATED:
        with pytest.raises(NoClosedForm):
            formula_value(tag, 3)
    assert set(FORMULA_IDS) == set(FORMULAS) | set(DELEGATED)


def test_triangle_T_rows():
    t = triangle_T(8)
    assert t.row(3) == [2, 3, 1]
    assert [t.row_sum(n) for n in range(1, 9)] == [1, 2, 6, 22, 92, 426, 2146, 11624]


def test_dyck_last_counts_catalan():
    d = dyck_last(7)
    assert d[(3, 0)] == 1
    assert d[(3, 2)] == 2
    assert [d.row_sum(n) for n in range(1, 8)] == [catalan(n) for n in range(1, 8)]
