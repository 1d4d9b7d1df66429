import csv
import io
import os
import sys
from collections import Counter

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from closed_forms import fibonacci, formula_value
from enumeration import PatternSet, distribution, iter_avoiders
from recurrences import (a_poly, a_triangle, b_triangle, c_poly, c_triangle, e_poly,
                         gentree_children, gentree_counts, gentree_label, gentree_levels,
                         last_triangle_012, write_triangle_csv, z_triangle)


def max_position_cells(n, *patterns):
    """(n, m, l) -> count, m the largest entry and l the 1-based position of its first occurrence."""
    cells = Counter()
    for e in iter_avoiders(n, PatternSet.of(*patterns)):
        m = max(e)
        cells[(n, m, e.index(m) + 1)] += 1
    return cells


def nonzero_cells(triangle, n):
    return {index: value for index, value in triangle.cells() if index[0] == n and value}


def test_a_triangle_small_rows():
    a = a_triangle(4)
    assert a[3, 1, 2] == 2
    assert a.matrix(3) == [[1, 0, 0], [0, 2, 1], [0, 0, 2]]
    assert a[9, 1, 2] == 0


@pytest.mark.parametrize('build, patterns', [
    (a_triangle, ('110', '102')),
    (b_triangle, ('102', '120')),
    (c_triangle, ('011', '201')),
])
def test_triangles_match_brute_force(build, patterns):
    triangle = build(7)
    for n in range(1, 8):
        assert nonzero_cells(triangle, n) == dict(max_position_cells(n, *patterns))


def test_a_and_b_totals_agree():
    assert a_triangle(8).totals() == b_triangle(8).totals()
    assert a_triangle(8).totals() == [formula_value('A279561', n) for n in range(1, 9)]


def test_c_triangle_total_at_eight():
    assert c_triangle(8).total(8) == 3091


def test_z_triangle_is_zero_distribution():
    z = z_triangle(8)
    assert z.totals() == [1, 2, 6, 22, 92, 426, 2146, 11624]
    for n in range(1, 7):
        row = {k: v for (m, k), v in z.cells() if m == n and v}
        assert row == distribution(n, PatternSet.of('101', '110'), 'zero')


def test_last_triangle_012():
    t = last_triangle_012(7)
    for n in range(2, 8):
        assert t[n, 0] == t[n, 1] == fibonacci(2 * n - 3)
    for n in range(1, 7):
        lasts = Counter(e[-1] for e in iter_avoiders(n, PatternSet.of('012')))
        row = {k: v for (m, k), v in t.cells() if m == n and v}
        assert row == dict(lasts)


def test_matrix_needs_three_indices():
    with pytest.raises(ValueError):
        z_triangle(3).matrix(3)


def test_polynomials_at_one():
    a = a_triangle(5)
    assert a_poly(a, 3, 1, 1) == a.total(3) - 1
    c = c_triangle(5)
    assert c_poly(c, 5, 1, 1) == c.total(5)
    # u^m v^l weights of a_{3,1,2}=2, a_{3,1,3}=1, a_{3,2,3}=2 at u=2, v=1
    assert a_poly(a, 3, 2, 1) == 2 * 2 + 1 * 2 + 2 * 4


def test_generating_tree_rule():
    assert gentree_children(1, 1) == [(2, 1), (1, 1)]
    assert gentree_children(2, 1) == [(3, 1), (2, 1), (1, 2)]
    assert gentree_levels(3)[2] == {(3, 1): 1, (2, 1): 2, (1, 2): 1, (1, 1): 1}
    levels = gentree_levels(6)
    for level in levels:
        assert e_poly(level, 1, 1) == sum(level.values())


def test_generating_tree_labels_follow_sequences():
    levels = gentree_levels(6)
    for n in range(1, 7):
        labels = Counter(gentree_label(e) for e in iter_avoiders(n, PatternSet.of('100', '210', '120', '010')))
        assert dict(labels) == levels[n - 1]


def test_gentree_counts_match_class():
    counts = gentree_counts(8)
    assert counts[-1] == 3091
    for n in range(1, 8):
        assert counts[n - 1] == sum(1 for _ in iter_avoiders(n, PatternSet.of('100', '210', '120', '010')))


def test_write_triangle_csv():
    handle = io.StringIO()
    write_triangle_csv(c_triangle(3), handle)
    rows = list(csv.reader(io.StringIO(handle.getvalue())))
    assert rows[0] == ['n', 'm', 'l', 'value']
    assert len(rows) == 1 + sum(l for n in range(1, 4) for l in range(1, n + 1))
    assert ['3', '0', '1', '1'] in rows

    handle = io.StringIO()
    write_triangle_csv(z_triangle(3), handle)
    rows = list(csv.reader(io.StringIO(handle.getvalue())))
    assert rows[0] == ['n', 'k', 'value']
    assert len(rows) == 1 + 1 + 2 + 3
