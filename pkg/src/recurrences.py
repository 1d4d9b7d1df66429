"""
Counting triangles for the classes solved by recurrence, and the (p,q) generating tree.

Triangles are dense numpy object arrays indexed by the mathematical indices directly
(n, m, l), so index 0 of n and l is unused. Cells outside 0 <= m < l <= n stay zero.
"""
import csv
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from closed_forms import dyck_last

logger = logging.getLogger(__name__)


@dataclass
class IndexedTriangle:
    name: str
    nmax: int
    values: np.ndarray
    first_index: int = 1

    @property
    def rank(self) -> int:
        return self.values.ndim

    def __getitem__(self, key):
        if any(i < 0 or i > self.nmax for i in key):
            return 0
        return int(self.values[key])

    def total(self, n: int) -> int:
        return int(self.values[n].sum())

    def totals(self) -> list:
        return [self.total(n) for n in range(1, self.nmax + 1)]

    def matrix(self, n: int) -> list:
        """Rows m = 0..n-1, columns l = 1..n (the layout of the printed arrays)."""
        if self.rank != 3:
            raise ValueError(f"Triangle {self.name} is not indexed by (n, m, l)")
        return [[int(self.values[n, m, l]) for l in range(1, n + 1)] for m in range(n)]

    def cells(self):
        """Every (index, value) in the defined range, zeros included."""
        for n in range(1, self.nmax + 1):
            if self.rank == 3:
                for l in range(1, n + 1):
                    for m in range(l):
                        yield (n, m, l), int(self.values[n, m, l])
            else:
                for k in range(self.first_index, self.first_index + n):
                    yield (n, k), int(self.values[n, k])


def _zeros(nmax: int, rank: int) -> np.ndarray:
    # dtype=object keeps exact Python integers
    values = np.empty((nmax + 1,) * rank, dtype=object)
    values.fill(0)
    return values


def a_triangle(nmax: int) -> IndexedTriangle:
    """(110,102)-avoiders by largest entry m and position l of its leftmost occurrence."""
    d = dyck_last(max(nmax, 1))
    a = _zeros(nmax, 3)
    for n in range(1, nmax + 1):
        a[n, 0, 1] = 1
        for l in range(2, n + 1):
            for m in range(1, l):
                a[n, m, l] = (d[(n - 1, m)] - d[(l - 1, m)] + d[(l - 1, m - 1)]
                              - (1 if (m, l) == (1, 2) else 0)
                              + a[n - 1, :m, l - 1:n].sum())
    return IndexedTriangle('a', nmax, a)


def b_triangle(nmax: int) -> IndexedTriangle:
    """(102,120)-avoiders by largest entry m and position l of its leftmost occurrence."""
    d = dyck_last(max(nmax, 1))
    b = _zeros(nmax, 3)
    for n in range(1, nmax + 1):
        b[n, 0, 1] = 1
        for l in range(2, n + 1):
            for m in range(1, l):
                b[n, m, l] = d[(l, m - 1)] + b[n - 1, 1:m + 1, l:n].sum()
    return IndexedTriangle('b', nmax, b)


def c_triangle(nmax: int) -> IndexedTriangle:
    """(011,201)-avoiders whose unique largest entry m sits at position l."""
    c = _zeros(nmax, 3)
    for n in range(1, nmax + 1):
        c[n, 0, 1] = 1
        for l in range(2, n + 1):
            for m in range(1, l):
                c[n, m, l] = sum(c[n - 1, j, j + 1:l + 1].sum() for j in range(m))
    return IndexedTriangle('c', nmax, c)


def z_triangle(nmax: int) -> IndexedTriangle:
    """(101,110)-avoiders by number of zeros, split by how many ones they contain."""
    z = _zeros(nmax, 2)
    if nmax >= 1:
        z[1, 1] = 1
    for n in range(2, nmax + 1):
        for k in range(1, n + 1):
            no_ones = z[n - 1, k - 1]
            one_one = k * z[n - 1, k]
            several = z[n - 1, k + 1:n].sum()
            z[n, k] = no_ones + one_one + several
    return IndexedTriangle('z', nmax, z)


def last_triangle_012(nmax: int) -> IndexedTriangle:
    """|{e in I_n(012) : last(e) = k}| stored at [n, k]."""
    t = _zeros(nmax, 2)
    if nmax >= 1:
        t[1, 0] = 1
    for n in range(2, nmax + 1):
        previous_total = t[n - 1].sum()
        t[n, 0] = previous_total
        t[n, 1] = previous_total
        for k in range(2, n):
            t[n, k] = t[n - 1, k - 1]
    return IndexedTriangle('last012', nmax, t, first_index=0)


def _poly(triangle: IndexedTriangle, n: int, u, v):
    u, v = Fraction(u), Fraction(v)
    total = Fraction(0)
    for l in range(2, n + 1):
        for m in range(1, l):
            coefficient = triangle.values[n, m, l]
            if coefficient:
                total += coefficient * u ** m * v ** l
    return total


def a_poly(triangle: IndexedTriangle, n: int, u, v) -> Fraction:
    """a_n(u,v) = sum over 1 <= m < l <= n of a_{n,m,l} u^m v^l."""
    return _poly(triangle, n, u, v)


def b_poly(triangle: IndexedTriangle, n: int, u, v) -> Fraction:
    return _poly(triangle, n, u, v)


def c_poly(triangle: IndexedTriangle, n: int, u, v) -> Fraction:
    """c_n(u,v) = sum of c_{n,m,l} u^m v^(l-m-1), the all-zero term included."""
    u, v = Fraction(u), Fraction(v)
    total = Fraction(0)
    for l in range(1, n + 1):
        for m in range(l):
            coefficient = triangle.values[n, m, l]
            if coefficient:
                total += coefficient * u ** m * v ** (l - m - 1)
    return total


def gentree_children(p: int, q: int) -> list:
    return [(p + 1, q - i) for i in range(q)] + [(p - i, i + 1) for i in range(p)]


def gentree_label(e) -> tuple:
    n = len(e)
    values = set(e) | {-1}
    m1 = max(values)
    m2 = max(values - {m1}) if m1 != -1 else -1
    return n - m1, m1 - m2


def gentree_levels(nmax: int) -> list:
    """Label frequency maps for levels 1..nmax; identical labels are merged."""
    levels = []
    level = Counter({(1, 1): 1})
    for _ in range(nmax):
        levels.append(dict(level))
        following = Counter()
        for (p, q), count in level.items():
            for child in gentree_children(p, q):
                following[child] += count
        level = following
    logger.debug("generating tree: %d levels, %d labels at the last", nmax, len(levels[-1]) if levels else 0)
    return levels


def gentree_counts(nmax: int) -> list:
    return [sum(level.values()) for level in gentree_levels(nmax)]


def e_poly(level: dict, u, v) -> Fraction:
    u, v = Fraction(u), Fraction(v)
    return sum((count * u ** p * v ** q for (p, q), count in level.items()), Fraction(0))


TRIANGLES = {
    'a': a_triangle,
    'b': b_triangle,
    'c': c_triangle,
    'z': z_triangle,
    'last012': last_triangle_012,
}


def write_triangle_csv(triangle: IndexedTriangle, handle):
    writer = csv.writer(handle)
    writer.writerow(['n', 'm', 'l', 'value'] if triangle.rank == 3 else ['n', 'k', 'value'])
    for index, value in triangle.cells():
        writer.writerow([*index, value])
