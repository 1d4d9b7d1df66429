"""
Constructive maps between avoidance classes and the objects they are counted by:
colored Dyck paths, set partitions, ordered trees and Dyck paths.

Inversion sequences are 0-based tuples; positions in docstrings are 1-based like e_i.
"""
import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce
from operator import mul
from typing import Iterator, Sequence

from inversion_sequences import Pattern, avoids_all, contains_pattern, stats, validate_invseq

P010, P011, P012, P021 = (Pattern.parse(p) for p in ('010', '011', '012', '021'))
P100, P101, P102, P110 = (Pattern.parse(p) for p in ('100', '101', '102', '110'))
P201, P210 = Pattern.parse('201'), Pattern.parse('210')


class NotInDomainClass(ValueError):
    pass


class NotAvoiding021(NotInDomainClass):
    pass


class NotAvoiding011(NotInDomainClass):
    pass


class NotAvoiding210(NotInDomainClass):
    pass


class NotAvoiding201(NotInDomainClass):
    pass


class DegenerateSubsequence(ValueError):
    pass


class InvalidTreeLiteral(ValueError):
    pass


class InvalidPartition(ValueError):
    pass


def _require(e, patterns, error=NotInDomainClass):
    e = validate_invseq(e)
    if not avoids_all(e, patterns):
        names = ','.join(str(p) for p in patterns)
        raise error(f"{e} does not avoid ({names})")
    return e


@dataclass(frozen=True)
class ColoredDyckPath:
    heights: tuple
    red: tuple

    def colors(self) -> tuple:
        return tuple('red' if r else 'black' for r in self.red)


def outline(e: Sequence[int]) -> ColoredDyckPath:
    """Zero entries become red steps at the running maximum, positive entries black steps."""
    e = _require(e, (P021,), NotAvoiding021)
    heights, red = [], []
    running = 0
    for x in e:
        running = max(running, x)
        heights.append(x if x > 0 else running)
        red.append(x == 0)
    return ColoredDyckPath(tuple(heights), tuple(red))


def outline_inverse(path: ColoredDyckPath) -> tuple:
    return tuple(0 if r else h for h, r in zip(path.heights, path.red))


def in_class_a(path: ColoredDyckPath) -> bool:
    if not is_dyck_path(path.heights):
        return False
    previous = None
    for h, r in zip(path.heights, path.red):
        if h == 0 and not r:
            return False
        if h > 0 and h != previous and r:
            return False
        previous = h
    return True


def in_class_b(path: ColoredDyckPath) -> bool:
    """Class A paths whose red steps lie at height 0 or at the smallest positive height."""
    if not in_class_a(path):
        return False
    positive = [h for h in path.heights if h > 0]
    lowest = min(positive, default=0)
    return all(h in (0, lowest) for h, r in zip(path.heights, path.red) if r)


def _canonical_partition(blocks) -> tuple:
    return tuple(sorted(tuple(sorted(block)) for block in blocks))


def validate_partition(blocks, n: int = None) -> tuple:
    blocks = [tuple(block) for block in blocks]
    if any(not block for block in blocks):
        raise InvalidPartition("Blocks must be non-empty")
    elements = [x for block in blocks for x in block]
    if len(set(elements)) != len(elements):
        raise InvalidPartition("Blocks must be disjoint")
    n = len(elements) if n is None else n
    if sorted(elements) != list(range(1, n + 1)):
        raise InvalidPartition(f"Blocks do not cover 1..{n}")
    return _canonical_partition(blocks)


def eta(e: Sequence[int]) -> tuple:
    """Zero at i opens block {i}; a positive e_i puts i into the block holding e_i."""
    e = _require(e, (P011,), NotAvoiding011)
    blocks = []
    where = {}
    for i, x in enumerate(e, start=1):
        if x == 0:
            where[i] = len(blocks)
            blocks.append([i])
        else:
            where[i] = where[x]
            blocks[where[x]].append(i)
    return _canonical_partition(blocks)


def eta_inverse(blocks) -> tuple:
    blocks = validate_partition(blocks)
    n = sum(len(block) for block in blocks)
    e = [0] * n
    for block in blocks:
        for previous, i in zip(block, block[1:]):
            e[i - 1] = previous
    return tuple(e)


def phi_stat(e: Sequence[int]) -> tuple:
    """(010,101)-avoiders to (010,100)-avoiders, keeping dist, satu and zero."""
    e = _require(e, (P010, P101))
    f = list(e)
    for i in range(2, len(e)):
        prefix_max = max(e[:i - 1])
        if e[i - 1] == e[i] < prefix_max:
            f[i] = prefix_max
    return tuple(f)


def phi_stat_inverse(f: Sequence[int]) -> tuple:
    f = _require(f, (P010, P100))
    e = list(f)
    for i in range(2, len(f)):
        prefix_max = max(f[:i - 1])
        if f[i] == prefix_max and e[i - 1] < prefix_max:
            e[i] = e[i - 1]
    return tuple(e)


def _first_positive(e) -> int:
    return next((i for i, x in enumerate(e) if x > 0), len(e))


def zero_propagate(e: Sequence[int]) -> tuple:
    """After the first positive entry, each zero takes the nearest positive value to its left."""
    e = _require(e, (P011, P012))
    f = list(e)
    for i in range(_first_positive(e) + 1, len(e)):
        if f[i] == 0:
            f[i] = f[i - 1]
    return tuple(f)


def zero_propagate_inverse(f: Sequence[int]) -> tuple:
    f = _require(f, (P010, P012))
    start = _first_positive(f)
    return tuple(0 if i > start and x == f[i - 1] else x for i, x in enumerate(f))


def first_occurrence_map(e: Sequence[int]) -> tuple:
    """Weakly increasing sequences to (011,021)-avoiders: repeated positive values become 0."""
    e = _require(e, (P010, P021))
    seen = set()
    f = []
    for x in e:
        f.append(x if x not in seen else 0)
        seen.add(x)
    return tuple(f)


def first_occurrence_inverse(f: Sequence[int]) -> tuple:
    f = _require(f, (P011, P021))
    e = []
    last_positive = 0
    for x in f:
        last_positive = x or last_positive
        e.append(last_positive)
    return tuple(e)


def _saturated_after_first(e) -> int:
    indices = [i for i in range(1, len(e)) if e[i] == i]
    if len(indices) != 1:
        raise NotInDomainClass(f"{tuple(e)} must have exactly two saturated entries")
    return indices[0]


def rho(e: Sequence[int]) -> tuple:
    """(011,102)-avoiders with two saturated entries to (011,102)-avoiders one shorter."""
    e = _require(e, (P011, P102))
    j = _saturated_after_first(e)
    if j - 1 not in e:
        f = list(e[1:])
        f[j - 1] -= 1
        return tuple(f)
    return e[:j] + e[j + 1:]


def rho_inv(f: Sequence[int]) -> tuple:
    f = _require(f, (P011, P102))
    if not f:
        raise NotInDomainClass("rho_inv needs a non-empty sequence")
    largest = max(f)
    if stats(f).satu != 1:
        j = f.index(largest)
        e = [0] + list(f)
        e[j + 1] += 1
        return tuple(e)
    return f[:largest + 1] + (largest + 1,) + f[largest + 1:]


def _weak_ltr_maxima(e) -> list:
    positions = []
    running = -1
    for i, x in enumerate(e):
        if x >= running:
            running = x
            positions.append(i)
    return positions


def corteel_phi(e: Sequence[int]) -> tuple:
    """Keep the weak left-to-right maxima; refill the rest greedily from their multiset."""
    e = _require(e, (P210,), NotAvoiding210)
    maxima = set(_weak_ltr_maxima(e))
    rest = [i for i in range(len(e)) if i not in maxima]
    pool = sorted(e[i] for i in rest)
    f = list(e)
    for i in rest:
        bound = max(e[:i])
        k = max(v for v in pool if v < bound)
        pool.remove(k)
        f[i] = k
    return tuple(f)


def corteel_phi_inverse(f: Sequence[int]) -> tuple:
    f = _require(f, (P201,), NotAvoiding201)
    maxima = set(_weak_ltr_maxima(f))
    rest = [i for i in range(len(f)) if i not in maxima]
    e = list(f)
    for i, value in zip(rest, sorted(f[i] for i in rest)):
        e[i] = value
    return tuple(e)


def cyclic_exchange(e: Sequence[int], positions: Sequence[int]) -> tuple:
    """
    Rearrange the entries of e at the given 0-based positions.

    With a zero among them they are sorted weakly increasing in place; otherwise each
    value moves to the next larger value present and the largest wraps to the smallest.
    """
    positions = sorted(positions)
    values = [e[i] for i in positions]
    distinct = sorted(set(values))
    if len(distinct) < 2:
        raise DegenerateSubsequence(f"Subsequence {values} needs at least two distinct values")
    if distinct[0] == 0:
        replaced = sorted(values)
    else:
        successor = dict(zip(distinct, distinct[1:] + distinct[:1]))
        replaced = [successor[v] for v in values]
    f = list(e)
    for i, value in zip(positions, replaced):
        f[i] = value
    return tuple(f)


def _has_k_occurrence_210(e, k: int) -> bool:
    for a, x in enumerate(e):
        if x != k:
            continue
        smaller = [y for y in e[a + 1:] if y < k]
        for b, y in enumerate(smaller):
            if any(z < y for z in smaller[b + 1:]):
                return True
    return False


def psi(e: Sequence[int]) -> tuple:
    """201-avoiders to 210-avoiders, keeping zero, dist, satu and 010-containment."""
    e = _require(e, (P201,), NotAvoiding201)
    current = e
    for k in sorted(x for x in set(e) if x >= 2):
        if not _has_k_occurrence_210(current, k):
            continue
        start = current.index(k)
        positions = [i for i in range(start + 1, len(current)) if current[i] < k]
        current = cyclic_exchange(current, positions)
    return current


def cap_map(e: Sequence[int]) -> tuple:
    """(100,021)-avoiders to (110,021)-avoiders."""
    e = _require(e, (P100, P021))
    start = _first_positive(e)
    zeros = [i for i in range(start, len(e)) if e[i] == 0]
    if not zeros:
        return e
    k = zeros[0]
    seen = set()
    f = list(e)
    for i in range(start, k):
        if e[i] in seen:
            f[i] = 0
        seen.add(e[i])
    return tuple(f)


def cap_map_inverse(f: Sequence[int]) -> tuple:
    f = _require(f, (P110, P021))
    start = _first_positive(f)
    zeros = [i for i in range(start, len(f)) if f[i] == 0]
    if not zeros:
        return f
    k = zeros[-1]
    e = list(f)
    for i in range(start + 1, k):
        if e[i] == 0:
            e[i] = e[i - 1]
    return tuple(e)


def is_dyck_path(heights: Sequence[int]) -> bool:
    return (all(0 <= h <= i for i, h in enumerate(heights))
            and all(a <= b for a, b in zip(heights, heights[1:])))


def iter_dyck_paths(n: int) -> Iterator[tuple]:
    """Weakly increasing height words h with h_i <= i-1, lexicographically."""
    def extend(prefix):
        if len(prefix) == n:
            yield prefix
            return
        low = prefix[-1] if prefix else 0
        for h in range(low, len(prefix) + 1):
            yield from extend(prefix + (h,))

    yield from extend(())


def path_type(heights: Sequence[int]) -> tuple:
    return tuple(len(list(run)) for _, run in itertools.groupby(heights))


def path_capacity(heights: Sequence[int]) -> int:
    return len(heights) - heights[-1] if heights else 0


def weighted_path_total(n: int) -> int:
    """Sum over Dyck paths of the product of the run lengths at positive height."""
    return sum(reduce(mul, path_type(h)[1:], 1) for h in iter_dyck_paths(n))


def parse_tree(text: str) -> tuple:
    """'(()(()))' -> ((), ((),)): each vertex is the tuple of its children."""
    text = ''.join(text.split())
    if not text:
        raise InvalidTreeLiteral("Empty tree literal")

    def node(pos):
        if pos >= len(text) or text[pos] != '(':
            raise InvalidTreeLiteral(f"Expected '(' at offset {pos} in '{text}'")
        pos += 1
        children = []
        while pos < len(text) and text[pos] == '(':
            child, pos = node(pos)
            children.append(child)
        if pos >= len(text) or text[pos] != ')':
            raise InvalidTreeLiteral(f"Expected ')' at offset {pos} in '{text}'")
        return tuple(children), pos + 1

    tree, end = node(0)
    if end != len(text):
        raise InvalidTreeLiteral(f"Trailing characters after offset {end} in '{text}'")
    return tree


def format_tree(tree: tuple) -> str:
    return '(' + ''.join(format_tree(child) for child in tree) + ')'


def tree_edges(tree: tuple) -> int:
    return sum(1 + tree_edges(child) for child in tree)


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple:
    if n == 0:
        return ((),)
    result = []
    for first in range(n):
        for child in _trees(first):
            for rest in _trees(n - 1 - first):
                result.append((child,) + rest)
    return tuple(result)


def iter_trees(n: int) -> Iterator[tuple]:
    """All ordered trees with n edges."""
    return iter(_trees(n))


def _preorder(tree: tuple, path=()):
    yield path, tree
    for index, child in enumerate(tree):
        yield from _preorder(child, path + (index,))


def _interior(vertices) -> list:
    return [i for i, (path, node) in enumerate(vertices) if path and node]


def _last_branch_vertex(vertices) -> int:
    """Index in preorder of the latest interior vertex, or of the root when there is none."""
    interior = _interior(vertices)
    return interior[-1] if interior else 0


def tree_type(tree: tuple) -> tuple:
    vertices = list(_preorder(tree))
    if not tree:
        return ()
    return (len(tree),) + tuple(len(vertices[i][1]) for i in _interior(vertices))


def tree_capacity(tree: tuple) -> int:
    vertices = list(_preorder(tree))
    return len(vertices) - 1 - _last_branch_vertex(vertices)


def _prune(tree: tuple, path: tuple) -> tuple:
    if not path:
        return ()
    head, rest = path[0], path[1:]
    return tree[:head] + (_prune(tree[head], rest),) + tree[head + 1:]


def tree_to_dyck(tree: tuple) -> tuple:
    """Type- and capacity-preserving map from ordered trees to Dyck paths."""
    n = tree_edges(tree)
    vertices = list(_preorder(tree))
    interior = _interior(vertices)
    if not interior:
        return (0,) * n
    path, node = vertices[interior[-1]]
    pruned = _prune(tree, path)
    base = tree_to_dyck(pruned)
    pruned_vertices = list(_preorder(pruned))
    anchor = _last_branch_vertex(pruned_vertices)
    leaves_after = 0
    for vertex_path, vertex in pruned_vertices[anchor + 1:]:
        if not vertex:
            leaves_after += 1
        if vertex_path == path:
            break
    return base + (base[-1] + leaves_after,) * len(node)


def iter_set_partitions(n: int) -> Iterator[tuple]:
    """Partitions of 1..n from restricted growth strings, blocks ordered by minimum."""
    def extend(blocks, i):
        if i > n:
            yield tuple(tuple(block) for block in blocks)
            return
        for block in blocks:
            block.append(i)
            yield from extend(blocks, i + 1)
            block.pop()
        blocks.append([i])
        yield from extend(blocks, i + 1)
        blocks.pop()

    if n == 0:
        yield ()
        return
    yield from extend([], 1)


def is_indecomposable(blocks) -> bool:
    """No proper initial segment 1..m of the ground set is a union of blocks."""
    blocks = validate_partition(blocks)
    n = sum(len(block) for block in blocks)
    for m in range(1, n):
        if all(max(block) <= m or min(block) > m for block in blocks):
            return False
    return True


def max_block_rank(blocks) -> int:
    """1-based rank of the block holding the largest element, blocks by decreasing minimum."""
    blocks = validate_partition(blocks)
    n = sum(len(block) for block in blocks)
    ordered = sorted(blocks, key=min, reverse=True)
    return next(rank for rank, block in enumerate(ordered, start=1) if n in block)


def contains_010(e: Sequence[int]) -> bool:
    return contains_pattern(e, P010)


MAPS = {
    'outline': (outline, outline_inverse),
    'eta': (eta, eta_inverse),
    'phi_stat': (phi_stat, phi_stat_inverse),
    'zero_propagate': (zero_propagate, zero_propagate_inverse),
    'first_occurrence_map': (first_occurrence_map, first_occurrence_inverse),
    'rho': (rho, rho_inv),
    'corteel_phi': (corteel_phi, corteel_phi_inverse),
    'psi': (psi, None),
    'cap_map': (cap_map, cap_map_inverse),
}

# Statistics each sequence-to-sequence map keeps pointwise.
PRESERVED = {
    'phi_stat': ('dist', 'satu', 'zero'),
    'zero_propagate': ('satu',),
    'corteel_phi': ('zero', 'dist'),
    'psi': ('zero', 'dist', 'satu'),
}
