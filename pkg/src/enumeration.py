"""
Exhaustive generation of inversion sequences and everything computed by scanning them:
avoidance counts and sequences, statistic distributions, Wilf classes, the structural
characterizations and the table and conjecture reports.
"""
import itertools
import logging
import multiprocessing
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np
from tqdm import tqdm

from closed_forms import formula_value
from expected_data import expected_table, load_expected_values, oracle_for, oracle_value
from inversion_sequences import (PATTERN_PAIRS, RELATIONS, STATISTICS, InvalidPattern,
                                 Pattern, RelTriple, avoids_all, avoids_triple,
                                 comparison_profile, stats, validate_invseq)
from recurrences import c_triangle, gentree_counts

logger = logging.getLogger(__name__)

MAX_LENGTH = 14
PERMUTATION_MAX_LENGTH = 10
INT64_MAX = int(np.iinfo(np.int64).max)


class SizeTooLarge(ValueError):
    pass


class UnknownStatistic(ValueError):
    pass


class UnknownClassId(ValueError):
    pass


class CountOverflow(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def _sign_table(letters: tuple) -> tuple:
    return tuple(map(tuple, comparison_profile(letters).tolist()))


def _ends_with_occurrence(word: Sequence[int], letters: tuple) -> bool:
    """True if some occurrence of the pattern uses the last entry of the word."""
    k = len(letters)
    last = len(word) - 1
    if last + 1 < k:
        return False
    signs = _sign_table(letters)
    chosen = [0] * k
    chosen[-1] = word[last]

    def place(slot, limit):
        if slot < 0:
            return True
        row = signs[slot]
        for pos in range(limit - 1, slot - 1, -1):
            value = word[pos]
            for t in range(slot + 1, k):
                other = chosen[t]
                if ((value > other) - (value < other)) != row[t]:
                    break
            else:
                chosen[slot] = value
                if place(slot - 1, pos):
                    return True
        return False

    return place(k - 2, last)


def _triple_ends_at_last(e: Sequence[int], t: RelTriple) -> bool:
    rho1, rho2, rho3 = RELATIONS[t.rho1], RELATIONS[t.rho2], RELATIONS[t.rho3]
    last = len(e) - 1
    z = e[last]
    for j in range(1, last):
        y = e[j]
        if not rho2(y, z):
            continue
        for i in range(j):
            if rho1(e[i], y) and rho3(e[i], z):
                return True
    return False


@dataclass(frozen=True)
class PatternSet:
    word_patterns: tuple = ()
    triples: tuple = ()

    @classmethod
    def parse(cls, patterns: str = '', triples=()) -> "PatternSet":
        """'001,110' plus optional relation triples given as strings or RelTriple."""
        words = tuple(Pattern.parse(p) for p in patterns.split(',') if p.strip()) if patterns else ()
        if isinstance(triples, (str, RelTriple)):
            triples = (triples,)
        rels = tuple(t if isinstance(t, RelTriple) else RelTriple.parse(t) for t in triples)
        return cls(words, rels)

    @classmethod
    def of(cls, *patterns) -> "PatternSet":
        return cls(tuple(p if isinstance(p, Pattern) else Pattern.parse(p) for p in patterns))

    def is_empty(self) -> bool:
        return not self.word_patterns and not self.triples

    @property
    def label(self) -> str:
        parts = [str(p) for p in self.word_patterns]
        parts += [str(t) for t in self.triples]
        return ','.join(parts)

    def key(self) -> frozenset:
        return frozenset(str(p) for p in self.word_patterns)

    def admits(self, e: Sequence[int]) -> bool:
        return avoids_all(e, self.word_patterns) and all(avoids_triple(e, t) for t in self.triples)

    def ends_at_last(self, e: Sequence[int]) -> bool:
        return (any(_ends_with_occurrence(e, p.letters) for p in self.word_patterns)
                or any(_triple_ends_at_last(e, t) for t in self.triples))

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class AvoidanceSequence:
    label: str
    counts: tuple

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= len(self.counts):
            raise IndexError(f"No count for n={n}")
        return self.counts[n - 1]

    @property
    def nmax(self) -> int:
        return len(self.counts)

    def as_dict(self) -> dict:
        return {n: count for n, count in enumerate(self.counts, start=1)}


@dataclass
class WilfClassification:
    nmax: int
    pairs: tuple
    counts: np.ndarray
    classes: list = field(default_factory=list)

    def contains(self, group, pair) -> bool:
        """Membership of a pair written in either order."""
        key = tuple(str(p) for p in pair)
        return key in group or key[::-1] in group

    def class_of(self, pair) -> tuple:
        for group in self.classes:
            if self.contains(group, pair):
                return group
        key = tuple(str(p) for p in pair)
        raise KeyError(f"Pair {key} is not classified")

    def class_count(self, group) -> int:
        index = self.pairs.index(group[0])
        return int(self.counts[index, -1])


def _check_size(n: int, bound: int = MAX_LENGTH):
    if n < 0:
        raise ValueError(f"Length must be non-negative, got {n}")
    if n > bound:
        raise SizeTooLarge(f"Length {n} exceeds the practical bound {bound}")


def _checked_sum(parts) -> int:
    total = 0
    for part in parts:
        total += int(part)
        if total > INT64_MAX:
            raise CountOverflow(f"Count exceeds the 64-bit range: {total}")
    return total


def _require_patterns(ps: PatternSet):
    if ps.is_empty():
        raise InvalidPattern("Counting needs at least one pattern or relation triple")


def iter_invseqs(n: int, max_length: int = MAX_LENGTH) -> Iterator[tuple]:
    _check_size(n, max_length)
    return itertools.product(*(range(i + 1) for i in range(n)))


def iter_avoiders(n: int, ps: PatternSet, prefix=(), max_length: int = MAX_LENGTH) -> Iterator[tuple]:
    """Avoiders of length n in lexicographic order, pruning every prefix that already contains."""
    _check_size(n, max_length)
    prefix = tuple(prefix)
    if len(prefix) > n or not ps.admits(prefix):
        return
    e = list(prefix)

    def extend():
        if len(e) == n:
            yield tuple(e)
            return
        for value in range(len(e) + 1):
            e.append(value)
            if not ps.ends_at_last(e):
                yield from extend()
            e.pop()

    yield from extend()


def _level_counts(prefix: tuple, nmax: int, ps: PatternSet) -> list:
    """Avoiders below the prefix at every length up to nmax."""
    counts = [0] * (nmax + 1)
    e = list(prefix)

    def grow():
        counts[len(e)] += 1
        if len(e) == nmax:
            return
        for value in range(len(e) + 1):
            e.append(value)
            if not ps.ends_at_last(e):
                grow()
            e.pop()

    grow()
    return counts


def count_avoiders(n: int, ps: PatternSet, workers: int = 1, prefix_length: int = 4,
                   parallel_threshold: int = 10, max_length: int = MAX_LENGTH) -> int:
    """|I_n(ps)| by exhaustive scan, split over fixed prefixes when running in parallel."""
    _check_size(n, max_length)
    _require_patterns(ps)
    started = time.perf_counter()
    if workers > 1 and n >= parallel_threshold:
        prefixes = list(iter_avoiders(min(prefix_length, n), ps))
        tasks = [(prefix, n, ps) for prefix in prefixes]
        with multiprocessing.Pool(workers) as pool:
            partials = pool.starmap(_level_counts, tasks)
        total = _checked_sum(counts[n] for counts in partials)
    else:
        total = _checked_sum([_level_counts((), n, ps)[n]])
    logger.debug("count %s n=%d -> %d in %.2fs", ps.label, n, total, time.perf_counter() - started)
    return total


def avoidance_sequence(ps: PatternSet, nmax: int, max_length: int = MAX_LENGTH) -> AvoidanceSequence:
    _check_size(nmax, max_length)
    _require_patterns(ps)
    counts = _level_counts((), nmax, ps)
    _checked_sum(counts)
    return AvoidanceSequence(ps.label, tuple(counts[1:]))


def _statistic_getter(name: str):
    if name not in STATISTICS:
        raise UnknownStatistic(f"Unknown statistic '{name}'. Known: {', '.join(STATISTICS)}")
    return lambda e: getattr(stats(e), name)


def distribution(n: int, ps: PatternSet, stat: str) -> dict:
    """Histogram of one statistic over the class; values that never occur are left out."""
    getter = _statistic_getter(stat)
    histogram = Counter(getter(e) for e in iter_avoiders(n, ps))
    return dict(sorted(histogram.items()))


def joint_distribution(n: int, ps: PatternSet, stat_names: Sequence[str]) -> dict:
    for name in stat_names:
        _statistic_getter(name)
    histogram = Counter()
    for e in iter_avoiders(n, ps):
        vector = stats(e)
        histogram[tuple(getattr(vector, name) for name in stat_names)] += 1
    return dict(sorted(histogram.items()))


def wilf_classify(nmax: int, pairs=PATTERN_PAIRS, show_progress: bool = False) -> WilfClassification:
    """Group pattern pairs whose counts agree for every n <= nmax."""
    _check_size(nmax)
    keys = tuple(tuple(str(p) for p in pair) for pair in pairs)
    rows = []
    for pair in tqdm(pairs, desc='Counting pairs', unit='pair', disable=not show_progress):
        rows.append(_level_counts((), nmax, PatternSet(tuple(pair)))[1:])
    counts = np.array(rows, dtype=np.int64)
    _, inverse = np.unique(counts, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    groups = {}
    for key, class_index in zip(keys, inverse):
        groups.setdefault(int(class_index), []).append(key)
    classes = sorted((tuple(group) for group in groups.values()),
                     key=lambda group: (int(counts[keys.index(group[0]), -1]), group))
    logger.debug("wilf classification up to n=%d: %d classes", nmax, len(classes))
    return WilfClassification(nmax, keys, counts, classes)


def iter_permutations_avoiding(n: int, ps: Sequence[Pattern]) -> Iterator[tuple]:
    """Permutations of 1..n avoiding every classical pattern, in lexicographic order."""
    _check_size(n, PERMUTATION_MAX_LENGTH)
    ps = tuple(ps)
    word = []
    unused = list(range(1, n + 1))

    def extend():
        if len(word) == n:
            yield tuple(word)
            return
        for value in list(unused):
            word.append(value)
            if not any(_ends_with_occurrence(word, p.letters) for p in ps):
                unused.remove(value)
                yield from extend()
                unused.append(value)
                unused.sort()
            word.pop()

    yield from extend()


def count_perm_avoiders(n: int, ps: Sequence[Pattern]) -> int:
    return sum(1 for _ in iter_permutations_avoiding(n, ps))


def _strict_run(e) -> int:
    """Length of the maximal strictly increasing prefix."""
    t = 1
    while t < len(e) and e[t] > e[t - 1]:
        t += 1
    return t


def _after_plateau(e, start: int) -> tuple:
    """Entries after the run of values equal to e[start] that begins at start."""
    j = start
    while j < len(e) and e[j] == e[start]:
        j += 1
    return tuple(e[j:])


def _weakly_increasing(values) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


def _weakly_decreasing(values) -> bool:
    return all(a >= b for a, b in zip(values, values[1:]))


def _strictly_decreasing(values) -> bool:
    return all(a > b for a, b in zip(values, values[1:]))


def _positives(e) -> tuple:
    return tuple(x for x in e if x > 0)


def _is_001_010(e):
    return len(set(e[_strict_run(e) - 1:])) == 1


def _is_001_011(e):
    return not any(e[_strict_run(e):])


def _is_001_012(e):
    return not any(e) or (e[1] > 0 and not any(_after_plateau(e, 1)))


def _is_001_110(e):
    return len(set(e[_strict_run(e):])) <= 1


def _is_001_021(e):
    return not any(_after_plateau(e, _strict_run(e) - 1))


def _is_001_120(e):
    t = _strict_run(e)
    rest = _after_plateau(e, t - 1)
    return not rest or (t >= 2 and all(x == e[t - 2] for x in rest))


def _is_001_100(e):
    t = _strict_run(e)
    rest = _after_plateau(e, t - 1)
    return not rest or (rest[0] < e[t - 1] and _strictly_decreasing(rest))


def _is_001_210(e):
    t = _strict_run(e)
    rest = _after_plateau(e, t - 1)
    return not rest or (rest[0] < e[t - 1] and len(set(rest)) == 1)


def _is_001(e):
    return _weakly_decreasing(e[_strict_run(e) - 1:])


def _is_012_021(e):
    positives = _positives(e)
    return not positives or all(x in (0, positives[0]) for x in e)


def _is_110_012(e):
    positives = _positives(e)
    if not _weakly_decreasing(positives):
        return False
    seen = set()
    for i, x in enumerate(e):
        if x > 0 and x in seen:
            return all(y == x for y in e[i + 1:])
        seen.add(x)
    return True


def _is_012_210(e):
    positives = _positives(e)
    if not _weakly_decreasing(positives) or len(set(positives)) > 2:
        return False
    if len(set(positives)) == 2:
        least = min(positives)
        return all(x == least for x in e[e.index(least):])
    return True


def _is_010_011(e):
    tail = e[_leading_zeros(e) - 1:]
    return len(set(tail)) == len(tail)


def _leading_zeros(e) -> int:
    z = 0
    while z < len(e) and e[z] == 0:
        z += 1
    return z


def _is_010_012(e):
    tail = e[_leading_zeros(e):]
    return all(x > 0 for x in tail) and _weakly_decreasing(tail)


def _is_010_021(e):
    return _weakly_increasing(e)


def _is_021(e):
    return _weakly_increasing(_positives(e))


def _is_210(e):
    running = -1
    rest = []
    for x in e:
        if x >= running:
            running = x
        else:
            rest.append(x)
    return _weakly_increasing(rest)


def _is_011(e):
    positives = _positives(e)
    return len(set(positives)) == len(positives)


def _is_000(e):
    return max(Counter(e).values(), default=0) <= 2


def _is_011_012(e):
    return _strictly_decreasing(_positives(e))


def _is_010_101(e):
    closed = set()
    for a, b in zip(e, e[1:]):
        if a != b:
            closed.add(a)
            if b in closed:
                return False
    return True


def _class_key(*patterns) -> frozenset:
    return frozenset(patterns)


CHARACTERIZATIONS = {
    _class_key('001', '010'): _is_001_010,
    _class_key('001', '011'): _is_001_011,
    _class_key('001', '012'): _is_001_012,
    _class_key('001', '110'): _is_001_110,
    _class_key('001', '021'): _is_001_021,
    _class_key('001', '120'): _is_001_120,
    _class_key('001', '100'): _is_001_100,
    _class_key('001', '210'): _is_001_210,
    _class_key('012', '021'): _is_012_021,
    _class_key('110', '012'): _is_110_012,
    _class_key('012', '210'): _is_012_210,
    _class_key('010', '011'): _is_010_011,
    _class_key('010', '012'): _is_010_012,
    _class_key('010', '021'): _is_010_021,
    _class_key('021'): _is_021,
    _class_key('001'): _is_001,
    _class_key('210'): _is_210,
    _class_key('011'): _is_011,
    _class_key('000'): _is_000,
    _class_key('011', '012'): _is_011_012,
    _class_key('010', '101'): _is_010_101,
}


def characterization_key(class_id) -> frozenset:
    if isinstance(class_id, PatternSet):
        return class_id.key()
    if isinstance(class_id, str):
        class_id = class_id.strip('()').split(',')
    return frozenset(str(p).strip() for p in class_id)


def matches_characterization(class_id, e: Sequence[int]) -> bool:
    """Evaluate the structural description of a class directly, without a pattern scan."""
    key = characterization_key(class_id)
    if key not in CHARACTERIZATIONS:
        raise UnknownClassId(f"No characterization for class ({','.join(sorted(key))})")
    e = validate_invseq(e)
    if not e:
        return True
    return CHARACTERIZATIONS[key](e)


@dataclass
class ReportRow:
    table: int
    pair: tuple
    label: str
    computed: tuple
    expected: dict
    oracle_tag: str = None
    oracle: dict = field(default_factory=dict)
    corrected: set = field(default_factory=set)

    def flag(self, n: int) -> str:
        value = self.computed[n - 1]
        if n in self.expected and self.expected[n] != value:
            return 'mismatch'
        if n in self.oracle and self.oracle[n] != value:
            return 'mismatch'
        if n in self.corrected:
            return 'corrected'
        return 'match'

    @property
    def matches(self) -> bool:
        return all(self.flag(n) != 'mismatch' for n in range(1, len(self.computed) + 1))

    @property
    def note(self) -> str:
        if self.corrected:
            return "printed value differs, oracle value used"
        return ''


def table_report(which: int, nmax: int = 8, path=None, show_progress: bool = False) -> list:
    """One ReportRow per pair of the table: brute force against stored and oracle values."""
    table = expected_table(load_expected_values(path), int(which))
    rows = []
    for pair, entry in tqdm(sorted(table.items()), desc=f'Table {which}', unit='row',
                            disable=not show_progress):
        sequence = avoidance_sequence(PatternSet.of(*pair), nmax)
        tag = oracle_for(pair)
        oracle = {n: oracle_value(tag, n) for n in range(1, nmax + 1)} if tag else {}
        rows.append(ReportRow(
            table=int(which),
            pair=pair,
            label=entry['label'],
            computed=sequence.counts,
            expected={n: v for n, v in entry['counts'].items() if n <= nmax},
            oracle_tag=tag,
            oracle=oracle,
            corrected={n for n in entry['corrected'] if n <= nmax},
        ))
    return rows


@dataclass
class ConjectureCheck:
    name: str
    proven: bool
    values: dict

    @property
    def consistent(self) -> bool:
        sequences = list(self.values.values())
        return all(s == sequences[0] for s in sequences[1:])

    @property
    def status(self) -> str:
        if self.proven:
            return 'VERIFIED' if self.consistent else 'MISMATCH'
        return 'CONJECTURE-CONSISTENT' if self.consistent else 'CONJECTURE-VIOLATED'


def conjecture_report(nmax: int = 8, show_progress: bool = False) -> list:
    def counts(ps):
        return list(avoidance_sequence(ps, nmax).counts)

    a279561 = [formula_value('A279561', n) for n in range(1, nmax + 1)]
    specs = [
        ('wilf-3091', False, {
            '011,201': lambda: counts(PatternSet.of('011', '201')),
            '110,210,120,010': lambda: counts(PatternSet.of('110', '210', '120', '010')),
            '100,210,120,010': lambda: counts(PatternSet.of('100', '210', '120', '010')),
            'generating tree': lambda: gentree_counts(nmax),
        }),
        ('0012-a279561', False, {
            '0012': lambda: counts(PatternSet.of('0012')),
            'A279561': lambda: a279561,
        }),
        ('triples-a279561', True, {
            '(>,≠,-)': lambda: counts(PatternSet.parse(triples='>,≠,-')),
            '(<,>,≠)': lambda: counts(PatternSet.parse(triples='<,>,≠')),
            'A279561': lambda: a279561,
        }),
        ('c-triangle-011-201', True, {
            'c triangle': lambda: c_triangle(nmax).totals(),
            '011,201': lambda: counts(PatternSet.of('011', '201')),
        }),
    ]
    checks = []
    for name, proven, sources in tqdm(specs, desc='Conjectures', disable=not show_progress):
        checks.append(ConjectureCheck(name, proven, {label: build() for label, build in sources.items()}))
    return checks
