"""
Inversion sequences, word patterns and relation triples.

An inversion sequence of length n is a tuple e with 0 <= e[i] <= i (0-based), so the
1-based bound e_i <= i-1 holds. Containment of a word pattern requires the full
(<, =, >) comparison profile of a subsequence to match the pattern.
"""
import itertools
import operator
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

InvSeq = tuple[int, ...]
Permutation = tuple[int, ...]


class OutOfRange(ValueError):
    def __init__(self, index, value):
        super().__init__(f"Entry {value} at position {index} is outside 0..{index - 1}")
        self.index = index
        self.value = value


class InvalidPattern(ValueError):
    pass


class InvalidRelation(ValueError):
    pass


class InvalidPermutation(ValueError):
    pass


def standardize(word: Sequence[int]) -> tuple[int, ...]:
    """Replace each letter by its rank among the distinct letters of the word."""
    ranks = {value: rank for rank, value in enumerate(sorted(set(word)))}
    return tuple(ranks[value] for value in word)


@dataclass(frozen=True)
class Pattern:
    letters: tuple[int, ...]

    def __post_init__(self):
        if not self.letters:
            raise InvalidPattern("Pattern must have at least one letter")
        if any(not isinstance(x, int) or x < 0 for x in self.letters):
            raise InvalidPattern(f"Pattern letters must be non-negative integers: {self.letters}")
        if standardize(self.letters) != tuple(self.letters):
            raise InvalidPattern(f"Pattern {''.join(map(str, self.letters))} is not canonical")

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        text = text.strip()
        if not text.isdigit():
            raise InvalidPattern(f"Cannot parse pattern '{text}'")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def from_permutation(cls, text: str) -> "Pattern":
        """Read a classical 1-based permutation pattern such as '2143'."""
        text = text.strip()
        if not text.isdigit():
            raise InvalidPattern(f"Cannot parse permutation pattern '{text}'")
        values = tuple(int(ch) for ch in text)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise InvalidPattern(f"'{text}' is not a permutation of 1..{len(values)}")
        return cls(tuple(v - 1 for v in values))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return ''.join(map(str, self.letters))


def _full(a, b):
    return True


RELATIONS = {
    '<': operator.lt,
    '>': operator.gt,
    '≤': operator.le,
    '≥': operator.ge,
    '=': operator.eq,
    '≠': operator.ne,
    '-': _full,
}

RELATION_ALIASES = {
    '<=': '≤',
    '>=': '≥',
    '!=': '≠',
    '==': '=',
    '−': '-',
}


def _relation_symbol(token: str) -> str:
    token = token.strip()
    token = RELATION_ALIASES.get(token, token)
    if token not in RELATIONS:
        raise InvalidRelation(f"Unknown relation '{token}'")
    return token


@dataclass(frozen=True)
class RelTriple:
    """Forbids i<j<k with e_i rho1 e_j, e_j rho2 e_k and e_i rho3 e_k."""
    rho1: str
    rho2: str
    rho3: str

    def __post_init__(self):
        for name in ('rho1', 'rho2', 'rho3'):
            object.__setattr__(self, name, _relation_symbol(getattr(self, name)))

    @classmethod
    def parse(cls, text: str) -> "RelTriple":
        parts = text.split(',')
        if len(parts) != 3:
            raise InvalidRelation(f"A relation triple needs three relations, got '{text}'")
        return cls(*parts)

    def holds(self, a: int, b: int, c: int) -> bool:
        return (RELATIONS[self.rho1](a, b)
                and RELATIONS[self.rho2](b, c)
                and RELATIONS[self.rho3](a, c))

    def __str__(self):
        return f"({self.rho1},{self.rho2},{self.rho3})"


# The 13 canonical words of length 3 and the 78 unordered pairs of them.
ALPHABET = tuple(Pattern.parse(p) for p in (
    '000', '001', '010', '011', '012', '100', '101',
    '102', '110', '120', '201', '210', '021',
))
PATTERN_PAIRS = tuple(itertools.combinations(ALPHABET, 2))


class StatVector(NamedTuple):
    asc: int
    dist: int
    rmin: int
    zero: int
    satu: int
    rep: int
    last: int


STATISTICS = StatVector._fields


def validate_invseq(word: Iterable[int]) -> InvSeq:
    """Return the word as an inversion sequence or raise OutOfRange at the first bad entry."""
    entries = tuple(word)
    for i, value in enumerate(entries, start=1):
        if not isinstance(value, int) or value < 0 or value > i - 1:
            raise OutOfRange(i, value)
    return entries


def is_invseq(word: Sequence[int]) -> bool:
    return all(0 <= value <= i for i, value in enumerate(word))


def validate_permutation(values: Iterable[int]) -> Permutation:
    values = tuple(values)
    if sorted(values) != list(range(1, len(values) + 1)):
        raise InvalidPermutation(f"{values} is not a permutation of 1..{len(values)}")
    return values


def lehmer_code(pi: Sequence[int]) -> InvSeq:
    pi = validate_permutation(pi)
    return tuple(sum(1 for earlier in pi[:i] if earlier > value) for i, value in enumerate(pi))


def comparison_profile(word: Sequence[int]) -> np.ndarray:
    """Sign matrix s[a, b] = sign(word[a] - word[b]); two words are order-isomorphic iff equal."""
    w = np.asarray(word, dtype=np.int64)
    return np.sign(np.subtract.outer(w, w))


def contains_pattern(word: Sequence[int], p: Pattern) -> bool:
    """Naive scan over all subsequences of length |p|."""
    k = len(p.letters)
    if len(word) < k:
        return False
    return any(standardize(sub) == p.letters for sub in itertools.combinations(word, k))


def avoids_all(word: Sequence[int], ps: Iterable[Pattern]) -> bool:
    return not any(contains_pattern(word, p) for p in ps)


def avoids_triple(e: Sequence[int], t: RelTriple) -> bool:
    rho1, rho2, rho3 = RELATIONS[t.rho1], RELATIONS[t.rho2], RELATIONS[t.rho3]
    n = len(e)
    for k in range(2, n):
        ek = e[k]
        for j in range(1, k):
            ej = e[j]
            if not rho2(ej, ek):
                continue
            for i in range(j):
                if rho1(e[i], ej) and rho3(e[i], ek):
                    return False
    return True


def triple_patterns(t: RelTriple) -> frozenset:
    """Length-3 canonical patterns whose letters satisfy the triple."""
    return frozenset(p for p in ALPHABET if t.holds(*p.letters))


def stats(e: Sequence[int]) -> StatVector:
    n = len(e)
    asc = sum(1 for a, b in zip(e, e[1:]) if a < b)
    dist = len({x for x in e if x > 0})
    rmin = 0
    running = None
    for value in reversed(e):
        if running is None or value < running:
            rmin += 1
            running = value
    zero = sum(1 for x in e if x == 0)
    satu = sum(1 for i, x in enumerate(e) if x == i)
    return StatVector(
        asc=asc,
        dist=dist,
        rmin=rmin,
        zero=zero,
        satu=satu,
        rep=n - dist,
        last=e[-1] if n else 0,
    )


def format_word(word: Sequence[int]) -> str:
    return ','.join(map(str, word))


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip().strip('()')
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(','))
    except ValueError:
        raise ValueError(f"Cannot parse integer sequence '{text}'") from None
