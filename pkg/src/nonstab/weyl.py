"""Exact symbolic algebra of the error group of phased shift/multiply operators.

Operators act on words of length n over a finite abelian group
A = Z_{n_1} x ... x Z_{n_k}.  An element is written

    w^phase U_a V_b

where U_a shifts basis words (U_a|x> = |x+a>), V_b multiplies by the
canonical bicharacter (V_b|x> = <b,x>|x>), and the phase unit w is the
primitive P-th root of unity exp(2*pi*i/P) with P = 2N, N the exponent of A.

Words are stored as flat tuples of n*k integers; slot j of each letter is
reduced modulo orders[j].  For a prime field GF(q) (k = 1) a word is simply
a tuple of n digits mod q.  All phases are integer exponents mod P; complex
numbers appear only in `dense_matrix` and in callers that opt in via
`phase_value`.

The phase denominator is 2N rather than N: subgroups containing an element
whose square is -I (e.g. a U_1 V_1 factor over Z_2) only close up once the
quarter phase i is available.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .galois import error_sphere_count

DENSE_MATRIX_CAP = 4096
ENUMERATION_CAP = 10**7

Word = tuple[int, ...]


@lru_cache(maxsize=None)
def _roots(denominator: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(denominator) / denominator)


def phase_value(exponent: int, denominator: int) -> complex:
    """exp(2*pi*i*exponent/denominator) with a cached root table."""
    return complex(_roots(denominator)[exponent % denominator])


@dataclass(frozen=True)
class AlphabetGroup:
    """A finite abelian group Z_{n_1} x ... x Z_{n_k} used as the alphabet."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.orders or any(m < 2 for m in self.orders):
            raise ValueError("orders must be integers >= 2")

    @property
    def k(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders)

    @property
    def phase_denominator(self) -> int:
        return 2 * self.exponent

    def word(self, seq) -> Word:
        """Canonical word: flat tuple with slot j reduced mod orders[j % k]."""
        seq = tuple(int(v) for v in seq)
        if len(seq) % self.k:
            raise ValueError(f"word length {len(seq)} is not a multiple of k={self.k}")
        return tuple(v % self.orders[j % self.k] for j, v in enumerate(seq))

    def zero(self, n: int) -> Word:
        return (0,) * (n * self.k)

    def _check_pair(self, a: Word, b: Word) -> None:
        if len(a) != len(b):
            raise ValueError("words have different lengths")
        if len(a) % self.k:
            raise ValueError("word length is not a multiple of k")

    def add(self, a: Word, b: Word) -> Word:
        self._check_pair(a, b)
        return tuple((x + y) % self.orders[j % self.k] for j, (x, y) in enumerate(zip(a, b)))

    def neg(self, a: Word) -> Word:
        return tuple((-x) % self.orders[j % self.k] for j, x in enumerate(a))

    def bicharacter_exponent(self, a: Word, b: Word) -> int:
        """Exponent e mod P with <a,b> = exp(2*pi*i*e/P), P = 2N."""
        self._check_pair(a, b)
        p = self.phase_denominator
        total = 0
        for j, (x, y) in enumerate(zip(a, b)):
            total += (p // self.orders[j % self.k]) * x * y
        return total % p

    def weight(self, a: Word, b: Word) -> int:
        """Number of letter positions where (a_i, b_i) != (0, 0)."""
        self._check_pair(a, b)
        k = self.k
        n = len(a) // k
        return sum(
            1
            for i in range(n)
            if any(a[i * k + j] or b[i * k + j] for j in range(k))
        )

    def letters(self):
        """All group elements as flat k-tuples, in lexicographic order."""
        return itertools.product(*[range(m) for m in self.orders])

    def all_words(self, n: int):
        """All words of length n in lexicographic order over letters."""
        for combo in itertools.product(self.letters(), repeat=n):
            yield tuple(itertools.chain.from_iterable(combo))


def prime_group(q: int) -> AlphabetGroup:
    return AlphabetGroup((q,))


@dataclass(frozen=True)
class WeylElement:
    """w^phase U_a V_b with an exact phase exponent mod the group's 2N."""

    group: AlphabetGroup
    phase: int
    a: Word
    b: Word

    def __post_init__(self) -> None:
        self.group._check_pair(self.a, self.b)
        object.__setattr__(self, "phase", self.phase % self.group.phase_denominator)
        object.__setattr__(self, "a", self.group.word(self.a))
        object.__setattr__(self, "b", self.group.word(self.b))

    @classmethod
    def identity(cls, group: AlphabetGroup, n: int) -> "WeylElement":
        return cls(group, 0, group.zero(n), group.zero(n))

    @classmethod
    def shift(cls, group: AlphabetGroup, a) -> "WeylElement":
        a = group.word(a)
        return cls(group, 0, a, (0,) * len(a))

    @classmethod
    def mult(cls, group: AlphabetGroup, b) -> "WeylElement":
        b = group.word(b)
        return cls(group, 0, (0,) * len(b), b)

    @property
    def n(self) -> int:
        return len(self.a) // self.group.k

    def is_scalar(self) -> bool:
        return not any(self.a) and not any(self.b)

    def weight(self) -> int:
        return self.group.weight(self.a, self.b)

    def phase_factor(self) -> complex:
        return phase_value(self.phase, self.group.phase_denominator)


def _check_operands(g: WeylElement, h: WeylElement) -> None:
    if g.group != h.group or len(g.a) != len(h.a):
        raise ValueError("elements act on different alphabets or lengths")


def compose(g: WeylElement, h: WeylElement) -> WeylElement:
    """Group product: (w^i U_a V_b)(w^j U_c V_d) = w^{i+j} <b,c> U_{a+c} V_{b+d}."""
    _check_operands(g, h)
    grp = g.group
    phase = g.phase + h.phase + grp.bicharacter_exponent(g.b, h.a)
    return WeylElement(grp, phase, grp.add(g.a, h.a), grp.add(g.b, h.b))


def inverse(g: WeylElement) -> WeylElement:
    grp = g.group
    phase = -g.phase + grp.bicharacter_exponent(g.b, g.a)
    return WeylElement(grp, phase, grp.neg(g.a), grp.neg(g.b))


def gamma(g: WeylElement, h: WeylElement) -> int:
    """Commutator phase exponent: g h g^-1 h^-1 = w^gamma I."""
    _check_operands(g, h)
    grp = g.group
    return (
        grp.bicharacter_exponent(g.b, h.a) - grp.bicharacter_exponent(g.a, h.b)
    ) % grp.phase_denominator


def dense_matrix(g: WeylElement) -> np.ndarray:
    """Complex matrix of g on the (#A)^n-dimensional word space (oracle use)."""
    grp = g.group
    dim = grp.size ** g.n
    if dim > DENSE_MATRIX_CAP:
        raise ValueError(f"dense matrix dimension {dim} exceeds cap {DENSE_MATRIX_CAP}")
    words = list(grp.all_words(g.n))
    index = {w: i for i, w in enumerate(words)}
    out = np.zeros((dim, dim), dtype=complex)
    p = grp.phase_denominator
    for col, x in enumerate(words):
        row = index[grp.add(x, g.a)]
        out[row, col] = phase_value(g.phase + grp.bicharacter_exponent(g.b, x), p)
    return out


def enumerate_bounded(group: AlphabetGroup, n: int, w: int, cap: int = ENUMERATION_CAP):
    """Yield all (a, b) word pairs with 1 <= wt(a, b) <= w, each exactly once.

    Order is deterministic: by weight, then support positions, then the
    per-position letter pairs in lexicographic order.
    """
    if w < 0 or w > n:
        raise ValueError(f"need 0 <= w <= n, got w={w}, n={n}")
    budget = error_sphere_count(n, group.size, w)
    if budget > cap:
        raise ValueError(f"enumeration of {budget} pairs exceeds cap {cap}")
    zero_letter = (0,) * group.k
    options = [
        (la, lb)
        for la in group.letters()
        for lb in group.letters()
        if la != zero_letter or lb != zero_letter
    ]
    for weight in range(1, w + 1):
        for support in itertools.combinations(range(n), weight):
            for choice in itertools.product(options, repeat=weight):
                a = [0] * (n * group.k)
                b = [0] * (n * group.k)
                for pos, (la, lb) in zip(support, choice):
                    for j in range(group.k):
                        a[pos * group.k + j] = la[j]
                        b[pos * group.k + j] = lb[j]
                yield tuple(a), tuple(b)
