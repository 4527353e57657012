"""Shuffle product on tensor words over an opaque alphabet.

A word is a plain tuple of hashable letters; ``()`` is the unit.  The
recursive product peels the first letter of either factor:

    shuffle(a1 + a', b1 + b') = a1 + shuffle(a', b) + b1 + shuffle(a, b')

where ``+`` on words is concatenation, spread over the sum.
"""

from __future__ import annotations

import functools
from itertools import combinations
from typing import Tuple

from .linear import LinComb, accumulate

Word = Tuple


class TensorSum(LinComb):
    """Element of the shuffle algebra: word -> coefficient."""

    __slots__ = ()

    @classmethod
    def word(cls, *letters, coeff=1) -> "TensorSum":
        return cls.basis(tuple(letters), coeff)

    @classmethod
    def one(cls) -> "TensorSum":
        return cls.basis(())

    def homogeneous(self, length: int) -> "TensorSum":
        return TensorSum._raw({w: c for w, c in self.items() if len(w) == length})

    def lengths(self) -> set:
        return {len(w) for w in self.keys()}


@functools.lru_cache(maxsize=1 << 18)
def shuffle_words(u: Word, v: Word) -> Tuple[Tuple[Word, int], ...]:
    """Shuffle of two words as ``((word, multiplicity), ...)``."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict = {}
    head = (u[0],)
    for w, c in shuffle_words(u[1:], v):
        out[head + w] = out.get(head + w, 0) + c
    head = (v[0],)
    for w, c in shuffle_words(u, v[1:]):
        out[head + w] = out.get(head + w, 0) + c
    return tuple(out.items())


def shuffle(a: TensorSum, b: TensorSum) -> TensorSum:
    out: dict = {}
    for u, cu in a.items():
        for v, cv in b.items():
            c = cu * cv
            for w, m in shuffle_words(u, v):
                accumulate(out, w, c * m)
    return TensorSum._raw(out)


def shuffle_enumerate_oracle(u: Word, v: Word) -> TensorSum:
    """All riffle interleavings of ``u`` and ``v`` by choosing positions for ``u``."""
    m, n = len(u), len(v)
    out: dict = {}
    for pos in combinations(range(m + n), m):
        chosen = set(pos)
        iu, iv = iter(u), iter(v)
        w = tuple(next(iu) if i in chosen else next(iv) for i in range(m + n))
        accumulate(out, w, 1)
    return TensorSum(out)
