"""Free matching Zinbiel algebra on a module of named generators.

Elements are ``FreeElement`` values whose head and tail entries are
single generators (degree-one monomials).  The generator module has zero
multiplication, so products of generators are rejected.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .algebra import MatchingZinbiel, UnknownDecoration, decoration_set
from .free import DecoratedWord, FreeElement, apply_op, diamond
from .linear import accumulate, as_fraction
from .poly import Monomial
from .shuffle import TensorSum, shuffle, shuffle_words


class NotLinear(ValueError):
    pass


class ZinbielAlgebra(MatchingZinbiel):
    def __init__(self, decorations, generators: Iterable[str] | None = None):
        self.decorations = decoration_set(decorations)
        self.generators = None if generators is None else frozenset(generators)

    def __repr__(self):
        return f"ZinbielAlgebra({list(self.decorations)})"

    def zero(self):
        return FreeElement.zero()

    def gen(self, name: str, coeff=1) -> FreeElement:
        if self.generators is not None and name not in self.generators:
            raise KeyError(f"unknown generator {name!r}")
        return FreeElement.basis(DecoratedWord(Monomial.var(name)), coeff)

    def _entry_ok(self, m: Monomial) -> bool:
        if len(m) != 1 or m[0][1] != 1:
            return False
        return self.generators is None or m[0][0] in self.generators

    def check(self, a: FreeElement) -> FreeElement:
        """Reject anything that is not a combination of generator words."""
        for w in a.keys():
            if not self._entry_ok(w.head) or not all(self._entry_ok(m) for _, m in w.tail):
                raise NotLinear(f"not an element of the free Zinbiel algebra: {w.to_text()}")
            for d, _ in w.tail:
                if d not in self.decorations:
                    raise UnknownDecoration(d)
        return a

    def prec(self, dec, a, b):
        """Head of ``a`` followed by the shuffle of its tail with ``(dec:b0)`` and the tail of ``b``."""
        if dec not in self.decorations:
            raise UnknownDecoration(dec)
        out: dict = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                right = ((dec, wb.head),) + wb.tail
                c = ca * cb
                for tail, n in shuffle_words(wa.tail, right):
                    accumulate(out, DecoratedWord(wa.head, tail), c * n)
        return FreeElement._raw(out)

    circ = prec

    def succ(self, dec, a, b):
        """``Pw(a)*b``."""
        if dec not in self.decorations:
            raise UnknownDecoration(dec)
        return diamond(apply_op(dec, a), b)

    # single-decoration identification with the nonunital shuffle algebra
    def _only(self):
        if len(self.decorations) != 1:
            raise ValueError("the shuffle identification needs a singleton decoration set")
        return self.decorations[0]

    def identify(self, a: FreeElement) -> TensorSum:
        """``a0 ⊗ (w:a1) ⊗ ... -> a0 a1 ... ak`` as a word of generators."""
        self._only()
        return TensorSum._raw({(w.head,) + tuple(m for _, m in w.tail): c for w, c in a.items()})

    def unidentify(self, t: TensorSum) -> FreeElement:
        w0 = self._only()
        out = {}
        for word, c in t.items():
            if not word:
                raise ValueError("the empty word is not in the nonunital shuffle algebra")
            out[DecoratedWord(word[0], tuple((w0, m) for m in word[1:]))] = c
        return FreeElement._raw(out)

    def star(self, a, b):
        w0 = self._only()
        return self.prec(w0, a, b) + self.succ(w0, a, b)

    def loday_shuffle(self, a, b):
        """Shuffle of the identified words, mapped back."""
        return self.unidentify(shuffle(self.identify(a), self.identify(b)))


def zinbiel_lift(target: MatchingZinbiel, assignment: Mapping, a: FreeElement):
    """Unique matching Zinbiel map extending ``assignment`` (generator -> target element)."""

    def f(m: Monomial):
        if len(m) != 1 or m[0][1] != 1:
            raise NotLinear(f"not a generator: {m.to_text()}")
        name = m[0][0]
        if name not in assignment:
            raise KeyError(f"unassigned generator {name!r}")
        return assignment[name]

    total = target.zero()
    for w, c in a.items():
        entries = [w.head] + [m for _, m in w.tail]
        v = f(entries[-1])
        for i in range(len(w.tail) - 1, -1, -1):
            d = w.tail[i][0]
            if d not in target.decorations:
                raise UnknownDecoration(d)
            v = target.circ(d, f(entries[i]), v)
        total = total + as_fraction(c) * v
    return total


class ConcatenatingZinbiel(ZinbielAlgebra):
    """Deliberately wrong product (concatenation instead of shuffle); negative control only."""

    def prec(self, dec, a, b):
        if dec not in self.decorations:
            raise UnknownDecoration(dec)
        out: dict = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                tail = wa.tail + ((dec, wb.head),) + wb.tail
                accumulate(out, DecoratedWord(wa.head, tail), ca * cb)
        return FreeElement._raw(out)

    circ = prec
