"""Free commutative matching Rota-Baxter algebra of weight zero over polynomials.

Basis: decorated words ``a0 ⊗ (w1:a1) ⊗ ... ⊗ (wk:ak)`` with monomial
entries.  Heads multiply, tails shuffle; ``Pw`` pushes the head into the
tail behind decoration ``w`` and leaves head 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence, Tuple

from .algebra import BaseMRBA, UnknownDecoration, decoration_set
from .linear import LinComb, accumulate, as_fraction, fraction_text
from .poly import ONE, Monomial, Polynomial, _mono_mul, parse_monomial, poly_substitute
from .shuffle import shuffle_words

TENSOR = "⊗"


class DecoratedWord(NamedTuple):
    head: Monomial
    tail: Tuple[Tuple[str, Monomial], ...] = ()

    @classmethod
    def make(cls, head=ONE, tail: Sequence = ()) -> "DecoratedWord":
        return cls(Monomial(head), tuple((str(w), Monomial(m)) for w, m in tail))

    @property
    def depth(self) -> int:
        return len(self.tail)

    def to_text(self) -> str:
        return self.head.to_text() + "".join(f" {TENSOR} ({w}:{m.to_text()})" for w, m in self.tail)

    def to_json(self) -> dict:
        return {"head": self.head.as_dict(), "tail": [[w, m.as_dict()] for w, m in self.tail]}


def parse_word(text: str) -> DecoratedWord:
    parts = [p.strip() for p in text.split(TENSOR)]
    tail = []
    for p in parts[1:]:
        if not (p.startswith("(") and p.endswith(")")) or ":" not in p:
            raise ValueError(f"bad tail slot {p!r}")
        w, _, m = p[1:-1].partition(":")
        tail.append((w.strip(), parse_monomial(m)))
    return DecoratedWord.make(parse_monomial(parts[0]), tail)


def word_sort_key(w: DecoratedWord):
    return (w.depth, -w.head.degree - sum(m.degree for _, m in w.tail), w.to_text())


def coeff_word_text(coeff, head_text: str, tail_text: str, first: bool) -> str:
    neg = coeff < 0
    a = -coeff if neg else coeff
    if head_text == "1":
        lead = fraction_text(a) if (a != 1 or not tail_text) else "1"
    elif a == 1:
        lead = head_text
    else:
        lead = f"{fraction_text(a)}*{head_text}"
    piece = lead + tail_text
    if first:
        return f"-{piece}" if neg else piece
    return f" - {piece}" if neg else f" + {piece}"


class FreeElement(LinComb):
    """Rational combination of ``DecoratedWord`` basis elements."""

    __slots__ = ()

    @classmethod
    def word(cls, head=ONE, tail: Sequence = (), coeff=1) -> "FreeElement":
        return cls.basis(DecoratedWord.make(head, tail), coeff)

    @classmethod
    def pure(cls, head: Polynomial, tail: Sequence[Tuple[str, Polynomial]] = ()) -> "FreeElement":
        """Multilinear expansion of ``head ⊗ (w1:p1) ⊗ ...`` with polynomial entries."""
        acc = {(head_m, ()): c for head_m, c in head.items()}
        for w, p in tail:
            nxt: dict = {}
            for (h, t), c in acc.items():
                for m, cm in p.items():
                    accumulate(nxt, (h, t + ((w, m),)), c * cm)
            acc = nxt
        return cls((DecoratedWord(h, t), c) for (h, t), c in acc.items())

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            return diamond(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    @property
    def max_depth(self) -> int:
        return max((w.depth for w in self.keys()), default=0)

    def sorted_terms(self):
        return sorted(self.items(), key=lambda kv: word_sort_key(kv[0]))

    def to_text(self) -> str:
        if not self:
            return "0"
        out = []
        for i, (w, c) in enumerate(self.sorted_terms()):
            tail = "".join(f" {TENSOR} ({d}:{m.to_text()})" for d, m in w.tail)
            out.append(coeff_word_text(c, w.head.to_text(), tail, i == 0))
        return "".join(out)

    def to_json(self) -> list:
        return [dict(coeff=fraction_text(c), **w.to_json()) for w, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "FreeElement":
        return cls(
            (DecoratedWord.make(t.get("head", {}), [(w, m) for w, m in t.get("tail", [])]), as_fraction(t["coeff"]))
            for t in data
        )

    def __repr__(self):
        return f"FreeElement({self.to_text()!r})"


def embed_poly(p: Polynomial) -> FreeElement:
    return FreeElement._raw({DecoratedWord(m, ()): c for m, c in p.items()})


def diamond(a: FreeElement, b: FreeElement) -> FreeElement:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            head = _mono_mul(wa.head, wb.head)
            c = ca * cb
            for tail, k in shuffle_words(wa.tail, wb.tail):
                accumulate(out, DecoratedWord(head, tail), c * k)
    return FreeElement._raw(out)


def apply_op(dec: str, a: FreeElement) -> FreeElement:
    """``a0 ⊗ tail -> 1 ⊗ (dec:a0) ⊗ tail`` extended linearly (no decoration check)."""
    return FreeElement._raw({DecoratedWord(ONE, ((dec, w.head),) + w.tail): c for w, c in a.items()})


class FreeMRBA(BaseMRBA):
    """The free algebra on a decoration set, with its product and operators."""

    def __init__(self, decorations):
        self.decorations = decoration_set(decorations)

    def __repr__(self):
        return f"FreeMRBA({list(self.decorations)})"

    def __eq__(self, other):
        return isinstance(other, FreeMRBA) and other.decorations == self.decorations

    def __hash__(self):
        return hash(("FreeMRBA", self.decorations))

    def zero(self):
        return FreeElement.zero()

    def one(self):
        return FreeElement.word()

    def mul(self, a, b):
        return diamond(a, b)

    def op(self, dec, x):
        self.check_decoration(dec)
        return apply_op(dec, x)

    def check_element(self, a: FreeElement):
        for w in a.keys():
            for d, _ in w.tail:
                if d not in self.decorations:
                    raise UnknownDecoration(d)
        return a

    # base-algebra contract
    def decompose(self, x):
        return x.terms

    def basis(self, key):
        return FreeElement.basis(key)

    def basis_name(self, key) -> str:
        return key.to_text()

    def basis_from_name(self, name: str):
        return parse_word(name)

    # constructions from the theorem
    def embed_poly(self, p: Polynomial) -> FreeElement:
        return embed_poly(p)

    def rb_defect(self, dec1, dec2, a, b):
        return rb_defect(self, dec1, dec2, a, b)

    def nested_form(self, w: DecoratedWord) -> FreeElement:
        return nested_form(w, self)


def rb_defect(alg: FreeMRBA, dec1, dec2, a: FreeElement, b: FreeElement) -> FreeElement:
    op_a = alg.op(dec1, a)
    op_b = alg.op(dec2, b)
    return diamond(op_a, op_b) - alg.op(dec1, diamond(a, op_b)) - alg.op(dec2, diamond(op_a, b))


def nested_form(w: DecoratedWord, alg: FreeMRBA | None = None) -> FreeElement:
    """``a0*Pw1(a1*Pw2(... Pwk(ak)))`` evaluated in ``alg`` (or with the free operations)."""
    op = alg.op if alg is not None else apply_op
    entries = [w.head] + [m for _, m in w.tail]
    decs = [d for d, _ in w.tail]
    v = FreeElement.basis(DecoratedWord(entries[-1], ()))
    for i in range(len(decs) - 1, -1, -1):
        v = diamond(FreeElement.basis(DecoratedWord(entries[i], ())), op(decs[i], v))
    return v


def universal_lift(alg, assignment: Mapping, a: FreeElement):
    """The structure-preserving map out of the free algebra extending ``assignment`` (variable -> element).

    ``alg`` needs ``zero``, ``one``, ``mul`` and ``op(dec, x)``.
    """
    cache: dict = {}

    def f(m: Monomial):
        if m not in cache:
            cache[m] = poly_substitute(Polynomial.basis(m), assignment, alg)
        return cache[m]

    decs = getattr(alg, "decorations", None)
    total = alg.zero()
    for w, c in a.items():
        if decs is not None:
            for d, _ in w.tail:
                if d not in decs:
                    raise UnknownDecoration(d)
        entries = [w.head] + [m for _, m in w.tail]
        v = f(entries[-1])
        for i in range(len(w.tail) - 1, -1, -1):
            v = alg.mul(f(entries[i]), alg.op(w.tail[i][0], v))
        total = total + c * v
    return total
