"""Algebra-object interfaces shared by every construction.

Elements are plain immutable values supporting ``+``, ``-`` and scalar
``*``; the algebra object supplies the product and the operators.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from .linear import as_fraction

_DECORATION = re.compile(r"^[A-Za-z0-9_]+$")


class UnknownDecoration(KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown decoration {self.name!r}"


def decoration_set(names: Iterable[str]) -> tuple:
    """Validated, order-preserving tuple of decoration names."""
    out = []
    for n in names:
        n = str(n)
        if not _DECORATION.match(n):
            raise ValueError(f"decoration names must be alphanumeric, got {n!r}")
        if n in out:
            raise ValueError(f"duplicate decoration {n!r}")
        out.append(n)
    if not out:
        raise ValueError("the decoration set must be nonempty")
    return tuple(out)


class CommutativeAlgebra:
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def scalar(self, c):
        return as_fraction(c) * self.one()


class MatchingRBA(CommutativeAlgebra):
    """Commutative algebra with one operator ``op(dec, x)`` and one weight per decoration."""

    decorations: tuple = ()

    def op(self, dec, x):
        raise NotImplementedError

    def weight(self, dec) -> Fraction:
        return Fraction(0)

    def check_decoration(self, dec):
        if dec not in self.decorations:
            raise UnknownDecoration(dec)
        return dec


class BaseMRBA(MatchingRBA):
    """A matching RBA usable as the base of the relative construction.

    Besides the algebra operations it exposes a canonical basis:
    ``decompose`` maps an element to ``{key: coeff}``, ``basis`` maps a key
    back to an element, and keys have parseable text names.
    """

    def decompose(self, x) -> Mapping[Hashable, Fraction]:
        raise NotImplementedError

    def basis(self, key):
        raise NotImplementedError

    def basis_name(self, key) -> str:
        raise NotImplementedError

    def basis_from_name(self, name: str):
        raise NotImplementedError

    def basis_expr(self, key) -> str:
        """Expression text for ``key`` usable inside a relative-mode product ('' for 1)."""
        return "{" + self.basis_name(key) + "}"


class MatchingZinbiel:
    """Module with products ``circ(dec, a, b)``; the dendriform pair is ``x <:w y = circ(w, x, y)`` and ``y :>w x = circ(w, x, y)``."""

    decorations: tuple = ()

    def zero(self):
        raise NotImplementedError

    def circ(self, dec, a, b):
        raise NotImplementedError

    def prec(self, dec, a, b):
        return self.circ(dec, a, b)

    def succ(self, dec, a, b):
        return self.circ(dec, b, a)


def matching_rb_defect(alg: MatchingRBA, dec1, dec2, x, y, weights: Mapping | None = None):
    """``Pa(x)*Pb(y) - Pa(x*Pb(y)) - Pb(Pa(x)*y) - weight_b*Pa(x*y)``.

    ``weights`` overrides ``alg.weight``; zero iff the matching identity holds.
    """
    weight = as_fraction(weights.get(dec2, 0)) if weights is not None else alg.weight(dec2)
    op_x = alg.op(dec1, x)
    op_y = alg.op(dec2, y)
    out = alg.mul(op_x, op_y) - alg.op(dec1, alg.mul(x, op_y)) - alg.op(dec2, alg.mul(op_x, y))
    if weight:
        out = out - weight * alg.op(dec1, alg.mul(x, y))
    return out


def combined_operator(alg: MatchingRBA, coeffs: Mapping):
    """``x -> sum_w c_w*Pw(x)`` as a callable."""
    support = [(w, as_fraction(c)) for w, c in coeffs.items() if c]
    for w, _ in support:
        alg.check_decoration(w)

    def op(x):
        total = alg.zero()
        for w, c in support:
            total = total + c * alg.op(w, x)
        return total

    return op


def combined_operator_defect(alg: MatchingRBA, coeffs: Mapping, x, y):
    """RB defect of ``sum_w c_w*Pw`` at the combined weight ``sum_w c_w*weight_w``."""
    op = combined_operator(alg, coeffs)
    weight = sum((as_fraction(c) * alg.weight(w) for w, c in coeffs.items()), Fraction(0))
    op_x, op_y = op(x), op(y)
    out = alg.mul(op_x, op_y) - op(alg.mul(x, op_y)) - op(alg.mul(op_x, y))
    if weight:
        out = out - weight * op(alg.mul(x, y))
    return out


def zinbiel_defect(zin: MatchingZinbiel, dec1, dec2, x, y, z):
    """``(x o_a y) o_b z - x o_a (y o_b z) - x o_b (z o_a y)``."""
    c = zin.circ
    return c(dec2, c(dec1, x, y), z) - c(dec1, x, c(dec2, y, z)) - c(dec2, x, c(dec1, z, y))


def dendriform_defects(zin: MatchingZinbiel, dec1, dec2, x, y, z):
    """Defects of the three matching dendriform axioms, using ``zin.prec`` and ``zin.succ``."""
    p, s = zin.prec, zin.succ
    d1 = p(dec2, p(dec1, x, y), z) - p(dec1, x, p(dec2, y, z)) - p(dec2, x, s(dec1, y, z))
    d2 = p(dec2, s(dec1, x, y), z) - s(dec1, x, p(dec2, y, z))
    d3 = s(dec1, p(dec2, x, y), z) + s(dec2, s(dec1, x, y), z) - s(dec1, x, s(dec2, y, z))
    return d1, d2, d3


def permutative_defect(zin: MatchingZinbiel, dec1, dec2, x, y, z):
    c = zin.circ
    return c(dec2, c(dec1, x, y), z) - c(dec1, c(dec2, x, z), y)


class DerivedZinbiel(MatchingZinbiel):
    """Products ``row_i(x, y) = sum_w rows[i][w] * (x <:w y)`` built from coefficient rows."""

    def __init__(self, base: MatchingZinbiel, rows: Mapping[Hashable, Mapping]):
        self.base = base
        self.rows = {}
        for label, row in rows.items():
            clean = {}
            for w, c in row.items():
                if w not in base.decorations:
                    raise UnknownDecoration(w)
                c = as_fraction(c)
                if c:
                    clean[w] = c
            self.rows[label] = clean
        self.decorations = tuple(self.rows)

    def zero(self):
        return self.base.zero()

    def circ(self, label, a, b):
        if label not in self.rows:
            raise UnknownDecoration(label)
        total = self.base.zero()
        for w, c in self.rows[label].items():
            total = total + c * self.base.circ(w, a, b)
        return total


def circ_combination(base: MatchingZinbiel, coeff_rows: Mapping[Hashable, Mapping]) -> DerivedZinbiel:
    return DerivedZinbiel(base, coeff_rows)
