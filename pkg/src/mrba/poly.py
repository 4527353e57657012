"""Exact multivariate polynomials over the rationals.

``Monomial`` is a sorted tuple of ``(variable, exponent)`` pairs with positive
exponents; the empty tuple is the unit monomial.  ``Polynomial`` is a
``LinComb`` over monomials.  Canonical text orders terms by descending
graded-lex order, e.g. ``2*x^2*y - 1/3``.
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction
from typing import Mapping

from .linear import LinComb, accumulate, as_fraction, fraction_text

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class Monomial(tuple):
    """Sorted tuple of (name, exponent>0) pairs."""

    __slots__ = ()

    def __new__(cls, exponents: Mapping[str, int] | tuple = ()):
        if isinstance(exponents, Monomial):
            return exponents
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict = {}
        for name, e in items:
            if not isinstance(name, str) or not name:
                raise ValueError(f"bad variable name {name!r}")
            e = int(e)
            if e < 0:
                raise ValueError(f"negative exponent for {name}")
            if e:
                merged[name] = merged.get(name, 0) + e
        return tuple.__new__(cls, sorted(merged.items()))

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Monomial":
        return cls(((name, exp),))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self)

    @property
    def variables(self):
        return tuple(n for n, _ in self)

    def is_one(self) -> bool:
        return not self

    def as_dict(self) -> dict:
        return dict(self)

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return _mono_mul(self, other)

    def __repr__(self):
        return f"Monomial({self.to_text()!r})"

    def to_text(self) -> str:
        if not self:
            return "1"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self)


ONE = Monomial()


@functools.lru_cache(maxsize=1 << 16)
def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for n, e in b:
        d[n] = d.get(n, 0) + e
    return tuple.__new__(Monomial, sorted(d.items()))


def grlex_cmp(a: Monomial, b: Monomial) -> int:
    """Graded lex with variables ranked alphabetically (x > y > z)."""
    da, db = a.degree, b.degree
    if da != db:
        return -1 if da < db else 1
    for (na, ea), (nb, eb) in zip(a, b):
        if na != nb:
            # the alphabetically earlier variable is present only in one of them
            return 1 if na < nb else -1
        if ea != eb:
            return -1 if ea < eb else 1
    if len(a) != len(b):
        return -1 if len(a) < len(b) else 1
    return 0


grlex_key = functools.cmp_to_key(grlex_cmp)


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return ONE
    pairs = []
    for factor in text.split("*"):
        factor = factor.strip()
        name, _, exp = factor.partition("^")
        name = name.strip()
        if not _NAME.match(name):
            raise ValueError(f"bad monomial factor {factor!r}")
        pairs.append((name, int(exp) if exp else 1))
    return Monomial(pairs)


class Polynomial(LinComb):
    """Polynomial in named variables with Fraction coefficients."""

    __slots__ = ()

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls.basis(ONE, c)

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.basis(ONE)

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls.basis(Monomial.var(name))

    @classmethod
    def from_dict(cls, terms: Mapping) -> "Polynomial":
        return cls((Monomial(m), c) for m, c in terms.items())

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return poly_mul(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Polynomial.const(other)
        return LinComb.__add__(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Polynomial.const(other)
        return LinComb.__sub__(self, other)

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.one()
        for _ in range(n):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.keys()), default=-1)

    @property
    def variables(self) -> set:
        return {n for m in self.keys() for n in m.variables}

    def constant_term(self) -> Fraction:
        return self.coeff(ONE)

    def sorted_terms(self):
        return sorted(self.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def to_text(self) -> str:
        return poly_text(self)

    def to_json(self) -> list:
        return [{"coeff": fraction_text(c), "vars": m.as_dict()} for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "Polynomial":
        return cls((Monomial(t.get("vars", {})), as_fraction(t["coeff"])) for t in data)

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            accumulate(out, _mono_mul(m1, m2), c1 * c2)
    return Polynomial._raw(out)


def aug_split(p: Polynomial):
    """Return ``(c, p_plus)`` with ``p = c + p_plus`` and ``p_plus`` free of constants."""
    c = p.constant_term()
    rest = {m: v for m, v in p.items() if m}
    return c, Polynomial._raw(rest)


def term_text(coeff: Fraction, body: str, first: bool) -> str:
    """Render ``coeff * body`` as a signed summand; ``body == '1'`` is the unit."""
    neg = coeff < 0
    a = -coeff if neg else coeff
    if body == "1":
        piece = fraction_text(a)
    elif a == 1:
        piece = body
    else:
        piece = f"{fraction_text(a)}*{body}"
    if first:
        return f"-{piece}" if neg else piece
    return f" - {piece}" if neg else f" + {piece}"


def poly_text(p: Polynomial) -> str:
    if not p:
        return "0"
    return "".join(term_text(c, m.to_text(), i == 0) for i, (m, c) in enumerate(p.sorted_terms()))


class PolynomialRing:
    """Plain polynomials in the algebra-object interface."""

    def zero(self):
        return Polynomial.zero()

    def one(self):
        return Polynomial.one()

    def mul(self, a, b):
        return poly_mul(a, b)

    def scalar(self, c):
        return Polynomial.const(c)


POLY_RING = PolynomialRing()


def poly_substitute(p: Polynomial, assignment: Mapping, target=POLY_RING):
    """Evaluate ``p`` under the algebra map extending ``assignment``.

    ``target`` must offer ``zero()``, ``one()`` and ``mul(a, b)``; its
    elements must support ``+`` and scalar ``*``.
    """
    missing = sorted(p.variables - set(assignment))
    if missing:
        raise KeyError(f"unassigned variable {missing[0]!r}")
    powers: dict = {}

    def power(name, e):
        key = (name, e)
        if key not in powers:
            if e == 1:
                powers[key] = assignment[name]
            else:
                powers[key] = target.mul(power(name, e - 1), assignment[name])
        return powers[key]

    total = target.zero()
    for m, c in p.items():
        val = target.one()
        for name, e in m:
            val = target.mul(val, power(name, e))
        total = total + c * val
    return total
