"""Finite-support linear combinations with exact rational coefficients.

Every vector-like value in the package (polynomials, tensor sums, free
elements, relative elements) is a ``LinComb`` over some hashable basis.
Instances are immutable; arithmetic always returns a new object.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Hashable, Iterable, Iterator, Mapping, Tuple, TypeVar

K = TypeVar("K", bound=Hashable)

Scalar = (int, Fraction)


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def fraction_text(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def accumulate(out: dict, key, coeff) -> None:
    """In-place ``out[key] += coeff`` dropping zeros. Only for builders."""
    v = out.get(key, 0) + coeff
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class LinComb:
    """Immutable mapping basis-key -> nonzero Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable[Tuple] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for k, c in items:
            c = as_fraction(c)
            if c:
                accumulate(clean, k, c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict):
        # trusted constructor: terms already canonical (Fraction, nonzero)
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def basis(cls, key, coeff=1):
        return cls._raw({key: as_fraction(coeff)}) if coeff else cls.zero()

    # mapping-ish access
    @property
    def terms(self) -> Mapping:
        return self._terms

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return type(self) is type(other) and self._terms == other._terms
        if isinstance(other, Scalar) and not other:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    # vector space operations
    def __add__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        if type(other) is not type(self):
            raise TypeError(f"cannot add {type(self).__name__} and {type(other).__name__}")
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for k, c in other._terms.items():
            accumulate(out, k, c)
        return type(self)._raw(out)

    def __neg__(self):
        return type(self)._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = as_fraction(c)
        if not c:
            return type(self).zero()
        return type(self)._raw({k: c * v for k, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, Scalar) and not isinstance(c, bool):
            return self.scale(c)
        return NotImplemented

    def map_keys(self, fn):
        """Linear extension of ``key -> LinComb`` (``fn`` returns a LinComb of type(self))."""
        out: dict = {}
        for k, c in self._terms.items():
            for k2, c2 in fn(k).items():
                accumulate(out, k2, c * c2)
        return type(self)._raw(out)

    def __repr__(self):
        return f"{type(self).__name__}({self._terms!r})"


def linear_sum(cls, pieces: Iterable[Tuple[Fraction, LinComb]]):
    """Sum of ``c * piece`` without intermediate objects."""
    out: dict = {}
    for c, piece in pieces:
        for k, v in piece.items():
            accumulate(out, k, c * v)
    return cls._raw(out)
