"""A weight-nonzero matching family for exercising the general defect checkers.

Functions on {0, ..., N-1} with ``S(f)(n) = sum_{k<n} f(k)``; scaling by
``c_w`` gives a matching family of weights ``c_w``.
"""

from fractions import Fraction

from mrba.algebra import MatchingRBA


class Seq(tuple):
    def __add__(self, other):
        return Seq(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return Seq(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Seq(-a for a in self)

    def __rmul__(self, c):
        return Seq(c * a for a in self)

    def __bool__(self):
        return any(self)


class ScaledPartialSums(MatchingRBA):
    def __init__(self, scales, n=6):
        self.scales = {w: Fraction(c) for w, c in scales.items()}
        self.decorations = tuple(self.scales)
        self.n = n

    def zero(self):
        return Seq([Fraction(0)] * self.n)

    def one(self):
        return Seq([Fraction(1)] * self.n)

    def mul(self, a, b):
        return Seq(x * y for x, y in zip(a, b))

    def op(self, dec, f):
        out, run = [], Fraction(0)
        for v in f:
            out.append(self.scales[dec] * run)
            run += v
        return Seq(out)

    def weight(self, dec):
        return self.scales[dec]

    # lets the base-over-itself helpers treat it as a base
    def from_base(self, f):
        return f
