"""Polynomial functions of ``x`` with Volterra operators ``f -> ∫_0^x kernel_w(t) f(t) dt``.

Integration of polynomials is exact, so this is a decidable weight-zero
matching RBA.  It doubles as a base algebra (basis ``x^j``), as a lift
target, and as a matching Zinbiel algebra via ``f <:w g = f * Pw(g)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import BaseMRBA, MatchingZinbiel, UnknownDecoration, decoration_set
from .linear import as_fraction
from .poly import ONE, Monomial, Polynomial, parse_monomial, poly_mul, poly_text

COORD = "x"


class NotConverged(RuntimeError):
    def __init__(self, iterations, residual):
        super().__init__(f"no fixed point after {iterations} iterations; residual {poly_text(residual)}")
        self.residual = residual


def as_polyfunction(p) -> Polynomial:
    if isinstance(p, (int, Fraction, str)):
        return Polynomial.const(as_fraction(p))
    stray = p.variables - {COORD}
    if stray:
        raise ValueError(f"polynomial functions use only {COORD!r}; got {sorted(stray)}")
    return p


def integrate(p: Polynomial) -> Polynomial:
    """∫_0^x p(t) dt, term by term."""
    return Polynomial._raw({Monomial.var(COORD, m.degree + 1): c / (m.degree + 1) for m, c in p.items()})


def integrate_op(dec, f: Polynomial, kernels: Mapping) -> Polynomial:
    if dec not in kernels:
        raise UnknownDecoration(dec)
    return integrate(poly_mul(kernels[dec], f))


def truncate(p: Polynomial, cap: int) -> Polynomial:
    return Polynomial._raw({m: c for m, c in p.items() if m.degree <= cap})


class VolterraModel(BaseMRBA, MatchingZinbiel):
    """k[x] with one Volterra operator per decoration."""

    def __init__(self, kernels: Mapping):
        self.decorations = decoration_set(kernels)
        self.kernels = {w: as_polyfunction(k) for w, k in kernels.items()}

    @classmethod
    def unit_kernels(cls, decorations):
        return cls({w: Polynomial.one() for w in decorations})

    def __repr__(self):
        return "VolterraModel({" + ", ".join(f"{w}: {poly_text(k)}" for w, k in self.kernels.items()) + "})"

    def __eq__(self, other):
        return isinstance(other, VolterraModel) and other.kernels == self.kernels

    def __hash__(self):
        return hash(tuple(self.kernels.items()))

    def zero(self):
        return Polynomial.zero()

    def one(self):
        return Polynomial.one()

    def mul(self, a, b):
        return poly_mul(a, b)

    def op(self, dec, f):
        return integrate_op(dec, f, self.kernels)


    # base-algebra structure over itself
    def from_base(self, f):
        return f

    # matching Zinbiel structure
    def circ(self, dec, f, g):
        return volterra_zinbiel(dec, f, g, self.kernels)

    # base-algebra contract
    def decompose(self, f):
        return f.terms

    def basis(self, key):
        return Polynomial.basis(key)

    def basis_name(self, key) -> str:
        return key.to_text()

    def basis_from_name(self, name: str):
        m = parse_monomial(name)
        if set(m.variables) - {COORD}:
            raise ValueError(f"not a power of {COORD}: {name!r}")
        return m

    def basis_expr(self, key) -> str:
        return "" if key == ONE else key.to_text()


def vol_rb_defect(dec1, dec2, f, g, kernels: Mapping) -> Polynomial:
    int_a = lambda h: integrate_op(dec1, h, kernels)  # noqa: E731
    int_b = lambda h: integrate_op(dec2, h, kernels)  # noqa: E731
    int_f, int_g = int_a(f), int_b(g)
    return poly_mul(int_f, int_g) - int_a(poly_mul(f, int_g)) - int_b(poly_mul(int_f, g))


def volterra_zinbiel(dec, f, g, kernels: Mapping) -> Polynomial:
    return poly_mul(f, integrate_op(dec, g, kernels))


def picard_solve(g, coeffs: Mapping, kernels: Mapping, degree_cap: int, iterations: int) -> Polynomial:
    """Fixed point of ``u = g + sum_w c_w*Pw(u)`` truncated above ``degree_cap``."""
    g = as_polyfunction(g)
    if degree_cap < 1:
        raise ValueError("degree_cap must be positive")
    if g.degree > degree_cap:
        raise ValueError(f"degree_cap {degree_cap} is below deg g = {g.degree}")
    if iterations < 1:
        raise ValueError("iterations must be positive")
    terms = [(w, as_fraction(c)) for w, c in coeffs.items() if c]
    for w, _ in terms:
        if w not in kernels:
            raise UnknownDecoration(w)

    def step(u):
        out = g
        for w, c in terms:
            out = out + c * integrate_op(w, u, kernels)
        return truncate(out, degree_cap)

    u = g
    for _ in range(iterations):
        nxt = step(u)
        if nxt == u:
            return u
        u = nxt
    raise NotConverged(iterations, step(u) - u)


def picard_residual(u, g, coeffs: Mapping, kernels: Mapping, degree_cap: int) -> Polynomial:
    out = as_polyfunction(g) - u
    for w, c in coeffs.items():
        if c:
            out = out + as_fraction(c) * integrate_op(w, u, kernels)
    return truncate(out, degree_cap)
