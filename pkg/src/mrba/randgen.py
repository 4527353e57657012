"""Seeded random instances for property checks.

Bounds: polynomial degree <= 3, tail length <= 3, coefficients in -3..3.
"""

from __future__ import annotations

import random

from .free import DecoratedWord, FreeElement, FreeMRBA
from .poly import ONE, Monomial, Polynomial
from .relative import RelativeElement, RelativeMRBA, RelativeWord
from .volterra import COORD, VolterraModel

POLY_VARS = ("y", "z")
GENERATORS = ("m", "n", "p")
MAX_DEG = 3
MAX_TAIL = 3


def trial_rng(seed, suite: str, index: int) -> random.Random:
    # string seeds hash deterministically across runs and processes
    return random.Random(f"{seed}:{suite}:{index}")


def coeff(rng) -> int:
    return rng.choice((-3, -2, -1, 1, 2, 3))


def monomial(rng, variables=POLY_VARS, max_deg=MAX_DEG, nonconstant=False) -> Monomial:
    deg = rng.randint(1 if nonconstant else 0, max_deg)
    exps: dict = {}
    for _ in range(deg):
        v = rng.choice(variables)
        exps[v] = exps.get(v, 0) + 1
    return Monomial(exps)


def poly(rng, variables=POLY_VARS, max_deg=MAX_DEG, max_terms=3, nonconstant=False) -> Polynomial:
    while True:
        p = Polynomial(
            (monomial(rng, variables, max_deg, nonconstant), coeff(rng)) for _ in range(rng.randint(1, max_terms))
        )
        if p:
            return p


def xpoly(rng, max_deg=MAX_DEG, max_terms=3) -> Polynomial:
    return poly(rng, (COORD,), max_deg, max_terms)


def kernels(rng, decorations, max_deg=MAX_DEG) -> dict:
    return {w: xpoly(rng, max_deg, 2) for w in decorations}


def volterra(rng, decorations) -> VolterraModel:
    return VolterraModel(kernels(rng, decorations))


def word(rng, decorations, variables=POLY_VARS, max_tail=MAX_TAIL, min_tail=0, max_deg=MAX_DEG) -> DecoratedWord:
    k = rng.randint(min_tail, max_tail)
    return DecoratedWord(
        monomial(rng, variables, max_deg),
        tuple((rng.choice(decorations), monomial(rng, variables, max_deg)) for _ in range(k)),
    )


def free_element(rng, decorations, variables=POLY_VARS, max_terms=3, max_tail=MAX_TAIL, max_deg=MAX_DEG):
    while True:
        el = FreeElement(
            (word(rng, decorations, variables, max_tail, 0, max_deg), coeff(rng))
            for _ in range(rng.randint(1, max_terms))
        )
        if el:
            return el


def base_key(rng, base, max_tail=1):
    if isinstance(base, VolterraModel):
        return monomial(rng, (COORD,), MAX_DEG)
    if isinstance(base, FreeMRBA):
        return word(rng, base.decorations, ("t",), max_tail, 0, 2)
    raise TypeError(f"no random basis generator for {type(base).__name__}")


def base_element(rng, base, max_terms=2):
    total = base.zero()
    for _ in range(rng.randint(1, max_terms)):
        total = total + coeff(rng) * base.basis(base_key(rng, base))
    return total if total else base.one()


def rel_word(
    rng, alg: RelativeMRBA, head_kind=None, variables=POLY_VARS, max_tail=MAX_TAIL, min_tail=0, max_deg=MAX_DEG
) -> RelativeWord:
    """``head_kind``: 'base' (constant monomial), 'aug' (nonconstant) or None (either)."""
    if head_kind is None:
        head_kind = rng.choice(("base", "aug"))
    m0 = ONE if head_kind == "base" else monomial(rng, variables, max_deg, nonconstant=True)
    k = rng.randint(min_tail, max_tail)
    tail = tuple(
        (rng.choice(alg.decorations), base_key(rng, alg.base), monomial(rng, variables, max_deg, nonconstant=True))
        for _ in range(k)
    )
    return RelativeWord((base_key(rng, alg.base), m0), tail)


def rel_element(rng, alg: RelativeMRBA, head_kind=None, max_terms=2, max_tail=MAX_TAIL, min_tail=0, max_deg=MAX_DEG):
    while True:
        el = RelativeElement(
            (rel_word(rng, alg, head_kind, max_tail=max_tail, min_tail=min_tail, max_deg=max_deg), coeff(rng))
            for _ in range(rng.randint(1, max_terms))
        )
        if el:
            return el


def zinbiel_word(rng, decorations, generators=GENERATORS, max_tail=MAX_TAIL, min_tail=0) -> DecoratedWord:
    g = lambda: Monomial.var(rng.choice(generators))  # noqa: E731
    k = rng.randint(min_tail, max_tail)
    return DecoratedWord(g(), tuple((rng.choice(decorations), g()) for _ in range(k)))


def zinbiel_element(rng, decorations, generators=GENERATORS, max_terms=2, max_tail=2):
    while True:
        el = FreeElement(
            (zinbiel_word(rng, decorations, generators, max_tail), coeff(rng)) for _ in range(rng.randint(1, max_terms))
        )
        if el:
            return el


def coeff_row(rng, decorations, allow_zero=True) -> dict:
    pool = (-3, -2, -1, 0, 1, 2, 3) if allow_zero else (-3, -2, -1, 1, 2, 3)
    return {w: rng.choice(pool) for w in decorations}
