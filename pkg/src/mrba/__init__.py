"""Exact computer algebra for free matching Rota-Baxter, relative and Zinbiel constructions."""

from .algebra import UnknownDecoration
from .free import DecoratedWord, FreeElement, FreeMRBA, nested_form, universal_lift
from .poly import Monomial, Polynomial
from .relative import RelativeMRBA, RelativeWord, rel_universal_lift
from .shuffle import TensorSum, shuffle
from .volterra import VolterraModel, picard_solve
from .zinbiel import ZinbielAlgebra, zinbiel_lift

__all__ = [
    "DecoratedWord",
    "FreeElement",
    "FreeMRBA",
    "Monomial",
    "Polynomial",
    "RelativeMRBA",
    "RelativeWord",
    "TensorSum",
    "UnknownDecoration",
    "VolterraModel",
    "ZinbielAlgebra",
    "nested_form",
    "picard_solve",
    "rel_universal_lift",
    "shuffle",
    "universal_lift",
    "zinbiel_lift",
]
