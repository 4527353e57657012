"""Evaluate parsed expressions in one of four algebras.

A ``Session`` fixes the mode, decorations and base data, then turns
expression trees into canonical elements.  Rational literals stay plain
``Fraction`` values until they meet an element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Optional

from .algebra import UnknownDecoration, decoration_set
from .free import FreeElement, FreeMRBA, diamond, embed_poly, universal_lift
from .linear import as_fraction
from .parser import (
    Add,
    Base,
    Call,
    Dend,
    Mul,
    Neg,
    Num,
    Op,
    ParseError,
    Pow,
    Sub,
    Tensor,
    Var,
    parse,
)
from .poly import Polynomial
from .relative import RelativeMRBA, rel_universal_lift
from .shuffle import shuffle
from .volterra import COORD, VolterraModel, picard_solve
from .zinbiel import NotLinear, ZinbielAlgebra, zinbiel_lift

MODES = ("free", "relative", "zinbiel", "volterra")
BASES = ("volterra", "free")


class EvalError(ValueError):
    """Well-formed expression that makes no sense in the session's mode."""


def _scalar(v) -> bool:
    return isinstance(v, Fraction)


@dataclass
class SessionConfig:
    mode: str = "free"
    decorations: tuple = ("a",)
    base: str = "volterra"
    base_vars: tuple = ("t",)
    kernels: Optional[Mapping] = None  # decoration -> Polynomial; None means unit kernels
    zinbiel: bool = False
    variables: Optional[tuple] = None
    assign: Mapping = field(default_factory=dict)  # identifier -> expression text for lift
    coeffs: Optional[Mapping] = None  # decoration -> rational for picard / solve

    def __post_init__(self):
        if self.mode not in MODES:
            raise EvalError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if self.base not in BASES:
            raise EvalError(f"unknown base {self.base!r}; choose from {', '.join(BASES)}")
        self.decorations = decoration_set(self.decorations)
        if self.kernels is not None:
            missing = set(self.decorations) - set(self.kernels)
            if missing:
                raise EvalError(f"no kernel for decoration {sorted(missing)[0]!r}")


# -- backends: one per mode --------------------------------------------------


class _Backend:
    def __init__(self, cfg: SessionConfig):
        self.cfg = cfg
        self.decorations = cfg.decorations

    def volterra(self) -> VolterraModel:
        ks = self.cfg.kernels
        return VolterraModel(ks) if ks is not None else VolterraModel.unit_kernels(self.decorations)

    def unit(self, c: Fraction):
        return c * self.one()

    def power(self, a, n: int):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def base(self, e):
        raise EvalError("braces mark base elements, which exist only in relative mode")

    def call(self, name, args, ev):
        raise EvalError(f"{name}() is not available in {self.cfg.mode} mode")

    def _single(self, what):
        if len(self.decorations) != 1:
            raise EvalError(f"{what} needs exactly one decoration")
        return self.decorations[0]


class FreeBackend(_Backend):
    def __init__(self, cfg):
        super().__init__(cfg)
        self.alg = FreeMRBA(cfg.decorations)

    def var(self, name):
        return embed_poly(Polynomial.var(name))

    def one(self):
        return self.alg.one()

    def mul(self, a, b):
        return diamond(a, b)

    def op(self, w, a):
        return self.alg.op(w, a)

    def prec(self, w, a, b):
        return diamond(a, self.op(w, b))

    def succ(self, w, a, b):
        return diamond(self.op(w, a), b)

    def text(self, a):
        return a.to_text()

    def json(self, a):
        return a.to_json()

    def call(self, name, args, ev):
        if name == "shuffle":
            w = self._single("shuffle()")
            x, y = (ev.element(a) for a in _arity(name, args, 2))
            return _word_shuffle(w, x, y)
        if name == "star":
            w = self._single("star()")
            x, y = (ev.element(a) for a in _arity(name, args, 2))
            return self.prec(w, x, y) + self.succ(w, x, y)
        if name == "lift":
            target, e = _arity(name, args, 2)
            a = ev.element(e)
            tgt, assignment = ev.lift_target(target, a)
            return universal_lift(tgt, assignment, a)
        return super().call(name, args, ev)

    def identifiers(self, a):
        return {v for w in a.keys() for m in (w.head, *(m for _, m in w.tail)) for v in m.variables}


def _word_shuffle(w, x, y):
    """Shuffle of head-first words ``a0 a1 ... ak``, read back as decorated words."""
    zin = ZinbielAlgebra([w])
    return zin.unidentify(shuffle(zin.identify(x), zin.identify(y)))


class RelativeBackend(_Backend):
    def __init__(self, cfg):
        super().__init__(cfg)
        if cfg.base == "volterra":
            self.base_alg = self.volterra()
            self.base_session = Session(
                SessionConfig(mode="volterra", decorations=cfg.decorations, kernels=self.base_alg.kernels)
            )
            self.base_names = {COORD}
        else:
            self.base_alg = FreeMRBA(cfg.decorations)
            self.base_session = Session(SessionConfig(mode="free", decorations=cfg.decorations))
            self.base_names = set(cfg.base_vars)
        self.alg = RelativeMRBA(self.base_alg)

    def var(self, name):
        if name in self.base_names:
            return self.alg.from_base(self.base_session.backend.var(name))
        return self.alg.embed_poly(Polynomial.var(name))

    def base(self, e):
        v = self.base_session.element(e)
        return self.alg.from_base(v)

    def one(self):
        return self.alg.one()

    def mul(self, a, b):
        return self.alg.mul(a, b)

    def op(self, w, a):
        return self.alg.op(w, a)

    def prec(self, w, a, b):
        return self.alg.mul(a, self.op(w, b))

    def succ(self, w, a, b):
        return self.alg.mul(self.op(w, a), b)

    def text(self, a):
        return self.alg.to_text(a)

    def json(self, a):
        return self.alg.to_json(a)

    def call(self, name, args, ev):
        if name == "lift":
            target, e = _arity(name, args, 2)
            a = ev.element(e)
            tgt, assignment = ev.lift_target(target, a)
            return rel_universal_lift(self.alg, tgt, assignment, a)
        return super().call(name, args, ev)

    def identifiers(self, a):
        return {v for w in a.keys() for m in (w.head[1], *(m for _, _, m in w.tail)) for v in m.variables}


class VolterraBackend(_Backend):
    def __init__(self, cfg):
        super().__init__(cfg)
        self.vol = self.volterra()

    def var(self, name):
        if name != COORD:
            raise EvalError(f"volterra mode has the single variable {COORD!r}, not {name!r}")
        return Polynomial.var(COORD)

    def one(self):
        return Polynomial.one()

    def mul(self, a, b):
        return self.vol.mul(a, b)

    def op(self, w, a):
        return self.vol.op(w, a)

    def _need_zinbiel(self):
        if not self.cfg.zinbiel:
            raise EvalError("<: and :> in volterra mode need --zinbiel (or zinbiel=True)")

    def prec(self, w, a, b):
        self._need_zinbiel()
        return self.vol.prec(w, a, b)

    def succ(self, w, a, b):
        self._need_zinbiel()
        return self.vol.succ(w, a, b)

    def text(self, a):
        return a.to_text()

    def json(self, a):
        return a.to_json()

    def call(self, name, args, ev):
        if name == "picard":
            g, cap, iters = _arity(name, args, 3)
            coeffs = self.cfg.coeffs if self.cfg.coeffs is not None else {w: 1 for w in self.decorations}
            return picard_solve(ev.element(g), coeffs, self.vol.kernels, ev.integer(cap), ev.integer(iters))
        return super().call(name, args, ev)


class ZinbielBackend(_Backend):
    def __init__(self, cfg):
        super().__init__(cfg)
        self.zin = ZinbielAlgebra(cfg.decorations, cfg.variables)

    def var(self, name):
        return self.zin.gen(name)

    def one(self):
        raise EvalError("the free Zinbiel algebra has no unit; scalars only multiply elements")

    def unit(self, c):
        if c:
            self.one()
        return FreeElement.zero()

    def mul(self, a, b):
        raise EvalError("elements of the free Zinbiel algebra do not multiply; use <: or :>")

    def power(self, a, n):
        raise EvalError("powers are not defined in zinbiel mode")

    def op(self, w, a):
        raise EvalError("operators P are not part of zinbiel mode")

    def prec(self, w, a, b):
        return self.zin.prec(w, a, b)

    def succ(self, w, a, b):
        return self.zin.succ(w, a, b)

    def text(self, a):
        return a.to_text()

    def json(self, a):
        return a.to_json()

    def call(self, name, args, ev):
        if name in ("shuffle", "star"):
            self._single(f"{name}()")
            x, y = (ev.element(a) for a in _arity(name, args, 2))
            return self.zin.loday_shuffle(x, y) if name == "shuffle" else self.zin.star(x, y)
        if name == "lift":
            target, e = _arity(name, args, 2)
            a = ev.element(e)
            tgt, assignment = ev.lift_target(target, a)
            return zinbiel_lift(tgt, assignment, a)
        return super().call(name, args, ev)

    def identifiers(self, a):
        return {v for w in a.keys() for m in (w.head, *(m for _, m in w.tail)) for v in m.variables}


_BACKENDS = {"free": FreeBackend, "relative": RelativeBackend, "volterra": VolterraBackend, "zinbiel": ZinbielBackend}


def _same_algebra(x, y):
    if not (_scalar(x) or _scalar(y) or type(x) is type(y)):
        raise EvalError("cannot combine a lift() result with elements of another algebra")


def _arity(name, args, n):
    if len(args) != n:
        raise EvalError(f"{name}() takes {n} arguments, got {len(args)}")
    return args


# -- session -----------------------------------------------------------------


class Session:
    def __init__(self, cfg: SessionConfig):
        self.cfg = cfg
        self.backend = _BACKENDS[cfg.mode](cfg)

    def parse(self, text: str):
        return parse(text, self.cfg.decorations, self.cfg.variables)

    def evaluate(self, expr):
        """Canonical element for ``expr`` (text or tree)."""
        e = self.parse(expr) if isinstance(expr, str) else expr
        return self.element(e)

    def render(self, value) -> str:
        # lift() may leave the mode's algebra; polynomials render themselves
        return value.to_text() if isinstance(value, Polynomial) else self.backend.text(value)

    def to_json(self, value) -> dict:
        terms = value.to_json() if isinstance(value, Polynomial) else self.backend.json(value)
        return {"mode": self.cfg.mode, "decorations": list(self.cfg.decorations), "text": self.render(value), "terms": terms}

    # evaluation
    def element(self, e):
        v = self.value(e)
        return self.backend.unit(v) if _scalar(v) else v

    def integer(self, e) -> int:
        v = self.value(e)
        if not _scalar(v) or v.denominator != 1:
            raise EvalError("expected an integer literal")
        return int(v)

    def value(self, e):
        b = self.backend
        if isinstance(e, Num):
            return e.value
        if isinstance(e, Var):
            return b.var(e.name)
        if isinstance(e, Neg):
            return -self.value(e.arg)
        if isinstance(e, (Add, Sub)):
            x, y = self.value(e.left), self.value(e.right)
            if isinstance(e, Sub):
                y = -y
            if _scalar(x) and _scalar(y):
                return x + y
            _same_algebra(x, y)
            return (b.unit(x) if _scalar(x) else x) + (b.unit(y) if _scalar(y) else y)
        if isinstance(e, Mul):
            x, y = self.value(e.left), self.value(e.right)
            if _scalar(x):
                return x * y
            if _scalar(y):
                return y * x
            _same_algebra(x, y)
            return b.mul(x, y)
        if isinstance(e, Pow):
            x = self.value(e.base)
            return x**e.exp if _scalar(x) else b.power(x, e.exp)
        if isinstance(e, Op):
            return b.op(e.dec or self.cfg.decorations[0], self.element(e.arg))
        if isinstance(e, Dend):
            x, y = self.element(e.left), self.element(e.right)
            return b.prec(e.dec, x, y) if e.side == "<:" else b.succ(e.dec, x, y)
        if isinstance(e, Tensor):
            return self._tensor(e)
        if isinstance(e, Call):
            return b.call(e.name, e.args, self)
        if isinstance(e, Base):
            return b.base(e.arg)
        raise TypeError(f"not an expression node: {e!r}")

    def _tensor(self, e: Tensor):
        # h ⊗ (w1:e1) ⊗ ... ⊗ (wk:ek) is the nested form; zinbiel mode nests <: instead
        b = self.backend
        entries = [self.element(e.head)] + [self.element(s) for _, s in e.slots]
        decs = [d for d, _ in e.slots]
        v = entries[-1]
        for i in range(len(decs) - 1, -1, -1):
            v = b.prec(decs[i], entries[i], v) if isinstance(b, ZinbielBackend) else b.mul(entries[i], b.op(decs[i], v))
        return v

    # lifts
    def lift_target(self, target_node, source):
        if not isinstance(target_node, Var) or target_node.name not in ("self", "volterra"):
            raise EvalError("lift target must be self or volterra")
        mode = self.cfg.mode
        if target_node.name == "self":
            tgt = self.backend.zin if mode == "zinbiel" else self.backend.alg
            target_session = self
        else:
            if mode == "relative" and self.cfg.base != "volterra":
                raise EvalError("lifting to volterra from relative mode needs the volterra base")
            if mode == "volterra":
                raise EvalError("volterra mode has no lift")
            target_session = Session(SessionConfig(mode="volterra", decorations=self.cfg.decorations, kernels=self.cfg.kernels, zinbiel=True))
            tgt = target_session.backend.vol
        names = self.backend.identifiers(source)
        assignment = {}
        for name in sorted(names):
            text = self.cfg.assign.get(name)
            if text is None:
                # identity on self, the coordinate function on volterra
                text = name if target_node.name == "self" else COORD
            assignment[name] = target_session.element(target_session.parse(text))
        return tgt, assignment


def load_kernels(source: str | None, decorations) -> Optional[dict]:
    """``None``/``unit`` -> unit kernels; otherwise a JSON file mapping decoration -> polynomial."""
    if source is None or source == "unit":
        return None
    path = Path(source)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise EvalError(f"cannot read kernel file {source!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise EvalError(f"kernel file {source!r} is not JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise EvalError("kernel file must hold a JSON object decoration -> polynomial")
    return {str(w): kernel_polynomial(v) for w, v in data.items()}


def kernel_polynomial(v) -> Polynomial:
    if isinstance(v, list):
        p = Polynomial.from_json(v)
    elif isinstance(v, (int, str)) and not isinstance(v, bool):
        text = str(v)
        tree = parse(text, decorations=(), variables=(COORD,))
        p = Session(SessionConfig(mode="volterra", decorations=("k",))).element(tree)
    else:
        raise EvalError(f"kernel must be a polynomial text, an integer or a term list; got {v!r}")
    if p.variables - {COORD}:
        raise EvalError(f"kernels are polynomials in {COORD}")
    return p


def parse_coeffs(text: str | None) -> Optional[dict]:
    """``a=1,b=-1/2`` -> ``{"a": 1, "b": -1/2}``."""
    if not text:
        return None
    out = {}
    for part in text.split(","):
        name, eq, val = part.partition("=")
        if not eq:
            raise EvalError(f"coefficient {part!r} is not name=value")
        try:
            out[name.strip()] = as_fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            raise EvalError(f"bad coefficient {val!r}") from None
    return out


__all__ = [
    "EvalError",
    "NotLinear",
    "ParseError",
    "Session",
    "SessionConfig",
    "UnknownDecoration",
    "load_kernels",
    "parse_coeffs",
]
