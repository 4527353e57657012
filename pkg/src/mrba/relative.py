"""Free commutative matching Rota-Baxter algebra relative to a base algebra.

Basis words ``u0 ⊗ (w1:u1) ⊗ ...`` where every slot is a pair
(base basis key, monomial).  Tail slots must carry a nonconstant monomial.
A head whose monomial is constant lives in the base and gets the two-term
operator rule; any other head is pushed into the tail.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, NamedTuple, Sequence, Tuple

from .algebra import BaseMRBA, MatchingRBA, UnknownDecoration
from .free import TENSOR, coeff_word_text
from .linear import LinComb, accumulate, as_fraction, fraction_text
from .poly import ONE, Monomial, Polynomial, _mono_mul, poly_substitute
from .shuffle import shuffle_words

Slot = Tuple[Hashable, Monomial]


class RelativeWord(NamedTuple):
    head: Slot
    tail: Tuple[Tuple[str, Hashable, Monomial], ...] = ()

    @property
    def depth(self) -> int:
        return len(self.tail)

    def head_in_base(self) -> bool:
        return not self.head[1]


class RelativeElement(LinComb):
    __slots__ = ()

    @property
    def max_depth(self) -> int:
        return max((w.depth for w in self.keys()), default=0)


class AugmentationError(ValueError):
    pass


class RelativeMRBA(MatchingRBA):
    """Relative free algebra over a weight-zero base algebra ``base``."""

    def __init__(self, base: BaseMRBA):
        bad = [w for w in base.decorations if base.weight(w)]
        if bad:
            raise ValueError(f"the relative free construction needs a weight-zero base; weight of {bad[0]!r} is nonzero")
        self.base = base
        self.decorations = base.decorations
        self._base_mul: dict = {}
        self._base_op: dict = {}
        self._one = tuple(base.decompose(base.one()).items())

    def __repr__(self):
        return f"RelativeMRBA({self.base!r})"

    # cached base-level operations on basis keys
    def base_mul(self, k1, k2):
        key = (k1, k2) if hash(k1) <= hash(k2) else (k2, k1)
        hit = self._base_mul.get(key)
        if hit is None:
            base_alg = self.base
            hit = tuple(base_alg.decompose(base_alg.mul(base_alg.basis(k1), base_alg.basis(k2))).items())
            self._base_mul[key] = hit
        return hit

    def base_op(self, dec, k):
        hit = self._base_op.get((dec, k))
        if hit is None:
            base_alg = self.base
            hit = tuple(base_alg.decompose(base_alg.op(dec, base_alg.basis(k))).items())
            self._base_op[(dec, k)] = hit
        return hit

    # algebra interface
    def zero(self):
        return RelativeElement.zero()

    def one(self):
        return RelativeElement._raw({RelativeWord((k, ONE)): c for k, c in self._one})

    def from_base(self, f) -> RelativeElement:
        return RelativeElement._raw({RelativeWord((k, ONE)): c for k, c in self.base.decompose(f).items()})


    def embed_poly(self, p: Polynomial) -> RelativeElement:
        out: dict = {}
        for m, c in p.items():
            for k, c1 in self._one:
                accumulate(out, RelativeWord((k, m)), c * c1)
        return RelativeElement._raw(out)

    def pure(self, head: Tuple, tail: Sequence[Tuple] = ()) -> RelativeElement:
        """Expand ``(f0, p0) ⊗ (w1: f1, p1) ⊗ ...`` with base elements f_i and polynomials p_i.

        Tail polynomials must have zero constant term.
        """
        f0, p0 = head
        acc: dict = {}
        for k, c in self.base.decompose(f0).items():
            for m, cm in p0.items():
                accumulate(acc, ((k, m), ()), c * cm)
        for w, f, p in tail:
            self.check_decoration(w)
            if p.constant_term():
                raise AugmentationError("tail entries must lie in the augmentation ideal")
            fd = self.base.decompose(f)
            nxt: dict = {}
            for (h, t), c in acc.items():
                for k, ck in fd.items():
                    for m, cm in p.items():
                        accumulate(nxt, (h, t + ((w, k, m),)), c * ck * cm)
            acc = nxt
        return RelativeElement._raw({RelativeWord(h, t): c for (h, t), c in acc.items()})

    def mul(self, a: RelativeElement, b: RelativeElement) -> RelativeElement:
        return rel_diamond(self, a, b)

    def op(self, dec, u: RelativeElement) -> RelativeElement:
        return rel_apply_op(self, dec, u)

    # text / json
    def slot_text(self, k, m: Monomial) -> str:
        parts = [p for p in (self.base.basis_expr(k), "" if not m else m.to_text()) if p]
        return "*".join(parts) if parts else "1"

    def to_text(self, u: RelativeElement) -> str:
        if not u:
            return "0"
        out = []
        for i, (w, c) in enumerate(self.sorted_terms(u)):
            tail = "".join(f" {TENSOR} ({d}:{self.slot_text(k, m)})" for d, k, m in w.tail)
            out.append(coeff_word_text(c, self.slot_text(*w.head), tail, i == 0))
        return "".join(out)

    def sorted_terms(self, u: RelativeElement):
        def key(kv):
            w = kv[0]
            return (w.depth, self.slot_text(*w.head), tuple((d, self.slot_text(k, m)) for d, k, m in w.tail))

        return sorted(u.items(), key=key)

    def _slot_json(self, k, m):
        return {"fbasis": self.base.basis_name(k), "mono": m.as_dict()}

    def to_json(self, u: RelativeElement) -> list:
        return [
            {
                "coeff": fraction_text(c),
                "head": self._slot_json(*w.head),
                "tail": [[d, self._slot_json(k, m)] for d, k, m in w.tail],
            }
            for w, c in self.sorted_terms(u)
        ]

    def from_json(self, data) -> RelativeElement:
        base_alg = self.base
        terms = []
        for t in data:
            h = t["head"]
            head = (base_alg.basis_from_name(h["fbasis"]), Monomial(h.get("mono", {})))
            tail = []
            for d, s in t.get("tail", []):
                self.check_decoration(d)
                m = Monomial(s.get("mono", {}))
                if not m:
                    raise AugmentationError("tail entries must lie in the augmentation ideal")
                tail.append((d, base_alg.basis_from_name(s["fbasis"]), m))
            terms.append((RelativeWord(head, tuple(tail)), as_fraction(t["coeff"])))
        return RelativeElement(terms)


def rel_diamond(alg: RelativeMRBA, a: RelativeElement, b: RelativeElement) -> RelativeElement:
    out: dict = {}
    for wa, ca in a.items():
        (ka, ma), ta = wa
        for wb, cb in b.items():
            (kb, mb), tb = wb
            m = _mono_mul(ma, mb)
            c = ca * cb
            fprod = alg.base_mul(ka, kb)
            for tail, n in shuffle_words(ta, tb):
                for k, cf in fprod:
                    accumulate(out, RelativeWord((k, m), tail), c * n * cf)
    return RelativeElement._raw(out)


def rel_apply_op(alg: RelativeMRBA, dec, u: RelativeElement) -> RelativeElement:
    """Three-case operator, extended linearly over the basis."""
    alg.check_decoration(dec)
    one = alg._one
    out: dict = {}
    for w, c in u.items():
        (k0, m0), tail = w
        if m0:
            # nonconstant head monomial: push it into the tail
            new_tail = ((dec, k0, m0),) + tail
            for o, co in one:
                accumulate(out, RelativeWord((o, ONE), new_tail), c * co)
            continue
        kap = alg.base_op(dec, k0)
        if not tail:
            for k, ck in kap:
                accumulate(out, RelativeWord((k, ONE)), c * ck)
            continue
        for k, ck in kap:
            accumulate(out, RelativeWord((k, ONE), tail), c * ck)
        (w1, g1, m1), rest = tail[0], tail[1:]
        for k, ck in kap:
            for k1, c1 in alg.base_mul(k, g1):
                slot_tail = ((w1, k1, m1),) + rest
                for o, co in one:
                    accumulate(out, RelativeWord((o, ONE), slot_tail), -c * ck * c1 * co)
    return RelativeElement._raw(out)


def rel_rb_defect(alg: RelativeMRBA, dec1, dec2, u, v) -> RelativeElement:
    op_u = alg.op(dec1, u)
    op_v = alg.op(dec2, v)
    return alg.mul(op_u, op_v) - alg.op(dec1, alg.mul(u, op_v)) - alg.op(dec2, alg.mul(op_u, v))


def module_relation_defect(alg, base: BaseMRBA, dec1, dec2, k, u, weights: Mapping | None = None):
    """``Pa{k}*Pb(u) - Pa(k*Pb(u)) - Pb(Pa{k}*u) - weight_b*Pa(k*u)`` inside ``alg``.

    Braces mark base elements mapped in through ``alg.from_base``; ``alg``
    also needs ``mul`` and ``op``.
    """
    weight = as_fraction((weights or {}).get(dec2, 0))
    i = alg.from_base
    kk = i(base.op(dec1, k))
    k_ = i(k)
    op_u = alg.op(dec2, u)
    out = alg.mul(kk, op_u) - alg.op(dec1, alg.mul(k_, op_u)) - alg.op(dec2, alg.mul(kk, u))
    if weight:
        out = out - weight * alg.op(dec1, alg.mul(k_, u))
    return out


def rel_nested_form(alg: RelativeMRBA, w: RelativeWord) -> RelativeElement:
    """``u0*Pw1(u1*Pw2(... Pwk(uk)))`` built from single-slot elements."""
    slots = [w.head] + [(k, m) for _, k, m in w.tail]
    decs = [d for d, _, _ in w.tail]
    v = RelativeElement.basis(RelativeWord(slots[-1]))
    for i in range(len(decs) - 1, -1, -1):
        v = alg.mul(RelativeElement.basis(RelativeWord(slots[i])), alg.op(decs[i], v))
    return v


def rel_universal_lift(alg: RelativeMRBA, target, assignment: Mapping, u: RelativeElement):
    """The structure-preserving map into ``target`` that extends ``assignment`` on variables.

    ``target`` needs ``zero``, ``one``, ``mul``, ``op`` and ``from_base``.
    """
    base_alg = alg.base
    decs = getattr(target, "decorations", None)
    fcache: dict = {}
    mcache: dict = {}

    def slot(k, m):
        if k not in fcache:
            fcache[k] = target.from_base(base_alg.basis(k))
        if m not in mcache:
            mcache[m] = poly_substitute(Polynomial.basis(m), assignment, target)
        return target.mul(fcache[k], mcache[m])

    total = target.zero()
    for w, c in u.items():
        if decs is not None:
            for d, _, _ in w.tail:
                if d not in decs:
                    raise UnknownDecoration(d)
        slots = [w.head] + [(k, m) for _, k, m in w.tail]
        v = slot(*slots[-1])
        for i in range(len(w.tail) - 1, -1, -1):
            v = target.mul(slot(*slots[i]), target.op(w.tail[i][0], v))
        total = total + c * v
    return total


def tails_augmented(u: RelativeElement) -> bool:
    return all(m for w in u.keys() for _, _, m in w.tail)


WeightMap = Mapping[str, Fraction]
