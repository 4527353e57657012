"""Randomized defect suites.

Each suite draws one instance per trial from ``trial_rng(seed, suite, i)``
so results do not depend on trial order or sharding.  A trial returns
``None`` when every defect is exactly zero, else a counterexample string.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import randgen as rg
from .algebra import (
    DerivedZinbiel,
    combined_operator_defect,
    dendriform_defects,
    permutative_defect,
    zinbiel_defect,
)
from .free import FreeMRBA, diamond, embed_poly, rb_defect, universal_lift
from .poly import poly_substitute
from .relative import RelativeMRBA, module_relation_defect, rel_rb_defect, rel_universal_lift
from .volterra import vol_rb_defect
from .zinbiel import ConcatenatingZinbiel, ZinbielAlgebra, zinbiel_lift


def show(x, alg=None) -> str:
    if alg is not None and hasattr(alg, "to_text"):
        return alg.to_text(x)
    return x.to_text() if hasattr(x, "to_text") else str(x)


def _counterexample(what: str, defect, alg=None, **inputs) -> str:
    parts = [what]
    for name, val in inputs.items():
        parts.append(f"  {name} = {val if isinstance(val, str) else show(val, alg)}")
    parts.append(f"  defect = {show(defect, alg)}")
    return "\n".join(parts)


def _zinbiel(decs, corrupt):
    return ConcatenatingZinbiel(decs) if corrupt else ZinbielAlgebra(decs)


def _pair(rng, decs):
    return rng.choice(decs), rng.choice(decs)


def trial_rb(rng, decs, index, corrupt):
    alg = FreeMRBA(decs)
    a, b = _pair(rng, decs)
    x, y = rg.free_element(rng, decs, max_terms=2), rg.free_element(rng, decs, max_terms=2)
    d = rb_defect(alg, a, b, x, y)
    if d:
        return _counterexample(f"rb decorations={a},{b}", d, x=x, y=y)


def trial_combined(rng, decs, index, corrupt):
    alg = FreeMRBA(decs)
    row = rg.coeff_row(rng, decs)
    x, y = rg.free_element(rng, decs, max_terms=2), rg.free_element(rng, decs, max_terms=2)
    d = combined_operator_defect(alg, row, x, y)
    if d:
        return _counterexample(f"combined coeffs={row}", d, x=x, y=y)


HEAD_CASES = (("base", "base"), ("base", "aug"), ("aug", "base"), ("aug", "aug"))


def trial_rb_relative(rng, decs, index, corrupt):
    base = rg.volterra(rng, decs)
    alg = RelativeMRBA(base)
    ku, kv = HEAD_CASES[index % 4]
    a, b = _pair(rng, decs)
    u, v = rg.rel_element(rng, alg, ku), rg.rel_element(rng, alg, kv)
    d = rel_rb_defect(alg, a, b, u, v)
    if d:
        return _counterexample(f"rb-relative heads={ku},{kv} decorations={a},{b} base={base!r}", d, alg, u=u, v=v)


def trial_module_relation(rng, decs, index, corrupt):
    base = rg.volterra(rng, decs)
    a, b = _pair(rng, decs)
    k = rg.base_element(rng, base)
    if index % 2:
        # base over itself
        u = rg.xpoly(rng)
        d = module_relation_defect(base, base, a, b, k, u)
        if d:
            return _counterexample(f"module-relation (over itself) decorations={a},{b} base={base!r}", d, k=k, u=u)
        return None
    alg = RelativeMRBA(base)
    u = rg.rel_element(rng, alg)
    d = module_relation_defect(alg, base, a, b, k, u)
    if d:
        return _counterexample(f"module-relation decorations={a},{b} base={base!r}", d, alg, k=k.to_text(), u=u)


def _triple(rng, decs):
    return tuple(rg.zinbiel_element(rng, decs) for _ in range(3))


def trial_zinbiel(rng, decs, index, corrupt):
    zin = _zinbiel(decs, corrupt)
    a, b = _pair(rng, decs)
    x, y, z = _triple(rng, decs)
    d = zinbiel_defect(zin, a, b, x, y, z)
    if d:
        return _counterexample(f"zinbiel decorations={a},{b}", d, x=x, y=y, z=z)
    derived = DerivedZinbiel(zin, {"r": rg.coeff_row(rng, decs), "s": rg.coeff_row(rng, decs)})
    d = zinbiel_defect(derived, "r", "s", x, y, z)
    if d:
        return _counterexample(f"zinbiel derived rows={derived.rows}", d, x=x, y=y, z=z)


def trial_dendriform(rng, decs, index, corrupt):
    zin = _zinbiel(decs, corrupt)
    a, b = _pair(rng, decs)
    x, y, z = _triple(rng, decs)
    for n, d in enumerate(dendriform_defects(zin, a, b, x, y, z), 1):
        if d:
            return _counterexample(f"dendriform axiom {n} decorations={a},{b}", d, x=x, y=y, z=z)


def trial_permutative(rng, decs, index, corrupt):
    zin = _zinbiel(decs, corrupt)
    a, b = _pair(rng, decs)
    x, y, z = _triple(rng, decs)
    d = permutative_defect(zin, a, b, x, y, z)
    if d:
        return _counterexample(f"permutative decorations={a},{b}", d, x=x, y=y, z=z)


def trial_loday(rng, decs, index, corrupt):
    single = decs[:1]
    zin = _zinbiel(single, corrupt)
    x = rg.zinbiel_element(rng, single, max_tail=3)
    y = rg.zinbiel_element(rng, single, max_tail=3)
    d = zin.star(x, y) - zin.loday_shuffle(x, y)
    if d:
        return _counterexample(f"loday dec={single[0]}", d, x=x, y=y)


def _free_hom_checks(alg, target, assignment, x, y, decs, rng):
    lift = lambda e: universal_lift(target, assignment, e)  # noqa: E731
    fx, fy = lift(x), lift(y)
    d = lift(diamond(x, y)) - target.mul(fx, fy)
    if d:
        return "multiplicative", d
    w = rng.choice(decs)
    d = lift(alg.op(w, x)) - target.op(w, fx)
    if d:
        return f"intertwines P{w}", d
    p = rg.poly(rng, max_terms=2)
    d = lift(embed_poly(p)) - poly_substitute(p, assignment, target)
    if d:
        return "agrees on variables", d
    return None


def trial_lift_free(rng, decs, index, corrupt):
    alg = FreeMRBA(decs)
    if index % 2:
        target = rg.volterra(rng, decs)
        assignment = {v: rg.xpoly(rng, 2, 2) for v in rg.POLY_VARS}
        size = dict(max_terms=2, max_tail=2)
    else:
        # images nest into long tails, so keep self-target sources small
        target = alg
        assignment = {v: rg.free_element(rng, decs, max_terms=1, max_tail=1, max_deg=1) for v in rg.POLY_VARS}
        size = dict(max_terms=2, max_tail=1, max_deg=2)
    x = rg.free_element(rng, decs, **size)
    y = rg.free_element(rng, decs, **size)
    bad = _free_hom_checks(alg, target, assignment, x, y, decs, rng)
    if bad:
        ctx = ", ".join(f"{k}->{show(v)}" for k, v in assignment.items())
        return _counterexample(f"lift-free {bad[0]} target={target!r} assignment: {ctx}", bad[1], x=x, y=y)


def trial_lift_relative(rng, decs, index, corrupt):
    base = rg.volterra(rng, decs)
    alg = RelativeMRBA(base)
    if index % 2:
        target = base
        assignment = {v: rg.xpoly(rng, 2, 2) for v in rg.POLY_VARS}
        size = dict(max_tail=2)
    else:
        target = alg
        assignment = {v: rg.rel_element(rng, alg, max_terms=1, max_tail=1, max_deg=1) for v in rg.POLY_VARS}
        size = dict(max_tail=1, max_deg=2)
    lift = lambda e: rel_universal_lift(alg, target, assignment, e)  # noqa: E731
    tgt = target if target is alg else None
    u = rg.rel_element(rng, alg, **size)
    v = rg.rel_element(rng, alg, **size)
    w = rng.choice(decs)
    p = rg.poly(rng, max_deg=size.get("max_deg", rg.MAX_DEG), max_terms=2)
    k = rg.base_element(rng, base)
    fu = lift(u)
    checks = (
        ("multiplicative", lambda: lift(alg.mul(u, v)) - target.mul(fu, lift(v))),
        (f"intertwines P{w}", lambda: lift(alg.op(w, u)) - target.op(w, fu)),
        ("agrees on variables", lambda: lift(alg.embed_poly(p)) - poly_substitute(p, assignment, target)),
        ("agrees on the base", lambda: lift(alg.from_base(k)) - target.from_base(k)),
    )
    for name, run in checks:
        d = run()
        if d:
            ctx = ", ".join(f"{a}->{show(b, tgt)}" for a, b in assignment.items())
            return _counterexample(f"lift-relative {name} base={base!r} assignment: {ctx}", d, tgt, u=alg.to_text(u), v=alg.to_text(v))


def trial_lift_zinbiel(rng, decs, index, corrupt):
    zin = _zinbiel(decs, corrupt)
    if index % 2:
        target = rg.volterra(rng, decs)
        assignment = {g: rg.xpoly(rng, 2, 2) for g in rg.GENERATORS}
    else:
        target = ZinbielAlgebra(decs)
        assignment = {g: rg.zinbiel_element(rng, decs, max_terms=1, max_tail=1) for g in rg.GENERATORS}
    lift = lambda e: zinbiel_lift(target, assignment, e)  # noqa: E731
    w = rng.choice(decs)
    x = rg.zinbiel_element(rng, decs, max_tail=2)
    y = rg.zinbiel_element(rng, decs, max_tail=2)
    d = lift(zin.prec(w, x, y)) - target.circ(w, lift(x), lift(y))
    if d:
        ctx = ", ".join(f"{g}->{show(v)}" for g, v in assignment.items())
        return _counterexample(f"lift-zinbiel preserves <:{w} target={target!r} assignment: {ctx}", d, x=x, y=y)


def trial_volterra_rb(rng, decs, index, corrupt):
    ks = rg.kernels(rng, decs)
    a, b = _pair(rng, decs)
    f, g = rg.xpoly(rng), rg.xpoly(rng)
    d = vol_rb_defect(a, b, f, g, ks)
    if d:
        kt = ", ".join(f"{w}: {k.to_text()}" for w, k in ks.items())
        return _counterexample(f"volterra-rb decorations={a},{b} kernels={{{kt}}}", d, f=f, g=g)


SUITES: dict[str, Callable] = {
    "rb": trial_rb,
    "rb-relative": trial_rb_relative,
    "module-relation": trial_module_relation,
    "zinbiel": trial_zinbiel,
    "dendriform": trial_dendriform,
    "permutative": trial_permutative,
    "loday": trial_loday,
    "lift-free": trial_lift_free,
    "lift-relative": trial_lift_relative,
    "lift-zinbiel": trial_lift_zinbiel,
    "volterra-rb": trial_volterra_rb,
    "combined": trial_combined,
}


@dataclass
class Failure:
    index: int
    text: str


@dataclass
class CheckReport:
    suite: str
    trials: int
    seed: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def format(self, elapsed: float | None = None) -> str:
        status = "PASS" if self.ok else f"FAIL ({len(self.failures)} of {self.trials})"
        timing = "" if elapsed is None else f" ({elapsed:.2f}s)"
        lines = [f"{self.suite}: {status}  trials={self.trials} seed={self.seed}{timing}"]
        for f in self.failures:
            lines.append(f"counterexample (trial {f.index}):")
            lines.append(f.text)
        return "\n".join(lines)


def run_trial(suite: str, seed: int, index: int, decs, corrupt=False):
    rng = rg.trial_rng(seed, suite, index)
    try:
        return SUITES[suite](rng, tuple(decs), index, corrupt)
    except Exception as exc:  # a crash is a defect too; keep the trial index
        return f"{suite} raised {type(exc).__name__}: {exc}"


def _run_chunk(args):
    suite, seed, indices, decs, corrupt = args
    return [(i, run_trial(suite, seed, i, decs, corrupt)) for i in indices]


def run_check(suite: str, decs, trials: int, seed: int, corrupt=False, jobs: int = 1) -> CheckReport:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    decs = tuple(decs)
    if not 1 <= len(decs) <= 4:
        raise ValueError("checks use between 1 and 4 decorations")
    if jobs > 1 and trials > 1:
        chunks = [(suite, seed, range(j, trials, jobs), decs, corrupt) for j in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            results = [r for part in pool.map(_run_chunk, chunks) for r in part]
    else:
        results = _run_chunk((suite, seed, range(trials), decs, corrupt))
    report = CheckReport(suite, trials, seed)
    report.failures = [Failure(i, t) for i, t in sorted(results) if t is not None]
    return report
