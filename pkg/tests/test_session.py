from fractions import Fraction

import pytest

from mrba.free import FreeElement, parse_word
from mrba.poly import Polynomial
from mrba.session import EvalError, Session, SessionConfig, kernel_polynomial, parse_coeffs


def ev(text, **cfg):
    s = Session(SessionConfig(**cfg))
    return s.render(s.evaluate(text))


def test_free_examples():
    assert ev("P1(x)*P1(x)", decorations=["1"]) == "2 ⊗ (1:x) ⊗ (1:x)"
    assert ev("x*y") == "x*y"
    assert ev("Pa(x) - Pa(x)") == "0"
    assert ev("1/2 + 1/3") == "5/6"


def test_free_canonical_text_reparses():
    s = Session(SessionConfig(decorations=["a", "b"]))
    v = s.evaluate("Pa(x*Pb(y)) * Pb(x^2) - 3*y*Pa(1)")
    assert s.evaluate(s.render(v)) == v


def test_tensor_chain_is_the_word():
    s = Session(SessionConfig(decorations=["a", "b"]))
    v = s.evaluate("x^2 ⊗ (a:y) ⊗ (b:1)")
    assert v == FreeElement.basis(parse_word("x^2 ⊗ (a:y) ⊗ (b:1)"))


def test_induced_dendriform_in_free_mode():
    assert ev("x <:a y", decorations=["a"]) == "x ⊗ (a:y)"
    assert ev("x :>a y", decorations=["a"]) == "y ⊗ (a:x)"


def test_relative_mode():
    assert ev("Pw(x ⊗ (w:y))", mode="relative", decorations=["w"]) == "-1/2 ⊗ (w:x^2*y) + 1/2*x^2 ⊗ (w:y)"
    assert ev("P(x)", mode="relative", decorations=["w"]) == "1/2*x^2"
    assert ev("P(y)", mode="relative", decorations=["w"]) == "1 ⊗ (w:y)"


def test_relative_canonical_text_reparses():
    s = Session(SessionConfig(mode="relative", decorations=["a", "b"]))
    v = s.evaluate("Pa(x*Pb(x*y)) * Pb(x^2 + y)")
    assert s.evaluate(s.render(v)) == v


def test_relative_free_base_uses_braces():
    s = Session(SessionConfig(mode="relative", decorations=["a"], base="free"))
    v = s.evaluate("Pa({t}*y) + Pa({Pa(t)})")
    text = s.render(v)
    assert "{" in text
    assert s.evaluate(text) == v


def test_zinbiel_mode():
    assert ev("star(a, b)", mode="zinbiel", decorations=["w"]) == "a ⊗ (w:b) + b ⊗ (w:a)"
    assert ev("shuffle(a, b ⊗ (w:c))", mode="zinbiel", decorations=["w"]) == ev("star(a, b <:w c)", mode="zinbiel", decorations=["w"])
    assert ev("m <:1 n <:2 p", mode="zinbiel", decorations=["1", "2"]) == "m ⊗ (1:n) ⊗ (2:p) + m ⊗ (2:p) ⊗ (1:n)"
    assert ev("2*a - a", mode="zinbiel") == "a"


@pytest.mark.parametrize(
    "text,err",
    [("a*b", EvalError), ("a + 1", EvalError), ("Pa(b)", EvalError), ("a^2", EvalError), ("shuffle(a, b)", EvalError)],
)
def test_zinbiel_mode_rejects(text, err):
    with pytest.raises(err):
        ev(text, mode="zinbiel", decorations=["a", "b"])


def test_zinbiel_generators_declared():
    with pytest.raises(Exception, match="unknown identifier"):
        ev("a <:w q", mode="zinbiel", decorations=["w"], variables=("a", "b"))


def test_volterra_mode():
    ks = {"a": Polynomial.const(2), "b": Polynomial.var("x") * 3}
    assert ev("Pa(1)*Pb(1)", mode="volterra", decorations=["a", "b"], kernels=ks) == "3*x^3"
    assert ev("picard(1, 5, 20)", mode="volterra", decorations=["a"]) == "1/120*x^5 + 1/24*x^4 + 1/6*x^3 + 1/2*x^2 + x + 1"
    with pytest.raises(EvalError, match="need --zinbiel"):
        ev("x <:a 1", mode="volterra", decorations=["a"])
    assert ev("x <:a 1", mode="volterra", decorations=["a"], zinbiel=True) == "x^2"
    with pytest.raises(EvalError):
        ev("y", mode="volterra")


def test_lift_defaults_and_assignments():
    assert ev("lift(volterra, Pa(y*Pb(y)))", decorations=["a", "b"]) == "1/8*x^4"
    assert ev("lift(self, Pa(y))", decorations=["a"], assign={"y": "y + Pa(z)"}) == ev("Pa(y + Pa(z))", decorations=["a"])
    assert ev("lift(volterra, m <:a n)", mode="zinbiel", decorations=["a"], assign={"n": "x^2"}) == "1/3*x^4"
    assert ev("lift(volterra, x*y ⊗ (a:y))", mode="relative", decorations=["a"]) == "1/2*x^4"
    with pytest.raises(EvalError, match="another algebra"):
        ev("lift(volterra, Pa(y)) + y", decorations=["a"])
    with pytest.raises(EvalError):
        ev("lift(other, x)")


def test_shuffle_builtin_in_free_mode():
    assert ev("shuffle(x, y)", decorations=["a"]) == "x ⊗ (a:y) + y ⊗ (a:x)"
    with pytest.raises(EvalError):
        ev("shuffle(x, y)", decorations=["a", "b"])


def test_json_output():
    s = Session(SessionConfig(decorations=["a"]))
    out = s.to_json(s.evaluate("2*Pa(x)"))
    assert out["text"] == "2 ⊗ (a:x)"
    assert FreeElement.from_json(out["terms"]) == s.evaluate("2*Pa(x)")


def test_deterministic():
    texts = {ev("Pa(x)*Pb(y)*Pc(z) + Pb(x*Pa(y))", decorations=["a", "b", "c"]) for _ in range(3)}
    assert len(texts) == 1


def test_config_validation():
    with pytest.raises(EvalError):
        SessionConfig(mode="nope")
    with pytest.raises(EvalError):
        SessionConfig(kernels={"a": Polynomial.one()}, decorations=["a", "b"])
    with pytest.raises(ValueError):
        SessionConfig(decorations=["a", "a"])


def test_kernel_and_coefficient_parsing():
    assert kernel_polynomial("3*x^2 + 1") == Polynomial.var("x") ** 2 * 3 + 1
    assert kernel_polynomial(2) == Polynomial.const(2)
    assert kernel_polynomial([{"coeff": "1/2", "vars": {"x": 1}}]) == Polynomial.var("x") * Fraction(1, 2)
    with pytest.raises(Exception):
        kernel_polynomial("y")
    assert parse_coeffs("a=1, b=-1/2") == {"a": 1, "b": Fraction(-1, 2)}
    assert parse_coeffs(None) is None
    with pytest.raises(EvalError):
        parse_coeffs("a")
