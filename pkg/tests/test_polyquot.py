from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crepant_kit.polyquot import (
    CompletionError, InfiniteQuotientError, PolyRing, PresentationError, buchberger, certify_confluence,
    grlex_less, load_presentation, normal_form, parse_presentation, standard_monomials, structure_constants,
)
from crepant_kit.verifier import CR_BASIS, F3_BASIS, Z_BASIS


@pytest.fixture(scope="module")
def systems():
    return {key: buchberger(load_presentation(key)) for key in ("cr", "z", "f3")}


def fmt(rs, monos):
    return [rs.ring.format_monomial(m) for m in monos]


def test_monomial_order():
    R = PolyRing(["E1", "E2", "E3", "E4", "H"], [2] * 5)
    m = R.parse_monomial
    assert grlex_less(m("H"), m("H^2"), R)
    assert grlex_less(m("E1*E3"), m("E1*E2"), R)
    assert not grlex_less(m("E1*E2"), m("E1*E3"), R)
    assert not grlex_less(m("E4"), m("E4"), R)
    # reverse-lex: a factor of the last variable makes a monomial smaller
    assert grlex_less(m("H*E1"), m("E2^2"), R)


def test_shipped_presentations():
    cr, z, f3 = (load_presentation(k) for k in ("cr", "z", "f3"))
    assert len(cr.generators) == 5 and len(cr.relations) == 14
    assert len(z.generators) == 5 and len(z.relations) == 14
    assert len(f3.relations) == 2
    assert cr.integral_value == Fraction(1, 48) and z.integral_value == Fraction(1, 48)
    assert f3.integral_value == 1
    assert cr.top_degree == z.top_degree == f3.top_degree == 6


def test_completion_finds_consequence_rules(systems):
    cr_lms = set(fmt(systems["cr"], systems["cr"].leading_monomials))
    assert {"H*E4", "E1^2", "E4^3", "H^4"} <= cr_lms
    z_lms = set(fmt(systems["z"], systems["z"].leading_monomials))
    assert {"h*e4", "e4^3", "h^4"} <= z_lms
    f3_lms = set(fmt(systems["f3"], systems["f3"].leading_monomials))
    assert {"p1^3", "p2^2"} <= f3_lms


def test_normal_forms(systems):
    cr, z, f3 = systems["cr"], systems["z"], systems["f3"]
    assert normal_form(cr.ring.parse("E1*E3"), cr) == cr.ring.parse("3*H^2")
    assert normal_form(cr.ring.parse("E3*E3"), cr) == cr.ring.parse("H*E2")
    assert normal_form(z.ring.parse("e4^3"), z) == z.ring.parse("432*h^3")
    assert normal_form(z.ring.parse("h^4"), z) == z.ring.zero()
    assert normal_form(f3.ring.parse("p2^2"), f3) == f3.ring.parse("3*p1*p2")


@pytest.mark.parametrize("key,basis", [("cr", CR_BASIS), ("z", Z_BASIS), ("f3", F3_BASIS)])
def test_standard_monomials(systems, key, basis):
    rs = systems[key]
    std = fmt(rs, standard_monomials(rs))
    assert sorted(std) == sorted(basis)
    ok, checked, witness = certify_confluence(rs)
    assert ok and checked > 0 and witness is None


def test_structure_constants(systems):
    A = structure_constants(systems["cr"], [systems["cr"].ring.parse_monomial(m) for m in CR_BASIS])
    assert A.product(A.index("E1"), A.index("E1")) == A.vector({"H*E2": 3})
    assert A.integral[A.index("H^3")] == Fraction(1, 48)
    Z = structure_constants(systems["z"], [systems["z"].ring.parse_monomial(m) for m in Z_BASIS])
    assert Z.product(Z.index("e4"), Z.index("e4^2")) == Z.vector({"h^3": 432})
    F = structure_constants(systems["f3"])
    assert F.product(F.index("p2"), F.index("p2")) == F.vector({"p1*p2": 3})
    with pytest.raises(ValueError):
        structure_constants(systems["f3"], [systems["f3"].ring.parse_monomial("p1")])


def test_parse_errors():
    with pytest.raises(PresentationError) as err:
        parse_presentation("ring t\nvar x:2\nrel x*\nintegral x = 1")
    assert err.value.lineno == 3
    for text in ("var x:2\nrel x^2\nintegral x = 1", "ring t\nvar x:2\nrel y^2\nintegral x = 1",
                 "ring t\nvar x:2\nrel x^2\n", "ring t\nvar x:0\nintegral x = 1"):
        with pytest.raises(PresentationError):
            parse_presentation(text)


def test_completion_guards():
    with pytest.raises(PresentationError):
        parse_presentation("ring t\nvar x:2 y:2\nrel x^2 - y\nintegral x = 1")
    with pytest.raises(CompletionError):
        buchberger(load_presentation("f3"), degree_cap=6)
    p = parse_presentation("ring t\nvar x:2 y:2\nrel x^2\nintegral x = 1")
    with pytest.raises(InfiniteQuotientError):
        standard_monomials(buchberger(p))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.lists(st.integers(0, 3), min_size=5, max_size=5)),
                min_size=1, max_size=4))
def test_normal_form_idempotent_and_additive(systems, terms):
    rs = systems["cr"]
    R = rs.ring
    f = R.zero()
    for c, exps in terms:
        f = f + R.monomial(tuple(exps), c)
    nf = normal_form(f, rs)
    assert normal_form(nf, rs) == nf
    lms = rs.leading_monomials
    assert all(not any(all(a >= b for a, b in zip(m, lm)) for lm in lms) for m in nf.terms)
    g = R.parse("E1*E2 - H^2")
    assert normal_form(f + g, rs) == nf + normal_form(g, rs)
