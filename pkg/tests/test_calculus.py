import random

import pytest
from hypothesis import given, strategies as st

from oracles import poincare_of_normal_form
from quadrics.calculus import (
    DOUBLE,
    OPEN_BOOK,
    ConnSum,
    Gyr,
    NormalForm,
    NotReducible,
    Prod,
    Sphere,
    complement_decomposition,
    double_punctured,
    normalize,
    open_book_punctured,
    poincare,
    repeat,
    sphere_product,
)
from quadrics.errors import DimensionMismatch, ParseError, QuadricsError
from quadrics.grammar import parse, to_string
from quadrics.rewrite import expand, read_off, redexes, rewrite

T3 = sphere_product(1, 1, 1)


# ---- construction and normal forms ---------------------------------------------

def test_dimension_invariant():
    with pytest.raises(DimensionMismatch):
        ConnSum(Sphere(1), Sphere(2))
    with pytest.raises(QuadricsError):
        Sphere(0)
    with pytest.raises(QuadricsError):
        Prod(Sphere(1))


def test_normalize_examples():
    assert normalize(Gyr(Sphere(3))) == NormalForm(4)
    assert normalize(Gyr(sphere_product(1, 1))) == NormalForm(3, ((1, 2), (1, 2)))
    assert normalize(ConnSum(Sphere(3), sphere_product(1, 2))) == NormalForm(3, ((1, 2),))
    assert normalize(Prod(Prod(Sphere(1), Sphere(1)), Sphere(1))) == NormalForm(3, ((1, 1, 1),))


def test_normalize_blocked_cases():
    assert normalize(Gyr(T3)) == NotReducible("gyration of triple product")
    r = normalize(Prod(ConnSum(T3, T3), Sphere(1)))
    assert isinstance(r, NotReducible) and "connected sum" in r.reason
    assert normalize(Gyr(Gyr(T3))).reason.startswith("gyration over irreducible child")


@pytest.mark.parametrize("p", range(1, 7))
@pytest.mark.parametrize("q", range(1, 7))
def test_fico_pair_expansion(p, q):
    assert normalize(Gyr(sphere_product(p, q))) == NormalForm(p + q + 1, ((p + 1, q), (p, q + 1)))


def test_gyration_distributes():
    e = Gyr(ConnSum(sphere_product(1, 2), sphere_product(1, 2)))
    assert normalize(e) == normalize(ConnSum(Gyr(sphere_product(1, 2)), Gyr(sphere_product(1, 2))))


def test_normal_form_text():
    nf = NormalForm(3, ((1, 2), (1, 1, 1), (1, 2)))
    assert str(nf) == "S(1)*S(1)*S(1) + 2(S(1)*S(2))"
    assert nf.multiplicities() == [((1, 1, 1), 1), ((1, 2), 2)]
    assert str(NormalForm(4)) == "S(4)"
    with pytest.raises(QuadricsError):
        NormalForm(3, ((1, 1),))


# ---- Poincare polynomials ---------------------------------------------------------

def test_poincare_examples():
    assert poincare(T3) == (1, 3, 3, 1)
    assert poincare(Gyr(T3)) == (1, 3, 6, 3, 1)  # (1+t)(1+3t+3t^2) - t + t^4
    assert poincare(Gyr(sphere_product(3, 3, 3))) == (1, 0, 0, 3, 3, 0, 3, 3, 0, 0, 1)
    assert poincare(ConnSum(T3, T3)) == (1, 6, 6, 1)


def exprs(dim, depth):
    """Dimension-consistent random expressions."""
    leaf = st.just(Sphere(dim))
    if depth == 0:
        return leaf
    options = [leaf]
    if dim >= 2:
        options.append(st.integers(1, dim - 1).flatmap(
            lambda a: st.tuples(exprs(a, depth - 1), exprs(dim - a, depth - 1)).map(lambda t: Prod(*t))))
        options.append(exprs(dim - 1, depth - 1).map(Gyr))
    options.append(st.lists(exprs(dim, depth - 1), min_size=2, max_size=3).map(lambda cs: ConnSum(*cs)))
    return st.one_of(*options)


random_exprs = st.integers(1, 6).flatmap(lambda d: exprs(d, 5))


@given(random_exprs)
def test_poincare_invariant_under_normalize(e):
    nf = normalize(e)
    if isinstance(nf, NotReducible):
        return
    assert poincare(nf) == poincare(e)
    assert poincare(nf) == poincare_of_normal_form(nf.dim, nf.summands)


@given(random_exprs, st.integers(0, 2 ** 32 - 1))
def test_rewriting_is_confluent(e, seed):
    nf = normalize(e)
    out = rewrite(e, random.Random(seed))
    assert not list(redexes(out))
    got = read_off(out)
    if isinstance(nf, NotReducible):
        assert isinstance(got, NotReducible)
    else:
        assert got == nf


def test_expand_order():
    assert to_string(expand(parse("G(S(1)*S(1))"))) == "S(2)*S(1) + S(1)*S(2)"


# ---- grammar --------------------------------------------------------------------

@pytest.mark.parametrize("text", [
    "S(3)",
    "S(1)*S(2)",
    "G(S(1)*S(1)) + S(1)*S(2)",
    "S(1)*S(1)*S(1) + S(1)*S(1)*S(1) + 7(S(1)*S(2))",
    "G(S(3)*S(3)*S(3)) + 3(S(3)*S(7)) + 3(S(4)*S(6)) + S(5)*S(5)",
])
def test_parse_roundtrip(text):
    assert to_string(parse(text)) == text


def test_multiplicity_sugar():
    assert parse("2(S(1)*S(2))") == ConnSum(sphere_product(1, 2), sphere_product(1, 2))
    assert parse("S(3) + 2(S(1)*S(2))") == ConnSum(Sphere(3), repeat(sphere_product(1, 2), 2))


@pytest.mark.parametrize("text,pos", [("S(", 2), ("S(1)*", 5), ("X(1)", 0), ("S(1) S(2)", 5)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.position == pos


def test_parse_dimension_error():
    with pytest.raises(DimensionMismatch):
        parse("S(1)+S(2)")


@given(random_exprs)
def test_to_string_parse_roundtrip(e):
    assert parse(to_string(e)) == e


# ---- punctured constructions ------------------------------------------------------

def test_double_punctured():
    assert normalize(double_punctured(Sphere(3), 1)) == NormalForm(3)
    assert normalize(double_punctured(Sphere(3), 2)) == NormalForm(3, ((1, 2),))
    e = double_punctured(T3, 8)
    assert to_string(e) == "S(1)*S(1)*S(1) + S(1)*S(1)*S(1) + 7(S(1)*S(2))"


def test_open_book_punctured():
    assert normalize(open_book_punctured(Sphere(3), 1)) == NormalForm(4)
    e = open_book_punctured(sphere_product(1, 2), 2)
    assert e.dim == 4
    assert normalize(e) == NormalForm(4, ((2, 2), (1, 3), (2, 2)))


def test_complement_decomposition():
    e = complement_decomposition((1, 1), 4)
    assert normalize(e) == NormalForm(7, ((5, 2), (5, 2), (4, 3)))
    assert normalize(complement_decomposition((2,), 3)) == NormalForm(5, ((2, 3),))
    with pytest.raises(QuadricsError):
        complement_decomposition((1, 1), 1)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.integers(0, 4))
def test_double_and_open_book_differ_by_one(n_list, q):
    if q + len(n_list) < 4:
        return
    a = complement_decomposition(n_list, q, DOUBLE)
    b = complement_decomposition(n_list, q, OPEN_BOOK)
    sa = a.children if isinstance(a, ConnSum) else (a,)
    sb = b.children if isinstance(b, ConnSum) else (b,)
    assert len(sa) == len(sb)
    for x, y in zip(sa, sb):
        assert x.children[0] == y.children[0]
        assert y.children[1].n == x.children[1].n + 1
