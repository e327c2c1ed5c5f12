from itertools import combinations, product

import pytest
import sympy
from hypothesis import given, strategies as st

from quadrics.alexander import (
    ProductSpec,
    dual_sphere_dims,
    integer_det,
    integer_rank,
    verify_disjointness,
    verify_dual_pairing,
    verify_offdiagonal,
)
from quadrics.errors import QuadricsError


def nonempty_subsets(k):
    return [J for r in range(1, k + 1) for J in combinations(range(1, k + 1), r)]


def test_spec_parse_and_dimension():
    s = ProductSpec.parse("1,1,2:3")
    assert (s.n_list, s.q, s.k, s.n) == ((1, 1, 2), 3, 3, 9)
    with pytest.raises(QuadricsError):
        ProductSpec.parse("1,1")
    with pytest.raises(QuadricsError):
        ProductSpec((), 2)


def test_dual_sphere_dims():
    s = ProductSpec((1, 2, 3), 1)
    # S_J has dimension n - n_J - 1, so dim S_J + dim P_J = n - 1
    for J in nonempty_subsets(3):
        dim, codim = dual_sphere_dims(s, J)
        assert dim + s.n_of(J) == s.n - 1
        assert codim == s.n_of(J) + 1


def test_disjointness_details():
    r = verify_disjointness(ProductSpec((1, 1, 1), 0), (1, 2, 3))
    assert r["patterns_checked"] == 8
    assert r["sum_values"] == [-3, -1, 1, 3]
    assert r["target"] == 2 and r["disjoint"]


@pytest.mark.parametrize("size", range(1, 9))
def test_sum_parity_rules_out_the_target(size):
    # sums of size signs have the parity of size, the target size - 1 does not
    assert verify_disjointness(ProductSpec((1,) * size, 0), range(1, size + 1))["disjoint"]


def test_pairing_on_torus():
    s = ProductSpec((1, 1), 0)
    r = verify_dual_pairing(s, (1,))
    assert r["unique_point"] and r["transversal"]
    assert (r["rank_tangent_P_J"], r["rank_tangent_D_J"], r["rank_sum"]) == (1, 2, 3)
    assert r["linking_sign"] in (1, -1)


def test_pairing_rejects_zero_dimensional_factor():
    with pytest.raises(QuadricsError):
        verify_dual_pairing(ProductSpec((0, 1), 1), (1,))


def test_offdiagonal():
    s = ProductSpec((1, 1, 2), 1)
    r = verify_offdiagonal(s, (1,), (2,))
    assert r["disjoint"] and r["witness"] == 1
    with pytest.raises(QuadricsError):
        verify_offdiagonal(s, (1,), (3,))
    with pytest.raises(QuadricsError):
        verify_offdiagonal(s, (1,), (1,))


def test_all_small_specs():
    for k in range(1, 4):
        for n_list in product(range(1, 3), repeat=k):
            for q in range(3):
                s = ProductSpec(n_list, q)
                for J in nonempty_subsets(k):
                    assert verify_disjointness(s, J)["disjoint"]
                    r = verify_dual_pairing(s, J)
                    assert r["unique_point"] and r["transversal"] and r["rank_sum"] == s.n


small = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


@given(small)
def test_integer_rank_matches_sympy(rows):
    assert integer_rank(rows) == sympy.Matrix(rows).rank()


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_integer_det_matches_sympy(rows):
    assert integer_det(rows) == sympy.Matrix(rows).det()
