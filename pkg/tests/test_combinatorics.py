import pytest
from hypothesis import given, strategies as st

from quadrics.combinatorics import (
    PolytopeDual,
    SimplicialComplex,
    connectivity_of_Z,
    cut_edge,
    cut_vertex,
    from_mask,
    full_subcomplex,
    index_set,
    is_dual_c_neighborly,
    replicate_complex,
    simplex_blocks,
    stellar_cut,
    submasks,
    to_mask,
    validate,
)
from quadrics.errors import InvalidFace, QuadricsError
from quadrics.gale import Configuration, combinatorics, replicate

OCTAHEDRON = PolytopeDual.from_faces(6, 3, [(a, b, c) for a in (1, 2) for b in (3, 4) for c in (5, 6)])
SQUARE = PolytopeDual.from_faces(4, 2, [(1, 3), (1, 4), (2, 3), (2, 4)])


def simplex_boundary(d):
    return PolytopeDual.from_faces(d + 1, d, [tuple(j for j in range(1, d + 2) if j != i) for i in range(1, d + 2)])


def test_masks_roundtrip():
    assert to_mask((1, 3)) == 0b101
    assert from_mask(0b101) == (1, 3)
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]


def test_index_set_validation():
    assert index_set([3, 1]) == (1, 3)
    assert index_set([1, 1]) == (1,)
    with pytest.raises(QuadricsError):
        index_set([0], m=4)
    with pytest.raises(QuadricsError):
        index_set([5], m=4)


def test_f_vector_and_minimal_nonfaces():
    K = OCTAHEDRON.complex
    assert K.f_vector() == [6, 12, 8]
    assert K.minimal_nonfaces() == [(1, 2), (3, 4), (5, 6)]
    assert simplex_blocks(K) == [(1, 2), (3, 4), (5, 6)]


def test_link_and_full_subcomplex():
    K = OCTAHEDRON.complex
    assert K.link((1,)).maximal_faces == ((3, 5), (3, 6), (4, 5), (4, 6))
    assert full_subcomplex(K, (1, 2, 3)).maximal_faces == ((1, 3), (2, 3))


def test_simplex_boundary_neighborliness():
    P = simplex_boundary(3)
    assert connectivity_of_Z(P) == 3
    assert is_dual_c_neighborly(P, 3)


def test_square_connectivity():
    assert connectivity_of_Z(SQUARE) == 1
    assert not is_dual_c_neighborly(SQUARE, 2)


def test_validate_reports_problems():
    assert validate(OCTAHEDRON).ok
    bad = PolytopeDual(SimplicialComplex(5, ((1, 2), (1, 2, 3))), 2)
    v = validate(bad).violations
    assert "not an antichain" in v
    assert any("facet 4 empty" in x for x in v)
    assert any("not pure" in x for x in v)


def test_vertex_cut_of_octahedron():
    Q = cut_vertex(OCTAHEDRON, (1, 3, 5))
    assert Q.m == 7 and len(Q.maximal_faces) == 10
    assert validate(Q).ok


def test_edge_cut_of_octahedron():
    Q = cut_edge(OCTAHEDRON, (1, 3))
    assert Q.m == 7 and len(Q.maximal_faces) == 10
    assert Q != cut_vertex(OCTAHEDRON, (1, 3, 5))


def test_cut_errors():
    with pytest.raises(InvalidFace):
        cut_vertex(OCTAHEDRON, (1, 3))
    with pytest.raises(InvalidFace):
        cut_edge(OCTAHEDRON, (1, 2))
    with pytest.raises(InvalidFace):
        stellar_cut(OCTAHEDRON, (1,))


def test_prism_is_product_of_simplices():
    Q = cut_vertex(simplex_boundary(3), (1, 2, 3))
    assert simplex_blocks(Q.complex) is not None
    assert sorted(len(b) for b in simplex_blocks(Q.complex)) == [2, 3]


def test_replicate_complex_matches_configuration_route():
    config = Configuration.of([[1], [1], [-1], [-1]])
    for J in ([2, 1, 1, 1], [2, 2, 2, 2], [1, 3, 1, 2]):
        assert replicate_complex(combinatorics(config), J) == combinatorics(replicate(config, J))


@given(st.lists(st.integers(0, 9), min_size=1, max_size=4))
def test_random_cut_sequences_stay_valid(choices):
    P = simplex_boundary(3)
    for c in choices:
        P = cut_vertex(P, P.maximal_faces[c % len(P.maximal_faces)])
        rep = validate(P)
        assert rep.ok, rep.violations
    # every vertex cut adds one facet and d - 1 maximal faces
    assert len(P.maximal_faces) == 4 + 2 * len(choices)
