import pytest
from hypothesis import given, settings, strategies as st

from oracles import reduced_homology_ranks_and_torsion, z_betti_by_hochster
from quadrics.catalog import example_script
from quadrics.combinatorics import PolytopeDual, SimplicialComplex, cut_vertex
from quadrics.engine import run_script
from quadrics.errors import GroundSetTooLarge
from quadrics.homology import (
    GradedHomology,
    HomologyGroup,
    euler_from_faces,
    is_torsion_free,
    ledger_sum,
    ledger_to_json,
    reduced_betti_mod2,
    reduced_homology,
    z_homology,
    zc_homology,
)

# six-vertex projective plane
RP2 = SimplicialComplex.from_faces(6, [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
])


def dual(name):
    return run_script(example_script(name))[1]


def config(name):
    return run_script(example_script(name))[0]


def simplex_boundary(d):
    return PolytopeDual.from_faces(d + 1, d, [tuple(j for j in range(1, d + 2) if j != i) for i in range(1, d + 2)])


def all_faces(K):
    return set(K.faces()) | {()}


def test_homology_group_sum_merges_torsion():
    assert (HomologyGroup(1, (2,)) + HomologyGroup(0, (3,))).torsion == (6,)
    assert (HomologyGroup(0, (2,)) + HomologyGroup(0, (2,))).torsion == (2, 2)
    assert (HomologyGroup(0, (2, 4)) + HomologyGroup(0, (6,))).torsion == (2, 2, 12)
    with pytest.raises(ValueError):
        HomologyGroup(0, (2, 3))


def test_graded_trims_and_indexes():
    H = GradedHomology((HomologyGroup(1), HomologyGroup(), HomologyGroup()))
    assert H.groups == (HomologyGroup(1),)
    assert H[5].is_zero
    assert H.ranks(3) == (1, 0, 0)


def test_rp2_torsion_matches_oracle():
    H = reduced_homology(RP2)
    assert H[1] == HomologyGroup(0, (2,))
    assert H[2].is_zero and H[0].is_zero
    ref = reduced_homology_ranks_and_torsion(all_faces(RP2))
    assert [(H[i].rank, H[i].torsion) for i in range(3)] == [ref[i + 1] for i in range(3)]
    assert reduced_betti_mod2(RP2)[:3] == (0, 1, 1)


@pytest.mark.parametrize("name,expected", [
    ("square", (1, 2, 1)),
    ("cube", (1, 3, 3, 1)),
    ("truncated-cube", (1, 13, 13, 1)),
    ("pentagon", (1, 10, 1)),
    ("prism", (1, 1, 1, 1)),
    ("simplex-3", (1, 0, 0, 1)),
])
def test_z_homology_examples(name, expected):
    H = z_homology(dual(name))
    assert H.ranks() == expected
    assert is_torsion_free(H)


@pytest.mark.parametrize("name", ["square", "cube", "pentagon", "prism", "dual-stack-2", "truncated-cube"])
def test_z_homology_matches_unpruned_splitting(name):
    P = dual(name)
    assert z_homology(P).ranks() == z_betti_by_hochster(P.maximal_faces, P.m)


@pytest.mark.parametrize("name,expected", [
    ("square", (1, 0, 0, 2, 0, 0, 1)),
    ("cube", (1, 0, 0, 3, 0, 0, 3, 0, 0, 1)),
    ("pentagon", (1, 0, 0, 5, 5, 0, 0, 1)),
])
def test_zc_homology_examples(name, expected):
    assert zc_homology(config(name)).ranks() == expected


def test_zc_truncated_cube():
    H = zc_homology(config("truncated-cube"))
    assert H.ranks() == (1, 0, 0, 6, 6, 2, 6, 6, 0, 0, 1)
    assert is_torsion_free(H)


def test_ledger():
    H = z_homology(dual("square"), keep_ledger=True)
    Js = [J for J, _ in H.ledger]
    assert Js == [(1, 2), (1, 2, 3, 4), (3, 4)]
    assert ledger_sum(H, 2) == GradedHomology(H.groups)
    js = ledger_to_json(H)
    assert js[0] == {"J": [1, 2], "contributes": {"1": {"rank": 1, "torsion": []}}}


def test_cap():
    with pytest.raises(GroundSetTooLarge):
        z_homology(dual("cube"), cap=5)


@pytest.mark.parametrize("name", ["square", "cube", "truncated-cube", "pentagon", "prism", "dual-stack-3"])
def test_euler_characteristic_from_faces(name):
    P = dual(name)
    assert z_homology(P).euler_characteristic() == euler_from_faces(P)


@pytest.mark.parametrize("name", ["square", "cube", "truncated-cube", "pentagon", "prism",
                                  "simplex-4", "dual-stack-3", "dual-stack-2-d4"])
def test_poincare_duality_palindrome(name):
    P = dual(name)
    ranks = z_homology(P).ranks(P.d + 1)
    assert ranks == ranks[::-1]


@settings(max_examples=25)
@given(st.lists(st.integers(0, 20), min_size=1, max_size=3), st.integers(3, 4))
def test_random_stacks_palindromic_and_euler(choices, d):
    P = simplex_boundary(d)
    for c in choices:
        P = cut_vertex(P, P.maximal_faces[c % len(P.maximal_faces)])
    H = z_homology(P)
    ranks = H.ranks(P.d + 1)
    assert ranks == ranks[::-1]
    assert H.euler_characteristic() == euler_from_faces(P)
    assert is_torsion_free(H)
