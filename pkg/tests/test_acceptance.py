"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line with its wall time; the lines are printed
in the terminal summary of a pytest run and by ``python3 tests/test_acceptance.py``.
A criterion fails if its assertions fail or if it runs over its time limit.
"""
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations, product

from quadrics.alexander import ProductSpec, verify_disjointness, verify_dual_pairing, verify_offdiagonal
from quadrics.calculus import ConnSum, Gyr, NormalForm, NotReducible, Prod, Sphere, complement_decomposition, normalize, poincare, sphere_product
from quadrics.catalog import CUBE, EXAMPLE_NAMES, example_script
from quadrics.combinatorics import PolytopeDual, simplex_blocks, stellar_cut
from quadrics.engine import ConstructionScript, CutVertex, Explicit, Simplex, cross_validate, decompose_complex, decompose_real, run_script
from quadrics.gale import Configuration, combinatorics
from quadrics.grammar import to_string
from quadrics.homology import z_homology, zc_homology
from quadrics.rings import (
    catalog_ring,
    is_zero_product_triple,
    m_quotient_form,
    max_zero_product_subspace,
    not_isomorphic_ungraded,
    proposition_check,
)

RESULTS: dict[int, str] = {}

# concrete instances of every catalog entry (templates like simplex-d expanded)
SHIPPED = [n for n in EXAMPLE_NAMES if not n.endswith(("-d", "-n"))] + [
    "simplex-2", "simplex-3", "simplex-4", "dual-stack-1", "dual-stack-2", "dual-stack-3", "dual-stack-2-d4"]


@contextmanager
def criterion(number, title, limit=None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        over = limit is not None and dt >= limit
        status = "PASS" if ok and not over else "FAIL"
        note = f" (over {limit} s limit)" if ok and over else ""
        RESULTS[number] = f"criterion {number}: {status}  {title}  [{dt:.2f} s{note}]"
        if ok and over:
            raise AssertionError(RESULTS[number])


# ---- 1 ----------------------------------------------------------------------------

def test_criterion_1_cube_chain():
    with criterion(1, "cube: Z ranks (1,3,3,1), Z^C ranks of S3xS3xS3", limit=5):
        config, P = run_script(example_script("cube"))
        assert z_homology(P).ranks() == (1, 3, 3, 1)
        assert zc_homology(config).ranks() == poincare(sphere_product(3, 3, 3))


# ---- 2 ----------------------------------------------------------------------------

def test_criterion_2_truncated_cube_real():
    with criterion(2, "truncated cube real: T3#T3#7(S1xS2), PASS (1,13,13,1)", limit=5):
        s = example_script("truncated-cube")
        r = decompose_real(s)
        assert normalize(r.expr) == NormalForm(3, ((1, 1, 1), (1, 1, 1)) + ((1, 2),) * 7)
        cv = cross_validate(s, "real")
        assert cv.verdict == "PASS"
        assert cv.computed == (1, 13, 13, 1)


# ---- 3 ----------------------------------------------------------------------------

def test_criterion_3_truncated_cube_complex():
    with criterion(3, "truncated cube complex: G((S3)^3)#3(S3xS7)#3(S4xS6)#(S5xS5), PASS", limit=60):
        s = example_script("truncated-cube")
        r = decompose_complex(s)
        assert to_string(r.expr) == "G(S(3)*S(3)*S(3)) + 3(S(3)*S(7)) + 3(S(4)*S(6)) + S(5)*S(5)"
        cv = cross_validate(s, "complex")
        assert cv.verdict == "PASS"


# ---- 4 ----------------------------------------------------------------------------

def test_criterion_4_pentagon_two_ways():
    with criterion(4, "pentagon two ways: same 5-cycle, b1 = 10, complex #5(S3xS4)", limit=1):
        a = ConstructionScript(Simplex(2), (CutVertex(), CutVertex()))
        b = example_script("pentagon")
        cycles = []
        for s in (a, b):
            config, P = run_script(s)
            K = P.complex
            assert len(K.maximal_faces) == 5 and all(len(f) == 2 for f in K.maximal_faces)
            assert all(sum(v in f for f in K.maximal_faces) == 2 for v in range(1, 6))
            cycles.append(K.f_vector())
            real = decompose_real(s)
            assert poincare(real.expr)[1] == 10
            assert z_homology(P).ranks() == (1, 10, 1)
            cplx = decompose_complex(s)
            assert poincare(cplx.expr) == (1, 0, 0, 5, 5, 0, 0, 1)
            assert zc_homology(config).ranks() == (1, 0, 0, 5, 5, 0, 0, 1)
        assert cycles[0] == cycles[1]


# ---- 5 ----------------------------------------------------------------------------

def random_expr(rng, dim, depth):
    if depth == 0 or rng.random() < 0.25:
        return Sphere(dim)
    kind = rng.choice(["prod", "gyr", "sum"] if dim >= 2 else ["sum"])
    if kind == "prod":
        a = rng.randint(1, dim - 1)
        return Prod(random_expr(rng, a, depth - 1), random_expr(rng, dim - a, depth - 1))
    if kind == "gyr":
        return Gyr(random_expr(rng, dim - 1, depth - 1))
    return ConnSum(*(random_expr(rng, dim, depth - 1) for _ in range(rng.randint(2, 3))))


def test_criterion_5_fico_suite():
    with criterion(5, "Fico pair expansion 1<=p,q<=6; Poincare invariance on 1000 random expressions"):
        for p in range(1, 7):
            for q in range(1, 7):
                assert normalize(Gyr(sphere_product(p, q))) == NormalForm(p + q + 1, ((p + 1, q), (p, q + 1)))
        rng = random.Random(5)
        reducible = 0
        for _ in range(1000):
            e = random_expr(rng, rng.randint(1, 6), 5)
            nf = normalize(e)
            if isinstance(nf, NotReducible):
                continue
            reducible += 1
            assert poincare(nf) == poincare(e)
        assert reducible > 500


# ---- 6 ----------------------------------------------------------------------------

def test_criterion_6_prism():
    with criterion(6, "prism: S1xS2 and dual complex of triangle x interval"):
        s = ConstructionScript(Simplex(3), (CutVertex(),))
        assert normalize(decompose_real(s).expr) == NormalForm(3, ((1, 2),))
        config, P = run_script(s)
        blocks = simplex_blocks(combinatorics(config).complex)
        assert sorted(len(b) for b in blocks) == [2, 3]
        # the join of the boundaries of an edge and of a triangle
        two, three = sorted(blocks, key=len)
        expected = PolytopeDual.from_faces(5, 3, [(a,) + tuple(x for x in three if x != b)
                                                 for a in two for b in three])
        assert P == expected


# ---- 7 ----------------------------------------------------------------------------

def nonempty(k):
    return [J for r in range(1, k + 1) for J in combinations(range(1, k + 1), r)]


def test_criterion_7_appendix():
    with criterion(7, "dual spheres: all specs k<=4, n_i<=3, q<=4; complement 2(S5xS2)#(S4xS3)", limit=10):
        checked = 0
        for k in range(1, 5):
            subsets = nonempty(k)
            for n_list in product(range(0, 4), repeat=k):
                for q in range(0, 5):
                    if sum(n_list) + q + k - 1 < 1:
                        continue
                    s = ProductSpec(n_list, q)
                    for J in subsets:
                        assert verify_disjointness(s, J)["disjoint"]
                        if any(n_list[i - 1] == 0 for i in J):
                            continue
                        r = verify_dual_pairing(s, J)
                        assert r["unique_point"] and r["transversal"] and r["rank_sum"] == s.n
                        checked += 1
                    for J, L in combinations(subsets, 2):
                        if s.n_of(J) != s.n_of(L) or any(n_list[i - 1] == 0 for i in set(J) | set(L)):
                            continue
                        assert verify_offdiagonal(s, J, L)["disjoint"]
        assert checked > 0
        e = complement_decomposition((1, 1), 4)
        assert normalize(e) == NormalForm(7, ((5, 2), (5, 2), (4, 3)))


# ---- 8 ----------------------------------------------------------------------------

def test_criterion_8_rings():
    with criterion(8, "rings: X-core proposition, Y-core witness, 16 vs 17, NotIsomorphic", limit=30):
        assert proposition_check(m_quotient_form(catalog_ring("x-ring")))
        y = m_quotient_form(catalog_ring("y-ring"))
        assert not proposition_check(y)
        assert is_zero_product_triple(y, y.vector("A'[1]"), y.vector("A'[2]"), y.vector("A'[3]"))
        bx = max_zero_product_subspace(m_quotient_form(catalog_ring("z-cv-real")))
        by = max_zero_product_subspace(m_quotient_form(catalog_ring("z-cv-complex")))
        assert bx.exact and bx.lower == 16
        assert by.exact and by.lower == 17
        cmp = not_isomorphic_ungraded(catalog_ring("z-cv-real"), catalog_ring("z-cv-complex"))
        assert cmp.verdict == "NotIsomorphic"


# ---- 9 ----------------------------------------------------------------------------

def test_criterion_9_property_suites():
    with criterion(9, "palindromes, cube vertex-cut order independence, scaling invariance, 50 cut scripts"):
        for name in SHIPPED:
            P = run_script(example_script(name))[1]
            ranks = z_homology(P).ranks(P.d + 1)
            assert ranks == ranks[::-1], name
            if P.m <= 7:
                config = run_script(example_script(name))[0]
                cranks = zc_homology(config).ranks(P.d + P.m + 1)
                assert cranks == cranks[::-1], name

        forms = {normalize(decompose_real(ConstructionScript(Explicit(CUBE), (CutVertex(s),))).expr)
                 for s in combinatorics(CUBE).maximal_faces}
        assert len(forms) == 1

        rng = random.Random(9)
        for name in SHIPPED:
            config = run_script(example_script(name))[0]
            factors = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in config.vectors]
            scaled = Configuration(config.k, tuple(tuple(x * c for x in v) for v, c in zip(config.vectors, factors)))
            assert combinatorics(scaled) == combinatorics(config)

        rng = random.Random(20240501)
        for _ in range(50):
            s = ConstructionScript(Simplex(rng.choice([2, 3, 4])))
            P = run_script(s)[1]
            for _ in range(rng.randint(1, 3)):
                sigma = rng.choice(P.maximal_faces)
                expected = stellar_cut(P, sigma)
                s = s.then(CutVertex(sigma))
                P = run_script(s)[1]
                assert P == expected


def _summary():
    return [RESULTS[n] for n in sorted(RESULTS)]


if __name__ == "__main__":
    failed = False
    for name, fn in sorted((n, f) for n, f in globals().items() if n.startswith("test_criterion_")):
        try:
            fn()
        except Exception:
            failed = True
    print("\n".join(_summary()))
    sys.exit(1 if failed else 0)
