import pytest
from hypothesis import given, settings, strategies as st

from simpcx.complex import glue_triangle, stats, validate
from simpcx.constructions import minimal_rp2, minimal_torus, moebius_strip
from simpcx.errors import TooLarge
from simpcx.homology import (IntMatrix, boundary_matrix, gcd_of_minors_oracle, homology_summary,
                             in_boundary_image, kappa_lower_torsion, smith_normal_form)
from simpcx.metric import cycle_chain

from test_complex import complexes

small_ints = st.integers(-5, 5)
matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


class TestBoundary:
    def test_single_triangle(self):
        D = boundary_matrix(validate({"vertex_count": 3, "triangles": [[0, 1, 2]]}), 2)
        assert (D.rows, D.cols) == (3, 1)
        assert D.column(0) == (1, -1, 1)

    def test_rp2_shape(self):
        D = boundary_matrix(minimal_rp2().complex, 2)
        assert (D.rows, D.cols) == (15, 10)
        for j in range(D.cols):
            col = D.column(j)
            assert sum(1 for x in col if x) == 3 and set(col) <= {-1, 0, 1}

    @pytest.mark.parametrize("build", [minimal_rp2, minimal_torus, moebius_strip])
    def test_chain_complex(self, build):
        X = build().complex
        prod = boundary_matrix(X, 1).matmul(boundary_matrix(X, 2))
        assert prod == IntMatrix.zeros(X.s0, X.s2)

    def test_bad_degree(self):
        with pytest.raises(ValueError):
            boundary_matrix(minimal_rp2().complex, 3)


class TestSmithNormalForm:
    def test_diagonal(self):
        assert smith_normal_form([[2, 0], [0, 3]]).invariant_factors == (1, 6)

    def test_zero(self):
        snf = smith_normal_form(IntMatrix.zeros(3, 4))
        assert snf.invariant_factors == () and snf.rank == 0

    def test_chain_needs_fixing(self):
        assert smith_normal_form([[4, 0], [0, 6]]).invariant_factors == (2, 12)

    def test_big_entries(self):
        big = 10**40 + 7
        assert smith_normal_form([[big, 0], [0, big * 3]]).invariant_factors == (big, 3 * big)

    @settings(max_examples=200)
    @given(matrices)
    def test_matches_minors(self, M):
        d = smith_normal_form(M).invariant_factors
        for a, b in zip(d, d[1:]):
            assert b % a == 0
        prod = 1
        for k in range(1, min(len(M), len(M[0])) + 1):
            prod = prod * d[k - 1] if k <= len(d) else 0
            assert gcd_of_minors_oracle(M, k) == prod

    @given(matrices)
    def test_transpose_invariant(self, M):
        A = IntMatrix.from_rows(M)
        assert smith_normal_form(A) == smith_normal_form(A.transpose())


class TestOracle:
    def test_diagonal(self):
        assert gcd_of_minors_oracle([[2, 0], [0, 3]], 2) == 6
        assert gcd_of_minors_oracle([[2, 0], [0, 3]], 1) == 1

    def test_rp2_top_minor(self):
        D = boundary_matrix(minimal_rp2().complex, 2)
        r = smith_normal_form(D).rank
        assert gcd_of_minors_oracle(D, r) == 2 * gcd_of_minors_oracle(D, r - 1)

    def test_guard(self):
        with pytest.raises(TooLarge):
            gcd_of_minors_oracle([[1] * 40] * 40, 20)

    def test_order_range(self):
        with pytest.raises(ValueError):
            gcd_of_minors_oracle([[1, 2]], 2)


class TestHomology:
    def test_rp2(self):
        h = homology_summary(minimal_rp2().complex)
        assert h.betti == (1, 0, 0) and h.h1_torsion_factors == (2,) and h.torsion_order == 2

    def test_torus(self):
        h = homology_summary(minimal_torus().complex)
        assert h.betti == (1, 2, 1) and h.torsion_order == 1

    def test_rp2_free_product(self):
        X = minimal_rp2().complex
        h = homology_summary(glue_triangle(X, X.triangles[0], X, X.triangles[0]))
        assert h.betti == (1, 0, 0) and h.h1_torsion_factors == (2, 2)

    def test_points_and_edges(self):
        h = homology_summary(validate({"vertex_count": 4, "extra_edges": [[0, 1], [1, 2], [0, 2]]}))
        assert h.betti == (2, 1, 0)

    @given(complexes())
    def test_euler_poincare(self, X):
        h = homology_summary(X)
        assert h.betti[0] - h.betti[1] + h.betti[2] == stats(X).euler
        assert h.betti[2] <= X.s2

    @settings(max_examples=40)
    @given(complexes(), st.randoms(use_true_random=False))
    def test_relabel_invariant(self, X, rng):
        perm = list(range(X.s0))
        rng.shuffle(perm)
        assert homology_summary(X.relabel(perm)) == homology_summary(X)


class TestTorsionBound:
    @pytest.mark.parametrize("t, k", [(1, 0), (2, 2), (3, 2), (4, 3), (9, 4), (3**5, 10),
                                      (3**5 + 1, 11)])
    def test_values(self, t, k):
        assert kappa_lower_torsion(t) == k

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            kappa_lower_torsion(0)


def test_boundary_image_membership():
    M = moebius_strip()
    X = M.complex
    core = cycle_chain(X, M.marked_loops["gamma"])
    rim = cycle_chain(X, M.marked_loops["boundary"])
    assert not in_boundary_image(X, core)
    assert in_boundary_image(X, [r - 2 * c for r, c in zip(rim, core)])
    assert in_boundary_image(X, [0] * X.s1)
