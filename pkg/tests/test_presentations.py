import pytest
from hypothesis import given, settings, strategies as st

from simpcx.complex import validate
from simpcx.constructions import minimal_rp2, minimal_torus, moebius_telescope
from simpcx.errors import BadLengthTwoRelator, Disconnected, UnreducedRelator
from simpcx.homology import homology_summary
from simpcx.presentations import (Presentation, abelianization, complex_to_presentation,
                                  cyclic_reduce, format_presentation, free_reduce,
                                  parse_presentation, presentation_stats, presentation_to_complex,
                                  tietze_simplify, triangularize)

KLEIN = Presentation(2, [(1, 2, 1, -2)])


def words(n, max_len=7):
    letters = st.sampled_from([x for g in range(1, n + 1) for x in (g, -g)])
    return st.lists(letters, min_size=1, max_size=max_len).map(tuple)


presentations = st.integers(1, 3).flatmap(
    lambda n: st.lists(words(n), max_size=3).map(lambda rs: Presentation(n, rs)))


def compilable(P):
    return Presentation(P.generator_count,
                        [w for w in (cyclic_reduce(r) for r in P.relators)
                         if len(w) >= 3 or (len(w) == 2 and w[0] == w[1])])


class TestPresentation:
    def test_drops_empty(self):
        assert Presentation(1, [(), (1, 1)]).relators == ((1, 1),)

    @pytest.mark.parametrize("bad", [[(0,)], [(2,)], [(-3, 1)]])
    def test_letter_range(self, bad):
        with pytest.raises(ValueError):
            Presentation(1, bad)

    @pytest.mark.parametrize("P, length, t", [
        (Presentation(1, [(1, 1)]), 2, 0),
        (Presentation(1, [(1,) * 7]), 7, 5),
        (Presentation(2, [(1, 2, -1, -2)]), 4, 2),
    ])
    def test_stats(self, P, length, t):
        s = presentation_stats(P)
        assert (s.length, s.c_upper, s.t_upper) == (length, length, t)


class TestWords:
    def test_free_reduce(self):
        assert free_reduce((1, 2, -2, -1, 3)) == (3,)

    def test_cyclic_reduce(self):
        assert cyclic_reduce((-1, 2, 3, 1)) == (2, 3)
        assert cyclic_reduce((1, -1)) == ()


class TestTriangularize:
    @pytest.mark.parametrize("r", [(1, 1, 1), (1, 1)])
    def test_short_unchanged(self, r):
        P = Presentation(1, [r])
        assert triangularize(P) == P

    def test_a4(self):
        T = triangularize(Presentation(1, [(1,) * 4]))
        assert T.generator_count == 2
        assert sum(len(r) == 3 for r in T.relators) == 2 == presentation_stats(
            Presentation(1, [(1,) * 4])).t_upper
        assert abelianization(T).torsion == (4,)

    @given(presentations)
    def test_properties(self, P):
        T = triangularize(P)
        assert all(len(r) <= 3 for r in T.relators)
        assert sum(len(r) == 3 for r in T.relators) <= presentation_stats(P).t_upper
        assert abelianization(T) == abelianization(P)


class TestCompile:
    def test_square(self):
        X = presentation_to_complex(Presentation(1, [(1, 1)])).complex
        assert X.s2 == 10 and homology_summary(X).h1_torsion_factors == (2,)

    def test_cube(self):
        X = presentation_to_complex(Presentation(1, [(1, 1, 1)])).complex
        assert X.s2 == 17 and homology_summary(X).h1_torsion_factors == (3,)

    def test_klein(self):
        X = presentation_to_complex(KLEIN).complex
        h = homology_summary(X)
        assert X.s2 <= 22
        assert h.betti[1] == 1 and h.h1_torsion_factors == (2,)

    def test_free_group(self):
        M = presentation_to_complex(Presentation(3))
        assert M.s2 == 0 and homology_summary(M.complex).betti == (1, 3, 0)
        assert set(M.marked_loops) == {"a1", "a2", "a3"}

    def test_length_one(self):
        with pytest.raises(UnreducedRelator):
            presentation_to_complex(Presentation(1, [(1,)]))

    def test_not_reduced(self):
        with pytest.raises(UnreducedRelator):
            presentation_to_complex(Presentation(2, [(1, 2, -2, 1)]))

    def test_bad_square(self):
        with pytest.raises(BadLengthTwoRelator):
            presentation_to_complex(Presentation(2, [(1, 2)]))

    @settings(max_examples=40, deadline=None)
    @given(presentations)
    def test_count_and_homology(self, P):
        P = compilable(P)
        X = presentation_to_complex(P).complex
        assert validate(X) == X
        assert X.s2 <= 6 * P.length - len(P.relators)
        h = homology_summary(X)
        ab = abelianization(P)
        assert (h.betti[1], h.h1_torsion_factors) == (ab.rank, ab.torsion)


class TestExtract:
    def test_single_triangle(self):
        P = complex_to_presentation(validate({"vertex_count": 3, "triangles": [[0, 1, 2]]}))
        assert tietze_simplify(P) == Presentation(0)

    def test_torus(self):
        ab = abelianization(complex_to_presentation(minimal_torus().complex))
        assert (ab.rank, ab.torsion) == (2, ())

    def test_rp2(self):
        P = complex_to_presentation(minimal_rp2().complex)
        S = tietze_simplify(P)
        assert abelianization(P).torsion == (2,) == abelianization(S).torsion
        assert S.length < P.length
        assert S == Presentation(1, [(1, 1)])

    def test_length_contract(self):
        for M in (minimal_rp2(), minimal_torus(), moebius_telescope(3)):
            assert complex_to_presentation(M.complex).length <= 3 * M.s2

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            complex_to_presentation(validate({"vertex_count": 6, "triangles": [[0, 1, 2], [3, 4, 5]]}))


class TestTietze:
    def test_kill_generator(self):
        assert tietze_simplify(Presentation(2, [(2,), (1, 1)])) == Presentation(1, [(1, 1)])

    def test_free_reduction(self):
        assert tietze_simplify(Presentation(1, [(1, -1)])) == Presentation(1)

    def test_duplicates(self):
        assert tietze_simplify(Presentation(1, [(1, 1, 1), (1, 1, 1), (-1, -1, -1)])) == \
            Presentation(1, [(1, 1, 1)])

    def test_length_two_substitution(self):
        S = tietze_simplify(Presentation(2, [(1, 2), (1, 1, 1)]))
        assert S.generator_count == 1 and abelianization(S).torsion == (3,)

    @settings(max_examples=150)
    @given(presentations)
    def test_never_longer_and_same_abelianization(self, P):
        S = tietze_simplify(P)
        assert S.length <= P.length
        assert abelianization(S) == abelianization(P)


class TestAbelianization:
    @pytest.mark.parametrize("P, rank, torsion", [
        (Presentation(1, [(1,) * 6]), 0, (6,)),
        (Presentation(2, [(1, 2, -1, -2)]), 2, ()),
        (Presentation(2, [(1, 1), (2, 2), (1, 2, 1, 2)]), 0, (2, 2)),
        (Presentation(0), 0, ()),
        (Presentation(2), 2, ()),
    ])
    def test_examples(self, P, rank, torsion):
        ab = abelianization(P)
        assert (ab.rank, ab.torsion) == (rank, torsion)


class TestText:
    def test_parse(self):
        P = parse_presentation("<a, b | a b a b^-1; a^2>")
        assert P == Presentation(2, [(1, 2, 1, -2), (1, 1)])

    def test_no_brackets(self):
        assert parse_presentation("x | x^3") == Presentation(1, [(1, 1, 1)])

    def test_format(self):
        assert format_presentation(KLEIN) == "<a1, a2 | a1 a2 a1 a2^-1>"
        assert format_presentation(Presentation(1, [(-1, -1)])) == "<a1 | a1^-2>"

    @given(presentations)
    def test_round_trip(self, P):
        assert parse_presentation(format_presentation(P)) == P

    @pytest.mark.parametrize("text", ["<a, a | a>", "<a | b>", "a a", "<a | a^x>"])
    def test_errors(self, text):
        with pytest.raises(ValueError):
            parse_presentation(text)
