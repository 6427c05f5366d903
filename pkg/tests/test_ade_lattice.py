import random

import pytest
import sympy
from hypothesis import given, strategies as st

from k3tk.ade_lattice import (
    ALPHABET,
    STABILIZERS,
    AbelianInvariants,
    AdeType,
    block_gram_matrix,
    disc_order,
    discriminant_group,
    factorize,
    format_factorization,
    gram_matrix,
    is_square,
    l_part_generator_count,
    parse_ade,
    parse_ade_list,
    smith_normal_form,
)
from oracles import det, determinantal_invariants, matmul


def T(s):
    return parse_ade(s)


def Ts(s):
    return parse_ade_list(s)


class TestAdeType:
    def test_validity(self):
        for bad in [("A", 0), ("D", 3), ("E", 5), ("E", 9), ("B", 2)]:
            with pytest.raises(ValueError):
                AdeType(*bad)

    def test_ordering(self):
        assert sorted([T("E6"), T("A7"), T("D4"), T("A1")]) == [T("A1"), T("A7"), T("D4"), T("E6")]

    def test_parse_forms(self):
        assert Ts("A_2A_4A_4A_6D_4") == Ts("A2,A4,A4,A6,D4")
        assert Ts("A_{10}A_10") == (T("A10"), T("A10"))
        assert T("E_7").tex == "E_7" and str(T("E_7")) == "E7"
        with pytest.raises(ValueError):
            parse_ade("X3")


class TestGram:
    def test_a1(self):
        assert gram_matrix(T("A1")) == [[-2]]

    @pytest.mark.parametrize("tok", ["A1", "A5", "D4", "D7", "E6", "E7", "E8"])
    def test_symmetric_even_negative_definite(self, tok):
        g = gram_matrix(T(tok))
        M = sympy.Matrix(g)
        assert M == M.T
        assert all(g[i][i] == -2 for i in range(len(g)))
        assert (-M).is_positive_definite

    @pytest.mark.parametrize("tok, d", [("A2", 3), ("E8", 1), ("E6", 3), ("D5", 4), ("A9", 10)])
    def test_abs_det(self, tok, d):
        assert abs(det(gram_matrix(T(tok)))) == d

    def test_e_numbering(self):
        g = gram_matrix(T("E6"))
        # node 6 hangs off node 3
        assert g[5][2] == 1 and g[5][4] == 0


class TestSmith:
    def test_identity(self):
        _, S, _ = smith_normal_form([[int(i == j) for j in range(4)] for i in range(4)])
        assert [S[i][i] for i in range(4)] == [1, 1, 1, 1]

    @pytest.mark.parametrize("tok, diag", [("D4", [1, 1, 2, 2]), ("A3", [1, 1, 4])])
    def test_examples_against_minors(self, tok, diag):
        g = gram_matrix(T(tok))
        assert determinantal_invariants(g) == diag
        L, S, R = smith_normal_form(g)
        assert [abs(S[i][i]) for i in range(len(g))] == diag
        assert matmul(matmul(L, S), R) == g

    def test_reconstruction_random(self):
        rng = random.Random(20260101)
        for _ in range(100):
            m, n = rng.randint(1, 5), rng.randint(1, 5)
            A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            L, S, R = smith_normal_form(A)
            assert matmul(matmul(L, S), R) == A
            assert abs(det(L)) == 1 and abs(det(R)) == 1
            diag = [S[i][i] for i in range(min(m, n))]
            assert all(S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
            nz = [d for d in diag if d]
            assert all(d > 0 for d in nz)
            assert diag[: len(nz)] == nz
            assert all(b % a == 0 for a, b in zip(nz, nz[1:]))

    @given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
    def test_square_against_minors(self, A):
        _, S, _ = smith_normal_form(A)
        assert [S[i][i] for i in range(3)] == determinantal_invariants(A)


class TestDiscriminants:
    @pytest.mark.parametrize("rec", STABILIZERS, ids=lambda r: str(r.ade))
    def test_catalog_cross_check(self, rec):
        assert discriminant_group(rec.ade) == rec.disc_invariants
        assert abs(det(gram_matrix(rec.ade))) == rec.d_x
        assert rec.c_x == rec.ade.rank

    def test_catalog_shape(self):
        assert len(STABILIZERS) == 12
        assert ALPHABET == tuple(sorted(r.ade for r in STABILIZERS))

    @pytest.mark.parametrize(
        "tok, factors", [("A7", (8,)), ("D6", (2, 2)), ("E7", (2,)), ("D7", (4,)), ("E8", ())]
    )
    def test_examples(self, tok, factors):
        assert discriminant_group(T(tok)).factors == factors

    def test_invariants_validation(self):
        with pytest.raises(ValueError):
            AbelianInvariants((2, 3))
        with pytest.raises(ValueError):
            AbelianInvariants((1,))
        assert AbelianInvariants((2, 2)).order == 4
        assert str(AbelianInvariants((2, 2))) == "C2^2"

    @pytest.mark.parametrize(
        "config, d", [("A2,A4,A4,A6,D4", 2100), ("A10,A10", 121), ("E8", 1), ("A14,A4,A2", 225)]
    )
    def test_disc_order(self, config, d):
        assert disc_order(Ts(config)) == d

    def test_disc_order_matches_block_det(self):
        rng = random.Random(7)
        pool = list(ALPHABET) + [T("A9"), T("D8"), T("E8")]
        for _ in range(40):
            types = []
            while True:
                t = rng.choice(pool)
                if sum(x.rank for x in types) + t.rank > 12:
                    break
                types.append(t)
            if not types:
                continue
            assert disc_order(types) == abs(det(block_gram_matrix(types)))

    def test_disc_order_rejects_empty(self):
        with pytest.raises(ValueError):
            disc_order([])


def test_is_square_examples():
    assert is_square(121) and is_square(225)
    assert not is_square(2100)


def test_is_square_exhaustive():
    squares = set()
    r = 0
    while r * r <= 10**6:
        squares.add(r * r)
        r += 1
    for n in range(1, 10**6 + 1):
        if is_square(n) != (n in squares):
            raise AssertionError(n)


class TestGeneratorCount:
    def test_examples(self):
        assert l_part_generator_count(Ts("A2,A2,A2,A7,A7"), 3) == 3
        assert l_part_generator_count(Ts("A1,A2,A3,A7,A7"), 2) == 4
        assert l_part_generator_count(Ts("A4,A4,E6"), 2) == 0

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            l_part_generator_count(Ts("A1"), 4)

    @given(
        st.lists(st.sampled_from(ALPHABET), max_size=6),
        st.lists(st.sampled_from(ALPHABET), max_size=6),
        st.sampled_from([2, 3, 5, 7]),
    )
    def test_additive(self, a, b, l):
        assert l_part_generator_count(a + b, l) == (
            l_part_generator_count(a, l) + l_part_generator_count(b, l)
        )


def test_factorization():
    assert factorize(2100) == {2: 2, 3: 1, 5: 2, 7: 1}
    assert format_factorization(20160) == "2^6.3^2.5.7"
    assert format_factorization(1) == "1"
