import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from k3tk.f2affine import (
    AffineMap4,
    ConstructionError,
    F2Mat4,
    build_O48,
    build_O48_2,
    classify_s4_shapes,
    format_vec,
    gl4_elements,
    linear_orbit_shape,
    load_constants,
    mat_apply,
    mat_mul,
    mat_order,
    matrix_group,
    parse_vec,
    s4_shape_census,
    to_permutation,
    verify_s4_presentation,
)
from k3tk.permgroup import PermGroup

X18 = "1100/0110/0011/0001"
Y18 = "1100/0100/0111/0001"
Y20 = "1100/0100/0010/0011"
I = F2Mat4.identity()


# --- independent oracle: nested lists over {0, 1} parsed from the raw strings


def o_mat(text):
    return [[int(ch) for ch in row] for row in text.split("/")]


def o_vec(text):
    return [int(ch) for ch in text]


def o_apply(M, v):
    return [sum(M[i][j] * v[j] for j in range(4)) % 2 for i in range(4)]


def o_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(4)) % 2 for j in range(4)] for i in range(4)]


def o_str(M):
    return "/".join("".join(map(str, r)) for r in M)


def bits(n):
    return "".join(map(str, n))


VEC_STRINGS = ["".join(p) for p in product("01", repeat=4)]
mat_strings = st.lists(st.sampled_from(VEC_STRINGS), min_size=4, max_size=4).map("/".join)


@pytest.fixture(scope="module")
def census():
    return s4_shape_census()


class TestVectorsAndMatrices:
    def test_parse_vec_convention(self):
        # first character is coordinate 1, stored in bit 0
        assert parse_vec("1000") == 1
        assert parse_vec("0101") == 10
        assert format_vec(10) == "0101"

    @pytest.mark.parametrize("bad", ["", "10", "10201", "abcd"])
    def test_parse_vec_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_vec(bad)

    def test_parse_mat_rejects(self):
        for bad in ["1100/0110/0011", "1100/0110/0011/0021", "11000/0110/0011/0001"]:
            with pytest.raises(ValueError):
                F2Mat4.parse(bad)

    @given(mat_strings, st.sampled_from(VEC_STRINGS))
    def test_apply_matches_oracle(self, m, v):
        assert format_vec(F2Mat4.parse(m)(parse_vec(v))) == bits(o_apply(o_mat(m), o_vec(v)))
        assert mat_apply(F2Mat4.parse(m), parse_vec(v)) == F2Mat4.parse(m)(parse_vec(v))

    @given(mat_strings, mat_strings)
    def test_mul_matches_oracle(self, a, b):
        assert str(mat_mul(F2Mat4.parse(a), F2Mat4.parse(b))) == o_str(o_mul(o_mat(a), o_mat(b)))
        assert F2Mat4.parse(a) @ F2Mat4.parse(b) == mat_mul(F2Mat4.parse(a), F2Mat4.parse(b))

    @given(mat_strings)
    def test_inverse(self, m):
        M = F2Mat4.parse(m)
        if M.is_invertible():
            assert M @ M.inverse() == I == M.inverse() @ M
            assert M.rank() == 4
        else:
            assert M.rank() < 4
            with pytest.raises(ValueError):
                M.inverse()

    def test_str_roundtrip(self):
        assert str(F2Mat4.parse(X18)) == X18


class TestGL4:
    def test_count(self):
        expected = (2**4 - 1) * (2**4 - 2) * (2**4 - 4) * (2**4 - 8)
        assert expected == 20160
        gl = gl4_elements()
        assert len(gl) == len(set(gl)) == expected
        assert all(m.is_invertible() for m in gl)

    def test_count_by_brute_force(self):
        n = sum(1 for rows in product(VEC_STRINGS, repeat=4) if F2Mat4.parse("/".join(rows)).is_invertible())
        assert n == 20160

    def test_orders(self):
        x, y = F2Mat4.parse(X18), F2Mat4.parse(Y18)
        assert (mat_order(x), mat_order(y), mat_order(x @ y)) == (4, 2, 3)
        assert mat_order(I) == 1
        with pytest.raises(ValueError):
            mat_order(F2Mat4.parse("1000/0000/0000/0000"))

    def test_element_orders_are_gl4_orders(self):
        # GL_4(2) ~ A_8: a 3-cycle times a disjoint 5-cycle gives order 15
        orders = {mat_order(m) for m in gl4_elements()}
        assert orders == {1, 2, 3, 4, 5, 6, 7, 15}


class TestS4Presentation:
    @pytest.mark.parametrize("y", [Y18, Y20])
    def test_pairs(self, y):
        x, yy = F2Mat4.parse(X18), F2Mat4.parse(y)
        assert verify_s4_presentation(x, yy)
        assert len(matrix_group([x, yy])) == 24

    def test_rejects_trivial(self):
        assert not verify_s4_presentation(I, I)

    def test_rejects_power(self):
        x = F2Mat4.parse(X18)
        assert not verify_s4_presentation(x, x @ x)

    @pytest.mark.parametrize("y, shape", [(Y18, (1, 6, 8)), (Y20, (1, 2, 12))])
    def test_orbit_shapes(self, y, shape):
        gens = [F2Mat4.parse(X18), F2Mat4.parse(y)]
        assert linear_orbit_shape(gens) == shape
        # oracle: BFS on bit-string vectors
        mats = [o_mat(X18), o_mat(y)]
        remaining = set(VEC_STRINGS) - {"0000"}
        sizes = []
        while remaining:
            start = min(remaining)
            orb, frontier = {start}, [start]
            while frontier:
                v = frontier.pop()
                for M in mats:
                    w = bits(o_apply(M, o_vec(v)))
                    if w not in orb:
                        orb.add(w)
                        frontier.append(w)
            remaining -= orb
            sizes.append(len(orb))
        assert tuple(sorted(sizes)) == shape


class TestAffine:
    def test_translation_is_eight_transpositions(self):
        for a in range(1, 16):
            p = to_permutation(AffineMap4.translation_by(a))
            cyc = p.cycles()
            assert len(cyc) == 8 and all(len(c) == 2 for c in cyc)

    def test_composition(self):
        f = AffineMap4(F2Mat4.parse(X18), parse_vec("1111"))
        g = AffineMap4(F2Mat4.parse(Y18), parse_vec("0101"))
        for v in range(16):
            assert (f @ g)(v) == f(g(v))
        assert (f**4).is_translation()
        assert not f.is_translation()

    def test_to_permutation_homomorphism_exhaustive(self):
        gl = gl4_elements()
        rng = random.Random(11)
        pairs = [(rng.choice(gl), rng.randrange(16), rng.choice(gl), rng.randrange(16)) for _ in range(300)]
        for A, a, B, b in pairs:
            f, g = AffineMap4(A, a), AffineMap4(B, b)
            assert to_permutation(f @ g) == to_permutation(f) * to_permutation(g)

    def test_to_permutation_injective_on_agl(self):
        # the permutation determines the map: translation is the image of 0,
        # columns are images of unit vectors minus the translation
        seen = set()
        for A in gl4_elements():
            for a in (0, 5, 15):
                f = AffineMap4(A, a)
                p = to_permutation(f)
                t = p(0)
                cols = [p(1 << j) ^ t for j in range(4)]
                assert all(A(1 << j) == cols[j] for j in range(4)) and t == a
                seen.add(p)
        assert len(seen) == 20160 * 3


class TestConstructions:
    def test_o48(self):
        G = build_O48()
        assert G.order() == 48
        hist = G.element_order_histogram()
        assert hist == {1: 1, 2: 1, 3: 8, 4: 18, 6: 8, 8: 12}
        assert G.mu() == 4
        assert G.degree == 16

    def test_o48_has_central_translation(self):
        G = build_O48()
        a = parse_vec(load_constants()["o48_a"])
        t = to_permutation(AffineMap4.translation_by(a))
        assert G.contains(t)
        assert all(t * g == g * t for g in G.generators)

    def test_o48_2(self):
        H = build_O48_2()
        assert H.order() == 96
        sub = PermGroup(H.generators[:2])
        assert sub.order() == 48
        assert all(H.contains(g) for g in sub.generators)
        assert sub.element_order_histogram() == build_O48().element_order_histogram()

    def test_printed_translation_rejected(self):
        const = dict(load_constants())
        const["o48_a"] = "0001"
        with pytest.raises(ConstructionError):
            build_O48(const)

    def test_wrong_b_rejected(self):
        const = dict(load_constants())
        const["o48_b"] = "1110"
        with pytest.raises(ConstructionError, match="x\\(c\\)"):
            build_O48(const)

    def test_singular_rejected(self):
        const = dict(load_constants())
        const["o48_2_y"] = "1100/1100/0010/0011"
        with pytest.raises(ConstructionError, match="singular"):
            build_O48_2(const)

    def test_missing_constant(self):
        const = dict(load_constants())
        del const["o48_c"]
        with pytest.raises(ConstructionError, match="missing"):
            build_O48(const)

    def test_load_constants_rejects(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("o48_x 1100\n")
        with pytest.raises(ValueError):
            load_constants(p)


class TestCensus:
    EXPECTED = {(3, 12), (3, 4, 8), (1, 2, 12), (1, 6, 8), (1, 3, 3, 4, 4)}

    def test_contains_expected(self, census):
        shapes = set(census)
        assert self.EXPECTED <= shapes
        assert classify_s4_shapes() == frozenset(shapes)

    def test_shapes_partition_fifteen(self, census):
        for shape in census:
            assert sum(shape) == 15

    def test_has_three_fixed_points_shape(self, census):
        assert any(s.count(1) == 3 for s in census)

    def test_conjugation_invariance(self):
        rng = random.Random(5)
        gl = gl4_elements()
        for y in (Y18, Y20):
            x, yy = F2Mat4.parse(X18), F2Mat4.parse(y)
            shape = linear_orbit_shape([x, yy])
            for _ in range(10):
                g = rng.choice(gl)
                gi = g.inverse()
                assert linear_orbit_shape([g @ x @ gi, g @ yy @ gi]) == shape

    def test_pairs_found_from_random_conjugates(self, census):
        # any S4 obtained by conjugating a known pair lands on a census shape
        rng = random.Random(9)
        gl = gl4_elements()
        x, y = F2Mat4.parse(X18), F2Mat4.parse(Y20)
        for _ in range(5):
            g = rng.choice(gl)
            assert linear_orbit_shape([g @ x @ g.inverse(), g @ y @ g.inverse()]) in census
