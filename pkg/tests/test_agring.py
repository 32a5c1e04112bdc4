import random
from fractions import Fraction
from math import comb

import pytest

from torex.agring import (
    BadSplit,
    GenusMismatch,
    TautClassAg,
    basis_subsets,
    graded_dimension,
    lam,
    matrix_rank,
    multiply,
    pairing_is_perfect,
    reduce,
    schur_wedge2,
    socle_degree,
    socle_pairing,
    taut_projection_delta,
    virtual_class_product,
)
from torex.polyring import Poly


def cls(g, coords):
    return TautClassAg.make(
        g, {frozenset(J): Fraction(c) for J, c in coords.items()}
    )


def single(g, J, c=1):
    return TautClassAg.make(g, {frozenset(J): Fraction(c)})


class TestReduce:
    def test_square_of_first(self):
        assert reduce(4, lam(1) * lam(1)) == single(4, (2,), 2)

    def test_top_square_vanishes(self):
        for g in range(2, 9):
            assert reduce(g, lam(g - 1) * lam(g - 1)).is_zero()

    def test_top_class_vanishes(self):
        for g in range(1, 9):
            assert reduce(g, lam(g)).is_zero()

    def test_idempotent_on_basis(self):
        g = 5
        for J in basis_subsets(g, 6):
            p = Poly.const(1)
            for j in J:
                p = p * lam(j)
            assert reduce(g, p) == single(g, J)

    def test_ring_homomorphism_random(self):
        rng = random.Random(19)
        g = 5
        for _ in range(15):
            def rand_poly():
                p = Poly.zero()
                for _ in range(rng.randint(1, 3)):
                    term = Poly.const(rng.randint(-4, 4))
                    for _ in range(rng.randint(0, 3)):
                        term = term * lam(rng.randint(1, g))
                    p = p + term
                return p

            a, b = rand_poly(), rand_poly()
            assert reduce(g, a * b) == multiply(reduce(g, a), reduce(g, b))
            assert reduce(g, a + b) == reduce(g, a) + reduce(g, b)


class TestMultiply:
    def test_square_free_product(self):
        g = 5
        got = multiply(single(g, (1,)), single(g, (4,)))
        assert got == single(g, (1, 4))

    def test_one_is_identity(self):
        g = 4
        a = cls(g, {(): 2, (1, 2): -3})
        one = single(g, ())
        assert multiply(one, a) == a

    def test_beyond_socle_vanishes(self):
        g = 4
        socle = single(g, (1, 2, 3))
        assert multiply(socle, single(g, (1,))).is_zero()
        assert multiply(single(g, (2, 3)), single(g, (2,))).is_zero()

    def test_genus_mismatch(self):
        with pytest.raises(GenusMismatch):
            multiply(single(4, (1,)), single(5, (1,)))


class TestStructure:
    @pytest.mark.parametrize("g", range(2, 11))
    def test_total_dimension(self, g):
        D = socle_degree(g)
        assert sum(graded_dimension(g, d) for d in range(D + 1)) == 2 ** (g - 1)

    @pytest.mark.parametrize("g", range(2, 11))
    def test_graded_dimension_counts_subsets(self, g):
        for d in range(socle_degree(g) + 1):
            assert graded_dimension(g, d) == len(basis_subsets(g, d))

    def test_socle_one_dimensional(self):
        for g in range(2, 9):
            assert graded_dimension(g, socle_degree(g)) == 1
            assert basis_subsets(g, socle_degree(g)) == [tuple(range(1, g))]


class TestSoclePairing:
    def test_degree_zero(self):
        assert socle_pairing(3, 0) == [[Fraction(1)]]

    def test_g2_degree_one(self):
        assert socle_pairing(2, 1) == [[Fraction(1)]]

    @pytest.mark.parametrize("g", range(2, 9))
    def test_all_pairings_perfect(self, g):
        for d in range(socle_degree(g) + 1):
            assert pairing_is_perfect(g, d), (g, d)

    def test_g4_full_rank_matrices(self):
        for d in range(socle_degree(4) + 1):
            m = socle_pairing(4, d)
            if m:
                assert matrix_rank(m) == len(m)


class TestSchurWedge2:
    @pytest.mark.parametrize("g", range(1, 9))
    def test_reduces_to_socle_generator(self, g):
        assert schur_wedge2(g) == single(g, tuple(range(1, g)))


class TestVirtualClasses:
    def test_elliptic_square(self):
        one = single(1, ())
        assert virtual_class_product(2, 1) == (one, one)

    def test_g4_middle(self):
        minus_lam1 = single(2, (1,), -1)
        assert virtual_class_product(4, 2) == (minus_lam1, minus_lam1)

    @pytest.mark.parametrize("g", range(2, 9))
    def test_signs_match_closed_form(self, g):
        for k in range(1, g):
            left, right = virtual_class_product(g, k)
            assert left == single(k, tuple(range(1, k)), (-1) ** comb(k, 2))
            assert right == single(
                g - k, tuple(range(1, g - k)), (-1) ** comb(g - k, 2)
            )

    def test_bad_split(self):
        with pytest.raises(BadSplit):
            virtual_class_product(4, 0)
        with pytest.raises(BadSplit):
            virtual_class_product(4, 4)


class TestProjection:
    def test_known_coefficients(self):
        assert taut_projection_delta(4) == single(4, (3,), 20)
        assert taut_projection_delta(5) == single(5, (4,), 11)
        assert taut_projection_delta(7) == single(7, (6,), 1)

    def test_g6_formula_value(self):
        assert taut_projection_delta(6) == single(6, (5,), Fraction(2730, 691))
