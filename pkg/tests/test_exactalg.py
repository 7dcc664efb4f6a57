"""Unit tests for the exact arithmetic layer: rationals, Laurent polynomials,
truncated formal classes, and indexed matrices."""

import math
import random
from fractions import Fraction

import pytest

from tautcomb import (
    DivisionByZero,
    FormalClass,
    IncompatibleIndices,
    IndexedMatrix,
    InvalidShape,
    Laurent,
    formal_geom_expand,
    rat,
    rat_from_str,
    rat_pow,
    rat_to_str,
)
from tautcomb.exactalg import rat_inverse


class TestRational:
    def test_add(self):
        assert rat(1, 2) + rat(1, 3) == rat(5, 6)

    def test_binomial(self):
        assert math.comb(4, 2) == 6

    def test_inverse_of_zero(self):
        with pytest.raises(DivisionByZero):
            rat_inverse(0)

    def test_inverse(self):
        assert rat_inverse(rat(-3, 7)) == rat(-7, 3)

    def test_negative_powers(self):
        assert rat_pow(2, -3) == rat(1, 8)
        assert rat_pow(rat(2, 3), -1) == rat(3, 2)
        assert rat_pow(0, 0) == 1
        assert rat_pow(0, 5) == 0
        with pytest.raises(DivisionByZero):
            rat_pow(0, -1)

    def test_string_round_trip(self):
        for x in (rat(0), rat(7), rat(-3, 4), rat(22, 7)):
            assert rat_from_str(rat_to_str(x)) == x
        assert rat_to_str(rat(4, 2)) == "2"
        assert rat_to_str(rat(-1, 3)) == "-1/3"


class TestLaurent:
    def test_doubly_degenerate_product(self):
        # (1/t) * (-1/t) = -t^-2
        assert Laurent({-1: 1}) * Laurent({-1: -1}) == Laurent({-2: -1})

    def test_coefficient_extraction(self):
        f = Laurent({-1: 3, 0: 5, 1: 2})
        assert f.coefficient(0) == 5
        assert f.coefficient(7) == 0

    def test_polynomial_product(self):
        t = Laurent({1: 1})
        two = Laurent.term(2)
        assert (t - two) * (t + two) == Laurent({2: 1, 0: -4})

    def test_zero_coefficients_dropped(self):
        f = Laurent({3: 0, 1: 2})
        assert f.coeffs == {1: Fraction(2)}
        assert (f - f).is_zero()

    def test_monomial_inverse(self):
        m = Laurent({2: Fraction(-3, 4)})
        assert m * m.inverse_of_monomial() == Laurent.one()
        with pytest.raises(InvalidShape):
            (m + Laurent.one()).inverse_of_monomial()
        with pytest.raises(DivisionByZero):
            Laurent.zero().inverse_of_monomial()

    def test_ring_axioms_random(self):
        rng = random.Random(11)

        def rand_poly():
            return Laurent(
                {
                    rng.randrange(-3, 4): Fraction(rng.randrange(-5, 6), rng.randrange(1, 5))
                    for _ in range(rng.randrange(0, 4))
                }
            )

        for _ in range(200):
            f, g, h = rand_poly(), rand_poly(), rand_poly()
            assert f * g == g * f
            assert f * (g + h) == f * g + f * h
            assert (f + g) + h == f + (g + h)


PSI = ("psi", "q0", 0)


def _mono(gen, exp):
    return ((tuple(gen), exp),)


class TestFormalGeomExpand:
    def test_truncation_zero(self):
        out = formal_geom_expand(Laurent({1: 1}), PSI, 0)
        assert out.terms == {(): Laurent({-1: 1})}

    def test_truncation_two(self):
        out = formal_geom_expand(Laurent({1: 1}), PSI, 2)
        assert out.terms == {
            (): Laurent({-1: 1}),
            _mono(PSI, 1): Laurent({-2: 1}),
            _mono(PSI, 2): Laurent({-3: 1}),
        }

    def test_negative_weight(self):
        out = formal_geom_expand(Laurent({1: -1}), PSI, 1)
        assert out.terms == {(): Laurent({-1: -1}), _mono(PSI, 1): Laurent({-2: 1})}

    def test_weight_must_be_nonzero_multiple_of_t(self):
        with pytest.raises(DivisionByZero):
            formal_geom_expand(Laurent.zero(), PSI, 1)
        with pytest.raises(InvalidShape):
            formal_geom_expand(Laurent({0: 1}), PSI, 1)
        with pytest.raises(InvalidShape):
            formal_geom_expand(Laurent({1: 1, 0: 1}), PSI, 1)

    def test_multiply_back_identity(self):
        # expansion * (weight - gen) == 1 after re-truncation
        for c in (1, -1, Fraction(2, 3), -5):
            for trunc in range(0, 5):
                w = Laurent({1: Fraction(c)})
                expansion = formal_geom_expand(w, PSI, trunc)
                linear = FormalClass(
                    {(): w, _mono(PSI, 1): Laurent.term(-1)}, {"q0": trunc}
                )
                assert (expansion * linear).terms == {(): Laurent.one()}


class TestFormalClass:
    def test_truncation_drops_high_degree(self):
        cls = FormalClass({_mono(PSI, 3): Laurent.one()}, {"q0": 2})
        assert cls.is_zero()

    def test_multiplication_re_truncates(self):
        lin = FormalClass({_mono(PSI, 1): Laurent.one()}, {"q0": 1})
        sq = lin * lin
        assert sq.is_zero()  # psi^2 exceeds the bound 1

    def test_unknown_factor_group_rejected(self):
        with pytest.raises(InvalidShape):
            FormalClass({_mono(PSI, 1): Laurent.one()}, {})

    def test_lambda_degree_counts(self):
        lam2 = ("lam", "v1", 2)
        cls = FormalClass({_mono(lam2, 1): Laurent.one()}, {"v1": 1})
        assert cls.is_zero()  # lambda_2 has degree 2 > bound 1

    def test_independent_factor_groups(self):
        other = ("psi", "qinf", 0)
        cls = FormalClass(
            {_mono(PSI, 1) + _mono(other, 1): Laurent.one()},
            {"q0": 1, "qinf": 1},
        )
        assert not cls.is_zero()  # each factor within its own bound

    def test_scalar_and_addition(self):
        a = FormalClass.scalar(rat(1, 2))
        b = FormalClass.scalar(rat(1, 3))
        assert (a + b).scalar_part() == Laurent.term(rat(5, 6))
        assert (a - a).is_zero()


def _matrix(entries, labels=None):
    n = len(entries)
    return IndexedMatrix(labels if labels is not None else tuple(range(n)), entries)


class TestIndexedMatrix:
    def test_worked_product(self):
        b = _matrix([[1, 0], [2, -2]])
        a = _matrix([[1, 1], [1, Fraction(1, 2)]])
        c = b.multiply(a)
        assert c.entries == ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)))

    def test_determinant_of_identity(self):
        for n in range(1, 5):
            eye = _matrix([[int(i == j) for j in range(n)] for i in range(n)])
            assert eye.determinant() == 1

    def test_unit_upper_triangular(self):
        ok, violation = _matrix([[1, 1], [0, 1]]).is_unit_upper_triangular()
        assert ok and violation is None
        ok, violation = _matrix([[1, 0], [2, 1]]).is_unit_upper_triangular()
        assert not ok
        assert violation == (1, 0)

    def test_index_mismatch(self):
        a = _matrix([[1]], labels=("x",))
        b = _matrix([[1]], labels=("y",))
        with pytest.raises(IncompatibleIndices):
            a.multiply(b)

    def test_non_square_rejected(self):
        with pytest.raises(InvalidShape):
            IndexedMatrix((0, 1), [[1, 2]])

    def test_det_multiplicative_random(self):
        rng = random.Random(5)
        for n in (2, 3, 4):
            for _ in range(20):
                a = _matrix(
                    [
                        [Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(n)]
                        for _ in range(n)
                    ]
                )
                b = _matrix(
                    [
                        [Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(n)]
                        for _ in range(n)
                    ]
                )
                assert a.multiply(b).determinant() == a.determinant() * b.determinant()

    def test_scale_columns_and_transpose(self):
        a = _matrix([[1, 2], [3, 4]])
        assert a.transpose().entries == ((Fraction(1), Fraction(3)), (Fraction(2), Fraction(4)))
        scaled = a.scale_columns([Fraction(1, 2), 3])
        assert scaled.entries == (
            (Fraction(1, 2), Fraction(6)),
            (Fraction(3, 2), Fraction(12)),
        )
        with pytest.raises(IncompatibleIndices):
            a.scale_columns([1])

    def test_determinant_with_pivot_swap(self):
        # leading zero forces a row swap inside the elimination
        a = _matrix([[0, 1], [1, 0]])
        assert a.determinant() == -1
        singular = _matrix([[1, 2], [2, 4]])
        assert singular.determinant() == 0
