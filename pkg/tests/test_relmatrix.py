"""Unit tests for the relation matrices and their structure verifiers."""

from fractions import Fraction

import pytest

from tautcomb import (
    INF,
    POP,
    PreconditionViolated,
    build_A,
    build_A_multi,
    build_B,
    build_B_multi,
    build_M,
    build_M_multi,
    enumerate_pop,
    in_lower_set,
    lower_set,
    verify_C,
    verify_kronecker,
    verify_M_invertible,
    verify_M_transpose_scaling,
    verify_xi_closure,
)


def F(x):
    return Fraction(x)


class TestWorkedInstance:
    # the d=2, n=1 family in canonical order: ((1),(1)) then ((2),())

    def test_A(self):
        a = build_A(2, 1, INF)
        assert a.entries == ((F(1), F(1)), (F(1), Fraction(1, 2)))

    def test_B(self):
        b = build_B(2, 1, INF)
        assert b.entries == ((F(1), F(0)), (F(2), F(-2)))

    def test_C(self):
        c = build_B(2, 1, INF).multiply(build_A(2, 1, INF))
        assert c.entries == ((F(1), F(1)), (F(0), F(1)))

    def test_M(self):
        m = build_M(2, 1, INF)
        assert m.entries == ((F(1), F(-2)), (F(1), F(-1)))
        assert m.determinant() == 1

    def test_index_order(self):
        m = build_M(2, 1, INF)
        assert [p.to_json_dict() for p in m.index] == [
            {"d": 2, "ordered": [1], "unordered": [1]},
            {"d": 2, "ordered": [2], "unordered": []},
        ]


class TestTrivialInstances:
    def test_one_by_one(self):
        for build in (build_A, build_B, build_M):
            mat = build(1, 1, INF)
            assert mat.size == 1
            assert mat.entries == ((F(1),),)

    def test_singleton_cutoff(self):
        assert build_M(1, 1, 0).entries == ((F(1),),)


class TestEntryRules:
    def test_a_vanishes_on_long_double_prime(self):
        # row with empty unordered part, column carrying a part >= 2
        a = build_A(3, 1, INF)
        idx = {p: i for i, p in enumerate(a.index)}
        row = idx[POP(3, (3,), ())]
        col = idx[POP(3, (1,), (2,))]
        assert a[row, col] == 0

    def test_b_vanishes_when_column_exceeds_row(self):
        # binom(p - 1, q - 1) = 0 once an ordered column part exceeds the row part
        b = build_B(3, 1, INF)
        idx = {p: i for i, p in enumerate(b.index)}
        row = idx[POP(3, (1,), (1, 1))]
        col = idx[POP(3, (3,), ())]
        assert b[row, col] == 0

    def test_m_diagonal_nonzero(self):
        for d in range(1, 5):
            for n in range(1, d + 1):
                m = build_M(d, n, INF)
                for i in range(m.size):
                    assert m[i, i] != 0


class TestVerifyC:
    def test_worked(self):
        report = verify_C(2, 1, INF)
        assert report["pass"] is True
        assert report["lemma"] == "6"
        assert report["witness"] is None

    def test_trivial(self):
        assert verify_C(1, 1, 0)["pass"] is True

    def test_small_sweep(self):
        # the full d <= 6 sweep is the acceptance criterion; spot-check d <= 4
        for d in range(1, 5):
            for n in range(1, d + 1):
                for k in list(range(0, d - n + 1)) + [INF]:
                    assert verify_C(d, n, k)["pass"] is True

    def test_determinants(self):
        for d in range(1, 5):
            for n in range(1, d + 1):
                a, b = build_A(d, n, INF), build_B(d, n, INF)
                assert a.determinant() != 0
                assert b.determinant() != 0
                assert b.multiply(a).determinant() == 1


class TestVerifyM:
    def test_worked_invertible(self):
        report = verify_M_invertible((2,), ((1,),), INF)
        assert report["pass"] is True
        assert report["lemma"] == "4"

    def test_trivial(self):
        assert verify_M_invertible((1,), ((1,),), 0)["pass"] is True

    def test_transpose_scaling_worked(self):
        assert verify_M_transpose_scaling((2,), ((1,),), INF)["pass"] is True

    def test_transpose_scaling_multi(self):
        assert verify_M_transpose_scaling((2, 1), ((1,), (2,)), INF)["pass"] is True

    def test_multi_invertible(self):
        assert verify_M_invertible((2, 2), ((1,), (2,)), 1)["pass"] is True


class TestKronecker:
    def test_two_by_one(self):
        assert verify_kronecker((2, 1), ((1,), (2,)), INF)["pass"] is True

    def test_ones(self):
        assert verify_kronecker((1, 1), ((1,), (2,)), INF)["pass"] is True

    def test_two_by_two(self):
        report = verify_kronecker((2, 2), ((1,), (2,)), INF)
        assert report["pass"] is True
        assert build_A_multi((2, 2), ((1,), (2,)), INF).size == 4

    def test_unsaturated_rejected(self):
        with pytest.raises(PreconditionViolated):
            verify_kronecker((2, 1), ((1,), (2,)), 0)


class TestMultiB:
    def test_requires_experimental_flag(self):
        with pytest.raises(PreconditionViolated):
            build_B_multi((2, 1), ((1,), (2,)), INF)

    def test_requires_saturated_cutoff(self):
        with pytest.raises(PreconditionViolated):
            build_B_multi((2, 1), ((1,), (2,)), 0, experimental=True)

    def test_product_triangular(self):
        b = build_B_multi((2, 1), ((1,), (2,)), INF, experimental=True)
        a = build_A_multi((2, 1), ((1,), (2,)), INF)
        ok, _ = b.multiply(a).is_unit_upper_triangular()
        assert ok


class TestLowerSets:
    def test_self_membership(self):
        p = POP(3, (2,), (1,))
        assert in_lower_set(p, p)

    def test_lowering_is_in_cone(self):
        p = POP(3, (3,), ())
        assert in_lower_set(POP(3, (2,), (1,)), p)
        assert in_lower_set(POP(3, (1,), (1, 1)), p)

    def test_not_upward(self):
        assert not in_lower_set(POP(3, (3,), ()), POP(3, (2,), (1,)))

    def test_lower_set_contents(self):
        got = set(lower_set(POP(3, (3,), ())))
        assert got == {POP(3, (3,), ()), POP(3, (2,), (1,)), POP(3, (1,), (1, 1))}


class TestXiClosure:
    def test_cutoff_families_closed(self):
        for d in range(1, 5):
            for n in range(1, d + 1):
                for k in list(range(0, d - n + 1)) + [INF]:
                    report = verify_xi_closure(d, n, enumerate_pop(d, n, k))
                    assert report["closed"] is True
                    assert report["CTriangularOnXi"] is True

    def test_bare_singleton_not_closed(self):
        for d in (2, 3, 4):
            report = verify_xi_closure(d, 1, [POP(d, (d,), ())])
            assert report["closed"] is False
            assert report["witness"] is not None

    def test_full_family(self):
        report = verify_xi_closure(3, 1, enumerate_pop(3, 1, INF))
        assert report["closed"] is True
        assert report["CTriangularOnXi"] is True

    def test_foreign_member_rejected(self):
        with pytest.raises(PreconditionViolated):
            verify_xi_closure(3, 1, [POP(3, (1, 1), (1,))])


class TestMultiBuilders:
    def test_index_matches_enumeration(self):
        from tautcomb import enumerate_pop_multi

        degrees, sets = (2, 2), ((1,), (2,))
        mat = build_M_multi(degrees, sets, INF)
        assert mat.index == enumerate_pop_multi(degrees, sets, INF)

    def test_m_vs_prefactor(self):
        from tautcomb import principal_prefactor

        mat = build_M_multi((2, 1), ((1,), (2,)), INF)
        for i, row in enumerate(mat.index):
            for j, col in enumerate(mat.index):
                assert mat[i, j] == principal_prefactor(row, col)
