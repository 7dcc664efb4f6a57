"""Unit tests for the scalar kernels, normalization weights, and closed sums."""

import itertools
import math
from fractions import Fraction

import pytest

from tautcomb import (
    IncomparableShapes,
    InvalidRange,
    InvalidSubpartition,
    MultiPOP,
    POP,
    alternating_power_sum,
    alternating_reciprocal_sum,
    binom_identities,
    closed_sum_alpha,
    closed_sum_beta,
    closed_sum_beta_prime,
    closed_sum_gamma,
    closed_sum_value,
    enumerate_pop,
    enumerate_pop_multi,
    eta_sign_scale,
    eta_weight,
    principal_prefactor,
    principal_prefactor_rows,
    s_kernel,
    t_kernel,
)


def oracle_s(alpha_dp, beta) -> Fraction:
    """Generate-and-filter evaluation of the injection sum.

    Iterates over all maps source -> target and keeps the injective ones, so
    it shares no code path with the permutation-based production kernel.
    """
    alpha_dp, beta = tuple(alpha_dp), tuple(beta)
    if len(alpha_dp) > len(beta):
        return Fraction(0)
    total = Fraction(0)
    for image in itertools.product(range(len(beta)), repeat=len(alpha_dp)):
        if len(set(image)) != len(image):
            continue
        term = Fraction(1)
        for j, i in enumerate(image):
            term *= Fraction(1, beta[i] ** (alpha_dp[j] - 1))
        for i in range(len(beta)):
            if i not in image:
                term *= Fraction(1, beta[i])
        total += term
    return total


def oracle_t(q_dp, p_dp) -> Fraction:
    q_dp, p_dp = tuple(q_dp), tuple(p_dp)
    if len(q_dp) > len(p_dp):
        return Fraction(0)
    total = Fraction(0)
    for image in itertools.product(range(len(p_dp)), repeat=len(q_dp)):
        if len(set(image)) != len(image):
            continue
        doubled = sum(1 for j, i in enumerate(image) if q_dp[j] == p_dp[i] == 2)
        term = Fraction(2) ** doubled
        for j, i in enumerate(image):
            q, p = q_dp[j], p_dp[i]
            term *= math.comb(p - 1, q - 1) * (-1) ** (q - 1) * Fraction(q) ** (p - 2)
        total += term
    return total


def _all_partitions(total, max_part=None, min_part=1):
    if total == 0:
        yield ()
        return
    if max_part is None:
        max_part = total
    for first in range(min(total, max_part), min_part - 1, -1):
        for rest in _all_partitions(total - first, first, min_part):
            yield (first,) + rest


class TestSKernel:
    def test_empty_source(self):
        assert s_kernel((), (2, 3)) == Fraction(1, 6)

    def test_single_slot(self):
        assert s_kernel((2,), (3, 1)) == Fraction(2, 3)

    def test_length_cutoff(self):
        assert s_kernel((2, 2), (3,)) == 0

    def test_empty_into_empty(self):
        assert s_kernel((), ()) == 1

    def test_matches_oracle(self):
        for sa in range(0, 7):
            for alpha in _all_partitions(sa, min_part=2):
                for sb in range(0, 7):
                    for beta in _all_partitions(sb):
                        assert s_kernel(alpha, beta) == oracle_s(alpha, beta)

    def test_order_invariance(self):
        beta = (3, 1, 2)
        expected = s_kernel((2,), beta)
        for perm in itertools.permutations(beta):
            assert s_kernel((2,), perm) == expected


class TestTKernel:
    def test_empty_source_is_one(self):
        for p in ((), (2,), (5, 2), (3, 3, 2)):
            assert t_kernel((), p) == 1

    def test_doubled_injection(self):
        assert t_kernel((2,), (2,)) == -2

    def test_plain_injection(self):
        assert t_kernel((2,), (3,)) == -4

    def test_length_cutoff(self):
        assert t_kernel((2, 2), (4,)) == 0

    def test_small_parts_rejected(self):
        with pytest.raises(InvalidSubpartition):
            t_kernel((1,), (2,))
        with pytest.raises(InvalidSubpartition):
            t_kernel((2,), (2, 1))

    def test_matches_oracle(self):
        for sq in range(0, 7):
            for q in _all_partitions(sq, min_part=2):
                for sp in range(0, 7):
                    for p in _all_partitions(sp, min_part=2):
                        assert t_kernel(q, p) == oracle_t(q, p)

    def test_order_invariance(self):
        p = (4, 2, 3)
        expected = t_kernel((2, 3), p)
        for perm in itertools.permutations(p):
            assert t_kernel((3, 2), perm) == expected


class TestEta:
    def test_single_part_one(self):
        assert eta_weight(POP(1, (1,), ())) == -1

    def test_single_part_two(self):
        assert eta_weight(POP(2, (2,), ())) == 2

    def test_split_parts(self):
        assert eta_weight(POP(2, (1,), (1,))) == 1

    def test_never_zero(self):
        for d in range(1, 6):
            for n in range(1, d + 1):
                for pop in enumerate_pop(d, n):
                    assert eta_weight(pop) != 0

    def test_aut_division(self):
        # repeated unordered parts divide by the automorphism count
        assert eta_weight(POP(3, (1,), (1, 1))) == Fraction(-1, 2)

    def test_sign_scale(self):
        assert eta_sign_scale(POP(2, (1,), (1,))) == 1
        assert eta_sign_scale(POP(2, (2,), ())) == -2


class TestClosedSums:
    def test_alpha_branches(self):
        assert closed_sum_alpha(2, 1) == 0
        assert closed_sum_alpha(2, 2) == Fraction(1, 2)
        assert closed_sum_alpha(1, 1) == 1

    def test_alpha_range(self):
        with pytest.raises(InvalidRange):
            closed_sum_alpha(1, 2)
        with pytest.raises(InvalidRange):
            closed_sum_alpha(3, 0)

    def test_beta_branches(self):
        assert closed_sum_beta(2) == 0
        for p in range(2, 9):
            assert closed_sum_beta(p) == 0
        with pytest.raises(InvalidRange):
            closed_sum_beta(1)

    def test_beta_prime_branches(self):
        assert closed_sum_beta_prime(2) == -1
        assert closed_sum_beta_prime(5) == 0
        for p in range(3, 9):
            assert closed_sum_beta_prime(p) == 0
        with pytest.raises(InvalidRange):
            closed_sum_beta_prime(1)

    def test_gamma_branches(self):
        assert closed_sum_gamma(3, 3) == Fraction(1, 3)
        assert closed_sum_gamma(2, 2) == 0
        assert closed_sum_gamma(4, 2) == 0
        for p in range(3, 9):
            assert closed_sum_gamma(p, p) == Fraction(1, p)
            for r in range(2, p):
                assert closed_sum_gamma(p, r) == 0
        with pytest.raises(InvalidRange):
            closed_sum_gamma(2, 3)

    def test_dispatch_by_name(self):
        assert closed_sum_value("alpha", 2, 2) == Fraction(1, 2)
        assert closed_sum_value("beta", 4) == 0
        assert closed_sum_value("betaprime", 2) == -1
        assert closed_sum_value("gamma", 5, 5) == Fraction(1, 5)
        with pytest.raises(InvalidRange):
            closed_sum_value("delta", 2)
        with pytest.raises(InvalidRange):
            closed_sum_value("alpha", 2)  # missing second argument


class TestBinomIdentities:
    def test_power_sum_vanishes(self):
        first, _second = binom_identities(3, 2)
        assert first == 0

    def test_reciprocal_sum_trivial(self):
        assert alternating_reciprocal_sum(0) == 1

    def test_reciprocal_sum(self):
        _first, second = binom_identities(4, 0)
        assert second == Fraction(1, 5)

    def test_ranges(self):
        with pytest.raises(InvalidRange):
            binom_identities(3, 3)  # a must stay below n
        with pytest.raises(InvalidRange):
            alternating_power_sum(2, -1)

    def test_sweep(self):
        for n in range(1, 11):
            for a in range(0, n):
                assert alternating_power_sum(n, a) == 0
            assert alternating_reciprocal_sum(n) == Fraction(1, n + 1)


class TestPrincipalPrefactor:
    def test_diagonal_minimal(self):
        p = POP(1, (1,), ())
        assert principal_prefactor_rows(p, p) == 1

    def test_off_diagonal(self):
        assert principal_prefactor_rows(POP(2, (2,), ()), POP(2, (1,), (1,))) == 1

    def test_column_to_coarse(self):
        assert principal_prefactor_rows(POP(2, (1,), (1,)), POP(2, (2,), ())) == -2

    def test_shape_mismatch(self):
        a = MultiPOP((POP(2, (1,), (1,)),), ((1,),))
        b = MultiPOP((POP(3, (1,), (2,)),), ((1,),))
        with pytest.raises(IncomparableShapes):
            principal_prefactor(a, b)

    def test_multiplicative_over_components(self):
        degrees, sets = (2, 3), ((1,), (2,))
        multis = enumerate_pop_multi(degrees, sets)
        for alpha in multis:
            for beta in multis:
                expected = Fraction(1)
                for pa, pb in zip(alpha.components, beta.components):
                    expected *= principal_prefactor_rows(pa, pb)
                assert principal_prefactor(alpha, beta) == expected
