"""Scalar kernels: injection sums, principal weights, and closed-form sums.

These are the rational-valued building blocks the relation matrices are
assembled from.  All of them are pure functions of small integer partitions,
memoized on canonical (weakly decreasing) part tuples.

The two injection sums:

* :func:`s_kernel` sums over injections of the first argument's parts into
  positions of the second, weighting matched positions by a reciprocal power
  and unmatched ones by a plain reciprocal.
* :func:`t_kernel` does the analogous sum for parts >= 2 on both sides, with
  a binomial-times-power weight and a factor 2 for every matched (2, 2) pair.

The closed sums evaluate four alternating binomial sums that appear when the
matrix product of the two triangular factors is reduced; they are verified
against direct summation in the tests.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cache
from typing import Sequence

from .errors import IncomparableShapes, InvalidRange, InvalidSubpartition
from .exactalg import rat_pow
from .partitions import POP, MultiPOP, aut_order, canonicalize, double_prime, triple_prime


@cache
def _s_kernel(alpha_dp: tuple[int, ...], beta_u: tuple[int, ...]) -> Fraction:
    la, lb = len(alpha_dp), len(beta_u)
    if la > lb:
        return Fraction(0)
    total = Fraction(0)
    full = Fraction(1)
    for b in beta_u:
        full /= b
    # weight of sending slot j to position i, relative to the unmatched
    # product over all positions: multiply back by b_i / b_i^(a_j - 1).
    for image in itertools.permutations(range(lb), la):
        term = full
        for a, i in zip(alpha_dp, image):
            term *= beta_u[i] / rat_pow(beta_u[i], a - 1)
        total += term
    return total


def s_kernel(alpha_dp: Sequence[int], beta_u: Sequence[int]) -> Fraction:
    """Injection sum of reciprocal powers; zero when the source is longer.

    ``alpha_dp`` is by convention a subpartition of parts >= 2 (not enforced;
    the sum is well defined for any positive parts).  Empty into empty gives 1.

    >>> s_kernel((), (2, 3))
    Fraction(1, 6)
    >>> s_kernel((2,), (3, 1))
    Fraction(2, 3)
    """
    return _s_kernel(canonicalize(alpha_dp), canonicalize(beta_u))


@cache
def _t_kernel(q_dp: tuple[int, ...], p_dp: tuple[int, ...]) -> Fraction:
    lq, lp = len(q_dp), len(p_dp)
    if lq > lp:
        return Fraction(0)
    total = Fraction(0)
    for image in itertools.permutations(range(lp), lq):
        term = Fraction(1)
        for q, i in zip(q_dp, image):
            p = p_dp[i]
            term *= math.comb(p - 1, q - 1) * rat_pow(-1, q - 1) * rat_pow(q, p - 2)
            if q == 2 and p == 2:
                term *= 2
        total += term
    return total


def t_kernel(q_dp: Sequence[int], p_dp: Sequence[int]) -> Fraction:
    """Injection sum of signed binomial-power weights for parts >= 2.

    >>> t_kernel((2,), (2,))
    Fraction(-2, 1)
    >>> t_kernel((), (5, 2))
    Fraction(1, 1)
    """
    q_dp = canonicalize(q_dp)
    p_dp = canonicalize(p_dp)
    for part in q_dp + p_dp:
        if part < 2:
            raise InvalidSubpartition(f"both arguments need all parts >= 2, got {part}")
    return _t_kernel(q_dp, p_dp)


@cache
def _part_weight(p: int) -> Fraction:
    # reciprocal of (-1)^p p! / p^p
    return rat_pow(-1, p) * Fraction(rat_pow(p, p), math.factorial(p))


def eta_weight(pop: POP) -> Fraction:
    """Signed multinomial weight of a partially ordered partition; never zero.

    Product over every part (ordered and unordered) of ``p^p / ((-1)^p p!)``,
    divided by the symmetry order of the unordered partition.

    >>> eta_weight(POP(2, (1,), (1,)))
    Fraction(1, 1)
    >>> eta_weight(POP(2, (2,), ()))
    Fraction(2, 1)
    """
    out = Fraction(1, aut_order(pop.unordered))
    for p in pop.all_parts():
        out *= _part_weight(p)
    return out


def eta_sign_scale(pop: POP) -> Fraction:
    """The column scaling ``(-1)^(n + #unordered) * eta`` of one component."""
    return rat_pow(-1, pop.n + len(pop.unordered)) * eta_weight(pop)


def principal_prefactor(alpha: MultiPOP, beta: MultiPOP) -> Fraction:
    """The full principal weight pairing two compatible multi-partitions.

    Per component: reciprocal powers of the ordered parts of ``beta`` raised
    to the ordered parts of ``alpha`` less one, times the injection sum of
    ``alpha``'s unordered parts >= 2 into ``beta``'s unordered parts, times
    the signed weight of ``beta``'s component.
    """
    if alpha.degrees != beta.degrees or alpha.marking_sets != beta.marking_sets:
        raise IncomparableShapes("operands must share degrees and marking sets")
    out = Fraction(1)
    for ap, bp in zip(alpha.components, beta.components):
        for a_j, b_j in zip(ap.ordered, bp.ordered):
            out /= rat_pow(b_j, a_j - 1)
        out *= s_kernel(double_prime(ap.unordered), bp.unordered)
        out *= eta_sign_scale(bp)
    return out


def principal_prefactor_rows(alpha: POP, beta: POP) -> Fraction:
    """Connected (single component) version of :func:`principal_prefactor`."""
    if alpha.d != beta.d or alpha.n != beta.n:
        raise IncomparableShapes("operands must share degree and ordered length")
    out = Fraction(1)
    for a_j, b_j in zip(alpha.ordered, beta.ordered):
        out /= rat_pow(b_j, a_j - 1)
    out *= s_kernel(double_prime(alpha.unordered), beta.unordered)
    out *= eta_sign_scale(beta)
    return out


def _delta(x, y, z) -> int:
    return 1 if x == y == z else 0


def closed_sum_alpha(p: int, r: int) -> Fraction:
    """Alternating binomial sum with exponent ``p - 1 - r`` over 1..p.

    Vanishes for r < p and equals 1/p at r = p.
    """
    if not (p >= r >= 1):
        raise InvalidRange(f"need p >= r >= 1, got p={p}, r={r}")
    total = Fraction(0)
    for q in range(1, p + 1):
        total += math.comb(p - 1, q - 1) * rat_pow(-1, q - 1) * rat_pow(q, p - 1 - r)
    return total


def closed_sum_beta(p: int) -> Fraction:
    """Doubled-at-(2,2) variant with exponent ``p - 3``; vanishes for p >= 2."""
    if p < 2:
        raise InvalidRange(f"need p >= 2, got {p}")
    total = Fraction(0)
    for q in range(1, p + 1):
        total += (
            rat_pow(2, _delta(2, p, q))
            * math.comb(p - 1, q - 1)
            * rat_pow(-1, q - 1)
            * rat_pow(q, p - 3)
        )
    return total


def closed_sum_beta_prime(p: int) -> Fraction:
    """Doubled-at-(2,2) variant with exponent ``p - 2``; -1 at p=2, else 0."""
    if p < 2:
        raise InvalidRange(f"need p >= 2, got {p}")
    total = Fraction(0)
    for q in range(1, p + 1):
        total += (
            rat_pow(2, _delta(2, p, q))
            * math.comb(p - 1, q - 1)
            * rat_pow(-1, q - 1)
            * rat_pow(q, p - 2)
        )
    return total


def closed_sum_gamma(p: int, r: int) -> Fraction:
    """Doubled-at-(2,2) variant with exponent ``p - 1 - r`` for p >= r >= 2.

    Vanishes for r < p and at r = p = 2; equals 1/p for r = p >= 3.
    """
    if not (p >= r >= 2):
        raise InvalidRange(f"need p >= r >= 2, got p={p}, r={r}")
    total = Fraction(0)
    for q in range(1, p + 1):
        total += (
            rat_pow(2, _delta(2, p, q))
            * math.comb(p - 1, q - 1)
            * rat_pow(-1, q - 1)
            * rat_pow(q, p - 1 - r)
        )
    return total


def closed_sum_value(name: str, p: int, r: int | None = None) -> Fraction:
    """Predicted closed-form value of the named sum (for verification)."""
    if name == "alpha":
        if r is None:
            raise InvalidRange("the alpha sum needs both p and r")
        return Fraction(1, p) if r == p else Fraction(0)
    if name == "beta":
        return Fraction(0)
    if name == "betaprime":
        return Fraction(-1) if p == 2 else Fraction(0)
    if name == "gamma":
        if r is None:
            raise InvalidRange("the gamma sum needs both p and r")
        if r < p or (r == p == 2):
            return Fraction(0)
        return Fraction(1, p)
    raise InvalidRange(f"unknown closed sum {name!r}")


def alternating_power_sum(n: int, a: int) -> Fraction:
    """``sum_k C(n,k) (-1)^k k^a`` with the convention ``0^0 = 1``.

    Vanishes for 0 <= a <= n - 1.
    """
    if n < 0 or a < 0:
        raise InvalidRange(f"need n >= 0 and a >= 0, got n={n}, a={a}")
    total = Fraction(0)
    for k in range(n + 1):
        total += math.comb(n, k) * rat_pow(-1, k) * (Fraction(1) if a == 0 else rat_pow(k, a))
    return total


def alternating_reciprocal_sum(n: int) -> Fraction:
    """``sum_k C(n,k) (-1)^k / (k+1)``, equal to ``1/(n+1)``."""
    if n < 0:
        raise InvalidRange(f"need n >= 0, got {n}")
    total = Fraction(0)
    for k in range(n + 1):
        total += Fraction(math.comb(n, k) * rat_pow(-1, k), k + 1)
    return total


def binom_identities(n: int, a: int) -> tuple[Fraction, Fraction]:
    """Both alternating sums at once; the power sum needs 0 <= a <= n - 1."""
    if not (0 <= a <= n - 1):
        raise InvalidRange(f"the power-sum identity needs 0 <= a <= n-1, got n={n}, a={a}")
    return alternating_power_sum(n, a), alternating_reciprocal_sum(n)
