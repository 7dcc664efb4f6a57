"""Partially ordered partitions and their enumeration.

A *partially ordered partition* of degree ``d`` with ``n`` ordered parts is a
pair ``(ordered, unordered)`` where ``ordered`` is an n-tuple of positive
integers with sum at most ``d`` and ``unordered`` is an (unordered) partition
of the remainder ``d - sum(ordered)``.  The *length* is ``n`` plus the number
of unordered parts.  The family ``Pi(d, n, k)`` collects those of length at
least ``d - k``; the bound ``k`` may be the distinguished value ``INF``.

The multi-component variant carries one pair per component, a degree vector,
and an ordered set partition of the marking labels ``{1..n}``.

Conventions used throughout:

* ordered parts are kept in the given order (they are labelled by markings);
* unordered parts are stored weakly decreasing;
* ``double_prime(p)`` is the subpartition of parts >= 2, ``triple_prime`` of
  parts >= 3;
* the canonical linear order on ``Pi(d, n, k)`` is the one realized by
  :func:`pop_sort_key` (see ``compare_pop``).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    IncomparableShapes,
    InvalidPartition,
    InvalidShape,
    PreconditionViolated,
)


class _Infinity:
    """Sentinel for an unbounded cutoff; compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __ge__(self, other):
        return True

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __lt__(self, other):
        return False

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("tautcomb-INF")


#: Distinguished unbounded cutoff for ``Pi(d, n, k)``.
INF = _Infinity()


def is_inf(k) -> bool:
    return isinstance(k, _Infinity)


def _check_cutoff(k) -> None:
    if is_inf(k):
        return
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidShape(f"cutoff must be a nonnegative integer or INF, got {k!r}")


def canonicalize(parts: Iterable[int]) -> tuple[int, ...]:
    """Sort a partition weakly decreasing, validating positivity.

    >>> canonicalize([1, 3, 2])
    (3, 2, 1)
    """
    out = tuple(sorted(parts, reverse=True))
    for p in out:
        if not isinstance(p, int) or isinstance(p, bool) or p <= 0:
            raise InvalidPartition(f"partition parts must be positive integers, got {p!r}")
    return out


def _check_tuple(parts: Sequence[int], what: str) -> tuple[int, ...]:
    out = tuple(parts)
    for p in out:
        if not isinstance(p, int) or isinstance(p, bool) or p <= 0:
            raise InvalidPartition(f"{what} parts must be positive integers, got {p!r}")
    return out


def aut_order(parts: Sequence[int]) -> int:
    """Order of the symmetry group of an unordered partition.

    Product of factorials of part multiplicities; 1 for the empty partition.
    """
    parts = canonicalize(parts)
    out = 1
    for _, grp in itertools.groupby(parts):
        out *= math.factorial(sum(1 for _ in grp))
    return out


def double_prime(parts: Sequence[int]) -> tuple[int, ...]:
    """Subpartition of parts >= 2, weakly decreasing."""
    return tuple(p for p in canonicalize(parts) if p >= 2)


def triple_prime(parts: Sequence[int]) -> tuple[int, ...]:
    """Subpartition of parts >= 3, weakly decreasing."""
    return tuple(p for p in canonicalize(parts) if p >= 3)


def subpartition_ge(parts: Sequence[int], threshold: int) -> tuple[int, ...]:
    """Subpartition of parts >= ``threshold``."""
    if threshold < 1:
        raise InvalidShape(f"threshold must be >= 1, got {threshold}")
    return tuple(p for p in canonicalize(parts) if p >= threshold)


@dataclass(frozen=True)
class POP:
    """One partially ordered partition ``(ordered, unordered)`` of degree d.

    ``ordered`` keeps the caller's order; ``unordered`` is stored weakly
    decreasing.  ``d`` is the total degree, so
    ``sum(ordered) + sum(unordered) == d``.
    """

    d: int
    ordered: tuple[int, ...]
    unordered: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ordered", _check_tuple(self.ordered, "ordered"))
        object.__setattr__(self, "unordered", canonicalize(self.unordered))
        if not isinstance(self.d, int) or self.d < 1:
            raise InvalidShape(f"degree must be a positive integer, got {self.d!r}")
        if len(self.ordered) < 1:
            raise InvalidShape("a partially ordered partition needs at least one ordered part")
        if sum(self.ordered) + sum(self.unordered) != self.d:
            raise InvalidPartition(
                f"parts sum to {sum(self.ordered) + sum(self.unordered)}, expected degree {self.d}"
            )

    @property
    def n(self) -> int:
        return len(self.ordered)

    def length(self) -> int:
        """n plus the number of unordered parts."""
        return len(self.ordered) + len(self.unordered)

    def all_parts(self) -> tuple[int, ...]:
        """Ordered followed by unordered parts (the full part list)."""
        return self.ordered + self.unordered

    def ordered_ge2(self) -> tuple[int, ...]:
        """Parts >= 2 of the ordered tuple, weakly decreasing."""
        return double_prime(self.ordered)

    def unordered_ge2(self) -> tuple[int, ...]:
        return double_prime(self.unordered)

    def to_json_dict(self) -> dict:
        return {"d": self.d, "ordered": list(self.ordered), "unordered": list(self.unordered)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "POP":
        try:
            return cls(int(data["d"]), tuple(data["ordered"]), tuple(data["unordered"]))
        except (KeyError, TypeError) as exc:
            raise InvalidShape(f"malformed partially ordered partition object: {data!r}") from exc


def pop_sort_key(pop: POP):
    """Sort key realizing the canonical linear order for fixed (d, n).

    Precedence: fewer parts >= 2 in the unordered partition first; then those
    parts compared lexicographically in increasing arrangement; then *more*
    unordered parts first; then the ordered tuple lexicographically.
    """
    u2 = tuple(sorted(p for p in pop.unordered if p >= 2))
    return (len(u2), u2, -len(pop.unordered), pop.ordered)


def compare_pop(a: POP, b: POP) -> int:
    """Three-way comparison in the canonical order; requires shared (d, n).

    Returns -1, 0, or 1.  Raises :class:`IncomparableShapes` when the two
    inputs have different degree or different ordered length.
    """
    if a.d != b.d or a.n != b.n:
        raise IncomparableShapes(
            f"cannot compare shapes (d={a.d}, n={a.n}) and (d={b.d}, n={b.n})"
        )
    ka, kb = pop_sort_key(a), pop_sort_key(b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def _partitions_of(total: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing partitions of ``total`` (including () for 0)."""
    if total == 0:
        yield ()
        return
    if max_part is None or max_part > total:
        max_part = total
    for first in range(max_part, 0, -1):
        for rest in _partitions_of(total - first, first):
            yield (first,) + rest


def _compositions(total: int, length: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``length`` positive integers summing to ``total``."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - length + 2):
        for rest in _compositions(total - first, length - 1):
            yield (first,) + rest


@cache
def enumerate_pop(d: int, n: int, k=INF) -> tuple[POP, ...]:
    """All partially ordered partitions in ``Pi(d, n, k)``, canonically sorted.

    ``k`` bounds the codimension: members have length >= d - k.  For
    ``k >= d - n`` the family is saturated and equals ``Pi(d, n, INF)``.

    >>> [p.to_json() for p in enumerate_pop(2, 1, INF)]  # doctest: +NORMALIZE_WHITESPACE
    ['{"d":2,"ordered":[1],"unordered":[1]}', '{"d":2,"ordered":[2],"unordered":[]}']
    """
    if not isinstance(d, int) or d < 1:
        raise InvalidShape(f"degree must be a positive integer, got {d!r}")
    if not isinstance(n, int) or n < 1:
        raise InvalidShape(f"ordered length must be a positive integer, got {n!r}")
    if n > d:
        raise InvalidShape(f"ordered length {n} exceeds degree {d}")
    _check_cutoff(k)
    min_length = 0 if is_inf(k) else d - k
    out = []
    for s in range(n, d + 1):
        for ordered in _compositions(s, n):
            for unordered in _partitions_of(d - s):
                if n + len(unordered) >= min_length:
                    out.append(POP(d, ordered, unordered))
    out.sort(key=pop_sort_key)
    return tuple(out)


@dataclass(frozen=True)
class MultiPOP:
    """A component tuple of partially ordered partitions with marking sets.

    ``components[i]`` is the POP of component i; ``marking_sets[i]`` lists the
    marking labels attached to component i, and the concatenation of all
    marking sets must be a partition of ``{1..n}`` with
    ``components[i].n == len(marking_sets[i])`` and every block nonempty.
    """

    components: tuple[POP, ...]
    marking_sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(
            self, "marking_sets", tuple(tuple(s) for s in self.marking_sets)
        )
        if len(self.components) < 1:
            raise InvalidShape("need at least one component")
        if len(self.components) != len(self.marking_sets):
            raise InvalidShape(
                f"{len(self.components)} components but {len(self.marking_sets)} marking sets"
            )
        seen: set[int] = set()
        for pop, marks in zip(self.components, self.marking_sets):
            if len(marks) == 0:
                raise InvalidShape("every marking set must be nonempty")
            if pop.n != len(marks):
                raise InvalidShape(
                    f"component with {pop.n} ordered parts carries {len(marks)} markings"
                )
            if pop.d < len(marks):
                raise InvalidShape("component degree below its marking count")
            seen.update(marks)
        n = self.n
        if seen != set(range(1, n + 1)):
            raise InvalidShape(f"marking sets must partition 1..{n}, got {sorted(seen)}")

    @property
    def c(self) -> int:
        return len(self.components)

    @property
    def n(self) -> int:
        return sum(len(s) for s in self.marking_sets)

    @property
    def d(self) -> int:
        return sum(p.d for p in self.components)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.d for p in self.components)

    def length(self) -> int:
        """Total length: n plus all unordered parts across components."""
        return self.n + sum(len(p.unordered) for p in self.components)

    def to_json_dict(self) -> dict:
        return {
            "components": [p.to_json_dict() for p in self.components],
            "markingSets": [list(s) for s in self.marking_sets],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "MultiPOP":
        try:
            comps = tuple(POP.from_json_dict(p) for p in data["components"])
            marks = tuple(tuple(int(x) for x in s) for s in data["markingSets"])
        except (KeyError, TypeError) as exc:
            raise InvalidShape(f"malformed multi-component object: {data!r}") from exc
        return cls(comps, marks)


def multi_sort_key(mp: MultiPOP):
    return tuple(pop_sort_key(p) for p in mp.components)


def compare_pop_multi(a: MultiPOP, b: MultiPOP) -> int:
    """Component-lexicographic comparison (component 1 most significant)."""
    if a.degrees != b.degrees or a.marking_sets != b.marking_sets:
        raise IncomparableShapes("multi-component shapes disagree in degrees or marking sets")
    ka, kb = multi_sort_key(a), multi_sort_key(b)
    return -1 if ka < kb else (1 if ka > kb else 0)


def canonical_marking_sets(cards: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Consecutive blocks ``(1..m1), (m1+1..m1+m2), ...`` for given sizes."""
    out = []
    nxt = 1
    for m in cards:
        if not isinstance(m, int) or m < 1:
            raise InvalidShape(f"marking-set sizes must be positive integers, got {m!r}")
        out.append(tuple(range(nxt, nxt + m)))
        nxt += m
    return tuple(out)


def enumerate_pop_multi(
    degrees: Sequence[int],
    marking_sets: Sequence[Sequence[int]],
    k=INF,
) -> tuple[MultiPOP, ...]:
    """All members of the multi-component family, canonically sorted.

    Members are component tuples whose total length (n plus all unordered
    parts) is at least ``sum(degrees) - k``.
    """
    degrees = tuple(degrees)
    marking_sets = tuple(tuple(s) for s in marking_sets)
    if len(degrees) != len(marking_sets):
        raise InvalidShape("degree vector and marking sets must have equal length")
    _check_cutoff(k)
    d = sum(degrees)
    n = sum(len(s) for s in marking_sets)
    for di, si in zip(degrees, marking_sets):
        if not isinstance(di, int) or di < 1:
            raise InvalidShape(f"degrees must be positive integers, got {di!r}")
        if not (di >= len(si) > 0):
            raise InvalidShape(
                f"need degree >= marking count > 0 per component, got d={di}, |n|={len(si)}"
            )
    min_length = 0 if is_inf(k) else d - n - k  # slack allowed in unordered parts
    # Component i contributes len(unordered) extra length; pick per-component
    # members whose extra lengths sum to at least d - k - n.
    per_comp = [enumerate_pop(di, len(si), INF) for di, si in zip(degrees, marking_sets)]
    out = []
    for combo in itertools.product(*per_comp):
        extra = sum(len(p.unordered) for p in combo)
        if extra >= min_length:
            out.append(MultiPOP(combo, marking_sets))
    out.sort(key=multi_sort_key)
    return tuple(out)


def stabilization_cutoff(d: int, n: int) -> int:
    """Least k at which ``Pi(d, n, k)`` saturates (namely d - n)."""
    return d - n


def lower_one_step(pop: POP, position: int) -> POP:
    """Reduce ordered part ``position`` by one and append a unit part.

    The degree is preserved; the ordered part must stay >= 1.
    """
    if not (0 <= position < pop.n):
        raise InvalidShape(f"no ordered part at position {position}")
    if pop.ordered[position] < 2:
        raise PreconditionViolated("cannot lower an ordered part below 1")
    ordered = list(pop.ordered)
    ordered[position] -= 1
    return POP(pop.d, tuple(ordered), pop.unordered + (1,))
