"""Exact algebra: rationals, Laurent polynomials in t, truncated classes, matrices.

All arithmetic is exact.  Rationals are ``fractions.Fraction``; a Laurent
polynomial in the equivariant weight ``t`` is a sparse exponent-to-coefficient
map; a :class:`FormalClass` is a polynomial in nilpotent generators (cotangent
and Hodge symbols) with Laurent coefficients, truncated per generator group.

The matrix layer keeps its index (a tuple of partition objects) attached so
that shape mismatches surface as errors instead of silent misalignment.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DivisionByZero, IncompatibleIndices, InvalidShape

Rational = Fraction


def rat(num, den=1) -> Fraction:
    """Exact rational constructor (thin veneer over ``Fraction``)."""
    return Fraction(num, den)


def rat_pow(base: Fraction | int, exp: int) -> Fraction:
    """``base ** exp`` over the rationals, exact for negative exponents.

    The convention ``0 ** 0 == 1`` is used; a negative power of zero raises.
    """
    base = Fraction(base)
    if exp == 0:
        return Fraction(1)
    if base == 0:
        if exp > 0:
            return Fraction(0)
        raise DivisionByZero("zero cannot be raised to a negative power")
    return base**exp


def rat_inverse(x) -> Fraction:
    x = Fraction(x)
    if x == 0:
        raise DivisionByZero("inverse of zero")
    return 1 / x


def rat_to_str(x: Fraction) -> str:
    """Canonical string: ``num/den`` in lowest terms, or plain integer."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


class Laurent:
    """Sparse Laurent polynomial in ``t`` with rational coefficients.

    Stored as ``{exponent: coefficient}`` with no zero coefficients.
    Supports +, -, *, scalar multiplication, and exact division by a
    monomial-free check via :meth:`inverse_of_monomial`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Fraction] | None = None):
        clean: dict[int, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    clean[int(e)] = c
        self.coeffs = clean

    @classmethod
    def term(cls, coeff, exponent: int = 0) -> "Laurent":
        return cls({exponent: Fraction(coeff)})

    @classmethod
    def zero(cls) -> "Laurent":
        return cls()

    @classmethod
    def one(cls) -> "Laurent":
        return cls.term(1, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, exponent: int) -> Fraction:
        return self.coeffs.get(exponent, Fraction(0))

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Laurent(out)

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Laurent({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def inverse_of_monomial(self) -> "Laurent":
        """Inverse, defined only for a single nonzero term ``c t^e``."""
        if self.is_zero():
            raise DivisionByZero("inverse of the zero Laurent polynomial")
        if not self.is_monomial():
            raise InvalidShape("only monomials are invertible in the Laurent layer")
        ((e, c),) = self.coeffs.items()
        return Laurent({-e: 1 / c})

    def __eq__(self, other) -> bool:
        return isinstance(other, Laurent) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                bits.append(rat_to_str(c))
            else:
                lead = "" if c == 1 else ("-" if c == -1 else rat_to_str(c) + "*")
                bits.append(f"{lead}t^{e}" if e != 1 else f"{lead}t")
        return " + ".join(bits).replace("+ -", "- ")

    def to_json_dict(self) -> dict:
        return {str(e): rat_to_str(c) for e, c in sorted(self.coeffs.items())}


# A generator is ("psi", factor, slot) or ("lam", factor, j); degree of a
# cotangent symbol is 1, of the j-th Hodge symbol is j.  ``factor`` names the
# truncation group it lives in ("q0", "qinf", or "v<id>").
Generator = tuple[str, str, int]


def generator_degree(gen: Generator) -> int:
    kind, _factor, idx = gen
    if kind == "psi":
        return 1
    if kind == "lam":
        return idx
    raise InvalidShape(f"unknown generator kind {kind!r}")


Monomial = tuple[tuple[Generator, int], ...]  # sorted ((gen, exponent), ...)


def _monomial_factor_degrees(mon: Monomial) -> dict[str, int]:
    out: dict[str, int] = {}
    for gen, exp in mon:
        f = gen[1]
        out[f] = out.get(f, 0) + generator_degree(gen) * exp
    return out


class FormalClass:
    """Truncated polynomial in nilpotent generators over Laurent coefficients.

    ``terms`` maps monomials (sorted tuples of (generator, exponent) pairs) to
    nonzero Laurent coefficients.  ``truncations`` bounds the total generator
    degree allowed per factor group; any monomial exceeding a bound is dropped,
    which is what makes the generators behave as nilpotents of the right order.
    """

    __slots__ = ("terms", "truncations")

    def __init__(
        self,
        terms: Mapping[Monomial, Laurent] | None = None,
        truncations: Mapping[str, int] | None = None,
    ):
        self.truncations: dict[str, int] = dict(truncations or {})
        clean: dict[Monomial, Laurent] = {}
        for mon, coeff in (terms or {}).items():
            mon = tuple(sorted(((tuple(g), int(e)) for g, e in mon if e)))
            if not isinstance(coeff, Laurent):
                coeff = Laurent.term(coeff)
            if coeff.is_zero() or not self._admits(mon):
                continue
            if mon in clean:
                coeff = clean[mon] + coeff
            if coeff.is_zero():
                clean.pop(mon, None)
            else:
                clean[mon] = coeff
        self.terms = clean

    def _admits(self, mon: Monomial) -> bool:
        for factor, deg in _monomial_factor_degrees(mon).items():
            bound = self.truncations.get(factor)
            if bound is None:
                raise InvalidShape(f"generator group {factor!r} has no truncation bound")
            if deg > bound:
                return False
        return True

    @classmethod
    def scalar(cls, coeff, truncations: Mapping[str, int] | None = None) -> "FormalClass":
        coeff = coeff if isinstance(coeff, Laurent) else Laurent.term(coeff)
        return cls({(): coeff}, truncations)

    @classmethod
    def generator_term(
        cls, gen: Generator, coeff, truncations: Mapping[str, int]
    ) -> "FormalClass":
        coeff = coeff if isinstance(coeff, Laurent) else Laurent.term(coeff)
        return cls({((tuple(gen), 1),): coeff}, truncations)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mon: Monomial) -> Laurent:
        key = tuple(sorted(((tuple(g), int(e)) for g, e in mon if e)))
        return self.terms.get(key, Laurent.zero())

    def scalar_part(self) -> Laurent:
        return self.terms.get((), Laurent.zero())

    @staticmethod
    def _merge_truncations(a: Mapping[str, int], b: Mapping[str, int]) -> dict[str, int]:
        out = dict(a)
        for f, bound in b.items():
            out[f] = min(bound, out[f]) if f in out else bound
        return out

    def __add__(self, other: "FormalClass") -> "FormalClass":
        trunc = self._merge_truncations(self.truncations, other.truncations)
        terms: dict[Monomial, Laurent] = dict(self.terms)
        for mon, c in other.terms.items():
            terms[mon] = terms.get(mon, Laurent.zero()) + c
        return FormalClass(terms, trunc)

    def __neg__(self) -> "FormalClass":
        return FormalClass({m: -c for m, c in self.terms.items()}, self.truncations)

    def __sub__(self, other: "FormalClass") -> "FormalClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Laurent)):
            other_l = other if isinstance(other, Laurent) else Laurent.term(other)
            return FormalClass(
                {m: c * other_l for m, c in self.terms.items()}, self.truncations
            )
        trunc = self._merge_truncations(self.truncations, other.truncations)
        terms: dict[Monomial, Laurent] = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                merged = dict(d1)
                for gen, exp in m2:
                    merged[gen] = merged.get(gen, 0) + exp
                mon = tuple(sorted(merged.items()))
                prev = terms.get(mon)
                prod = c1 * c2
                terms[mon] = prod if prev is None else prev + prod
        return FormalClass(terms, trunc)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormalClass)
            and self.terms == other.terms
            and self.truncations == other.truncations
        )

    def __repr__(self):
        if not self.terms:
            return "FormalClass(0)"
        bits = []
        for mon in sorted(self.terms):
            coeff = self.terms[mon]
            gens = "*".join(
                f"{k}_{f}[{i}]" + (f"^{e}" if e > 1 else "") for (k, f, i), e in mon
            )
            bits.append(f"({coeff})" + (f"*{gens}" if gens else ""))
        return "FormalClass(" + " + ".join(bits) + ")"

    def to_json_dict(self) -> dict:
        term_list = []
        for mon in sorted(self.terms):
            term_list.append(
                {
                    "monomial": [[k, f, i, e] for (k, f, i), e in mon],
                    "coeff": self.terms[mon].to_json_dict(),
                }
            )
        return {"terms": term_list, "truncations": dict(sorted(self.truncations.items()))}


def formal_geom_expand(
    weight: Laurent, gen: Generator, truncation: int, extra_truncations: Mapping[str, int] | None = None
) -> FormalClass:
    """Expansion of ``1 / (weight - gen)`` as a truncated geometric series.

    ``weight`` must be a nonzero multiple of ``t`` (a single term ``c t``);
    the result is ``sum_{a=0}^{D} gen^a weight^-(a+1)`` with ``D`` the
    truncation bound of the generator's factor group.
    """
    if weight.is_zero():
        raise DivisionByZero("expansion weight must be nonzero")
    if not weight.is_monomial() or 1 not in weight.coeffs:
        raise InvalidShape(f"expansion weight must be a single multiple of t, got {weight!r}")
    c = weight.coeffs[1]
    if truncation < 0:
        truncation = 0
    gen = tuple(gen)
    factor = gen[1]
    trunc = {factor: truncation}
    if extra_truncations:
        trunc.update(extra_truncations)
    terms: dict[Monomial, Laurent] = {}
    for a in range(truncation + 1):
        mon: Monomial = ((gen, a),) if a else ()
        terms[mon] = Laurent({-(a + 1): rat_pow(c, -(a + 1))})
    return FormalClass(terms, trunc)


class IndexedMatrix:
    """Square matrix of rationals carrying its index objects.

    ``index`` is the tuple of row/column labels (partition objects in
    canonical order); ``entries[i][j]`` is the value at (index[i], index[j]).
    """

    __slots__ = ("index", "entries")

    def __init__(self, index: Sequence, entries: Sequence[Sequence[Fraction]]):
        self.index = tuple(index)
        n = len(self.index)
        rows = [tuple(Fraction(x) for x in row) for row in entries]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InvalidShape(f"entries must form a {n}x{n} square matrix")
        self.entries = tuple(rows)

    @property
    def size(self) -> int:
        return len(self.index)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IndexedMatrix)
            and self.index == other.index
            and self.entries == other.entries
        )

    def multiply(self, other: "IndexedMatrix") -> "IndexedMatrix":
        if self.index != other.index:
            raise IncompatibleIndices("matrix product requires identical indices")
        n = self.size
        cols = list(zip(*other.entries))
        out = [
            [sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
            for row in self.entries
        ]
        return IndexedMatrix(self.index, out)

    def scale_columns(self, scalars: Sequence[Fraction]) -> "IndexedMatrix":
        if len(scalars) != self.size:
            raise IncompatibleIndices("one scalar per column required")
        out = [
            [v * Fraction(s) for v, s in zip(row, scalars)] for row in self.entries
        ]
        return IndexedMatrix(self.index, out)

    def transpose(self) -> "IndexedMatrix":
        return IndexedMatrix(self.index, list(zip(*self.entries)))

    def determinant(self) -> Fraction:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        n = self.size
        if n == 0:
            return Fraction(1)
        a = [list(row) for row in self.entries]
        sign = 1
        prev = Fraction(1)
        for k in range(n - 1):
            if a[k][k] == 0:
                for r in range(k + 1, n):
                    if a[r][k] != 0:
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
                a[i][k] = Fraction(0)
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_invertible(self) -> bool:
        return self.determinant() != 0

    def is_unit_upper_triangular(self) -> tuple[bool, tuple[int, int] | None]:
        """Check 1s on the diagonal and 0s strictly below.

        Returns ``(ok, witness)`` where the witness is the first offending
        (row, column) position in row-major order, or ``None``.
        """
        for i, row in enumerate(self.entries):
            for j in range(i + 1):
                expected = Fraction(1) if i == j else Fraction(0)
                if row[j] != expected:
                    return False, (i, j)
        return True, None

    def to_json_dict(self) -> dict:
        idx = [
            (obj.to_json_dict() if hasattr(obj, "to_json_dict") else obj)
            for obj in self.index
        ]
        return {
            "index": idx,
            "entries": [[rat_to_str(v) for v in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    def to_csv(self) -> str:
        """CSV body rows preceded by '#'-prefixed index legend rows."""
        lines = []
        for i, obj in enumerate(self.index):
            label = obj.to_json() if hasattr(obj, "to_json") else json.dumps(obj)
            lines.append(f"# {i},{label}")
        for row in self.entries:
            lines.append(",".join(rat_to_str(v) for v in row))
        return "\n".join(lines) + "\n"
