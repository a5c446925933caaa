"""Exact rational arithmetic helpers.

All authoritative computations run over :class:`fractions.Fraction`.  The
routines here are written against the plain field operations, so the same
code also accepts ``float`` inputs; that is the inexact "shadow" backend used
for magnitude reporting only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class SingularError(ZeroDivisionError):
    """A denominator required by a formula vanishes at the given point."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional leading minus) into a Fraction."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational {text!r}; expected p/q or p")
    return Fraction(text)


def format_rational(x: Fraction | int) -> str:
    return str(Fraction(x))


def lift(x):
    """Promote ints to Fraction so that ``/`` stays exact; other types pass."""
    return Fraction(x) if isinstance(x, int) else x


def shadow(x) -> float:
    """Float image of an exact value (for reports and monitoring only)."""
    return float(x)


def nonzero(value, what: str):
    """Return ``value`` unchanged, raising SingularError if it is zero."""
    if value == 0:
        raise SingularError(f"vanishing denominator: {what}")
    return value


def pochhammer_t(a, t, k: int):
    """t-Pochhammer symbol (a; t)_k = (1 - a)(1 - a t)...(1 - a t^{k-1})."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = a * 0 + 1
    power = 1
    for _ in range(k):
        result *= 1 - a * power
        power *= t
    return result


# --------------------------------------------------------------------------
# skew matrices, Pfaffians, determinants


class SkewMatrix:
    """Even-dimensional antisymmetric matrix stored by its upper triangle.

    Entries are addressed 0-based; ``A[i, j]`` for ``i > j`` returns
    ``-A[j, i]`` and the diagonal is identically zero.
    """

    __slots__ = ("dim", "_upper")

    def __init__(self, dim: int, upper: dict[tuple[int, int], object] | None = None):
        if dim < 0 or dim % 2:
            raise ValueError(f"skew matrix dimension must be even, got {dim}")
        self.dim = dim
        self._upper: dict[tuple[int, int], object] = {}
        for (i, j), v in (upper or {}).items():
            self[i, j] = v

    @classmethod
    def from_function(cls, dim: int, entry) -> "SkewMatrix":
        """Build from ``entry(i, j)`` evaluated for ``i < j`` only."""
        m = cls(dim)
        for i in range(dim):
            for j in range(i + 1, dim):
                m._upper[i, j] = entry(i, j)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SkewMatrix":
        n = len(rows)
        for i in range(n):
            if rows[i][i] != 0:
                raise ValueError("diagonal of a skew matrix must vanish")
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not antisymmetric")
        return cls.from_function(n, lambda i, j: rows[i][j])

    def __getitem__(self, key: tuple[int, int]):
        i, j = key
        if i == j:
            return 0
        if i < j:
            return self._upper.get((i, j), 0)
        return -self._upper.get((j, i), 0)

    def __setitem__(self, key: tuple[int, int], value) -> None:
        i, j = key
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise IndexError(key)
        if i == j:
            if value != 0:
                raise ValueError("diagonal of a skew matrix must vanish")
            return
        if i < j:
            self._upper[i, j] = value
        else:
            self._upper[j, i] = -value

    def rows(self) -> list[list]:
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def permuted(self, perm: Sequence[int]) -> "SkewMatrix":
        """Simultaneous row/column permutation: new[i, j] = old[perm[i], perm[j]]."""
        return SkewMatrix.from_function(self.dim, lambda i, j: self[perm[i], perm[j]])


EXPANSION_LIMIT = 8


def pfaffian(A: SkewMatrix):
    """Pfaffian of ``A``; 1 for the empty matrix.

    Small matrices use first-row expansion, larger ones exact elimination.
    """
    if A.dim <= EXPANSION_LIMIT:
        return pfaffian_expand(A)
    return pfaffian_eliminate(A)


def pfaffian_expand(A: SkewMatrix):
    """Recursive expansion along the first row."""
    rows = A.rows()

    def rec(idx: tuple[int, ...]):
        if not idx:
            return 1
        first, rest = idx[0], idx[1:]
        total = 0
        for pos, j in enumerate(rest):
            a = rows[first][j]
            if a == 0:
                continue
            term = a * rec(rest[:pos] + rest[pos + 1:])
            total = total - term if pos % 2 else total + term
        return total

    return rec(tuple(range(A.dim)))


def pfaffian_eliminate(A: SkewMatrix):
    """Pfaffian by skew-symmetric Gaussian elimination (exact over Fraction).

    Each step pivots a nonzero entry into position (0, 1), factors it out and
    reduces to the Schur complement on the remaining indices.
    """
    m = [[lift(x) for x in r] for r in A.rows()]
    n = A.dim
    result = 1
    while n:
        k = next((c for c in range(1, n) if m[0][c] != 0), None)
        if k is None:
            return 0 * result
        if k != 1:
            # swap index 1 and k in rows and columns; flips the sign
            m[1], m[k] = m[k], m[1]
            for row in m:
                row[1], row[k] = row[k], row[1]
            result = -result
        a = m[0][1]
        result *= a
        r0, r1 = m[0], m[1]
        m = [
            [m[i][j] + (r1[i] * r0[j] - r0[i] * r1[j]) / a for j in range(2, n)]
            for i in range(2, n)
        ]
        n -= 2
    return result


def determinant(rows: Sequence[Sequence]):
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    m = [[lift(x) for x in r] for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0 * m[0][0]
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# --------------------------------------------------------------------------
# univariate polynomials


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial, coefficients lowest degree first, trimmed."""

    coefficients: tuple

    def __init__(self, coefficients: Iterable = ()):
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return Poly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    def scale(self, c) -> "Poly":
        return Poly(c * x for x in self.coefficients)


def interpolate(points: Sequence[tuple]) -> Poly:
    """Unique polynomial of degree < len(points) through ``points``.

    Uses Newton divided differences; raises ValueError on a repeated abscissa.
    """
    xs = [lift(p[0]) for p in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be pairwise distinct")
    n = len(points)
    coef = [lift(p[1]) for p in points]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    # expand the Newton form from the innermost term outward
    result = Poly()
    for i in range(n - 1, -1, -1):
        result = result * Poly((-xs[i], 1)) + Poly((coef[i],))
    return result
