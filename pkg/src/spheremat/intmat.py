"""Exact integer and residue matrices.

Everything in this module is integer arithmetic on plain Python ints, so
entries never overflow and determinants of huge conjugates stay exact.
Matrices are immutable (tuples of tuples) and hashable.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed."""


def _freeze(rows: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    out = []
    for row in rows:
        frozen = tuple(int(x) for x in row)
        out.append(frozen)
    return tuple(out)


class IntMatrix:
    """Immutable square matrix over the integers."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable[int]]):
        frozen = _freeze(rows)
        n = len(frozen)
        if n == 0:
            raise ValueError("dimension must be at least 1")
        if any(len(row) != n for row in frozen):
            raise ValueError("matrix must be square")
        self.n = n
        self.rows = frozen

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        n = self.n
        cols = tuple(zip(*other.rows))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows)
        )

    def __pow__(self, exponent: int) -> "IntMatrix":
        if exponent < 0:
            return self.inverse_unimodular() ** (-exponent)
        result = IntMatrix.identity(self.n)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-x for x in row) for row in self.rows))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({list(map(list, self.rows))})"

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def det(self) -> int:
        """Exact determinant: cofactor expansion for n <= 4, Bareiss beyond."""
        if self.n <= 4:
            return _det_cofactor(self.rows)
        return _det_bareiss(self.rows)

    def inverse_unimodular(self) -> "IntMatrix":
        """Exact inverse via the adjugate; input must have determinant +-1."""
        d = self.det()
        if d not in (1, -1):
            raise ValueError(f"matrix is not unimodular (det={d})")
        n = self.n
        if n == 1:
            return IntMatrix(((d,),))
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = tuple(
                    tuple(self.rows[r][c] for c in range(n) if c != j)
                    for r in range(n)
                    if r != i
                )
                cof = _det_cofactor(minor) if n - 1 <= 4 else _det_bareiss(minor)
                if (i + j) % 2:
                    cof = -cof
                adj[j][i] = cof * d
        return IntMatrix(adj)

    def reduce_mod(self, m: int) -> "ResidueMatrix":
        if m < 2:
            raise ValueError("modulus must be at least 2")
        return ResidueMatrix(tuple(tuple(x % m for x in row) for row in self.rows), m)


def _det_cofactor(rows) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j in range(n):
        a = rows[0][j]
        if a == 0:
            continue
        minor = tuple(tuple(row[c] for c in range(n) if c != j) for row in rows[1:])
        term = a * _det_cofactor(minor)
        total += term if j % 2 == 0 else -term
    return total


def _det_bareiss(rows) -> int:
    """Fraction-free Gaussian elimination; all divisions are exact."""
    a = [list(row) for row in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class ResidueMatrix:
    """Square matrix over Z_m, entries stored reduced to 0..m-1."""

    __slots__ = ("n", "m", "rows")

    def __init__(self, rows: Iterable[Iterable[int]], m: int):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        frozen = _freeze(rows)
        n = len(frozen)
        if n == 0:
            raise ValueError("dimension must be at least 1")
        if any(len(row) != n for row in frozen):
            raise ValueError("matrix must be square")
        self.n = n
        self.m = m
        self.rows = tuple(tuple(x % m for x in row) for row in frozen)

    @classmethod
    def identity(cls, n: int, m: int) -> "ResidueMatrix":
        return cls(IntMatrix.identity(n).rows, m)

    def lift(self) -> IntMatrix:
        """Integer matrix with entries in 0..m-1."""
        return IntMatrix(self.rows)

    def det(self) -> int:
        return self.lift().det() % self.m

    def __mul__(self, other: "ResidueMatrix") -> "ResidueMatrix":
        if not isinstance(other, ResidueMatrix):
            return NotImplemented
        if self.n != other.n or self.m != other.m:
            raise ValueError("dimension or modulus mismatch")
        n, m = self.n, self.m
        cols = tuple(zip(*other.rows))
        return ResidueMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % m for col in cols)
                for row in self.rows
            ),
            m,
        )

    def inverse(self) -> "ResidueMatrix":
        """Inverse mod m; the determinant must be a unit."""
        d = self.det()
        if math.gcd(d, self.m) != 1:
            raise ValueError(f"determinant {d} is not a unit mod {self.m}")
        lifted = self.lift()
        n, m = self.n, self.m
        dinv = pow(d, -1, m)
        if n == 1:
            return ResidueMatrix(((dinv,),), m)
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = tuple(
                    tuple(lifted.rows[r][c] for c in range(n) if c != j)
                    for r in range(n)
                    if r != i
                )
                cof = _det_cofactor(minor) if n - 1 <= 4 else _det_bareiss(minor)
                if (i + j) % 2:
                    cof = -cof
                adj[j][i] = (cof % m) * dinv % m
        return ResidueMatrix(adj, m)

    def __pow__(self, exponent: int) -> "ResidueMatrix":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ResidueMatrix.identity(self.n, self.m)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return self.rows == ResidueMatrix.identity(self.n, self.m).rows

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ResidueMatrix)
            and self.m == other.m
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.m, self.rows))

    def __repr__(self) -> str:
        return f"ResidueMatrix({list(map(list, self.rows))}, m={self.m})"


def elementary_matrix(n: int, i: int, j: int, t: int = 1) -> IntMatrix:
    """Identity plus t in position (i, j); indices are 1-based, i != j."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"indices ({i},{j}) out of range for n={n}")
    if i == j:
        raise ValueError("elementary matrix requires i != j")
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - 1][j - 1] = t
    return IntMatrix(rows)


def tau_matrix(n: int) -> IntMatrix:
    """Rotation by a quarter turn in the first two coordinates, identity elsewhere."""
    if n < 2:
        raise ValueError("tau requires n >= 2")
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[0][0] = 0
    rows[0][1] = -1
    rows[1][0] = 1
    rows[1][1] = 0
    return IntMatrix(rows)


def hyperbolic_check(a: IntMatrix) -> bool:
    """True iff a 2x2 determinant-one matrix has no eigenvalue on the unit circle.

    Equivalent to |trace| > 2: the characteristic roots are then a real pair
    (lambda, 1/lambda) with |lambda| > 1.
    """
    if a.n != 2:
        raise ValueError("hyperbolicity test is for 2x2 matrices")
    if a.det() != 1:
        raise ValueError("input must have determinant 1")
    return abs(a.trace()) > 2


def format_matrix(a: IntMatrix) -> str:
    """Text form: first line n, then n rows of space-separated integers."""
    lines = [str(a.n)]
    lines.extend(" ".join(str(x) for x in row) for row in a.rows)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> IntMatrix:
    """Inverse of format_matrix; raises MatrixFormatError on malformed input."""
    mats, rest = _parse_matrix_block(text.splitlines())
    if rest:
        raise MatrixFormatError("trailing content after matrix block")
    return mats


def parse_matrices(text: str) -> list[IntMatrix]:
    """Parse one or more concatenated matrix blocks."""
    lines = text.splitlines()
    out = []
    while any(line.strip() for line in lines):
        mat, lines = _parse_matrix_block(lines)
        out.append(mat)
    if not out:
        raise MatrixFormatError("no matrix found")
    return out


def _parse_matrix_block(lines: list[str]) -> tuple[IntMatrix, list[str]]:
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines):
        raise MatrixFormatError("no matrix found")
    header = lines[idx].split()
    if len(header) != 1:
        raise MatrixFormatError(f"expected dimension line, got {lines[idx]!r}")
    try:
        n = int(header[0])
    except ValueError as exc:
        raise MatrixFormatError(f"bad dimension line {lines[idx]!r}") from exc
    if n < 1:
        raise MatrixFormatError("dimension must be at least 1")
    rows = []
    idx += 1
    for _ in range(n):
        while idx < len(lines) and not lines[idx].strip():
            idx += 1
        if idx >= len(lines):
            raise MatrixFormatError(f"expected {n} rows")
        parts = lines[idx].split()
        if len(parts) != n:
            raise MatrixFormatError(f"row {lines[idx]!r} does not have {n} entries")
        try:
            rows.append([int(p) for p in parts])
        except ValueError as exc:
            raise MatrixFormatError(f"non-integer entry in row {lines[idx]!r}") from exc
        idx += 1
    return IntMatrix(rows), lines[idx:]
