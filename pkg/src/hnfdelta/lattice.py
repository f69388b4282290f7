"""Exact integer matrices, fraction-free determinants and Hermite normal forms.

The Hermite normal form used here is lower triangular: ``A = M U`` with ``U``
unimodular, positive diagonal, and every entry left of the diagonal in row
``i`` reduced into ``[0, a_ii)``.  Rows of a matrix are the non-origin
vertices of a lattice simplex.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class SingularMatrix(ValueError):
    """Raised when an operation needs a nonsingular matrix."""


class MatrixParseError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix, stored row-major as nested tuples."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows:
            raise ValueError("matrix must have dimension >= 1")
        d = len(rows)
        for r in rows:
            if len(r) != d:
                raise ValueError(f"expected {d} entries per row, got {len(r)}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, d: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.dim))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_json(self) -> dict:
        return {"dim": self.dim, "rows": self.to_lists()}

    def to_text(self) -> str:
        lines = [str(self.dim)]
        lines += [" ".join(str(x) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)


@dataclass(frozen=True)
class Simplex:
    """Lattice simplex with vertices at the origin and at the rows of ``matrix``."""

    matrix: IntMatrix

    def __post_init__(self):
        if determinant(self.matrix) == 0:
            raise SingularMatrix("singular matrix")

    @property
    def dim(self) -> int:
        return self.matrix.dim

    def vertices(self) -> list[tuple[int, ...]]:
        return [(0,) * self.dim] + list(self.matrix.rows)


@dataclass(frozen=True)
class HnfMatrix:
    """Hermite normal form ``matrix`` of some ``original`` with ``original @ transform == matrix``."""

    matrix: IntMatrix
    transform: IntMatrix

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def det(self) -> int:
        p = 1
        for x in self.matrix.diagonal():
            p *= x
        return p


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = m.to_lists()
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
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def is_hnf(m: IntMatrix) -> bool:
    d = m.dim
    for i in range(d):
        if m[i, i] <= 0:
            return False
        for j in range(i + 1, d):
            if m[i, j] != 0:
                return False
        for j in range(i):
            if not 0 <= m[i, j] < m[i, i]:
                return False
    return True


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _col_combine(mats, i, j, p, q, r, s):
    # (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j); det [[p, r], [q, s]] = +-1
    for a in mats:
        for row in a:
            x, y = row[i], row[j]
            row[i] = p * x + q * y
            row[j] = r * x + s * y


def _col_addmul(mats, dst, src, k):
    # col_dst <- col_dst + k col_src
    for a in mats:
        for row in a:
            row[dst] += k * row[src]


def hermite_normal_form(m: IntMatrix) -> HnfMatrix:
    """Lower-triangular Hermite normal form by unimodular column operations.

    This is the transpose of the textbook row-style (upper triangular) HNF:
    each row is cleared to the right of the diagonal with extended-gcd column
    steps, then the finished row is reduced modulo its diagonal entry.

    >>> hermite_normal_form(IntMatrix.of([[1, 2], [3, 4]])).matrix.rows
    ((1, 0), (1, 2))
    """
    d = m.dim
    a = m.to_lists()
    u = IntMatrix.identity(d).to_lists()
    both = (a, u)
    for i in range(d):
        for j in range(i + 1, d):
            if a[i][j] == 0:
                continue
            x, y = a[i][i], a[i][j]
            g, p, q = _xgcd(x, y)
            # new col_i = p col_i + q col_j has entry g; new col_j kills entry
            _col_combine(both, i, j, p, q, -y // g, x // g)
        if a[i][i] == 0:
            raise SingularMatrix("singular matrix")
        if a[i][i] < 0:
            for mat in both:
                for row in mat:
                    row[i] = -row[i]
        piv = a[i][i]
        for j in range(i):
            k = a[i][j] // piv
            if k:
                _col_addmul(both, j, i, -k)
    return HnfMatrix(IntMatrix.of(a), IntMatrix.of(u))


def unimodularly_equivalent(m1: IntMatrix, m2: IntMatrix) -> bool:
    return hermite_normal_form(m1).matrix == hermite_normal_form(m2).matrix


# -- text / json I/O ---------------------------------------------------------

def parse_matrix_text(text: str) -> IntMatrix:
    """Parse ``d`` on the first line followed by ``d`` rows of ``d`` integers."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise MatrixParseError("empty input")
    try:
        d = int(lines[0])
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise MatrixParseError(str(exc)) from None
    if d < 1 or len(rows) != d:
        raise MatrixParseError(f"expected {d} rows, got {len(rows)}")
    for r in rows:
        if len(r) != d:
            raise MatrixParseError(f"ragged row: expected {d} entries, got {len(r)}")
    return IntMatrix.of(rows)


def parse_matrix_json(obj) -> IntMatrix:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise MatrixParseError(str(exc)) from None
    try:
        d = obj["dim"]
        rows = obj["rows"]
    except (KeyError, TypeError):
        raise MatrixParseError('expected an object with "dim" and "rows"') from None
    if not isinstance(d, int) or d < 1 or not isinstance(rows, list) or len(rows) != d:
        raise MatrixParseError("row count does not match dim")
    for r in rows:
        if not isinstance(r, list) or len(r) != d or not all(isinstance(x, int) for x in r):
            raise MatrixParseError(f"ragged or non-integer row: {r!r}")
    return IntMatrix.of(rows)


def parse_matrix(text: str) -> IntMatrix:
    """Accept either the plain text format or the JSON object format."""
    if text.lstrip().startswith("{"):
        return parse_matrix_json(text)
    return parse_matrix_text(text)


def elementary_unimodular(d: int, kind: str, i: int, j: int = 0, k: int = 1) -> IntMatrix:
    """Elementary unimodular matrix: ``swap`` (i, j), ``negate`` i, or ``add`` k * e_ij."""
    rows = IntMatrix.identity(d).to_lists()
    if kind == "swap":
        rows[i], rows[j] = rows[j], rows[i]
    elif kind == "negate":
        rows[i][i] = -1
    elif kind == "add":
        if i == j:
            raise ValueError("add needs i != j")
        rows[i][j] = k
    else:
        raise ValueError(kind)
    return IntMatrix.of(rows)


def product(mats: Sequence[IntMatrix], d: int) -> IntMatrix:
    out = IntMatrix.identity(d)
    for x in mats:
        out = out @ x
    return out
