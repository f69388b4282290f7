"""delta-vectors (h*-vectors) of lattice simplices given in Hermite normal form.

Every congruence index ``(i_1, ..., i_d)`` with ``1 <= i_k <= a_kk`` picks
out one residue class of barycentric coordinates; its first dilation with an
interior point is ``s``, and it contributes ``t**(d + 1 - s)`` to the
delta-polynomial.  Closed forms for the one-row and two-row shapes live here
too, along with the shifted-symmetry and Stanley/Hibi predicates.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .lattice import HnfMatrix, IntMatrix, is_hnf


class InvalidForm(ValueError):
    pass


class IndexOutOfBounds(IndexError):
    pass


@dataclass(frozen=True)
class DeltaVector:
    """Coefficients ``(delta_0, ..., delta_d)``; ``dim`` is ``len(coeffs) - 1``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if len(c) < 2:
            raise ValueError("a delta-vector needs dimension >= 1")
        if c[0] != 1:
            raise ValueError(f"delta_0 must be 1, got {c[0]}")
        if any(x < 0 for x in c):
            raise ValueError("delta entries must be nonnegative")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def parse(cls, text: str) -> "DeltaVector":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x != ""))

    @classmethod
    def from_exponents(cls, d: int, exponents: Sequence[int]) -> "DeltaVector":
        """``1 + sum(t**e for e in exponents)``."""
        c = [1] + [0] * d
        for e in exponents:
            c[e] += 1
        return cls(tuple(c))

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    @property
    def volume(self) -> int:
        return sum(self.coeffs)

    def exponents(self) -> tuple[int, ...]:
        """Nonzero exponents with multiplicity, ascending; the constant term is left out."""
        return tuple(j for j, c in enumerate(self.coeffs) if j > 0 for _ in range(c))

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.coeffs)

    def polynomial(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
                continue
            mono = "t" if j == 1 else f"t^{j}"
            terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)


def _hnf_rows(a) -> tuple[tuple[int, ...], ...]:
    m = a.matrix if isinstance(a, HnfMatrix) else a
    if not is_hnf(m):
        raise ValueError("matrix is not in Hermite normal form")
    return m.rows


def frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def congruence_indices(a) -> Iterator[tuple[int, ...]]:
    """All indices ``(i_1, ..., i_d)`` in lexicographic order."""
    rows = _hnf_rows(a)
    return itertools.product(*(range(1, rows[k][k] + 1) for k in range(len(rows))))


def _s_value(rows, idx) -> int:
    d = len(rows)
    lam = [Fraction(0)] * d
    for k in range(d - 1, -1, -1):
        carry = sum((rows[h][k] * lam[h] for h in range(k + 1, d)), Fraction(0))
        lam[k] = (idx[k] - frac(carry)) / rows[k][k]
    return math.floor(sum(lam)) + 1


def s_value(a, idx: Sequence[int]) -> int:
    """First dilation in which the congruence class ``idx`` has an interior point."""
    rows = _hnf_rows(a)
    if len(idx) != len(rows) or any(not 1 <= i <= rows[k][k] for k, i in enumerate(idx)):
        raise IndexOutOfBounds(f"index {tuple(idx)} out of bounds")
    return _s_value(rows, idx)


def s_values(a) -> list[tuple[tuple[int, ...], int]]:
    rows = _hnf_rows(a)
    return [(idx, _s_value(rows, idx)) for idx in congruence_indices(a)]


def delta_from_hnf(a) -> DeltaVector:
    """delta-vector of the simplex spanned by the rows of an HNF and the origin.

    >>> delta_from_hnf(IntMatrix.of([[1, 0], [1, 2]])).coeffs
    (1, 1, 0)
    """
    rows = _hnf_rows(a)
    d = len(rows)
    c = [0] * (d + 1)
    for idx in itertools.product(*(range(1, rows[k][k] + 1) for k in range(d))):
        c[d + 1 - _s_value(rows, idx)] += 1
    return DeltaVector(tuple(c))


# -- one-row forms -----------------------------------------------------------

def _distinct_arrangements(counts: dict[int, int]) -> Iterator[tuple[int, ...]]:
    """Distinct orderings of a multiset given as ``value -> count``."""
    n = sum(counts.values())
    if n == 0:
        yield ()
        return
    for v in sorted(counts):
        if counts[v]:
            counts[v] -= 1
            for rest in _distinct_arrangements(counts):
                yield (v,) + rest
            counts[v] += 1


@dataclass(frozen=True)
class OneRowForm:
    """HNF that is the identity except for one row ``(a_1, ..., a_{k-1}, D, 0, ..., 0)``.

    ``multiplicities[j - 1]`` is the number of entries equal to ``j`` among
    the ``a_l``; ``row_position`` is 1-based.
    """

    dim: int
    det: int
    multiplicities: tuple[int, ...]
    row_position: int | None = None

    def __post_init__(self):
        mult = tuple(int(x) for x in self.multiplicities)
        object.__setattr__(self, "multiplicities", mult)
        if self.row_position is None:
            object.__setattr__(self, "row_position", self.dim)
        if self.dim < 1 or self.det < 2:
            raise InvalidForm("one-row form needs dim >= 1 and det >= 2")
        if len(mult) != self.det - 1:
            raise InvalidForm(f"expected {self.det - 1} multiplicities, got {len(mult)}")
        if any(x < 0 for x in mult):
            raise InvalidForm("multiplicities must be nonnegative")
        if sum(mult) > self.dim - 1:
            raise InvalidForm(f"sum of multiplicities {sum(mult)} exceeds d - 1 = {self.dim - 1}")
        if not 1 <= self.row_position <= self.dim or sum(mult) > self.row_position - 1:
            raise InvalidForm(f"row {self.row_position} has too few slots")

    def _matrix(self, k: int, entries: Sequence[int]) -> IntMatrix:
        rows = IntMatrix.identity(self.dim).to_lists()
        rows[k - 1][k - 1] = self.det
        rows[k - 1][: k - 1] = list(entries)
        return IntMatrix.of(rows)

    def expand(self) -> IntMatrix:
        """Matrix at ``row_position`` with entries 1s first, then 2s, ..., zeros last."""
        k = self.row_position
        entries = [j for j, c in enumerate(self.multiplicities, 1) for _ in range(c)]
        entries += [0] * (k - 1 - len(entries))
        return self._matrix(k, entries)

    def expand_all(self) -> Iterator[IntMatrix]:
        """Every matrix of this shape, over all row positions and arrangements."""
        used = sum(self.multiplicities)
        for k in range(used + 1, self.dim + 1):
            counts = {j: c for j, c in enumerate(self.multiplicities, 1) if c}
            counts[0] = k - 1 - used
            for entries in _distinct_arrangements(counts):
                yield self._matrix(k, entries)

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "OneRowForm | None":
        """Recognise a one-row HNF; ``None`` if ``m`` has another shape."""
        if not is_hnf(m):
            return None
        big = [i for i, x in enumerate(m.diagonal()) if x > 1]
        if len(big) != 1:
            return None
        k = big[0]
        D = m[k, k]
        for i in range(m.dim):
            if i != k and any(m[i, j] for j in range(i)):
                return None
        mult = [0] * (D - 1)
        for j in range(k):
            if m[k, j]:
                mult[m[k, j] - 1] += 1
        return cls(m.dim, D, tuple(mult), k + 1)


def one_row_s_values(f: OneRowForm) -> list[int]:
    """``s_i`` for ``i = 1..D`` from the closed form of the one-row shape."""
    d, D = f.dim, f.det
    out = []
    for i in range(1, D + 1):
        num = i - sum(((i * j) % D) * dj for j, dj in enumerate(f.multiplicities, 1))
        out.append(num // D + d)
    return out


def delta_one_row(f: OneRowForm) -> DeltaVector:
    return _from_s(f.dim, one_row_s_values(f))


def _from_s(d: int, svals: Sequence[int]) -> DeltaVector:
    c = [0] * (d + 1)
    for s in svals:
        c[d + 1 - s] += 1
    return DeltaVector(tuple(c))


def delta_all_Dminus1(D: int, d: int) -> DeltaVector:
    """delta-vector of the one-row form whose first ``d - 1`` entries all equal ``D - 1``."""
    if D < 2 or d < 1:
        raise InvalidForm("need D >= 2 and d >= 1")
    return _from_s(d, [i * d // D + 1 for i in range(1, D + 1)])


# -- two-row forms (determinant 4, two diagonal 2s) --------------------------

@dataclass(frozen=True)
class TwoRowForm:
    """Identity except two rows with diagonal 2, at ``d - 1`` and ``d`` when expanded.

    ``first_row_ones`` (d_1) counts 1s in the first special row,
    ``second_row_ones`` (d_1') counts 1s in the second one outside the column
    of the first special row, whose entry is ``bar``.  ``disjoint_ones`` are
    the 1s of each row sitting over a 0 of the other.
    """

    dim: int
    first_row_ones: int
    second_row_ones: int
    bar: int
    disjoint_ones: tuple[int, int]

    def __post_init__(self):
        d, d1, d1p = self.dim, self.first_row_ones, self.second_row_ones
        e1, e1p = self.disjoint_ones
        object.__setattr__(self, "disjoint_ones", (int(e1), int(e1p)))
        if d < 2:
            raise InvalidForm("two-row form needs dim >= 2")
        if self.bar not in (0, 1):
            raise InvalidForm("bar entry must be 0 or 1")
        if not (0 <= e1 <= d1 and 0 <= e1p <= d1p) or d1 - e1 != d1p - e1p:
            raise InvalidForm("inconsistent overlap counts")
        check_two_row_params(d, d1, d1p, e1 + e1p)

    @property
    def symmetric_difference(self) -> int:
        """d_1'' = e_1 + e_1'."""
        return sum(self.disjoint_ones)

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.first_row_ones, self.second_row_ones, self.symmetric_difference)

    @classmethod
    def from_params(cls, d: int, d1: int, d1p: int, d1pp: int, bar: int) -> "TwoRowForm":
        check_two_row_params(d, d1, d1p, d1pp)
        both = (d1 + d1p - d1pp) // 2
        return cls(d, d1, d1p, bar, (d1 - both, d1p - both))

    def _column_types(self) -> dict[tuple[int, int], int]:
        both = self.first_row_ones - self.disjoint_ones[0]
        return {(1, 1): both, (1, 0): self.disjoint_ones[0], (0, 1): self.disjoint_ones[1]}

    @staticmethod
    def _matrix(d, p, q, bar, before, between) -> IntMatrix:
        rows = IntMatrix.identity(d).to_lists()
        rows[p][p] = rows[q][q] = 2
        rows[q][p] = bar
        for c, (x, y) in enumerate(before):
            rows[p][c], rows[q][c] = x, y
        for c, y in enumerate(between, p + 1):
            rows[q][c] = y
        return IntMatrix.of(rows)

    def expand(self) -> IntMatrix:
        """Special rows last; columns filled with shared 1s, then first-row-only, then second-row-only."""
        d = self.dim
        t = self._column_types()
        before = [(1, 1)] * t[1, 1] + [(1, 0)] * t[1, 0] + [(0, 1)] * t[0, 1]
        before += [(0, 0)] * (d - 2 - len(before))
        return self._matrix(d, d - 2, d - 1, self.bar, before, [])

    def expand_all(self) -> Iterator[IntMatrix]:
        """Every two-row HNF with these parameters, over all row pairs and column layouts."""
        d = self.dim
        t = self._column_types()
        n11, n10, n01 = t[1, 1], t[1, 0], t[0, 1]
        for q in range(1, d):
            for p in range(q):
                if n11 + n10 > p:
                    continue
                # second-row-only ones split between columns before p and between p and q
                for k in range(n01 + 1):
                    zeros_before = p - n11 - n10 - k
                    zeros_between = q - p - 1 - (n01 - k)
                    if zeros_before < 0 or zeros_between < 0:
                        continue
                    counts = {(1, 1): n11, (1, 0): n10, (0, 1): k, (0, 0): zeros_before}
                    for before in _distinct_arrangements(counts):
                        for between in _distinct_arrangements({1: n01 - k, 0: zeros_between}):
                            yield self._matrix(d, p, q, self.bar, before, between)

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "TwoRowForm | None":
        if not is_hnf(m):
            return None
        big = [i for i, x in enumerate(m.diagonal()) if x > 1]
        if len(big) != 2 or any(m[i, i] != 2 for i in big):
            return None
        p, q = big
        for i in range(m.dim):
            if i not in big and any(m[i, j] for j in range(i)):
                return None
        rp = [m[p, c] for c in range(q)]
        rq = [m[q, c] for c in range(q)]
        cols = [c for c in range(q) if c != p]
        d1 = sum(rp[c] for c in cols)
        d1p = sum(rq[c] for c in cols)
        e1 = sum(1 for c in cols if rp[c] and not rq[c])
        e1p = sum(1 for c in cols if rq[c] and not rp[c])
        return cls(m.dim, d1, d1p, m[q, p], (e1, e1p))


def check_two_row_params(d: int, d1: int, d1p: int, d1pp: int) -> None:
    """Range, triangle and parity conditions a (d_1, d_1', d_1'') triple must meet."""
    if not all(0 <= x <= d - 2 for x in (d1, d1p, d1pp)):
        raise InvalidForm("two-row parameters must lie in [0, d - 2]")
    if d1 + d1p + d1pp > 2 * (d - 2):
        raise InvalidForm("d_1 + d_1' + d_1'' exceeds 2(d - 2)")
    if d1 > d1p + d1pp or d1p > d1 + d1pp or d1pp > d1 + d1p:
        raise InvalidForm("two-row parameters violate the triangle inequality")
    if (d1 + d1p + d1pp) % 2:
        raise InvalidForm("d_1 + d_1' + d_1'' must be even")


def two_row_exponents(d: int, d1: int, d1p: int, d1pp: int, bar: int) -> tuple[int, int, int]:
    """The three nonzero exponents of a two-row form, in the closed form's order."""
    if bar == 0:
        return ((d1 + 2) // 2, (d1p + 2) // 2, (d1pp + 3) // 2)
    return (
        1 - (1 - d1 - 2 * d1pp) // 4,
        1 - (1 - d1) // 2,
        2 - (3 - d1 - 2 * d1p) // 4,
    )


def delta_two_row(f: TwoRowForm) -> DeltaVector:
    return DeltaVector.from_exponents(f.dim, two_row_exponents(f.dim, *f.params, f.bar))


# -- predicates --------------------------------------------------------------

def is_shifted_symmetric(v: DeltaVector) -> bool:
    """``delta_i == delta_{d+1-i}`` for ``1 <= i <= d``; always true when ``d == 1``."""
    d = v.dim
    return all(v[i] == v[d + 1 - i] for i in range(1, d + 1))


@dataclass(frozen=True)
class SymmetryConditions:
    coprime_weight: bool
    only_units: bool
    full_row: bool
    weight_gcd: int = field(default=0)

    def __bool__(self) -> bool:
        return self.coprime_weight and self.only_units and self.full_row


def symmetry_breakdown(f: OneRowForm) -> SymmetryConditions:
    D = f.det
    weight = sum(j * dj for j, dj in enumerate(f.multiplicities, 1)) - 1
    g = math.gcd(weight, D)
    units = all(dj == 0 for j, dj in enumerate(f.multiplicities, 1) if math.gcd(j, D) > 1)
    return SymmetryConditions(g == 1, units, sum(f.multiplicities) == f.dim - 1, g)


def one_row_symmetry_conditions(f: OneRowForm) -> bool:
    return bool(symmetry_breakdown(f))


def check_stanley(v: DeltaVector) -> bool:
    c = v.coeffs
    s = max(i for i, x in enumerate(c) if x)
    return all(sum(c[: i + 1]) <= sum(c[s - i : s + 1]) for i in range(s // 2 + 1))


def check_hibi(v: DeltaVector) -> bool:
    c, d = v.coeffs, v.dim
    return all(
        sum(c[d - i : d]) <= sum(c[2 : i + 2]) for i in range(1, (d - 1) // 2 + 1)
    )
