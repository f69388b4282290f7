"""Brute-force lattice-point counting for lattice simplices.

The dilation ``n P`` is cut into slabs along one coordinate axis; every
integer point of each slab's bounding box is tested by solving
``x = lambda M`` exactly (through the integer adjugate of ``M``), so nothing
here depends on congruence classes or the HNF.  The delta-vector then comes
from the Ehrhart series truncated against ``(1 - t)**(d + 1)``.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .delta import DeltaVector
from .lattice import IntMatrix, Simplex, determinant

BUDGET_ENV = "HNFDELTA_ORACLE_BUDGET"
DEFAULT_BUDGET = 10**8
_INNER_BLOCK = 1 << 20
_INT64_SAFE = 1 << 62


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    budget: int = DEFAULT_BUDGET

    @classmethod
    def from_env(cls) -> "OracleConfig":
        raw = os.environ.get(BUDGET_ENV)
        return cls(int(raw)) if raw else cls()


def _as_simplex(s) -> Simplex:
    return s if isinstance(s, Simplex) else Simplex(s)


@lru_cache(maxsize=256)
def _adjugate(m: IntMatrix) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Return ``(adj, det)`` with ``det > 0`` and ``m @ adj == det * I``."""
    d = m.dim
    det = determinant(m)
    if d == 1:
        adj = ((1,),)
    else:
        adj = [[0] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                minor = IntMatrix.of(
                    [r[:j] + r[j + 1 :] for k, r in enumerate(m.rows) if k != i]
                )
                # adj[j][i] is the (i, j) cofactor
                adj[j][i] = (-1) ** (i + j) * determinant(minor)
        adj = tuple(tuple(r) for r in adj)
    if det < 0:
        adj = tuple(tuple(-x for x in r) for r in adj)
        det = -det
    return adj, det


def _vertices(m: IntMatrix, n: int, offset) -> list[tuple[int, ...]]:
    base = tuple(n * w for w in offset)
    return [base] + [tuple(b + n * x for b, x in zip(base, r)) for r in m.rows]


def _box(verts) -> list[range]:
    return [range(min(col), max(col) + 1) for col in zip(*verts)]


def _section_box(verts, axis: int, t: int) -> list[range] | None:
    """Integer bounding box of ``conv(verts) ∩ {x[axis] == t}``.

    The section of a simplex by a hyperplane is the hull of the points where
    its edges meet the hyperplane.
    """
    pts = []
    for u, w in itertools.combinations(verts, 2):
        a, b = u[axis], w[axis]
        if a == b:
            if a == t:
                pts += [u, w]
            continue
        if not min(a, b) <= t <= max(a, b):
            continue
        f = Fraction(t - a, b - a)
        pts.append([x + f * (y - x) for x, y in zip(u, w)])
    if not pts:
        return None
    box = []
    for c in range(len(verts[0])):
        if c == axis:
            box.append(range(t, t + 1))
            continue
        lo = math.ceil(min(p[c] for p in pts))
        hi = math.floor(max(p[c] for p in pts))
        if lo > hi:
            return None
        box.append(range(lo, hi + 1))
    return box


def _slabs(verts) -> list[list[range]]:
    """Cover ``conv(verts)`` by per-slab boxes along the axis that needs the fewest candidates."""
    best = None
    for axis, rng in sorted(enumerate(_box(verts)), key=lambda ar: len(ar[1])):
        if best is not None and len(rng) > best[0]:
            # every slab holds at least one candidate, so this axis cannot win
            continue
        boxes = [b for t in rng if (b := _section_box(verts, axis, t)) is not None]
        total = sum(math.prod(len(r) for r in b) for b in boxes)
        if best is None or total < best[0]:
            best = (total, boxes)
    return best[1]


def box_size(s, n: int) -> int:
    """Number of candidate points scanned for the ``n``-th dilation."""
    if n == 0:
        return 1
    m = _as_simplex(s).matrix
    return sum(math.prod(len(r) for r in b) for b in _slabs(_vertices(m, n, (0,) * m.dim)))


def _count_python(box, adj, bound, shift) -> tuple[int, int]:
    closed = interior = 0
    d = len(box)
    for x in itertools.product(*box):
        mu = [sum(x[c] * adj[c][i] for c in range(d)) - shift[i] for i in range(d)]
        t = sum(mu)
        if t <= bound and min(mu) >= 0:
            closed += 1
            if t < bound and min(mu) > 0:
                interior += 1
    return closed, interior


def _count_numpy(box, adj, bound, shift) -> tuple[int, int]:
    d = len(box)
    a = np.array(adj, dtype=np.int64)
    # split coordinates into an outer Python loop and an inner vectorised block
    split = d
    size = 1
    while split > 0 and size * len(box[split - 1]) <= _INNER_BLOCK:
        split -= 1
        size *= len(box[split])
    inner_axes = [np.arange(r.start, r.stop, dtype=np.int64) for r in box[split:]]
    if inner_axes:
        grid = np.stack(np.meshgrid(*inner_axes, indexing="ij"), axis=-1).reshape(-1, d - split)
        inner_mu = grid @ a[split:]
    else:
        inner_mu = np.zeros((1, d), dtype=np.int64)
    inner_mu -= np.array(shift, dtype=np.int64)
    closed = interior = 0
    for outer in itertools.product(*box[:split]):
        mu = inner_mu + (np.array(outer, dtype=np.int64) @ a[:split] if split else 0)
        t = mu.sum(axis=1)
        lo = mu.min(axis=1)
        ok = (t <= bound) & (lo >= 0)
        closed += int(ok.sum())
        interior += int(((t < bound) & (lo > 0)).sum())
    return closed, interior


def _counts(s: Simplex, n: int, config: OracleConfig, offset=None) -> tuple[int, int]:
    """Closed and interior counts of ``n (P + offset)``."""
    if n < 0:
        raise ValueError("dilation factor must be nonnegative")
    if n == 0:
        return 1, 0
    m = s.matrix
    offset = tuple(offset) if offset is not None else (0,) * m.dim
    verts = _vertices(m, n, offset)
    slabs = _slabs(verts)
    size = sum(math.prod(len(r) for r in b) for b in slabs)
    if size > config.budget:
        raise BudgetExceeded(f"{size} candidate points exceed the budget of {config.budget}")
    adj, det = _adjugate(m)
    bound = n * det
    # barycentric numerators of x are (x - n * offset) @ adj
    shift = [sum(verts[0][c] * adj[c][i] for c in range(m.dim)) for i in range(m.dim)]
    reach = max(abs(x) for v in verts for x in v) * m.dim * max(abs(x) for r in adj for x in r)
    small = max([reach, bound] + [abs(x) for x in shift]) * 2 < _INT64_SAFE
    scan = _count_numpy if small else _count_python
    closed = interior = 0
    for box in slabs:
        c, i = scan(box, adj, bound, shift)
        closed += c
        interior += i
    return closed, interior


def count_points(s, n: int, interior: bool = False, config: OracleConfig | None = None,
                 offset=None) -> int:
    """Lattice points of ``n P`` (closed) or of its interior.

    ``offset`` translates every vertex of ``P`` (the origin included) by an
    integer vector before dilating.
    """
    closed, inner = _counts(_as_simplex(s), n, config or OracleConfig(), offset)
    return inner if interior else closed
def ehrhart_counts(s, n_max: int, config: OracleConfig | None = None) -> list[tuple[int, int]]:
    """``[(i(P, n), i*(P, n)) for n in 0..n_max]``."""
    s = _as_simplex(s)
    config = config or OracleConfig()
    return [_counts(s, n, config) for n in range(n_max + 1)]


def delta_from_counts(d: int, closed: list[int]) -> DeltaVector:
    """Multiply ``sum i(P, n) t^n`` by ``(1 - t)^(d+1)`` and keep degrees ``0..d``."""
    return DeltaVector(tuple(
        sum((-1) ** (j - n) * math.comb(d + 1, j - n) * closed[n] for n in range(j + 1))
        for j in range(d + 1)
    ))


def delta_bruteforce(s, config: OracleConfig | None = None) -> DeltaVector:
    s = _as_simplex(s)
    d = s.dim
    return delta_from_counts(d, [c for c, _ in ehrhart_counts(s, d, config)])


def newton_coefficients(values: list[int]) -> list[int]:
    """Forward differences ``Delta^k p(0)`` of the values ``p(0), p(1), ...``."""
    coeffs = []
    row = list(values)
    while row:
        coeffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return coeffs


def newton_eval(coeffs: list[int], x: int) -> int:
    """Evaluate ``sum_k coeffs[k] * binom(x, k)`` for any integer ``x``."""
    total = 0
    binom = 1  # binom(x, 0)
    for k, c in enumerate(coeffs):
        total += c * binom
        binom = binom * (x - k) // (k + 1)
    return total


def check_reciprocity(s, n_max: int, config: OracleConfig | None = None) -> bool:
    """``i*(P, n) == (-1)^d i(P, -n)`` for ``n = 1..n_max``, with ``i(P, .)`` interpolated on ``0..d``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    s = _as_simplex(s)
    d = s.dim
    counts = ehrhart_counts(s, max(d, n_max), config)
    coeffs = newton_coefficients([c for c, _ in counts[: d + 1]])
    return all(
        counts[n][1] == (-1) ** d * newton_eval(coeffs, -n) for n in range(1, n_max + 1)
    )
