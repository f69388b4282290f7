"""Which Hermite normal forms have a given delta-vector, and which small
delta-vectors occur at all.

Determinants 2, 3 and 4 are handled by closed-form solution families over the
multiplicity parameters of the one-row and two-row shapes; any other
determinant falls back to filtering the full HNF enumeration.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator

from .delta import (
    DeltaVector,
    InvalidForm,
    OneRowForm,
    TwoRowForm,
    check_hibi,
    check_stanley,
    check_two_row_params,
    delta_from_hnf,
)
from .lattice import IntMatrix

FORM_FILTERS = ("all", "one-row", "two-row")


class DetMismatch(ValueError):
    pass


class UnsupportedMass(ValueError):
    pass


@dataclass(frozen=True)
class HnfEnumSpec:
    dim: int
    det: int
    form_filter: str = "all"

    def __post_init__(self):
        if self.dim < 1 or self.det < 1:
            raise ValueError("need dim >= 1 and det >= 1")
        if self.form_filter not in FORM_FILTERS:
            raise ValueError(f"form_filter must be one of {FORM_FILTERS}")


# -- enumeration -------------------------------------------------------------

def diagonals(d: int, D: int) -> Iterator[tuple[int, ...]]:
    """Ordered factorizations of ``D`` into ``d`` positive factors, lexicographically."""
    if d == 1:
        yield (D,)
        return
    for a in range(1, D + 1):
        if D % a == 0:
            for rest in diagonals(d - 1, D // a):
                yield (a,) + rest


def _shape_ok(diag: tuple[int, ...], form_filter: str) -> bool:
    big = [x for x in diag if x > 1]
    if form_filter == "one-row":
        return len(big) == 1
    if form_filter == "two-row":
        return len(big) == 2
    return True


def enumerate_hnf(spec: HnfEnumSpec) -> Iterator[IntMatrix]:
    """Every ``dim x dim`` HNF of determinant ``det``: diagonals first, then off-diagonal entries."""
    d = spec.dim
    for diag in diagonals(d, spec.det):
        if not _shape_ok(diag, spec.form_filter):
            continue
        slots = [range(diag[i]) for i in range(d) for _ in range(i)]
        for lower in itertools.product(*slots):
            rows = [[0] * d for _ in range(d)]
            it = iter(lower)
            for i in range(d):
                for j in range(i):
                    rows[i][j] = next(it)
                rows[i][i] = diag[i]
            yield IntMatrix.of(rows)


def sort_key(m: IntMatrix):
    """Position of ``m`` in :func:`enumerate_hnf` order."""
    lower = tuple(m[i, j] for i in range(m.dim) for j in range(i))
    return (m.diagonal(), lower)


# -- closed-form solution families -------------------------------------------

@dataclass(frozen=True)
class SolutionFamily:
    """One parameter tuple solving the inverse problem, with the family rows that produce it.

    ``params`` is ``(d_1,)``, ``(d_1, d_2)``, ``(d_1, d_2, d_3)`` for the
    one-row shapes of determinant 2, 3, 4 and ``(d_1, d_1', d_1'')`` for the
    two-row shape; ``bar`` is only set for the latter.  ``families`` pairs
    each contributing family label with the exponent role assignment used.
    """

    det: int
    shape: str
    params: tuple[int, ...]
    families: tuple[tuple[str, tuple[int, ...]], ...]
    bar: int | None = None

    @property
    def family_ids(self) -> tuple[str, ...]:
        return tuple(sorted({f for f, _ in self.families}))

    def form(self, d: int):
        if self.shape == "one-row":
            return OneRowForm(d, self.det, self.params)
        return TwoRowForm.from_params(d, *self.params, self.bar)

    def canonical_matrix(self, d: int) -> IntMatrix:
        return self.form(d).expand()

    def matrices(self, d: int) -> list[IntMatrix]:
        return sorted(self.form(d).expand_all(), key=sort_key)

    def to_json(self, d: int, expand_all: bool = False) -> dict:
        mats = self.matrices(d) if expand_all else [self.canonical_matrix(d)]
        out = {
            "det": self.det,
            "shape": self.shape,
            "family": list(self.family_ids),
            "params": list(self.params),
            "matrices": [m.to_lists() for m in mats],
        }
        if self.bar is not None:
            out["bar"] = self.bar
        return out


def _merge(det, shape, found, bar=None) -> list[SolutionFamily]:
    """Deduplicate ``(family, roles, params)`` hits by parameter tuple."""
    by_params = defaultdict(set)
    for fam, roles, params in found:
        by_params[params].add((fam, roles))
    return [
        SolutionFamily(det, shape, params, tuple(sorted(tags)), bar)
        for params, tags in sorted(by_params.items())
    ]


def _roles(exps) -> list[tuple[int, ...]]:
    return sorted(set(itertools.permutations(exps)))


def solve_vol2(d: int, i: int) -> list[SolutionFamily]:
    """Determinant 2: the single exponent ``i`` comes from ``d_1 = 2i - 2`` or ``2i - 1``."""
    found = [
        (fam, (i,), (d1,))
        for fam, d1 in (("d(1)", 2 * i - 2), ("d(2)", 2 * i - 1))
        if 0 <= d1 <= d - 1
    ]
    return _merge(2, "one-row", found)


def vol3_table(d: int, i: int, j: int) -> dict[str, tuple[bool, tuple[int, int]]]:
    """Each family's candidate ``(d_1, d_2)`` and whether its table row holds."""
    return {
        "d(1)": (2 * j >= i and 2 * i >= j + 1 and i + j <= d, (2 * j - i, 2 * i - j - 1)),
        "d(2)": (2 * j >= i + 1 and 2 * i >= j + 1 and i + j <= d + 1, (2 * j - i - 1, 2 * i - j - 1)),
        "d(3)": (2 * j >= i and 2 * i >= j + 2 and i + j <= d + 1, (2 * j - i, 2 * i - j - 2)),
    }


def solve_vol3(d: int, i: int, j: int) -> list[SolutionFamily]:
    found = []
    for roles in _roles((i, j)):
        for fam, (ok, params) in vol3_table(d, *roles).items():
            if ok:
                found.append((fam, roles, params))
    return _merge(3, "one-row", found)


def vol4_one_row_table(d: int, i: int, j: int, k: int) -> dict[str, tuple[bool, tuple[int, int, int]]]:
    return {
        "d(1)": (j + k >= i + 1 and 2 * j <= i + k <= d + 1 and i + j >= k + 1,
                 (-i + j + k - 1, i - 2 * j + k, i + j - k - 1)),
        "d(2)": (j + k >= i and 2 * j <= i + k <= d + 1 and i + j >= k + 2,
                 (-i + j + k, i - 2 * j + k, i + j - k - 2)),
        "d(3)": (j + k >= i and 2 * j <= i + k <= d and i + j >= k + 1,
                 (-i + j + k, i - 2 * j + k, i + j - k - 1)),
        "d(4)": (j + k >= i and 2 * j + 1 <= i + k <= d + 1 and i + j >= k + 1,
                 (-i + j + k, i - 2 * j + k - 1, i + j - k - 1)),
    }


def solve_vol4_one_row(d: int, i: int, j: int, k: int) -> list[SolutionFamily]:
    found = []
    for roles in _roles((i, j, k)):
        for fam, (ok, params) in vol4_one_row_table(d, *roles).items():
            if ok:
                found.append((fam, roles, params))
    return _merge(4, "one-row", found)


def vol4_two_row_table(d: int, i: int, j: int, k: int, bar: int) -> dict[str, tuple[bool, tuple[int, int, int]]]:
    if bar == 0:
        return {
            "d(1)": (i <= d // 2 and j <= (d - 1) // 2 and 2 <= k <= (d + 1) // 2
                     and i + j + k <= d + 1 and k <= i + j and j + 2 <= i + k and i + 1 <= j + k,
                     (2 * i - 2, 2 * j - 1, 2 * k - 3)),
            "d(2)": (i <= (d - 1) // 2 and j <= d // 2 and 2 <= k <= (d + 1) // 2
                     and i + j + k <= d + 1 and k <= i + j and j + 1 <= i + k and i + 2 <= j + k,
                     (2 * i - 1, 2 * j - 2, 2 * k - 3)),
            "d(3)": (k <= d // 2 and i <= (d - 1) // 2 and j <= (d - 1) // 2
                     and i + j + k <= d and k <= i + j and j + 1 <= i + k and i + 1 <= j + k,
                     (2 * i - 1, 2 * j - 1, 2 * k - 2)),
            "d(4)": (i <= d // 2 and j <= d // 2 and k <= d // 2
                     and i + j + k <= d + 1 and k + 1 <= i + j and j + 1 <= i + k and i + 1 <= j + k,
                     (2 * i - 2, 2 * j - 2, 2 * k - 2)),
        }
    if bar == 1:
        return {
            "d(1)": (j + 3 <= 2 * k <= d + j + 1 and j + 2 <= 2 * i <= d + j and 2 * j <= d - 1
                     and 2 * j + 2 <= i + k <= d + 1 and i + 1 <= j + k and k <= i + j,
                     (2 * j - 1, 2 * k - j - 3, 2 * i - j - 2)),
            "d(2)": (j + 2 <= 2 * k <= d + j and j + 1 <= 2 * i <= d + j - 1 and 2 * j <= d - 1
                     and 2 * j + 1 <= i + k <= d and i + 1 <= j + k and k <= i + j,
                     (2 * j - 1, 2 * k - j - 2, 2 * i - j - 1)),
            "d(3)": (j + 3 <= 2 * k <= d + j + 1 and j + 1 <= 2 * i <= d + j - 1 and 2 * j <= d
                     and 2 * j + 1 <= i + k <= d + 1 and i + 2 <= j + k and k <= i + j,
                     (2 * j - 2, 2 * k - j - 3, 2 * i - j - 1)),
            "d(4)": (j + 2 <= 2 * k <= d + j and j + 2 <= 2 * i <= d + j and 2 * j <= d
                     and 2 * j + 1 <= i + k <= d + 1 and i + 1 <= j + k and k + 1 <= i + j,
                     (2 * j - 2, 2 * k - j - 2, 2 * i - j - 2)),
        }
    raise ValueError("bar must be 0 or 1")


def _two_row_valid(d, params) -> bool:
    try:
        check_two_row_params(d, *params)
    except InvalidForm:
        return False
    return True


def solve_vol4_two_row(d: int, i: int, j: int, k: int, bar: int) -> list[SolutionFamily]:
    if d < 2:
        return []
    found = []
    for roles in _roles((i, j, k)):
        for fam, (ok, params) in vol4_two_row_table(d, *roles, bar).items():
            if ok and _two_row_valid(d, params):
                found.append((fam, roles, params))
    return _merge(4, "two-row", found, bar)


def solve(d: int, target: DeltaVector) -> list[SolutionFamily]:
    """All closed-form solutions for a target of mass 2, 3 or 4."""
    exps = target.exponents()
    D = target.volume
    if D == 2:
        return solve_vol2(d, *exps)
    if D == 3:
        return solve_vol3(d, *exps)
    if D == 4:
        return (solve_vol4_one_row(d, *exps)
                + solve_vol4_two_row(d, *exps, 0)
                + solve_vol4_two_row(d, *exps, 1))
    raise UnsupportedMass(f"no closed-form solver for determinant {D}")


# -- classification ----------------------------------------------------------

def classify_by_enumeration(spec: HnfEnumSpec, target: DeltaVector) -> list[IntMatrix]:
    return [m for m in enumerate_hnf(spec) if delta_from_hnf(m) == target]


def classify_by_solvers(spec: HnfEnumSpec, target: DeltaVector) -> list[IntMatrix]:
    out = set()
    for sol in solve(spec.dim, target):
        if spec.form_filter in ("all", sol.shape):
            out.update(sol.form(spec.dim).expand_all())
    return sorted(out, key=sort_key)


def _check_target(spec: HnfEnumSpec, target: DeltaVector) -> None:
    if target.volume != spec.det:
        raise DetMismatch(f"target sums to {target.volume}, determinant is {spec.det}")
    if target.dim != spec.dim:
        raise DetMismatch(f"target has dimension {target.dim}, expected {spec.dim}")


def classify(spec: HnfEnumSpec, target: DeltaVector) -> list[IntMatrix]:
    """Every HNF of the given size and determinant whose simplex has delta-vector ``target``."""
    _check_target(spec, target)
    if spec.det in (2, 3, 4):
        return classify_by_solvers(spec, target)
    return classify_by_enumeration(spec, target)


def classify_report(spec: HnfEnumSpec, target: DeltaVector, expand_all: bool = False) -> list[dict]:
    """JSON records ``{family, params, matrices}``; one record per HNF beyond determinant 4."""
    _check_target(spec, target)
    if spec.det in (2, 3, 4):
        sols = [s for s in solve(spec.dim, target) if spec.form_filter in ("all", s.shape)]
        return [s.to_json(spec.dim, expand_all) for s in sols]
    return [
        {"det": spec.det, "shape": "enumerated", "family": [], "params": [],
         "matrices": [m.to_lists()]}
        for m in classify_by_enumeration(spec, target)
    ]


# -- realizability -----------------------------------------------------------

@dataclass(frozen=True)
class RealizabilityVerdict:
    realizable: bool
    witness: IntMatrix | None = None
    reason: str = "none"  # fails-necessary | fails-additional | none
    method: str = ""
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "realizable": self.realizable,
            "reason": self.reason,
            "method": self.method,
            "witness": self.witness.to_lists() if self.witness else None,
            "details": self.details,
        }


def necessary_conditions(d: int, i1: int, i2: int, i3: int) -> bool:
    """Stanley, Hibi and ``delta_1 >= delta_d`` rewritten for ``1 + t^i1 + t^i2 + t^i3``."""
    return i3 <= i1 + i2 and i1 + i3 <= d + 1 and i2 <= (d + 1) // 2


def additional_condition(d: int, i1: int, i2: int, i3: int) -> bool:
    return 2 * i2 <= i1 + i3 or i2 + i3 <= d + 1


def case4_witness(d: int, i1: int, i2: int, i3: int) -> tuple[str, tuple[int, ...], IntMatrix]:
    """One-row witness for mass 4, choosing the family and roles by case."""
    if i1 == i2 == i3:
        fam, roles = "d(1)", (i1, i1, i1)
    elif i1 < i2 == i3:
        fam, roles = "d(1)", (i2, i1, i2)
    elif i1 == i2 < i3:
        fam, roles = "d(4)", (i3, i1, i1)
    elif 2 * i2 <= i1 + i3:
        fam, roles = "d(2)", (i3, i2, i1)
    else:
        fam, roles = "d(2)", (i3, i1, i2)
    ok, params = vol4_one_row_table(d, *roles)[fam]
    if not ok:
        raise ValueError(f"family {fam} does not apply to roles {roles} at d={d}")
    return fam, roles, OneRowForm(d, 4, params).expand()


def realizable(d: int, target: DeltaVector) -> RealizabilityVerdict:
    """Decide whether ``target`` (mass at most 4) is the delta-vector of a lattice polytope."""
    if target.dim != d:
        raise ValueError(f"target has dimension {target.dim}, expected {d}")
    mass = target.volume
    if mass > 4:
        raise UnsupportedMass(f"mass {mass} > 4 is not supported")
    if mass == 1:
        return RealizabilityVerdict(True, IntMatrix.identity(d), method="unimodular")
    if mass in (2, 3):
        return _realizable_small(d, target)
    return _realizable_four(d, target)


def _realizable_small(d, target) -> RealizabilityVerdict:
    mass = target.volume
    if d < 3:
        hits = classify(HnfEnumSpec(d, mass), target)
        if hits:
            return RealizabilityVerdict(True, hits[0], method="enumeration")
        return RealizabilityVerdict(False, reason="fails-necessary", method="enumeration")
    checks = {
        "stanley": check_stanley(target),
        "hibi": check_hibi(target),
        "delta1_ge_deltad": target[1] >= target[d],
    }
    if not all(checks.values()):
        return RealizabilityVerdict(False, reason="fails-necessary", method="inequalities",
                                    details=checks)
    sols = solve(d, target)
    if not sols:
        raise AssertionError(f"inequalities hold but no simplex found for {target}")
    witness = sols[0].canonical_matrix(d)
    _verify(witness, target)
    return RealizabilityVerdict(True, witness, method="inequalities", details=checks)


def _realizable_four(d, target) -> RealizabilityVerdict:
    i1, i2, i3 = target.exponents()
    details = {"exponents": [i1, i2, i3]}
    if not necessary_conditions(d, i1, i2, i3):
        return RealizabilityVerdict(False, reason="fails-necessary", method="case4", details=details)
    if not additional_condition(d, i1, i2, i3):
        return RealizabilityVerdict(False, reason="fails-additional", method="case4", details=details)
    fam, roles, witness = case4_witness(d, i1, i2, i3)
    _verify(witness, target)
    details.update(family=fam, roles=list(roles))
    return RealizabilityVerdict(True, witness, method="case4", details=details)


def _verify(witness: IntMatrix, target: DeltaVector) -> None:
    got = delta_from_hnf(witness)
    if got != target:
        raise AssertionError(f"witness has delta {got}, expected {target}")
