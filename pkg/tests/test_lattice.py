import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from hnfdelta.lattice import (
    IntMatrix,
    MatrixParseError,
    SingularMatrix,
    determinant,
    hermite_normal_form,
    is_hnf,
    parse_matrix,
    parse_matrix_json,
    parse_matrix_text,
    unimodularly_equivalent,
)

from conftest import nonsingular, unimodular


def cofactor_det(rows):
    """Laplace expansion along the first row; independent of Bareiss."""
    if len(rows) == 1:
        return rows[0][0]
    return sum(
        (-1) ** j * rows[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in rows[1:]])
        for j in range(len(rows))
    )


@pytest.mark.parametrize("d", [1, 2, 5])
def test_determinant_identity(d):
    assert determinant(IntMatrix.identity(d)) == 1


def test_determinant_golden_matrix(golden_matrix):
    assert determinant(golden_matrix) == 6


def test_determinant_2x2():
    assert determinant(IntMatrix.of([[1, 2], [3, 4]])) == cofactor_det([[1, 2], [3, 4]]) == -2


def test_determinant_needs_pivot_swap():
    m = [[0, 1, 2], [3, 0, 1], [4, 5, 0]]
    assert determinant(IntMatrix.of(m)) == cofactor_det(m)


def test_determinant_big_entries():
    m = [[10**30, 1], [1, 10**30]]
    assert determinant(IntMatrix.of(m)) == 10**60 - 1


@given(st.integers(1, 4).flatmap(
    lambda d: st.lists(st.lists(st.integers(-6, 6), min_size=d, max_size=d), min_size=d, max_size=d)))
def test_determinant_matches_laplace(rows):
    assert determinant(IntMatrix.of(rows)) == cofactor_det(rows)


@pytest.mark.parametrize("d", [1, 3, 4])
def test_hnf_identity(d):
    h = hermite_normal_form(IntMatrix.identity(d))
    assert h.matrix == IntMatrix.identity(d)
    assert h.transform == IntMatrix.identity(d)


def brute_hnf_2x2(m, bound=4):
    """Search small unimodular U for an m @ U meeting the HNF conditions."""
    found = set()
    r = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(r, repeat=4):
        if a * d - b * c not in (1, -1):
            continue
        cand = m @ IntMatrix.of([[a, b], [c, d]])
        if is_hnf(cand):
            found.add(cand)
    return found


def test_hnf_2x2_example():
    m = IntMatrix.of([[1, 2], [3, 4]])
    h = hermite_normal_form(m)
    assert h.matrix == IntMatrix.of([[1, 0], [1, 2]])
    assert brute_hnf_2x2(m) == {h.matrix}
    assert m @ h.transform == h.matrix


def test_hnf_via_transpose_of_row_style():
    """Column-style lower HNF equals the transpose of the upper row-style HNF."""
    m = IntMatrix.of([[4, 7, 2], [-3, 1, 5], [6, 0, -2]])

    def row_hnf(rows):
        # upper-triangular HNF by left multiplication, textbook version
        a = [list(r) for r in rows]
        n = len(a)
        for c in range(n):
            while any(a[r][c] for r in range(c + 1, n)):
                r0 = min((r for r in range(c, n) if a[r][c]), key=lambda r: abs(a[r][c]))
                a[c], a[r0] = a[r0], a[c]
                for r in range(c + 1, n):
                    q = a[r][c] // a[c][c]
                    a[r] = [x - q * y for x, y in zip(a[r], a[c])]
            if a[c][c] < 0:
                a[c] = [-x for x in a[c]]
            for r in range(c):
                q = a[r][c] // a[c][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[c])]
        return a

    expected = IntMatrix.of(row_hnf(m.transpose().rows)).transpose()
    assert hermite_normal_form(m).matrix == expected


@given(nonsingular(), st.data())
@settings(max_examples=150)
def test_hnf_invariants(m, data):
    h = hermite_normal_form(m)
    assert is_hnf(h.matrix)
    assert m @ h.transform == h.matrix
    assert abs(determinant(h.transform)) == 1
    diag = 1
    for x in h.matrix.diagonal():
        diag *= x
    assert diag == abs(determinant(m)) == determinant(h.matrix)
    # idempotent on its own output
    assert hermite_normal_form(h.matrix).matrix == h.matrix
    v = data.draw(unimodular(m.dim))
    assert hermite_normal_form(m @ v).matrix == h.matrix
    assert unimodularly_equivalent(m, m @ v)


@given(nonsingular(max_dim=3, lo=-2, hi=2))
def test_unimodular_input_gives_identity(m):
    if abs(determinant(m)) == 1:
        assert hermite_normal_form(m).matrix == IntMatrix.identity(m.dim)


def test_not_equivalent():
    assert not unimodularly_equivalent(IntMatrix.of([[2, 0], [0, 1]]), IntMatrix.of([[1, 0], [0, 2]]))
    assert unimodularly_equivalent(IntMatrix.identity(3), IntMatrix.identity(3))


def test_hnf_singular():
    with pytest.raises(SingularMatrix):
        hermite_normal_form(IntMatrix.of([[1, 2], [2, 4]]))
    with pytest.raises(SingularMatrix):
        unimodularly_equivalent(IntMatrix.of([[0, 0], [0, 1]]), IntMatrix.identity(2))


def test_hnf_negative_and_large_entries():
    m = IntMatrix.of([[0, 3], [5, -7]])
    h = hermite_normal_form(m)
    assert h.matrix == IntMatrix.of([[3, 0], [3, 5]])
    big = IntMatrix.of([[10**20 + 1, 3], [7, 10**20]])
    hb = hermite_normal_form(big)
    assert big @ hb.transform == hb.matrix and is_hnf(hb.matrix)


def test_parse_text_and_json(golden_matrix):
    assert parse_matrix_text(golden_matrix.to_text()) == golden_matrix
    assert parse_matrix(json.dumps(golden_matrix.to_json())) == golden_matrix
    assert parse_matrix_json({"dim": 2, "rows": [[1, 2], [3, 4]]}) == IntMatrix.of([[1, 2], [3, 4]])


@pytest.mark.parametrize("text", [
    "2\n1 2\n3\n",
    "2\n1 2 3\n4 5 6\n",
    "3\n1 0 0\n0 1 0\n",
    "x\n",
    "",
    '{"dim": 2, "rows": [[1, 2], [3]]}',
    '{"dim": 3, "rows": [[1, 2], [3, 4]]}',
    '{"rows": [[1]]}',
])
def test_parse_rejects(text):
    with pytest.raises(MatrixParseError):
        parse_matrix(text)


def test_intmatrix_rejects_ragged():
    with pytest.raises(ValueError):
        IntMatrix.of([[1, 2], [3]])
