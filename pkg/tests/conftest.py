import pytest
from hypothesis import strategies as st

from hnfdelta.lattice import IntMatrix, elementary_unimodular, product

GOLDEN_MATRIX = IntMatrix.of([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 2, 0], [1, 0, 1, 3]])


@pytest.fixture
def golden_matrix():
    return GOLDEN_MATRIX


@st.composite
def unimodular(draw, d, max_steps=6):
    """Random product of elementary unimodular matrices."""
    steps = []
    for _ in range(draw(st.integers(0, max_steps))):
        kind = draw(st.sampled_from(["swap", "negate", "add"] if d > 1 else ["negate"]))
        i = draw(st.integers(0, d - 1))
        j = draw(st.integers(0, d - 1).filter(lambda x: x != i)) if d > 1 else 0
        k = draw(st.integers(-3, 3))
        steps.append(elementary_unimodular(d, kind, i, j, k))
    return product(steps, d)


@st.composite
def nonsingular(draw, max_dim=4, lo=-5, hi=5):
    d = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=d, max_size=d),
                         min_size=d, max_size=d))
    m = IntMatrix.of(rows)
    from hnfdelta.lattice import determinant
    from hypothesis import assume
    assume(determinant(m) != 0)
    return m
