"""delta-vectors of lattice simplices from Hermite normal forms."""
from .classifier import (
    HnfEnumSpec,
    RealizabilityVerdict,
    SolutionFamily,
    classify,
    enumerate_hnf,
    realizable,
    solve_vol2,
    solve_vol3,
    solve_vol4_one_row,
    solve_vol4_two_row,
)
from .delta import (
    DeltaVector,
    OneRowForm,
    TwoRowForm,
    check_hibi,
    check_stanley,
    delta_all_Dminus1,
    delta_from_hnf,
    delta_one_row,
    is_shifted_symmetric,
    one_row_symmetry_conditions,
    s_value,
)
from .lattice import (
    HnfMatrix,
    IntMatrix,
    Simplex,
    SingularMatrix,
    determinant,
    hermite_normal_form,
    unimodularly_equivalent,
)
from .oracle import BudgetExceeded, check_reciprocity, count_points, delta_bruteforce

__version__ = "0.1.0"
