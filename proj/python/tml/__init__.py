"""Matrix monodromy groups and torus invariants in R^4.

The heavy lifting lives in the compiled extension; this package just
re-exports its surface.
"""

from tml._core import (  # noqa: F401
    DegreeResult,
    Mat2Z,
    MaslovIndex,
    classify,
    clifford_path_transport,
    decompose_e,
    decompose_gmu,
    decompose_x,
    in_e,
    in_gmu,
    in_x,
    induced_h1_map,
    letters,
    linking_class,
    make_f,
    make_g,
    maslov_class,
    maslov_defect,
    mat_inv,
    mat_mul,
    match_maslov,
    simulate_case1,
    simulate_case2,
    verify_all,
    word_eval,
    __version__,
)

__all__ = [
    "DegreeResult",
    "Mat2Z",
    "MaslovIndex",
    "classify",
    "clifford_path_transport",
    "decompose_e",
    "decompose_gmu",
    "decompose_x",
    "in_e",
    "in_gmu",
    "in_x",
    "induced_h1_map",
    "letters",
    "linking_class",
    "make_f",
    "make_g",
    "maslov_class",
    "maslov_defect",
    "mat_inv",
    "mat_mul",
    "match_maslov",
    "simulate_case1",
    "simulate_case2",
    "verify_all",
    "word_eval",
]
