"""Exact Jones/Conway polynomial computation and verification for links
related by C_n-moves.
"""

from .laurent import (
    BracketPoly,
    ConwayPoly,
    CyclotomicResidue,
    HalfLaurent,
    RationalHalfLaurent,
    derivative_at_one,
    eval_special,
    exact_divide,
    format_half_laurent,
    normalize_bracket,
    parse_half_laurent,
    theorem_difference,
    unlink_jones,
)
from .diagram import (
    DiagramError,
    OrientedDiagram,
    connected_sum,
    crossing_change,
    crossing_sign,
    linking_data,
    mirror,
    oriented_smoothing,
    simplify,
    split_components,
    split_union,
    validate,
    writhe,
)
from .invariants import (
    CrossingLimitError,
    InvariantError,
    SpecialValues,
    arf_knot,
    coefficient_a,
    conway,
    jones,
    jones_skein,
    kauffman_bracket,
    simplified_polynomial,
    special_values,
)
from .families import (
    MarkedDiagram,
    Tangle2,
    basics,
    closed_braid,
    closed_form_torus_jones,
    family_JK,
    family_LM,
    hopf,
    marked_from_json_dict,
    marked_to_json_dict,
    plat_closure,
    tangle_clasp,
    tangle_trivial,
    tangle_twist,
    torus_N,
    trefoil,
    unknot,
    unlink,
    validate_tangle,
)
from .harness import (
    DeltaVector,
    VerificationReport,
    kanenobu_rhs,
    resolve,
    run_reports,
    verify_congruences,
    verify_divisibility,
    verify_j_identities,
    verify_kanenobu,
    verify_lemma_2_2,
    verify_lemma_3_2,
    verify_main,
    verify_special_values,
)

__version__ = "0.1.0"
