"""Exact symbolic calculus on the two-parameter quantum h-exterior plane."""

from .algebra import (
    DomainError,
    Expr,
    Gen,
    SubalgebraTag,
    free_mul,
    in_subalgebra,
    parity,
)
from .calculus import derive_eq16_check, exterior_d, o_map, partial
from .frontend import ParseError, parse, to_json, to_latex, to_text
from .rewrite import (
    CriticalPair,
    FuelExhausted,
    RuleTable,
    check_local_confluence,
    critical_pairs,
    default_table,
    is_normal,
    normalize,
)
from .rmatrix import (
    PairMatrix,
    braid_check,
    build_c,
    involutive_check,
    relations_equiv_check,
    rhat,
    t_consistency_scan,
)
from .scalars import GaussianRational, ParamScalar, RecursiveSubstitutionError
# The involution itself lives at hplane.star.star; importing it here would
# shadow the submodule.
from .star import (
    derive_phase_space,
    hat,
    hermiticity_audit,
    phase_space_relations,
    specialize_phase_space,
)

__version__ = "0.1.0"
