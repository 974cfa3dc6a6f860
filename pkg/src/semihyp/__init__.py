"""Exact toolkit for finite semihypergroups.

Structures are convolution tables of probability measures with exact
rational coefficients; all axioms are decided, not approximated.  The
package covers the standard example families, invariant means by exact
rational linear programming, the dual-space product machinery, and affine
actions on simplices with their fixed-point polytopes.
"""

from .actions import (
    AffineAction,
    GeneralActionSpec,
    canonical_action,
    check_action_law,
    check_general_action,
    extend_to_measures,
    fixed_points,
    fp_property_harness,
    induced_action_on_affine,
    random_actions,
    verified_action,
)
from .amenability import (
    Mean,
    balanced_decomposition,
    check_condition2,
    check_condition3,
    equivalence_suite,
    lim_solve,
    mean_decomposition,
)
from .constructors import (
    FiniteGroup,
    GroupAction,
    cyclic_group,
    double_coset_space,
    from_group,
    from_semigroup,
    left_coset_space,
    left_zero_semigroup,
    negation_action,
    orbit_space,
    symmetric_group,
    three_point_family,
    trivial_action,
    zeuner_grid,
)
from .core import (
    ConvTable,
    Involution,
    Semihypergroup,
    center,
    check_associativity,
    check_probability_axiom,
    convolve_measures,
    convolve_points,
    find_identity,
    find_involutions,
    is_commutative,
    set_convolution,
    verify,
)
from .errors import (
    ConstraintError,
    SemihypError,
    SpaceMismatchError,
    StructureParseError,
    UnknownPointError,
    VerificationError,
)
from .fileio import emit_action, emit_structure, parse_action, parse_structure
from .functions import (
    FnK,
    Functional,
    arens,
    check_arens_regularity,
    evaluation,
    introversion_left,
    introversion_right,
    left_translate,
    orbit,
    right_translate,
)
from .kernels import BACKEND
from .lp import (
    Constraint,
    LinearProgram,
    LPOutcome,
    constraint,
    solve_feasibility,
    solve_lp,
    verify_farkas,
    verify_ray,
    verify_witness,
)
from .measures import (
    FiniteSpace,
    Measure,
    Rational,
    combine,
    dirac,
    format_measure,
    parse_measure,
    parse_rational,
)

__version__ = "0.1.0"
