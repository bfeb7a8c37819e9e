"""Finite dual weak left *-braces, skew left braces and their deformed
set-theoretic Yang-Baxter solutions."""
from .deform import (
    DistributorSet,
    deform,
    deform_bar,
    deform_r,
    deform_r_check,
    right_distributors,
    search_bar_relations,
    verify_bar_solutions,
    verify_check_relations,
    verify_distributor_equivalence,
    verify_sigma_tau,
)
from .formats import (
    ParseError,
    dump_pairmap,
    dump_skew_brace,
    dump_structure,
    parse_pairmap,
    parse_semilattice_spec,
    parse_skew_brace,
    parse_structure,
    structure_digest,
)
from .report import Check, RunReport
from .semigroup import ClassReport, GreensData, classify, green_relations, idempotents, projections
from .skew import (
    SkewBrace,
    associated_solution,
    check_skew_brace,
    deformed_check,
    deformed_hat,
    enumerate_skew_braces,
    right_distributors_group,
    verify_skew_deformation,
)
from .solutions import PairMap, SolutionReport, is_ybe_solution
from .star import (
    SemilatticeDecomposition,
    SemilatticeSpec,
    SquareBraceSpec,
    build_square_brace,
    build_strong_semilattice,
    check_dual,
    check_weak_star_brace,
    decompose,
    is_square,
    square_to_components,
)
from .tables import (
    BoundExceeded,
    ElementMap,
    IndexOutOfRange,
    InvalidSpec,
    NotDistributor,
    NotDual,
    NotSquare,
    OpTable,
    ShapeMismatch,
    SizeMismatch,
    StarBraceError,
    StarBraceStructure,
    StarSemigroup,
    UnaryTable,
    Witness,
    check_homomorphism,
    find_isomorphism,
    is_associative,
    make_binary_op,
    make_unary_op,
)

__version__ = "0.1.0"
