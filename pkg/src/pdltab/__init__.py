"""PDL satisfiability, countermodels, and Craig interpolation via cyclic loaded tableaux."""

from .syntax import (
    And,
    Atom,
    AtomicProg,
    Bottom,
    Box,
    Comp,
    Formula,
    LoadedFormula,
    Neg,
    ParseError,
    Program,
    Sequent,
    Star,
    Test,
    Union,
    Vocabulary,
    parse_formula,
    parse_program,
    parse_sequent,
    print_formula,
    print_program,
    print_sequent,
    vocabulary,
)
from .semantics import (
    KripkeModel,
    PointedModel,
    check_sequent,
    evaluate,
    model_from_json,
    model_to_json,
    random_model,
    relate,
    relate_seq,
)
from .prover import (
    BudgetExceededError,
    Closed,
    Open,
    ProofResult,
    RuleId,
    Tableau,
    build_strategy_tree,
    export_dot,
    is_closed,
    model_graph,
    projection,
    prove,
    prover_moves,
    rule_children,
    validate_tableau,
)
from .interp import (
    NotImplicitDefinitionError,
    NotValidError,
    SplitClosed,
    SplitNotProvable,
    SplitSequent,
    SplitTableau,
    beth,
    clusters,
    interpolant_of_tableau,
    interpolate,
    leaf_interpolant,
    normal_form,
    pre_interpolants,
    prove_split,
    quasi_tableau,
    simplify,
    spl,
    theta_region,
    verify_interpolant,
)

__all__ = [name for name in dir() if not name.startswith("_")]
