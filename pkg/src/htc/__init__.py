"""Interpreter, stable-model enumerator and translator for .htc programs."""

from .errors import (
    ArithmeticOverflowError,
    DeclarationError,
    EnumerationCapError,
    HtcError,
    NestingError,
    ParseError,
    PreconditionError,
    UnsupportedOperationError,
)
from .model import (
    DEFAULT_CAP,
    UNDEF,
    DomainDecl,
    Interpretation,
    Valuation,
    enumerate_valuations,
    valuation_subset,
)
from .syntax import (
    DF,
    SUM_CL,
    SUM_GZ,
    SUM_STRICT,
    SUM_STRICT_TYPED,
    SUM_VARIANTS,
    VC,
    Aggregate,
    And,
    Assign,
    AtomF,
    BOT,
    Bot,
    Comparison,
    Cond,
    Df,
    Impl,
    IsInt,
    LinearSum,
    Lit,
    Not,
    Or,
    Product,
    Program,
    Rule,
    TOP,
    Var,
    cond_occurrences,
    desugar_count,
    desugar_multiset,
    retag_occurrence,
)
from .denote import apply_concat, apply_sum, denote, eval_basic_term, rem
from .semantics import (
    reduct,
    satisfies,
    satisfies_classical,
    satisfies_program,
    term_value,
)
from .solver import (
    StableModelSet,
    enumerate_stable,
    ferraris_stable,
    is_splitting_set,
    is_supported,
    solve_by_splitting,
    split,
)
from .transform import (
    ALL_POSITIVE,
    LevelMapping,
    NotStratified,
    check_level_mapping,
    ground_assignment,
    pi_translate,
    rewrite_agg_function,
    stratification_check,
    swap_semantics,
)
from .parser import parse_formula, parse_program, parse_term
from .printer import print_formula, print_program, print_rule, print_term

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
