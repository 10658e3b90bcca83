"""A small checker for Cedille Core: a pure-type-system-style theory with
dependent intersections, implicit products, and a primitive equality over
untyped terms."""

from .erase import erase
from .norm import (
    DEFAULT_FUEL,
    Context,
    Decl,
    Defn,
    FuelExhausted,
    def_eq,
    nf,
    whnf,
)
from .parser import (
    DuplicateDefinition,
    ForwardReference,
    GlobalDef,
    ParseError,
    PurityViolation,
    SourceModule,
    parse_module,
    parse_term,
)
from .printer import print_term
from .term import (
    App,
    Beta,
    Box,
    Delta,
    Eq,
    ErasedApp,
    ErasedLambda,
    Forall,
    IntersectIntro,
    Iota,
    Lambda,
    Let,
    Phi,
    Pi,
    Proj1,
    Proj2,
    Rho,
    Sigma,
    Star,
    Term,
    UnannotatedLambda,
    Var,
    VarCategory,
    alpha_eq,
    free_vars,
    is_pure,
    subst,
)
from .typecheck import (
    ErrorCode,
    Judgment,
    TypeCheckError,
    check_module,
    infer,
    var_sort_ok,
)

__all__ = [
    "App", "Beta", "Box", "Context", "Decl", "DEFAULT_FUEL", "Defn", "Delta",
    "DuplicateDefinition", "Eq", "ErasedApp", "ErasedLambda", "ErrorCode",
    "Forall", "ForwardReference", "FuelExhausted", "GlobalDef",
    "IntersectIntro", "Iota", "Judgment", "Lambda", "Let", "ParseError",
    "Phi", "Pi", "Proj1", "Proj2", "PurityViolation", "Rho", "Sigma",
    "SourceModule", "Star", "Term", "TypeCheckError", "UnannotatedLambda",
    "Var", "VarCategory", "alpha_eq", "check_module", "def_eq", "erase",
    "free_vars", "infer", "is_pure", "nf", "parse_module", "parse_term",
    "print_term", "subst", "var_sort_ok", "whnf",
]
