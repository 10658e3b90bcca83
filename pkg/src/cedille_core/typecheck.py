"""Syntax-directed type synthesis: one inference case per construct.

Every premise demanding a type of a particular shape head-normalizes the
synthesized type first; every shared-metavariable constraint is a
definitional-equality check.  Types computed for application, projection,
intersection, and let results substitute arguments per the erasure
discipline (term variables receive erased terms), so synthesized types
never smuggle annotations into equation sides.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .erase import erase
from .norm import (
    DEFAULT_FUEL,
    Context,
    Decl,
    Defn,
    FuelExhausted,
    applied_arg,
    def_eq,
    whnf,
)
from .parser import SourceModule
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
    fresh_var,
    is_pure,
    subst,
)


class ErrorCode(Enum):
    UNBOUND_VARIABLE = "UnboundVariable"
    EXPECTED_PI_TYPE = "ExpectedPiType"
    EXPECTED_FORALL_TYPE = "ExpectedForallType"
    EXPECTED_IOTA_TYPE = "ExpectedIotaType"
    EXPECTED_EQUATION_TYPE = "ExpectedEquationType"
    SORT_CHECK_FAILED = "SortCheckFailed"
    NOT_DEFINITIONALLY_EQUAL = "NotDefinitionallyEqual"
    ERASED_VAR_OCCURS_FREE = "ErasedVarOccursFree"
    ERASURE_MISMATCH = "ErasureMismatch"
    DELTA_EQUATION_MISMATCH = "DeltaEquationMismatch"
    PURITY_VIOLATION = "PurityViolation"
    BOX_NOT_TYPABLE = "BoxNotTypable"
    FUEL_EXHAUSTED = "FuelExhausted"


class TypeCheckError(Exception):
    def __init__(self, code: ErrorCode, message: str, term: Term | None = None,
                 definition: str | None = None):
        self.code = code
        self.message = message
        self.term = term
        self.definition = definition
        super().__init__(f"{code.value}: {message}")


@dataclass(frozen=True)
class Judgment:
    name: str
    subject: Term
    type: Term


# The one equation delta refutes: distinct Church booleans.
_x = Var("x", VarCategory.TERM)
_y = Var("y", VarCategory.TERM)
FALSE_EQUATION = Eq(
    UnannotatedLambda(_x, UnannotatedLambda(_y, _x)),
    UnannotatedLambda(_x, UnannotatedLambda(_y, _y)),
)


def var_sort_ok(x: Var, s: Term) -> bool:
    """Legality of binding x at a domain of sort s: term variables pair
    with *, type variables with #.  Kind variables enter only via lets."""
    match s:
        case Star():
            return x.category is VarCategory.TERM
        case Box():
            return x.category is VarCategory.TYPE
        case _:
            return False


def _err(code: ErrorCode, message: str, term: Term | None = None):
    raise TypeCheckError(code, message, term)


def infer(ctx: Context, t: Term, fuel: int = DEFAULT_FUEL,
          strict_intersections: bool = False) -> Term:
    """Synthesize the type of t under ctx, or raise TypeCheckError.

    `strict_intersections` downgrades the intersection-introduction erasure
    comparison from definitional to alpha equality.
    """

    def go(ctx: Context, t: Term) -> Term:
        match t:
            case Star():
                return Box()
            case Box():
                _err(ErrorCode.BOX_NOT_TYPABLE, "'#' has no type", t)
            case Var():
                entry = ctx.lookup(t)
                if entry is None:
                    _err(ErrorCode.UNBOUND_VARIABLE,
                         f"unbound variable {print_term(t)!r}", t)
                return entry.type
            case Pi(x, dom, body):
                s = sort_of(ctx, dom)
                if not var_sort_ok(x, s):
                    _err(ErrorCode.SORT_CHECK_FAILED,
                         f"variable {print_term(x)!r} cannot be bound at a "
                         f"domain of sort {print_term(s)!r}", t)
                x2, body2, ctx2 = bind_decl(ctx, x, dom, body)
                return sort_of(ctx2, body2)
            case Forall(x, dom, body):
                s = sort_of(ctx, dom)
                if not var_sort_ok(x, s):
                    _err(ErrorCode.SORT_CHECK_FAILED,
                         f"variable {print_term(x)!r} cannot be bound at a "
                         f"domain of sort {print_term(s)!r}", t)
                x2, body2, ctx2 = bind_decl(ctx, x, dom, body)
                s2 = sort_of(ctx2, body2)
                if not isinstance(s2, Star):
                    _err(ErrorCode.SORT_CHECK_FAILED,
                         "the body of an implicit product must be a type", t)
                return Star()
            case Iota(x, first, second):
                if x.category is not VarCategory.TERM:
                    _err(ErrorCode.SORT_CHECK_FAILED,
                         "a dependent intersection binds a term variable", t)
                if not isinstance(sort_of(ctx, first), Star):
                    _err(ErrorCode.SORT_CHECK_FAILED,
                         "both views of a dependent intersection must be types", t)
                x2, second2, ctx2 = bind_decl(ctx, x, first, second)
                if not isinstance(sort_of(ctx2, second2), Star):
                    _err(ErrorCode.SORT_CHECK_FAILED,
                         "both views of a dependent intersection must be types", t)
                return Star()
            case Lambda(x, dom, body):
                x2, body2, ctx2 = bind_decl(ctx, x, dom, body)
                body_ty = go(ctx2, body2)
                pi = Pi(x2, dom, body_ty)
                go(ctx, pi)  # re-run formation for the synthesized product
                return pi
            case ErasedLambda(x, dom, body):
                x2, body2, ctx2 = bind_decl(ctx, x, dom, body)
                body_ty = go(ctx2, body2)
                if x2 in free_vars(erase(body2)):
                    _err(ErrorCode.ERASED_VAR_OCCURS_FREE,
                         f"erased variable {print_term(x2)!r} survives erasure "
                         f"of the body", t)
                fa = Forall(x2, dom, body_ty)
                go(ctx, fa)
                return fa
            case App(f, a):
                fty = whnf(ctx, go(ctx, f), fuel)
                match fty:
                    case Pi(x, dom, cod):
                        pass
                    case _:
                        _err(ErrorCode.EXPECTED_PI_TYPE,
                             f"applied term has type {print_term(fty)!r}, "
                             "not a 'Pi' type", t)
                aty = go(ctx, a)
                if not def_eq(ctx, aty, dom, fuel):
                    _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                         f"argument has type {print_term(aty)!r}, expected "
                         f"{print_term(dom)!r}", t)
                return subst(cod, x, applied_arg(x, a))
            case ErasedApp(f, a):
                fty = whnf(ctx, go(ctx, f), fuel)
                match fty:
                    case Forall(x, dom, cod):
                        pass
                    case _:
                        _err(ErrorCode.EXPECTED_FORALL_TYPE,
                             f"erased-applied term has type {print_term(fty)!r}, "
                             "not an 'all' type", t)
                aty = go(ctx, a)
                if not def_eq(ctx, aty, dom, fuel):
                    _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                         f"erased argument has type {print_term(aty)!r}, "
                         f"expected {print_term(dom)!r}", t)
                return subst(cod, x, applied_arg(x, a))
            case Proj1(s):
                sty = whnf(ctx, go(ctx, s), fuel)
                match sty:
                    case Iota(_, first, _):
                        return first
                _err(ErrorCode.EXPECTED_IOTA_TYPE,
                     f"projected term has type {print_term(sty)!r}, "
                     "not an 'iota' type", t)
            case Proj2(s):
                sty = whnf(ctx, go(ctx, s), fuel)
                match sty:
                    case Iota(x, _, second):
                        return subst(second, x, applied_arg(x, s))
                _err(ErrorCode.EXPECTED_IOTA_TYPE,
                     f"projected term has type {print_term(sty)!r}, "
                     "not an 'iota' type", t)
            case Beta(lhs, witness):
                eq = Eq(lhs, lhs)
                go(ctx, eq)
                missing = free_vars(erase(witness)) - ctx.domain()
                if missing:
                    names = ", ".join(sorted(print_term(v) for v in missing))
                    _err(ErrorCode.UNBOUND_VARIABLE,
                         f"'beta' witness erasure mentions unbound {names}", t)
                return eq
            case Sigma(proof):
                pty = whnf(ctx, go(ctx, proof), fuel)
                match pty:
                    case Eq(l, r):
                        return Eq(r, l)
                _err(ErrorCode.EXPECTED_EQUATION_TYPE,
                     f"'sigma' expects an equation proof, got "
                     f"{print_term(pty)!r}", t)
            case Delta(motive, proof):
                pty = whnf(ctx, go(ctx, proof), fuel)
                if not isinstance(pty, Eq):
                    _err(ErrorCode.EXPECTED_EQUATION_TYPE,
                         f"'delta' expects an equation proof, got "
                         f"{print_term(pty)!r}", t)
                if not def_eq(ctx, pty, FALSE_EQUATION, fuel):
                    _err(ErrorCode.DELTA_EQUATION_MISMATCH,
                         f"'delta' expects a proof of the false boolean "
                         f"equation, got {print_term(pty)!r}", t)
                sort_of(ctx, motive)
                return motive
            case Rho(proof, x, guide, subject):
                pty = whnf(ctx, go(ctx, proof), fuel)
                match pty:
                    case Eq(l, r):
                        pass
                    case _:
                        _err(ErrorCode.EXPECTED_EQUATION_TYPE,
                             f"'rho' expects an equation proof, got "
                             f"{print_term(pty)!r}", t)
                sty = go(ctx, subject)
                want = subst(guide, x, applied_arg(x, r))
                if not def_eq(ctx, sty, want, fuel):
                    _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                         f"'rho' subject has type {print_term(sty)!r}, "
                         f"expected {print_term(want)!r}", t)
                return subst(guide, x, applied_arg(x, l))
            case Phi(proof, subject, target):
                pty = whnf(ctx, go(ctx, proof), fuel)
                match pty:
                    case Eq(l, r):
                        pass
                    case _:
                        _err(ErrorCode.EXPECTED_EQUATION_TYPE,
                             f"'phi' expects an equation proof, got "
                             f"{print_term(pty)!r}", t)
                if not def_eq(ctx, subject, l, fuel):
                    _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                         f"'phi' subject erases to "
                         f"{print_term(erase(subject))!r}, expected "
                         f"{print_term(l)!r}", t)
                if not def_eq(ctx, target, r, fuel):
                    _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                         f"'phi' target erases to "
                         f"{print_term(erase(target))!r}, expected "
                         f"{print_term(r)!r}", t)
                return go(ctx, subject)
            case Eq(l, r):
                if not (is_pure(l) and is_pure(r)):
                    _err(ErrorCode.PURITY_VIOLATION,
                         "equation sides must be pure terms", t)
                missing = (free_vars(l) | free_vars(r)) - ctx.domain()
                if missing:
                    names = ", ".join(sorted(print_term(v) for v in missing))
                    _err(ErrorCode.UNBOUND_VARIABLE,
                         f"equation mentions unbound {names}", t)
                return Star()
            case IntersectIntro(first, second, x, guide):
                t1 = go(ctx, first)
                t2 = go(ctx, second)
                want = subst(guide, x, applied_arg(x, first))
                if not def_eq(ctx, t2, want, fuel):
                    _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                         f"second component has type {print_term(t2)!r}, "
                         f"expected {print_term(want)!r}", t)
                iota = Iota(x, t1, guide)
                go(ctx, iota)
                if strict_intersections:
                    same = alpha_eq(erase(first), erase(second))
                else:
                    same = def_eq(ctx, first, second, fuel)
                if not same:
                    _err(ErrorCode.ERASURE_MISMATCH,
                         "components of an intersection must have equal "
                         "erasures", t)
                return iota
            case Let(x, definiens, annotation, body):
                if x.category is VarCategory.KIND:
                    if not isinstance(whnf(ctx, annotation, fuel), Box):
                        _err(ErrorCode.SORT_CHECK_FAILED,
                             "a kind-variable let must be annotated '#'", t)
                    dty = whnf(ctx, go(ctx, definiens), fuel)
                    if not isinstance(dty, Box):
                        _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                             f"definiens has type {print_term(dty)!r}, "
                             "expected '#'", t)
                    entry_ty: Term = Box()
                else:
                    dty = go(ctx, definiens)
                    if not def_eq(ctx, dty, annotation, fuel):
                        _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                             f"definiens has type {print_term(dty)!r}, "
                             f"annotated {print_term(annotation)!r}", t)
                    s = sort_of(ctx, annotation)
                    if not var_sort_ok(x, s):
                        _err(ErrorCode.SORT_CHECK_FAILED,
                             f"variable {print_term(x)!r} cannot be defined at "
                             f"a type of sort {print_term(s)!r}", t)
                    entry_ty = annotation
                x2, body2, ctx2 = bind_defn(ctx, x, definiens, entry_ty, body)
                bty = go(ctx2, body2)
                return subst(bty, x2, applied_arg(x2, definiens))
            case UnannotatedLambda():
                _err(ErrorCode.PURITY_VIOLATION,
                     "a '\\' abstraction is a pure term; it has no type "
                     "outside erased positions", t)
        raise TypeError(f"not a term: {t!r}")

    def sort_of(ctx: Context, t: Term) -> Term:
        s = whnf(ctx, go(ctx, t), fuel)
        if not isinstance(s, (Star, Box)):
            _err(ErrorCode.SORT_CHECK_FAILED,
                 f"{print_term(t)!r} has type {print_term(s)!r}, "
                 "which is not a sort", t)
        return s

    def bind_decl(ctx: Context, x: Var, type_: Term, body: Term):
        x2, body2 = _freshen(ctx, x, body)
        return x2, body2, ctx.extend(Decl(x2, type_))

    def bind_defn(ctx: Context, x: Var, definiens: Term, type_: Term, body: Term):
        x2, body2 = _freshen(ctx, x, body)
        return x2, body2, ctx.extend(Defn(x2, definiens, type_))

    return go(ctx, t)


def _freshen(ctx: Context, x: Var, body: Term) -> tuple[Var, Term]:
    # Context names stay unique: rename binders that shadow an entry.
    if x in ctx:
        x2 = fresh_var(x, ctx.domain() | free_vars(body))
        return x2, subst(body, x, x2)
    return x, body


def check_definitions(module: SourceModule, fuel: int = DEFAULT_FUEL,
                      strict_intersections: bool = False):
    """Check a module's definitions in order, yielding one Judgment each.

    The first failure aborts with the definition name attached; fuel
    exhaustion is reported as its own error code.
    """
    ctx = Context()
    for d in module.definitions:
        try:
            synthesized = infer(ctx, d.definiens, fuel, strict_intersections)
            if d.var.category is VarCategory.KIND:
                if not isinstance(whnf(ctx, d.annotation, fuel), Box):
                    _err(ErrorCode.SORT_CHECK_FAILED,
                         "a kind-variable definition must be annotated '#'",
                         d.annotation)
                if not isinstance(whnf(ctx, synthesized, fuel), Box):
                    _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                         f"definiens has type {print_term(synthesized)!r}, "
                         "expected '#'", d.definiens)
                entry_ty: Term = Box()
            else:
                if not def_eq(ctx, synthesized, d.annotation, fuel):
                    _err(ErrorCode.NOT_DEFINITIONALLY_EQUAL,
                         f"definiens has type {print_term(synthesized)!r}, "
                         f"annotated {print_term(d.annotation)!r}", d.definiens)
                s = whnf(ctx, infer(ctx, d.annotation, fuel, strict_intersections),
                         fuel)
                if not isinstance(s, (Star, Box)):
                    _err(ErrorCode.SORT_CHECK_FAILED,
                         f"annotation of {d.name!r} is not a type or kind",
                         d.annotation)
                if not var_sort_ok(d.var, s):
                    _err(ErrorCode.SORT_CHECK_FAILED,
                         f"definition name {d.name!r} is the wrong variable "
                         f"class for a type of sort {print_term(s)!r}",
                         d.annotation)
                entry_ty = d.annotation
        except TypeCheckError as e:
            e.definition = d.name
            raise
        except FuelExhausted as e:
            raise TypeCheckError(
                ErrorCode.FUEL_EXHAUSTED,
                f"fuel exhausted while checking {d.name!r}",
                d.definiens,
                definition=d.name,
            ) from e
        ctx = ctx.extend(Defn(d.var, d.definiens, entry_ty))
        yield Judgment(d.name, d.definiens, synthesized)


def check_module(module: SourceModule, fuel: int = DEFAULT_FUEL,
                 strict_intersections: bool = False) -> list[Judgment]:
    return list(check_definitions(module, fuel, strict_intersections))


def module_context(module: SourceModule, upto: str | None = None) -> Context:
    """Definitions-as-context, without checking; for erasure/normalization
    inspection.  Stops before `upto` when given."""
    ctx = Context()
    for d in module.definitions:
        if upto is not None and d.name == upto:
            break
        ctx = ctx.extend(Defn(d.var, d.definiens, d.annotation))
    return ctx
