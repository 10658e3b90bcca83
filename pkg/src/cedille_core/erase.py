"""Erasure: strip annotations and proof apparatus from an annotated term,
leaving its computational content.

The output never contains projections, equality-proof constructs, erased
applications or abstractions, intersection introductions, or lets.  A
term-variable let becomes a beta redex; type- and kind-level lets are
erased by substitution so no impure redex leaks into equation sides.
"""
from __future__ import annotations

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
    subst,
)


def erase(t: Term) -> Term:
    match t:
        case Var() | Star() | Box():
            return t
        case Proj1(s) | Proj2(s):
            return erase(s)
        case Beta(_, witness):
            return erase(witness)
        case Delta(_, proof):
            return erase(proof)
        case Sigma(proof):
            return erase(proof)
        case App(f, a):
            return App(erase(f), erase(a))
        case ErasedApp(f, _):
            return erase(f)
        case Rho(_, _, _, subject):
            return erase(subject)
        case Forall(x, dom, body):
            return Forall(x, erase(dom), erase(body))
        case Pi(x, dom, body):
            return Pi(x, erase(dom), erase(body))
        case Iota(x, first, second):
            return Iota(x, erase(first), erase(second))
        case Lambda(x, dom, body):
            if x.category is VarCategory.TERM:
                return UnannotatedLambda(x, erase(body))
            # Type-level lambda keeps its (erased) annotation.
            return Lambda(x, erase(dom), erase(body))
        case ErasedLambda(_, _, body):
            return erase(body)
        case UnannotatedLambda(x, body):
            return UnannotatedLambda(x, erase(body))
        case IntersectIntro(first, _, _, _):
            return erase(first)
        case Phi(_, _, target):
            return erase(target)
        case Let(x, definiens, _, body):
            if x.category is VarCategory.TERM:
                return App(UnannotatedLambda(x, erase(body)), erase(definiens))
            return subst(erase(body), x, erase(definiens))
        case Eq(lhs, rhs):
            return Eq(erase(lhs), erase(rhs))
    raise TypeError(f"not a term: {t!r}")
