"""Seeded random term generators for property tests.

Generated terms are well-formed (equation sides and beta components pure,
guide binders term variables) but not necessarily well-typed; that is
exactly the domain of the parser, printer, erasure, and reduction
machinery.
"""
from __future__ import annotations

import random

from cedille_core import (
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
)

TERM_NAMES = ["u", "v", "w", "a", "b", "c", "f", "g"]
TYPE_NAMES = ["X", "Y", "Z", "A", "B"]
KIND_NAMES = ["k", "j"]


class TermGen:
    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def var(self, category: VarCategory | None = None) -> Var:
        category = category or self.rng.choice(list(VarCategory))
        pool = {
            VarCategory.TERM: TERM_NAMES,
            VarCategory.TYPE: TYPE_NAMES,
            VarCategory.KIND: KIND_NAMES,
        }[category]
        return Var(self.rng.choice(pool), category)

    def pure(self, depth: int) -> Term:
        if depth <= 0:
            return self.var(VarCategory.TERM)
        match self.rng.randrange(4):
            case 0:
                return self.var(VarCategory.TERM)
            case 1 | 2:
                return App(self.pure(depth - 1), self.pure(depth - 1))
            case _:
                return UnannotatedLambda(
                    self.var(VarCategory.TERM), self.pure(depth - 1)
                )

    def term(self, depth: int = 4) -> Term:
        if depth <= 0:
            return self.rng.choice(
                [self.var(), self.var(VarCategory.TERM), Star(), Box()]
            )
        d = depth - 1
        match self.rng.randrange(21):
            case 0:
                return self.var()
            case 1:
                return Star()
            case 2:
                return Box()
            case 3:
                return Proj1(self.term(d))
            case 4:
                return Proj2(self.term(d))
            case 5:
                return Beta(self.pure(d), self.term(d))
            case 6:
                return Delta(self.term(d), self.term(d))
            case 7:
                return Sigma(self.term(d))
            case 8:
                return App(self.term(d), self.term(d))
            case 9:
                return ErasedApp(self.term(d), self.term(d))
            case 10:
                return Rho(
                    self.term(d), self.var(VarCategory.TERM), self.term(d),
                    self.term(d),
                )
            case 11:
                return Forall(self.var(), self.term(d), self.term(d))
            case 12:
                return Pi(self.var(), self.term(d), self.term(d))
            case 13:
                return Iota(self.var(VarCategory.TERM), self.term(d), self.term(d))
            case 14:
                return Lambda(self.var(), self.term(d), self.term(d))
            case 15:
                return ErasedLambda(self.var(), self.term(d), self.term(d))
            case 16:
                return UnannotatedLambda(self.var(VarCategory.TERM), self.term(d))
            case 17:
                return IntersectIntro(
                    self.term(d), self.term(d), self.var(VarCategory.TERM),
                    self.term(d),
                )
            case 18:
                return Phi(self.term(d), self.term(d), self.term(d))
            case 19:
                return Let(self.var(), self.term(d), self.term(d), self.term(d))
            case _:
                return Eq(self.pure(d), self.pure(d))

    def terms(self, count: int, depth: int = 4):
        return [self.term(depth) for _ in range(count)]


def node_types(t: Term) -> list[str]:
    """All node constructor names occurring in t, with repetition."""
    out = [type(t).__name__]
    match t:
        case Var() | Star() | Box():
            pass
        case Proj1(s) | Proj2(s) | Sigma(s):
            out += node_types(s)
        case Beta(a, b) | Delta(a, b) | App(a, b) | ErasedApp(a, b) | Eq(a, b):
            out += node_types(a) + node_types(b)
        case Forall(_, a, b) | Pi(_, a, b) | Iota(_, a, b) | Lambda(_, a, b) | (
            ErasedLambda(_, a, b)
        ):
            out += node_types(a) + node_types(b)
        case UnannotatedLambda(_, b):
            out += node_types(b)
        case Rho(a, _, b, c) | Phi(a, b, c):
            out += node_types(a) + node_types(b) + node_types(c)
        case IntersectIntro(a, b, _, c) | Let(_, a, b, c):
            out += node_types(a) + node_types(b) + node_types(c)
    return out
