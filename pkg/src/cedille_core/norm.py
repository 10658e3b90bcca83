"""Fuel-bounded reduction and definitional equality.

Untyped beta-eta reduction can diverge on ill-typed input, so every
reduction entry point takes a step budget and raises `FuelExhausted` when
it runs out with a redex remaining.  Exhaustion is a distinct outcome,
never conflated with "not equal".

Beta steps substitute arguments per the erasure discipline: a term
variable receives the erasure of its argument, a type or kind variable the
argument itself.  Definitional equality erases both sides first and
unfolds context definitions in erased form, so it decides beta-eta
equivalence of computational content.
"""
from __future__ import annotations

from dataclasses import dataclass

from .erase import erase
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
    subst,
)

DEFAULT_FUEL = 100_000


class FuelExhausted(Exception):
    """A reduction budget ran out with a redex remaining."""


class _Fuel:
    __slots__ = ("remaining",)

    def __init__(self, remaining: int):
        self.remaining = remaining

    def spend(self):
        if self.remaining <= 0:
            raise FuelExhausted("reduction step budget exhausted")
        self.remaining -= 1


@dataclass(frozen=True)
class Decl:
    var: Var
    type: Term


@dataclass(frozen=True)
class Defn:
    var: Var
    definiens: Term
    type: Term


class Context:
    """Ordered telescope of declarations and definitions.

    Entry names are kept unique; binders that would shadow an entry are
    renamed by the consumers before extension.
    """

    def __init__(self, entries=()):
        self._entries = tuple(entries)
        self._by_var = {e.var: e for e in self._entries}
        if len(self._by_var) != len(self._entries):
            raise ValueError("duplicate names in context")
        self._erased: Context | None = None

    def __contains__(self, var: Var) -> bool:
        return var in self._by_var

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def lookup(self, var: Var):
        return self._by_var.get(var)

    def extend(self, entry) -> Context:
        if entry.var in self._by_var:
            raise ValueError(f"context already binds {entry.var.name!r}")
        return Context(self._entries + (entry,))

    def domain(self) -> set[Var]:
        return set(self._by_var)

    def erased(self) -> Context:
        """The same telescope with every definiens erased; used by def_eq."""
        if self._erased is None:
            self._erased = Context(
                Defn(e.var, erase(e.definiens), e.type) if isinstance(e, Defn) else e
                for e in self._entries
            )
        return self._erased


def applied_arg(x: Var, arg: Term) -> Term:
    """What actually replaces x: term variables receive erased arguments."""
    return erase(arg) if x.category is VarCategory.TERM else arg


def _unfolded(entry: Defn) -> Term:
    # Unfolding is a term-variable-position substitution too: term-category
    # definitions unfold erased, type- and kind-level ones as written.
    return applied_arg(entry.var, entry.definiens)


def whnf(ctx: Context, t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Reduce head redexes and unfold head definitions until the head is a
    constructor, a projection of a stuck term, or an undefined variable."""
    return _whnf(ctx, t, _Fuel(fuel))


def _whnf(ctx: Context, t: Term, fuel: _Fuel) -> Term:
    while True:
        match t:
            case Var():
                entry = ctx.lookup(t)
                if isinstance(entry, Defn):
                    fuel.spend()
                    t = _unfolded(entry)
                    continue
                return t
            case App(f, a):
                f2 = _whnf(ctx, f, fuel)
                match f2:
                    case Lambda(x, _, body) | UnannotatedLambda(x, body):
                        fuel.spend()
                        t = subst(body, x, applied_arg(x, a))
                        continue
                return App(f2, a)
            case ErasedApp(f, a):
                f2 = _whnf(ctx, f, fuel)
                match f2:
                    case ErasedLambda(x, _, body):
                        fuel.spend()
                        t = subst(body, x, applied_arg(x, a))
                        continue
                return ErasedApp(f2, a)
            case Let(x, definiens, _, body):
                fuel.spend()
                t = subst(body, x, applied_arg(x, definiens))
                continue
            case Proj1(s):
                return Proj1(_whnf(ctx, s, fuel))
            case Proj2(s):
                return Proj2(_whnf(ctx, s, fuel))
            case _:
                return t


def nf(ctx: Context, t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Full normal form: leftmost-outermost beta reduction and definition
    unfolding everywhere, then bottom-up eta contraction of '\\' lambdas."""
    return _nf(ctx, t, _Fuel(fuel))


def _open(ctx: Context, x: Var, *parts: Term) -> tuple:
    # Going under a binder that shadows a context entry: rename the bound
    # variable so unfolded definientia cannot collide with it.
    if x in ctx:
        avoid = ctx.domain()
        for p in parts:
            avoid |= free_vars(p)
        x2 = fresh_var(x, avoid)
        return (x2, *(subst(p, x, x2) for p in parts))
    return (x, *parts)


def _nf(ctx: Context, t: Term, fuel: _Fuel) -> Term:
    t = _whnf(ctx, t, fuel)
    match t:
        case Var() | Star() | Box():
            return t
        case App(f, a):
            return App(_nf(ctx, f, fuel), _nf(ctx, a, fuel))
        case ErasedApp(f, a):
            return ErasedApp(_nf(ctx, f, fuel), _nf(ctx, a, fuel))
        case Proj1(s):
            return Proj1(_nf(ctx, s, fuel))
        case Proj2(s):
            return Proj2(_nf(ctx, s, fuel))
        case Sigma(p):
            return Sigma(_nf(ctx, p, fuel))
        case Beta(lhs, witness):
            return Beta(_nf(ctx, lhs, fuel), _nf(ctx, witness, fuel))
        case Delta(motive, proof):
            return Delta(_nf(ctx, motive, fuel), _nf(ctx, proof, fuel))
        case Eq(l, r):
            return Eq(_nf(ctx, l, fuel), _nf(ctx, r, fuel))
        case Forall(x, dom, body):
            dom = _nf(ctx, dom, fuel)
            x, body = _open(ctx, x, body)
            return Forall(x, dom, _nf(ctx, body, fuel))
        case Pi(x, dom, body):
            dom = _nf(ctx, dom, fuel)
            x, body = _open(ctx, x, body)
            return Pi(x, dom, _nf(ctx, body, fuel))
        case Iota(x, first, second):
            first = _nf(ctx, first, fuel)
            x, second = _open(ctx, x, second)
            return Iota(x, first, _nf(ctx, second, fuel))
        case Lambda(x, dom, body):
            dom = _nf(ctx, dom, fuel)
            x, body = _open(ctx, x, body)
            return Lambda(x, dom, _nf(ctx, body, fuel))
        case ErasedLambda(x, dom, body):
            dom = _nf(ctx, dom, fuel)
            x, body = _open(ctx, x, body)
            return ErasedLambda(x, dom, _nf(ctx, body, fuel))
        case UnannotatedLambda(x, body):
            x, body = _open(ctx, x, body)
            body = _nf(ctx, body, fuel)
            match body:
                case App(f, Var() as v) if v == x and x not in free_vars(f):
                    fuel.spend()  # eta step
                    return f
            return UnannotatedLambda(x, body)
        case Rho(proof, x, guide, subject):
            proof = _nf(ctx, proof, fuel)
            subject = _nf(ctx, subject, fuel)
            x, guide = _open(ctx, x, guide)
            return Rho(proof, x, _nf(ctx, guide, fuel), subject)
        case IntersectIntro(first, second, x, guide):
            first = _nf(ctx, first, fuel)
            second = _nf(ctx, second, fuel)
            x, guide = _open(ctx, x, guide)
            return IntersectIntro(first, second, x, _nf(ctx, guide, fuel))
        case Phi(proof, subject, target):
            return Phi(
                _nf(ctx, proof, fuel),
                _nf(ctx, subject, fuel),
                _nf(ctx, target, fuel),
            )
    raise TypeError(f"not a term: {t!r}")


def def_eq(ctx: Context, a: Term, b: Term, fuel: int = DEFAULT_FUEL) -> bool:
    """Definitional equality: beta-eta equivalence of erasures, closed under
    unfolding the context's definitions, congruent over the type formers."""
    budget = _Fuel(fuel)
    ectx = ctx.erased()
    na = _nf(ectx, erase(a), budget)
    nb = _nf(ectx, erase(b), budget)
    return alpha_eq(na, nb)
