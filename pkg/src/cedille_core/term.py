"""Abstract syntax for the checker kernel.

One unified term language covers terms, types, and kinds; sorting is the
type checker's job.  Variables carry a syntactic category (term / type /
kind) fixed at parse time, which makes purity of equation sides decidable
without a context.

Terms are immutable values.  Bound-name choice is never observable:
consumers compare with `alpha_eq` and substitute with the capture-avoiding
`subst`.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class VarCategory(Enum):
    """Syntactic class of a variable occurrence, fixed at parse time."""

    TERM = "term"
    TYPE = "type"
    KIND = "kind"


class Term:
    """Base class for all AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str
    category: VarCategory


@dataclass(frozen=True)
class Star(Term):
    """The kind of types."""


@dataclass(frozen=True)
class Box(Term):
    """The sole superkind.  Never the subject of type synthesis."""


@dataclass(frozen=True)
class Proj1(Term):
    subject: Term


@dataclass(frozen=True)
class Proj2(Term):
    subject: Term


@dataclass(frozen=True)
class Beta(Term):
    """Proof of `{ lhs ~ lhs }`; erases to the witness.  lhs must be pure."""

    lhs: Term
    witness: Term


@dataclass(frozen=True)
class Delta(Term):
    """Proves the motive from a proof of the false Church-boolean equation."""

    motive: Term
    proof: Term


@dataclass(frozen=True)
class Sigma(Term):
    """Symmetry of equality."""

    proof: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class ErasedApp(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Rho(Term):
    """Equality elimination: rewrite the subject's type along the proof.

    `var` binds in `guide` only; it is a term variable.
    """

    proof: Term
    var: Var
    guide: Term
    subject: Term


@dataclass(frozen=True)
class Forall(Term):
    """Implicit product: quantification over an erased argument."""

    var: Var
    domain: Term
    body: Term


@dataclass(frozen=True)
class Pi(Term):
    var: Var
    domain: Term
    body: Term


@dataclass(frozen=True)
class Iota(Term):
    """Dependent intersection; `var` binds in `second` only."""

    var: Var
    first: Term
    second: Term


@dataclass(frozen=True)
class Lambda(Term):
    var: Var
    domain: Term
    body: Term


@dataclass(frozen=True)
class ErasedLambda(Term):
    """Erased abstraction; the bound variable may not survive erasure."""

    var: Var
    domain: Term
    body: Term


@dataclass(frozen=True)
class UnannotatedLambda(Term):
    """Pure-fragment abstraction.  Binds a term variable only."""

    var: Var
    body: Term


@dataclass(frozen=True)
class IntersectIntro(Term):
    """Introduce a dependent intersection; `var` binds in `guide` only."""

    first: Term
    second: Term
    var: Var
    guide: Term


@dataclass(frozen=True)
class Phi(Term):
    """Proof-irrelevant cast: typed as the subject, erases to the target."""

    proof: Term
    subject: Term
    target: Term


@dataclass(frozen=True)
class Let(Term):
    """`var` binds in `body` only (no recursion)."""

    var: Var
    definiens: Term
    annotation: Term
    body: Term


@dataclass(frozen=True)
class Eq(Term):
    """Primitive equality between pure terms."""

    lhs: Term
    rhs: Term


def free_vars(t: Term) -> set[Var]:
    """Variables with a free occurrence in t; bound occurrences excluded."""
    match t:
        case Var():
            return {t}
        case Star() | Box():
            return set()
        case Proj1(s) | Proj2(s) | Sigma(s):
            return free_vars(s)
        case Beta(lhs, witness):
            return free_vars(lhs) | free_vars(witness)
        case Delta(motive, proof):
            return free_vars(motive) | free_vars(proof)
        case App(f, a) | ErasedApp(f, a):
            return free_vars(f) | free_vars(a)
        case Eq(l, r):
            return free_vars(l) | free_vars(r)
        case (
            Forall(x, dom, body)
            | Pi(x, dom, body)
            | Lambda(x, dom, body)
            | ErasedLambda(x, dom, body)
        ):
            return free_vars(dom) | (free_vars(body) - {x})
        case Iota(x, first, second):
            return free_vars(first) | (free_vars(second) - {x})
        case UnannotatedLambda(x, body):
            return free_vars(body) - {x}
        case Rho(proof, x, guide, subject):
            return free_vars(proof) | (free_vars(guide) - {x}) | free_vars(subject)
        case IntersectIntro(first, second, x, guide):
            return free_vars(first) | free_vars(second) | (free_vars(guide) - {x})
        case Phi(proof, subject, target):
            return free_vars(proof) | free_vars(subject) | free_vars(target)
        case Let(x, definiens, annotation, body):
            return (
                free_vars(definiens)
                | free_vars(annotation)
                | (free_vars(body) - {x})
            )
    raise TypeError(f"not a term: {t!r}")


def fresh_var(base: Var, avoid: set[Var]) -> Var:
    """A variable of base's category, not in avoid, with a name derived from
    base's.  Appending digits keeps the name inside its lexical class."""
    stem = base.name.rstrip("0123456789") or base.name
    i = 1
    while True:
        cand = Var(f"{stem}{i}", base.category)
        if cand not in avoid:
            return cand
        i += 1


def subst(t: Term, x: Var, v: Term) -> Term:
    """Capture-avoiding substitution of v for free occurrences of x in t."""
    fv_v = free_vars(v)

    def under(y: Var, *parts: Term) -> tuple:
        # Rename the binder when it would capture a free variable of v.
        if y in fv_v and any(x in free_vars(p) for p in parts):
            avoid = fv_v | {x}
            for p in parts:
                avoid |= free_vars(p)
            y2 = fresh_var(y, avoid)
            return (y2, *(subst(p, y, y2) for p in parts))
        return (y, *parts)

    def go(t: Term) -> Term:
        match t:
            case Var():
                return v if t == x else t
            case Star() | Box():
                return t
            case Proj1(s):
                return Proj1(go(s))
            case Proj2(s):
                return Proj2(go(s))
            case Sigma(s):
                return Sigma(go(s))
            case Beta(lhs, witness):
                return Beta(go(lhs), go(witness))
            case Delta(motive, proof):
                return Delta(go(motive), go(proof))
            case App(f, a):
                return App(go(f), go(a))
            case ErasedApp(f, a):
                return ErasedApp(go(f), go(a))
            case Eq(l, r):
                return Eq(go(l), go(r))
            case Forall(y, dom, body):
                if y == x:
                    return Forall(y, go(dom), body)
                y, body = under(y, body)
                return Forall(y, go(dom), go(body))
            case Pi(y, dom, body):
                if y == x:
                    return Pi(y, go(dom), body)
                y, body = under(y, body)
                return Pi(y, go(dom), go(body))
            case Iota(y, first, second):
                if y == x:
                    return Iota(y, go(first), second)
                y, second = under(y, second)
                return Iota(y, go(first), go(second))
            case Lambda(y, dom, body):
                if y == x:
                    return Lambda(y, go(dom), body)
                y, body = under(y, body)
                return Lambda(y, go(dom), go(body))
            case ErasedLambda(y, dom, body):
                if y == x:
                    return ErasedLambda(y, go(dom), body)
                y, body = under(y, body)
                return ErasedLambda(y, go(dom), go(body))
            case UnannotatedLambda(y, body):
                if y == x:
                    return t
                y, body = under(y, body)
                return UnannotatedLambda(y, go(body))
            case Rho(proof, y, guide, subject):
                if y == x:
                    return Rho(go(proof), y, guide, go(subject))
                y, guide = under(y, guide)
                return Rho(go(proof), y, go(guide), go(subject))
            case Phi(proof, subject, target):
                return Phi(go(proof), go(subject), go(target))
            case IntersectIntro(first, second, y, guide):
                if y == x:
                    return IntersectIntro(go(first), go(second), y, guide)
                y, guide = under(y, guide)
                return IntersectIntro(go(first), go(second), y, go(guide))
            case Let(y, definiens, annotation, body):
                if y == x:
                    return Let(y, go(definiens), go(annotation), body)
                y, body = under(y, body)
                return Let(y, go(definiens), go(annotation), go(body))
        raise TypeError(f"not a term: {t!r}")

    return go(t)


def alpha_eq(t1: Term, t2: Term) -> bool:
    """Equality up to consistent renaming of bound variables."""

    def eq(a: Term, b: Term, env1: dict, env2: dict, depth: int) -> bool:
        def bound(x1: Var, b1: Term, x2: Var, b2: Term) -> bool:
            if x1.category is not x2.category:
                return False
            return eq(b1, b2, {**env1, x1: depth}, {**env2, x2: depth}, depth + 1)

        match a, b:
            case (Var(), Var()):
                i, j = env1.get(a), env2.get(b)
                if i is None and j is None:
                    return a == b
                return i == j
            case (Star(), Star()) | (Box(), Box()):
                return True
            case (Proj1(s1), Proj1(s2)) | (Proj2(s1), Proj2(s2)) | (
                Sigma(s1),
                Sigma(s2),
            ):
                return eq(s1, s2, env1, env2, depth)
            case (Beta(l1, w1), Beta(l2, w2)):
                return eq(l1, l2, env1, env2, depth) and eq(w1, w2, env1, env2, depth)
            case (Delta(m1, p1), Delta(m2, p2)):
                return eq(m1, m2, env1, env2, depth) and eq(p1, p2, env1, env2, depth)
            case (App(f1, a1), App(f2, a2)) | (ErasedApp(f1, a1), ErasedApp(f2, a2)):
                return eq(f1, f2, env1, env2, depth) and eq(a1, a2, env1, env2, depth)
            case (Eq(l1, r1), Eq(l2, r2)):
                return eq(l1, l2, env1, env2, depth) and eq(r1, r2, env1, env2, depth)
            case (Forall(x1, d1, b1), Forall(x2, d2, b2)) | (
                Pi(x1, d1, b1),
                Pi(x2, d2, b2),
            ) | (Lambda(x1, d1, b1), Lambda(x2, d2, b2)) | (
                ErasedLambda(x1, d1, b1),
                ErasedLambda(x2, d2, b2),
            ) | (Iota(x1, d1, b1), Iota(x2, d2, b2)):
                return eq(d1, d2, env1, env2, depth) and bound(x1, b1, x2, b2)
            case (UnannotatedLambda(x1, b1), UnannotatedLambda(x2, b2)):
                return bound(x1, b1, x2, b2)
            case (Rho(p1, x1, g1, s1), Rho(p2, x2, g2, s2)):
                return (
                    eq(p1, p2, env1, env2, depth)
                    and bound(x1, g1, x2, g2)
                    and eq(s1, s2, env1, env2, depth)
                )
            case (IntersectIntro(f1, s1, x1, g1), IntersectIntro(f2, s2, x2, g2)):
                return (
                    eq(f1, f2, env1, env2, depth)
                    and eq(s1, s2, env1, env2, depth)
                    and bound(x1, g1, x2, g2)
                )
            case (Phi(p1, s1, t1_), Phi(p2, s2, t2_)):
                return (
                    eq(p1, p2, env1, env2, depth)
                    and eq(s1, s2, env1, env2, depth)
                    and eq(t1_, t2_, env1, env2, depth)
                )
            case (Let(x1, d1, a1, b1), Let(x2, d2, a2, b2)):
                return (
                    eq(d1, d2, env1, env2, depth)
                    and eq(a1, a2, env1, env2, depth)
                    and bound(x1, b1, x2, b2)
                )
        return False

    return eq(t1, t2, {}, {}, 0)


def is_pure(t: Term) -> bool:
    """True iff t lies in the pure sub-grammar: term variables, application,
    and unannotated lambda only."""
    match t:
        case Var(_, VarCategory.TERM):
            return True
        case App(f, a):
            return is_pure(f) and is_pure(a)
        case UnannotatedLambda(_, body):
            return is_pure(body)
        case _:
            return False
