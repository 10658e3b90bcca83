"""Pretty-printer emitting canonical surface syntax with minimal parentheses.

Inverse of the parser: `parse_term(print_term(t))` is alpha-equivalent to t.
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
)

# Binding strength, loosest to tightest; a subterm is parenthesized when its
# own level is below what its position requires.
_TERM, _EAPP, _APP, _OPERAND, _PROJ, _ATOM = 0, 1, 2, 3, 4, 5

_BINDER_KW = {Forall: "all", Pi: "Pi", Iota: "iota", Lambda: "lam", ErasedLambda: "Lam"}


def print_term(t: Term) -> str:
    return _print(t, _TERM)


def _var(x: Var) -> str:
    return "$" + x.name if x.category is VarCategory.KIND else x.name


def _print(t: Term, level: int) -> str:
    match t:
        case Var():
            s, lvl = _var(t), _ATOM
        case Star():
            s, lvl = "*", _ATOM
        case Box():
            s, lvl = "#", _ATOM
        case Eq(l, r):
            s, lvl = f"{{ {_print(l, _TERM)} ~ {_print(r, _TERM)} }}", _ATOM
        case IntersectIntro(first, second, x, guide):
            s = (
                f"[ {_print(first, _TERM)} , {_print(second, _TERM)}"
                f" @ {_var(x)} . {_print(guide, _TERM)} ]"
            )
            lvl = _ATOM
        case Proj1(sub):
            s, lvl = f"{_print(sub, _PROJ)}.1", _PROJ
        case Proj2(sub):
            s, lvl = f"{_print(sub, _PROJ)}.2", _PROJ
        case Beta(lhs, witness):
            s = f"beta {_print(lhs, _PROJ)} {{ {_print(witness, _TERM)} }}"
            lvl = _OPERAND
        case Delta(motive, proof):
            s, lvl = f"delta {_print(motive, _PROJ)} {_print(proof, _PROJ)}", _OPERAND
        case Sigma(proof):
            s, lvl = f"sigma {_print(proof, _PROJ)}", _OPERAND
        case App(f, a):
            s, lvl = f"{_print(f, _APP)} {_print(a, _OPERAND)}", _APP
        case ErasedApp(f, a):
            s, lvl = f"{_print(f, _EAPP)} - {_print(a, _APP)}", _EAPP
        case Forall(x, dom, body) | Pi(x, dom, body) | Lambda(x, dom, body) | (
            ErasedLambda(x, dom, body)
        ) | Iota(x, dom, body):
            kw = _BINDER_KW[type(t)]
            s = f"{kw} {_var(x)} : {_print(dom, _TERM)} . {_print(body, _TERM)}"
            lvl = _TERM
        case UnannotatedLambda(x, body):
            s, lvl = f"\\{_var(x)}. {_print(body, _TERM)}", _TERM
        case Rho(proof, x, guide, subject):
            s = (
                f"rho {_print(proof, _APP)} @ {_var(x)} . "
                f"{_print(guide, _APP)} - {_print(subject, _TERM)}"
            )
            lvl = _TERM
        case Phi(proof, subject, target):
            shown = _print(subject, _APP)
            if _spine_has_brace(subject):
                shown = f"({shown})"
            s = f"phi {_print(proof, _APP)} - {shown} {{ {_print(target, _TERM)} }}"
            lvl = _TERM
        case Let(x, definiens, annotation, body):
            s = (
                f"[ {_var(x)} = {_print(definiens, _TERM)} : "
                f"{_print(annotation, _TERM)} ] - {_print(body, _TERM)}"
            )
            lvl = _TERM
        case _:
            raise TypeError(f"not a term: {t!r}")
    return f"({s})" if lvl < level else s


def _spine_has_brace(t: Term) -> bool:
    # An application spine printed in phi's cast position may not expose a
    # bare '{' where the parser looks for the next operand: that is where
    # phi's own brace begins.
    match t:
        case Eq():
            return True
        case Proj1(s) | Proj2(s):
            return _spine_has_brace(s)
        case App(f, a):
            return _spine_has_brace(f) or _spine_has_brace(a)
        case _:
            return False
