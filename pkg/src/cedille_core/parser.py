"""Concrete ASCII surface syntax.

Lexical classes decide variable categories with zero context:

    term variables   [a-z][A-Za-z0-9_]*     (minus keywords)
    type variables   [A-Z][A-Za-z0-9_]*     (minus Pi, Lam)
    kind variables   $[A-Za-z0-9_]+

Grammar, tightest first:

    atom     ::= var | '*' | '#' | '(' term ')'
               | '{' term '~' term '}'                      (equation; sides pure)
               | '[' term ',' term '@' tvar '.' term ']'    (intersection intro)
    proj     ::= atom ('.1' | '.2')*
    operand  ::= proj
               | 'beta' proj '{' term '}'
               | 'delta' proj proj
               | 'sigma' proj
    app      ::= operand+                                   (left-assoc)
    eapp     ::= app ('-' app)*                             (left-assoc, looser)
    term     ::= eapp
               | ('all' | 'Pi' | 'iota' | 'lam' | 'Lam') var ':' term '.' term
               | '\\' tvar '.' term
               | 'rho' app '@' tvar '.' app '-' term
               | 'phi' app '-' app '{' term '}'             (no brace operand in 2nd app)
               | '[' var '=' term ':' term ']' '-' term     (let)

Binders, rho, phi, and let extend maximally to the right.  A module is a
sequence of `name = term : term .` statements; `%` starts a line comment.
Both sides of an equation and the first component of `beta` must be pure
terms, enforced here at parse time.
"""
from __future__ import annotations

from dataclasses import dataclass, field

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
    free_vars,
    is_pure,
)

KEYWORDS = {"all", "Pi", "iota", "lam", "Lam", "beta", "delta", "sigma", "rho", "phi"}

_PUNCT = {"(", ")", "[", "]", "{", "}", ",", "@", "~", "-", ":", "=", "\\"}


class ParseError(Exception):
    def __init__(self, message, offset=0, line=1, col=1, expected=None, definition=None):
        self.message = message
        self.offset = offset
        self.line = line
        self.col = col
        self.expected = frozenset(expected or ())
        self.definition = definition
        super().__init__(f"{line}:{col}: {message}")

    @property
    def code(self) -> str:
        return "ParseError"


class PurityViolation(ParseError):
    @property
    def code(self) -> str:
        return "PurityViolation"


class DuplicateDefinition(ParseError):
    @property
    def code(self) -> str:
        return "DuplicateDefinition"


class ForwardReference(ParseError):
    @property
    def code(self) -> str:
        return "ForwardReference"


@dataclass(frozen=True)
class GlobalDef:
    var: Var
    definiens: Term
    annotation: Term

    @property
    def name(self) -> str:
        """Surface name, with the '$' sigil for kind variables."""
        if self.var.category is VarCategory.KIND:
            return "$" + self.var.name
        return self.var.name


@dataclass
class SourceModule:
    definitions: list[GlobalDef] = field(default_factory=list)
    filename: str = "<string>"


@dataclass(frozen=True)
class _Token:
    kind: str  # one of: termvar typevar kindvar, a keyword, a punct, ".", ".1", ".2", "*", "#", "eof"
    text: str
    offset: int
    line: int
    col: int


def _lex(text: str) -> list[_Token]:
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)

    def err(msg):
        raise ParseError(msg, i, line, col)

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start, sline, scol = i, line, col
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in KEYWORDS:
                kind = word
            elif word[0].islower():
                kind = "termvar"
            else:
                kind = "typevar"
            toks.append(_Token(kind, word, start, sline, scol))
            col += j - i
            i = j
            continue
        if c == "$":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            if j == i + 1:
                err("'$' must be followed by a kind-variable name")
            toks.append(_Token("kindvar", text[i + 1 : j], start, sline, scol))
            col += j - i
            i = j
            continue
        if c == ".":
            nxt = text[i + 1] if i + 1 < n else ""
            after = text[i + 2] if i + 2 < n else ""
            if nxt in "12" and not (after.isalnum() or after == "_"):
                toks.append(_Token("." + nxt, "." + nxt, start, sline, scol))
                i += 2
                col += 2
            else:
                toks.append(_Token(".", ".", start, sline, scol))
                i += 1
                col += 1
            continue
        if c in "*#":
            toks.append(_Token(c, c, start, sline, scol))
            i += 1
            col += 1
            continue
        if c in _PUNCT:
            toks.append(_Token(c, c, start, sline, scol))
            i += 1
            col += 1
            continue
        err(f"unexpected character {c!r}")
    toks.append(_Token("eof", "", n, line, col))
    return toks


_CATEGORY = {
    "termvar": VarCategory.TERM,
    "typevar": VarCategory.TYPE,
    "kindvar": VarCategory.KIND,
}

_VAR_KINDS = ("termvar", "typevar", "kindvar")

# Token kinds that may begin an application operand.
_OPERAND_START = set(_VAR_KINDS) | {"*", "#", "(", "{", "[", "beta", "delta", "sigma"}

_BINDER_NODE = {
    "all": Forall,
    "Pi": Pi,
    "iota": Iota,
    "lam": Lambda,
    "Lam": ErasedLambda,
}


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.pos = 0
        self.current_def: str | None = None

    def peek(self, ahead: int = 0) -> _Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def advance(self) -> _Token:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def err(self, message, tok=None, expected=None, cls=ParseError):
        tok = tok or self.peek()
        raise cls(
            message,
            tok.offset,
            tok.line,
            tok.col,
            expected=expected,
            definition=self.current_def,
        )

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            self.err(f"expected {kind!r}, found {found!r}", tok, expected={kind})
        return self.advance()

    def variable(self, categories=_VAR_KINDS, what="a variable") -> Var:
        tok = self.peek()
        if tok.kind not in categories:
            self.err(f"expected {what}, found {tok.text or 'end of input'!r}", tok)
        self.advance()
        return Var(tok.text, _CATEGORY[tok.kind])

    def require_pure(self, t: Term, tok: _Token, what: str):
        if not is_pure(t):
            self.err(
                f"{what} must be a pure term (term variables, application, "
                "and '\\' abstraction only)",
                tok,
                cls=PurityViolation,
            )

    def at_let(self) -> bool:
        return (
            self.peek().kind == "["
            and self.peek(1).kind in _VAR_KINDS
            and self.peek(2).kind == "="
        )

    # term level: binders, rho, phi, let extend maximally right
    def term(self) -> Term:
        tok = self.peek()
        if tok.kind in _BINDER_NODE:
            self.advance()
            x = self.variable()
            self.expect(":")
            dom = self.term()
            self.expect(".")
            body = self.term()
            return _BINDER_NODE[tok.kind](x, dom, body)
        if tok.kind == "\\":
            self.advance()
            x = self.variable(("termvar",), "a term variable")
            self.expect(".")
            return UnannotatedLambda(x, self.term())
        if tok.kind == "rho":
            self.advance()
            proof = self.app()
            self.expect("@")
            x = self.variable(("termvar",), "a term variable")
            self.expect(".")
            guide = self.app()
            self.expect("-")
            return Rho(proof, x, guide, self.term())
        if tok.kind == "phi":
            self.advance()
            proof = self.app()
            self.expect("-")
            subject = self.app(no_brace=True)
            self.expect("{")
            target = self.term()
            self.expect("}")
            return Phi(proof, subject, target)
        if self.at_let():
            self.advance()
            x = self.variable()
            self.expect("=")
            definiens = self.term()
            self.expect(":")
            annotation = self.term()
            self.expect("]")
            self.expect("-")
            return Let(x, definiens, annotation, self.term())
        return self.eapp()

    def eapp(self) -> Term:
        t = self.app()
        while self.peek().kind == "-":
            self.advance()
            t = ErasedApp(t, self.app())
        return t

    def app(self, no_brace: bool = False) -> Term:
        t = self.operand()
        while True:
            nxt = self.peek().kind
            if nxt not in _OPERAND_START:
                break
            if nxt == "{" and no_brace:
                break
            if nxt == "[" and self.at_let():
                break
            t = App(t, self.operand())
        return t

    def operand(self) -> Term:
        tok = self.peek()
        if tok.kind == "beta":
            self.advance()
            lhs_tok = self.peek()
            lhs = self.proj()
            self.require_pure(lhs, lhs_tok, "the equated component of 'beta'")
            self.expect("{")
            witness = self.term()
            self.expect("}")
            return Beta(lhs, witness)
        if tok.kind == "delta":
            self.advance()
            motive = self.proj()
            return Delta(motive, self.proj())
        if tok.kind == "sigma":
            self.advance()
            return Sigma(self.proj())
        return self.proj()

    def proj(self) -> Term:
        t = self.atom()
        while True:
            kind = self.peek().kind
            if kind == ".1":
                self.advance()
                t = Proj1(t)
            elif kind == ".2":
                self.advance()
                t = Proj2(t)
            else:
                return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind in _VAR_KINDS:
            return self.variable()
        if tok.kind == "*":
            self.advance()
            return Star()
        if tok.kind == "#":
            self.advance()
            return Box()
        if tok.kind == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        if tok.kind == "{":
            self.advance()
            lhs_tok = self.peek()
            lhs = self.term()
            self.require_pure(lhs, lhs_tok, "the left side of an equation")
            self.expect("~")
            rhs_tok = self.peek()
            rhs = self.term()
            self.require_pure(rhs, rhs_tok, "the right side of an equation")
            self.expect("}")
            return Eq(lhs, rhs)
        if tok.kind == "[":
            self.advance()
            first = self.term()
            self.expect(",")
            second = self.term()
            self.expect("@")
            x = self.variable(("termvar",), "a term variable")
            self.expect(".")
            guide = self.term()
            self.expect("]")
            return IntersectIntro(first, second, x, guide)
        self.err(f"expected a term, found {tok.text or 'end of input'!r}", tok)

    def module(self, filename: str) -> SourceModule:
        mod = SourceModule(filename=filename)
        while self.peek().kind != "eof":
            name_tok = self.peek()
            var = self.variable(what="a definition name")
            self.current_def = var.name
            self.expect("=")
            definiens = self.term()
            self.expect(":")
            annotation = self.term()
            self.expect(".")
            for prev in mod.definitions:
                if prev.var == var:
                    self.err(
                        f"duplicate definition of {prev.name!r}",
                        name_tok,
                        cls=DuplicateDefinition,
                    )
            mod.definitions.append(GlobalDef(var, definiens, annotation))
            self.current_def = None
        _check_forward_refs(mod, self)
        return mod


def _check_forward_refs(mod: SourceModule, parser: _Parser):
    defined_at = {d.var: i for i, d in enumerate(mod.definitions)}
    for i, d in enumerate(mod.definitions):
        for v in free_vars(d.definiens) | free_vars(d.annotation):
            j = defined_at.get(v)
            if j is not None and j >= i:
                which = "itself" if j == i else repr(v.name)
                raise ForwardReference(
                    f"definition {d.name!r} refers to {which} before it is defined",
                    definition=d.name,
                )


def parse_term(text: str) -> Term:
    """Parse a single term; the whole input must be consumed."""
    p = _Parser(text)
    t = p.term()
    if p.peek().kind != "eof":
        p.err(f"unexpected {p.peek().text!r} after term")
    return t


def parse_module(text: str, filename: str = "<string>") -> SourceModule:
    """Parse a sequence of `name = term : term .` statements.

    Scope errors against names never defined anywhere are left to the type
    checker; references to later (or the same) definitions are rejected here.
    """
    return _Parser(text).module(filename)
