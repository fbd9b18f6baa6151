"""Mixfix term syntax: a Pratt parser and a precedence-aware printer.

Declarations carry optional notations (`# ¬ %1 prec 20`). The notations of a
flat theory compile into a table of prefix rules (keyed by a leading lexeme)
and infix rules (keyed by the lexeme after a leading placeholder). Table
construction rejects combinations that would make some token sequence parse
two ways; those raise `AmbiguousParse` up front rather than at use time.

Fixed syntax, independent of any notation:

* application by juxtaposition, binding tightest, left-associative; argument
  positions accept only atoms (names, parenthesized terms, `[..]`-binders,
  and zero-argument lexemes)
* `A -> B` for non-dependent function types, right-associative, binding
  looser than any notation (precedence 2 against a minimum of 3)
* `[x, y : T] M` for abstraction and `{x : T} M` for dependent function
  types; a binder body extends as far to the right as possible
* `(M)` grouping, `type` for the sort of types

The printer inverts the parser: `parse_term(flat, print_term(flat, t))` is
alpha-equivalent to `t` for well-formed closed terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from glf.errors import AmbiguousParse, DuplicateName, TermSyntaxError
from glf.kernel import (
    App,
    Const,
    Declaration,
    Lam,
    Notation,
    Pi,
    Signature,
    Sort,
    Term,
    TYPE,
    Var,
    constants,
    free_vars,
    fresh_name,
    spine,
    substitute,
)

APP_PREC = 1000
ARROW_PREC = 2
MIN_NOTATION_PREC = ARROW_PREC + 1

IDENT_RE = re.compile(r"(?:[A-Za-z_][A-Za-z0-9_']*\?)?[A-Za-z_][A-Za-z0-9_']*")

KEYWORDS = frozenset({"theory", "view", "include", "end", "prec", "type"})
STRUCTURAL = {
    "->": "ARROW", "(": "LPAREN", ")": "RPAREN", "[": "LBRACK", "]": "RBRACK",
    "{": "LBRACE", "}": "RBRACE", ",": "COMMA", ":": "COLON",
}
RESERVED_TOKENS = frozenset(STRUCTURAL) | frozenset({";", "=", "#", "//", "--"})


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


class NotationTable:
    """Prefix/infix rules of a flat theory, with ambiguity checks."""

    def __init__(self, signature: Signature):
        self.nud: dict[str, tuple[Declaration, Notation]] = {}
        self.led: dict[str, tuple[Declaration, Notation]] = {}
        delimiters: set[str] = set()

        for d in signature:
            n = d.notation
            if n is None:
                continue
            literals = [t for t in n.tokens if Notation.placeholder_index(t) is None]
            if not literals:
                raise AmbiguousParse(
                    f"notation for {d.qualified} has no literal token"
                )
            for lit in literals:
                if lit in RESERVED_TOKENS or lit in KEYWORDS:
                    raise AmbiguousParse(
                        f"notation for {d.qualified} uses reserved token {lit!r}"
                    )
            for a, b in zip(n.tokens, n.tokens[1:]):
                if (Notation.placeholder_index(a) is not None
                        and Notation.placeholder_index(b) is not None):
                    raise AmbiguousParse(
                        f"notation for {d.qualified} has adjacent placeholders"
                    )
            open_ended = (
                Notation.placeholder_index(n.tokens[0]) is not None
                or Notation.placeholder_index(n.tokens[-1]) is not None
            )
            if n.arity > 0 and open_ended and n.precedence < MIN_NOTATION_PREC:
                raise AmbiguousParse(
                    f"notation for {d.qualified} has precedence {n.precedence}; "
                    f"open-ended notations need at least {MIN_NOTATION_PREC} (above ->)"
                )
            if Notation.placeholder_index(n.tokens[0]) is None:
                key, inner = n.tokens[0], n.tokens[1:]
                table = self.nud
            else:
                key, inner = n.tokens[1], n.tokens[2:]
                table = self.led
            if key in table:
                other = table[key][0].qualified
                raise AmbiguousParse(
                    f"notations for {other} and {d.qualified} both start with {key!r}"
                )
            table[key] = (d, n)
            delimiters.update(
                t for t in inner if Notation.placeholder_index(t) is None
            )

        clash = delimiters & (self.nud.keys() | self.led.keys())
        if clash:
            raise AmbiguousParse(
                "tokens used both as inner delimiters and as operators: "
                + ", ".join(sorted(clash))
            )

        lexemes = set(self.nud) | set(self.led) | delimiters
        self.word_lexemes = {t for t in lexemes if IDENT_RE.fullmatch(t)}
        self.symbol_lexemes = sorted(
            (t for t in lexemes if not IDENT_RE.fullmatch(t)),
            key=len, reverse=True,
        )


def notation_table(signature: Signature) -> NotationTable:
    table = getattr(signature, "_notation_table", None)
    if table is None:
        table = NotationTable(signature)
        try:
            signature._notation_table = table  # type: ignore[attr-defined]
        except AttributeError:
            pass
    return table


def _lex(text: str, table: NotationTable) -> list[_Token]:
    symbols = sorted(
        set(table.symbol_lexemes) | set(STRUCTURAL), key=len, reverse=True
    )
    tokens: list[_Token] = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        m = IDENT_RE.match(text, i)
        if m:
            word = m.group(0)
            if word == "type":
                kind = "TYPE"
            elif word in table.word_lexemes:
                kind = "LEXEME"
            else:
                kind = "IDENT"
            tokens.append(_Token(kind, word, line, col))
            i = m.end()
            col += len(word)
            continue
        for sym in symbols:
            if text.startswith(sym, i):
                kind = STRUCTURAL.get(sym, "LEXEME")
                tokens.append(_Token(kind, sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise TermSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


def _is_ambiguous(signature: Signature, name: str) -> bool:
    return len(signature._by_name.get(name, ())) > 1


def _canonical(signature: Signature, d: Declaration) -> str:
    return d.qualified if _is_ambiguous(signature, d.name) else d.name


class _Parser:
    def __init__(self, signature: Signature, table: NotationTable, tokens: list[_Token]):
        self.sig = signature
        self.table = table
        self.tokens = tokens
        self.pos = 0
        self.bound: list[str] = []

    # --- token plumbing ---------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            wanted = text if text is not None else kind.lower()
            raise TermSyntaxError(
                f"expected {wanted!r}, found {tok.text or 'end of input'!r}",
                tok.line, tok.col,
            )
        return self.advance()

    def fail(self, message: str) -> TermSyntaxError:
        tok = self.peek()
        return TermSyntaxError(message, tok.line, tok.col)

    # --- grammar ------------------------------------------------------------

    def parse(self) -> Term:
        t = self.expr(0)
        if self.peek().kind != "EOF":
            raise self.fail(f"unexpected trailing input {self.peek().text!r}")
        return t

    def expr(self, rbp: int) -> Term:
        t = self.nud()
        while True:
            tok = self.peek()
            if tok.kind == "ARROW" and ARROW_PREC > rbp:
                self.advance()
                rhs = self.expr(ARROW_PREC - 1)
                t = Pi(fresh_name("_", free_vars(rhs)), t, rhs)
            elif self.starts_atom(tok) and APP_PREC > rbp:
                t = App(t, self.atom())
            elif tok.kind == "LEXEME" and tok.text in self.table.led \
                    and self.table.led[tok.text][1].precedence > rbp:
                t = self.led_notation(t)
            else:
                return t

    def starts_atom(self, tok: _Token) -> bool:
        if tok.kind in ("IDENT", "LPAREN", "LBRACK", "TYPE"):
            return True
        if tok.kind == "LEXEME" and tok.text in self.table.nud:
            return self.table.nud[tok.text][1].arity == 0
        return False

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "IDENT":
            return self.name_ref(self.advance())
        if tok.kind == "TYPE":
            self.advance()
            return TYPE
        if tok.kind == "LPAREN":
            self.advance()
            t = self.expr(0)
            self.expect("RPAREN")
            return t
        if tok.kind == "LBRACK":
            return self.lam()
        if tok.kind == "LEXEME" and tok.text in self.table.nud:
            d, n = self.table.nud[tok.text]
            if n.arity == 0:
                self.advance()
                return Const(_canonical(self.sig, d))
        raise self.fail(f"expected a term, found {tok.text or 'end of input'!r}")

    def nud(self) -> Term:
        tok = self.peek()
        if tok.kind == "LBRACE":
            return self.pi()
        if tok.kind == "LEXEME":
            if tok.text in self.table.nud:
                return self.nud_notation()
            raise self.fail(f"{tok.text!r} cannot start a term")
        return self.atom()

    def name_ref(self, tok: _Token) -> Term:
        if "?" not in tok.text and tok.text in self.bound:
            return Var(tok.text)
        d = self.sig.lookup(tok.text)
        if d is None:
            return Const(tok.text)
        return Const(_canonical(self.sig, d))

    def lam(self) -> Term:
        self.expect("LBRACK")
        binders: list[tuple[str, Term | None]] = []
        while True:
            name = self.expect("IDENT").text
            annotation = None
            if self.peek().kind == "COLON":
                self.advance()
                annotation = self.expr(0)
            binders.append((name, annotation))
            self.bound.append(name)
            if self.peek().kind == "COMMA":
                self.advance()
                continue
            break
        self.expect("RBRACK")
        body = self.expr(0)
        del self.bound[len(self.bound) - len(binders):]
        for name, annotation in reversed(binders):
            body = Lam(name, annotation, body)
        return body

    def pi(self) -> Term:
        self.expect("LBRACE")
        binders: list[tuple[str, Term]] = []
        while True:
            name = self.expect("IDENT").text
            self.expect("COLON")
            binders.append((name, self.expr(0)))
            self.bound.append(name)
            if self.peek().kind == "COMMA":
                self.advance()
                continue
            break
        self.expect("RBRACE")
        body = self.expr(0)
        del self.bound[len(self.bound) - len(binders):]
        for name, domain in reversed(binders):
            body = Pi(name, domain, body)
        return body

    def nud_notation(self) -> Term:
        key = self.advance()
        d, n = self.table.nud[key.text]
        slots = self.slots(n, n.tokens[1:], {})
        return self.saturate(d, n, slots)

    def led_notation(self, left: Term) -> Term:
        d, n = self.table.led[self.peek().text]
        left_index = Notation.placeholder_index(n.tokens[0])
        assert left_index is not None
        self.advance()
        slots = self.slots(n, n.tokens[2:], {left_index: left})
        return self.saturate(d, n, slots)

    def slots(
        self, n: Notation, rest: tuple[str, ...], filled: dict[int, Term]
    ) -> dict[int, Term]:
        for i, tok in enumerate(rest):
            index = Notation.placeholder_index(tok)
            if index is None:
                self.expect("LEXEME", tok)
            else:
                trailing = i == len(rest) - 1
                filled[index] = self.expr(n.precedence if trailing else 0)
        return filled

    def saturate(self, d: Declaration, n: Notation, slots: dict[int, Term]) -> Term:
        t: Term = Const(_canonical(self.sig, d))
        for index in range(1, n.arity + 1):
            t = App(t, slots[index])
        return t


def parse_term(signature: Signature, text: str) -> Term:
    """Parse a term against the constants and notations of `signature`."""
    table = notation_table(signature)
    return _Parser(signature, table, _lex(text, table)).parse()


# --- printing ----------------------------------------------------------------

def _binder_ok(name: str, table: NotationTable) -> bool:
    return (
        IDENT_RE.fullmatch(name) is not None
        and "?" not in name
        and name not in KEYWORDS
        and name not in table.word_lexemes
    )


class _Printer:
    def __init__(self, signature: Signature, table: NotationTable):
        self.sig = signature
        self.table = table

    def render(self, t: Term, prec: int, right_open: bool) -> str:
        match t:
            case Sort(name):
                return name
            case Var(name):
                return name
            case Const():
                return self.const(t)
            case App():
                return self.application(t, prec, right_open)
            case Lam():
                return self.lam(t, right_open)
            case Pi():
                return self.pi(t, prec, right_open)
        raise TypeError(f"not a term: {t!r}")

    def const(self, t: Const) -> str:
        d = self.decl(t.name)
        if d is not None and d.notation is not None and d.notation.arity == 0:
            return " ".join(d.notation.tokens)
        return t.name

    def decl(self, name: str) -> Declaration | None:
        try:
            return self.sig.lookup(name)
        except DuplicateName:
            return None

    def application(self, t: App, prec: int, right_open: bool) -> str:
        head, args = spine(t)
        if isinstance(head, Const):
            d = self.decl(head.name)
            if d is not None and d.notation is not None and 0 < d.notation.arity <= len(args):
                n = d.notation
                rest = args[n.arity:]
                if not rest:
                    return self.notation(n, args, prec, right_open)
                inner = self.notation(n, args[: n.arity], APP_PREC, False)
                return self.juxtapose(inner, rest, prec, right_open)
        return self.juxtapose(self.render(head, APP_PREC, False), args, prec, right_open)

    def notation(self, n: Notation, args: list[Term], prec: int, right_open: bool) -> str:
        parts: list[str] = []
        last = len(n.tokens) - 1
        for i, tok in enumerate(n.tokens):
            index = Notation.placeholder_index(tok)
            if index is None:
                parts.append(tok)
            elif i == 0:
                parts.append(self.render(args[index - 1], n.precedence, False))
            elif i == last:
                parts.append(self.render(args[index - 1], n.precedence + 1, right_open))
            else:
                parts.append(self.render(args[index - 1], 0, True))
        text = " ".join(parts)
        open_ended = (
            Notation.placeholder_index(n.tokens[0]) is not None
            or Notation.placeholder_index(n.tokens[-1]) is not None
        )
        if open_ended and n.precedence < prec:
            return f"({text})"
        return text

    def juxtapose(self, fn: str, args: list[Term], prec: int, right_open: bool) -> str:
        if not args:
            return fn
        parts = [fn]
        for i, arg in enumerate(args):
            ro = right_open and i == len(args) - 1
            parts.append(self.render(arg, APP_PREC + 1, ro))
        text = " ".join(parts)
        if APP_PREC < prec:
            return f"({text})"
        return text

    def lam(self, t: Lam, right_open: bool) -> str:
        groups: list[str] = []
        while isinstance(t, Lam):
            t = self.fix_binder(t)
            if t.binder_type is None:
                groups.append(t.binder)
            else:
                groups.append(f"{t.binder} : {self.render(t.binder_type, 0, True)}")
            t = t.body
        text = f"[{', '.join(groups)}] {self.render(t, 0, True)}"
        if not right_open:
            return f"({text})"
        return text

    def pi(self, t: Pi, prec: int, right_open: bool) -> str:
        if t.binder not in free_vars(t.codomain):
            left = self.render(t.domain, ARROW_PREC + 1, False)
            right = self.render(t.codomain, ARROW_PREC, right_open)
            text = f"{left} -> {right}"
            if ARROW_PREC < prec:
                return f"({text})"
            return text
        groups: list[str] = []
        while isinstance(t, Pi) and t.binder in free_vars(t.codomain):
            t = self.fix_binder(t)
            groups.append(f"{t.binder} : {self.render(t.domain, 0, True)}")
            t = t.codomain
        text = f"{{{', '.join(groups)}}} {self.render(t, 0, True)}"
        if not right_open:
            return f"({text})"
        return text

    def fix_binder(self, t: Lam | Pi) -> Lam | Pi:
        if _binder_ok(t.binder, self.table):
            return t
        body = t.body if isinstance(t, Lam) else t.codomain
        fresh = fresh_name("x", free_vars(body) | constants(body))
        renamed = substitute(body, t.binder, Var(fresh))
        if isinstance(t, Lam):
            return Lam(fresh, t.binder_type, renamed)
        return Pi(fresh, t.domain, renamed)


def print_term(signature: Signature, t: Term) -> str:
    """Render a term so that parsing the result gives back an alpha-equal term."""
    return _Printer(signature, notation_table(signature)).render(t, 0, True)
