"""Concrete syntax: lexer, parser and printer for ``.pstt`` sources.

Grammar sketch (``*`` on types is right-associative, ``[d]`` binds tighter)::

    file  ::= { "schedule" NAME "(" [ctx] ")" ":" type "=" term }
    ctx   ::= ident ":^" int type { "," ident ":^" int type }
    type  ::= boxed { "*" type }
    boxed ::= "[" int "]" boxed | "1" | ident | "(" type ")"
    term  ::= "let" "*" "=" term "in" term
            | "let" "(" ident "," ident ")" "=" term "in" term
            | "let" "box" "[" int "]" ident "=" term "in" term
            | "box" "[" int "]" term
            | atom
    atom  ::= "*" | ident | gate "(" term {"," term} ")"
            | "(" term ")" | "(" term "," term ")"
    gate  ::= ident | ident "[" ident "," int "]"

``#`` starts a line comment.  Let bodies extend as far right as possible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Box,
    BoxIntro,
    Context,
    CtxEntry,
    GateApp,
    Judgement,
    LetBox,
    LetPair,
    LetStar,
    Pair,
    Qubit,
    Star,
    Tensor,
    TermExpr,
    TypeExpr,
    Unit,
    Var,
    make_context,
)

_KEYWORDS = {"schedule", "let", "in", "box"}


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class Declaration:
    name: str
    ctx: Context
    type: TypeExpr
    term: TermExpr
    line: int
    column: int

    @property
    def judgement(self) -> Judgement:
        return Judgement(self.ctx, self.term, self.type)


@dataclass(frozen=True)
class SourceFile:
    declarations: tuple[Declaration, ...]

    def declaration(self, name: str) -> Declaration:
        for d in self.declarations:
            if d.name == name:
                return d
        raise KeyError(name)


# ------------------------------------------------------------------ lexer


@dataclass(frozen=True)
class _Token:
    kind: str  # ident | int | punct | eof
    text: str
    line: int
    col: int


_PUNCT = "()[],:^=*"


def _lex(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("int", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            toks.append(_Token("punct", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(Diagnostic("error", f"unexpected character {ch!r}", line, col))
    toks.append(_Token("eof", "", line, col))
    return toks


# ----------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> _Token:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(Diagnostic("error", message, tok.line, tok.col))

    def expect_punct(self, ch: str) -> _Token:
        tok = self.peek()
        if tok.kind == "punct" and tok.text == ch:
            return self.next()
        raise self.fail(f"expected {ch!r}, found {tok.text or 'end of input'!r}")

    def expect_keyword(self, word: str) -> _Token:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == word:
            return self.next()
        raise self.fail(f"expected {word!r}, found {tok.text or 'end of input'!r}")

    def expect_ident(self, what: str = "identifier") -> _Token:
        tok = self.peek()
        if tok.kind == "ident" and tok.text not in _KEYWORDS:
            return self.next()
        raise self.fail(f"expected {what}, found {tok.text or 'end of input'!r}")

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return int(tok.text)
        raise self.fail(f"expected integer, found {tok.text or 'end of input'!r}")

    def at_punct(self, ch: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok.kind == "punct" and tok.text == ch

    def at_keyword(self, word: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok.kind == "ident" and tok.text == word

    # types ------------------------------------------------------------

    def parse_type(self) -> TypeExpr:
        left = self.parse_boxed_type()
        if self.at_punct("*"):
            self.next()
            return Tensor(left, self.parse_type())
        return left

    def parse_boxed_type(self) -> TypeExpr:
        if self.at_punct("["):
            self.next()
            grade = self.expect_int()
            self.expect_punct("]")
            return Box(grade, self.parse_boxed_type())
        tok = self.peek()
        if tok.kind == "int":
            if tok.text != "1":
                raise self.fail(f"the only numeric type is 1, found {tok.text!r}")
            self.next()
            return Unit()
        if tok.kind == "ident" and tok.text not in _KEYWORDS:
            self.next()
            return Qubit(tok.text)
        if self.at_punct("("):
            self.next()
            inner = self.parse_type()
            self.expect_punct(")")
            return inner
        raise self.fail(f"expected a type, found {tok.text or 'end of input'!r}")

    # terms ------------------------------------------------------------

    def parse_term(self) -> TermExpr:
        if self.at_keyword("let"):
            return self.parse_let()
        if self.at_keyword("box"):
            self.next()
            self.expect_punct("[")
            grade = self.expect_int()
            self.expect_punct("]")
            return BoxIntro(grade, self.parse_term())
        return self.parse_atom()

    def parse_let(self) -> TermExpr:
        self.expect_keyword("let")
        if self.at_punct("*"):
            self.next()
            self.expect_punct("=")
            scrutinee = self.parse_term()
            self.expect_keyword("in")
            return LetStar(scrutinee, self.parse_term())
        if self.at_keyword("box"):
            self.next()
            self.expect_punct("[")
            grade = self.expect_int()
            self.expect_punct("]")
            x = self.expect_ident("binder").text
            self.expect_punct("=")
            scrutinee = self.parse_term()
            self.expect_keyword("in")
            return LetBox(grade, x, scrutinee, self.parse_term())
        if self.at_punct("("):
            self.next()
            x = self.expect_ident("binder").text
            self.expect_punct(",")
            y = self.expect_ident("binder").text
            self.expect_punct(")")
            if x == y:
                raise self.fail(f"pair binders must be distinct, got {x!r} twice")
            self.expect_punct("=")
            scrutinee = self.parse_term()
            self.expect_keyword("in")
            return LetPair(x, y, scrutinee, self.parse_term())
        raise self.fail("expected '*', '(x, y)' or 'box' after 'let'")

    def parse_atom(self) -> TermExpr:
        tok = self.peek()
        if self.at_punct("*"):
            self.next()
            return Star()
        if tok.kind == "ident" and tok.text not in _KEYWORDS:
            name = self.next().text
            if self.at_punct("["):
                # delay-style gate reference: name[qubit,int]
                self.next()
                q = self.expect_ident("qubit").text
                self.expect_punct(",")
                d = self.expect_int()
                self.expect_punct("]")
                gate_name = f"{name}[{q},{d}]"
                self.expect_punct("(")
                args = self.parse_args()
                return GateApp(gate_name, args)
            if self.at_punct("("):
                self.next()
                args = self.parse_args()
                return GateApp(name, args)
            return Var(name)
        if self.at_punct("("):
            self.next()
            first = self.parse_term()
            if self.at_punct(","):
                self.next()
                second = self.parse_term()
                self.expect_punct(")")
                return Pair(first, second)
            self.expect_punct(")")
            return first
        raise self.fail(f"expected a term, found {tok.text or 'end of input'!r}")

    def parse_args(self) -> tuple[TermExpr, ...]:
        # opening '(' already consumed
        args = [self.parse_term()]
        while self.at_punct(","):
            self.next()
            args.append(self.parse_term())
        self.expect_punct(")")
        return tuple(args)

    # declarations ------------------------------------------------------

    def parse_context(self) -> Context:
        entries: list[CtxEntry] = []
        if self.at_punct(")"):
            return ()
        while True:
            name_tok = self.expect_ident("context variable")
            self.expect_punct(":")
            self.expect_punct("^")
            grade = self.expect_int()
            ty = self.parse_type()
            entries.append(CtxEntry(name_tok.text, grade, ty))
            if self.at_punct(","):
                self.next()
                continue
            break
        try:
            return make_context(entries)
        except ValueError as exc:
            raise self.fail(str(exc), name_tok) from exc

    def parse_file(self) -> SourceFile:
        decls: list[Declaration] = []
        names: set[str] = set()
        while self.peek().kind != "eof":
            kw = self.expect_keyword("schedule")
            name = self.expect_ident("schedule name").text
            if name in names:
                raise self.fail(f"duplicate declaration {name!r}", kw)
            names.add(name)
            self.expect_punct("(")
            ctx = self.parse_context()
            self.expect_punct(")")
            self.expect_punct(":")
            ty = self.parse_type()
            self.expect_punct("=")
            term = self.parse_term()
            decls.append(Declaration(name, ctx, ty, term, kw.line, kw.col))
        return SourceFile(tuple(decls))


def parse(text: str) -> SourceFile:
    """Parse a full source file; raises ParseError on the first bad token."""
    return _Parser(text).parse_file()


def parse_term(text: str) -> TermExpr:
    p = _Parser(text)
    term = p.parse_term()
    if p.peek().kind != "eof":
        raise p.fail(f"trailing input after term: {p.peek().text!r}")
    return term


def parse_type(text: str) -> TypeExpr:
    p = _Parser(text)
    ty = p.parse_type()
    if p.peek().kind != "eof":
        raise p.fail(f"trailing input after type: {p.peek().text!r}")
    return ty


# ---------------------------------------------------------------- printer


def print_type(ty: TypeExpr) -> str:
    match ty:
        case Unit():
            return "1"
        case Qubit(name):
            return name
        case Tensor(left, right):
            l = print_type(left)
            if isinstance(left, Tensor):
                l = f"({l})"
            return f"{l} * {print_type(right)}"
        case Box(grade, body):
            inner = print_type(body)
            if isinstance(body, Tensor):
                inner = f"({inner})"
            return f"[{grade}] {inner}"
    raise TypeError(f"not a type: {ty!r}")


def print_term(t: TermExpr) -> str:
    match t:
        case Var(name):
            return name
        case Star():
            return "*"
        case LetStar(s, b):
            return f"let * = {_scrutinee(s)} in {print_term(b)}"
        case GateApp(g, args):
            return f"{g}({', '.join(print_term(a) for a in args)})"
        case Pair(l, r):
            return f"({print_term(l)}, {print_term(r)})"
        case LetPair(x, y, s, b):
            return f"let ({x}, {y}) = {_scrutinee(s)} in {print_term(b)}"
        case BoxIntro(d, b):
            return f"box[{d}] {print_term(b)}"
        case LetBox(d, x, s, b):
            return f"let box[{d}] {x} = {_scrutinee(s)} in {print_term(b)}"
    raise TypeError(f"not a term: {t!r}")


def _scrutinee(s: TermExpr) -> str:
    text = print_term(s)
    if isinstance(s, (LetStar, LetPair, LetBox)):
        return f"({text})"
    return text


def print_context(ctx: Context) -> str:
    return ", ".join(f"{e.name}:^{e.grade} {print_type(e.type)}" for e in ctx)


def print_judgement(j: Judgement) -> str:
    return f"({print_context(j.ctx)}) : {print_type(j.type)} = {print_term(j.term)}"


def print_declaration(d: Declaration) -> str:
    return f"schedule {d.name} {print_judgement(d.judgement)}"
