"""Recursive-descent parser and pretty-printer for the formula language.

Precedence, loosest first: `->` and `<->` (right-assoc), `|`, `&`, then the
prefix forms `~`, `forall x.` and `exists x.` whose bodies are themselves
prefix-level, then atoms `t in t` / `t eq t`. So `forall z. A -> B` reads as
`(forall z. A) -> B`.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

from src.lib.errors import ParseError, UnknownElement
from src.lib.formula import (
    And,
    BExists,
    BForall,
    Const,
    Equal,
    Exists,
    Forall,
    Formula,
    Implies,
    Member,
    Not,
    Or,
    PropVar,
    Term,
    Var,
    iff,
)
from src.lib.names import Name, NameStore

KEYWORDS = {"forall", "exists", "in", "eq", "let", "hat", "univ"}

ALIASES = {
    "∈": "in",
    "≈": "eq",
    "¬": "~",
    "∀": "forall",
    "∃": "exists",
    "→": "->",
    "↔": "<->",
    "∧": "&",
    "∨": "|",
}

PUNCTUATION = ("<->", "->", "|", "&", "~", "(", ")", "{", "}", ":", ",", ".", ";", "=")

END = "end of input"


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


@dataclass
class ParsedInput:
    formula: Formula
    bindings: Dict[str, Name] = field(default_factory=dict)
    text: str = ""


def _is_digit(ch: str) -> bool:
    # ASCII only: str.isdigit also accepts superscripts and other scripts int() rejects.
    return ch.isascii() and ch.isdecimal()


def tokenize(text: str, source: str = "<input>") -> List[Token]:
    # Spans are UTF-8 byte offsets.
    offsets = [0]
    for ch in text:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))

    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        start = i
        if ch in ALIASES:
            tokens.append(Token(ALIASES[ch], ch, SourceSpan(offsets[i], offsets[i + 1])))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            word = text[start:i]
            tokens.append(Token(word if word in KEYWORDS else "ident", word, SourceSpan(offsets[start], offsets[i])))
            continue
        if _is_digit(ch):
            while i < len(text) and _is_digit(text[i]):
                i += 1
            if i + 1 < len(text) and text[i] == "/" and _is_digit(text[i + 1]):
                i += 1
                while i < len(text) and _is_digit(text[i]):
                    i += 1
            tokens.append(Token("number", text[start:i], SourceSpan(offsets[start], offsets[i])))
            continue
        for punct in PUNCTUATION:
            if text.startswith(punct, i):
                i += len(punct)
                tokens.append(Token(punct, punct, SourceSpan(offsets[start], offsets[i])))
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", offsets[start], offsets[start + 1], source=source)
    tokens.append(Token(END, "", SourceSpan(offsets[-1], offsets[-1])))
    return tokens


class Parser:
    def __init__(
        self,
        text: str,
        store: Optional[NameStore] = None,
        bindings: Optional[Dict[str, Name]] = None,
        propositional: bool = False,
        source: str = "<input>",
    ):
        self.tokens = tokenize(text, source)
        self.position = 0
        self.store = store
        self.bindings: Dict[str, Name] = dict(bindings or {})
        self.propositional = propositional
        self.source = source

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def advance(self) -> Token:
        token = self.tokens[self.position]
        if token.kind != END:
            self.position += 1
        return token

    def at(self, *kinds: str) -> bool:
        return self.current.kind in kinds

    def fail(self, message: str, expected: FrozenSet[str] = frozenset(), token: Optional[Token] = None):
        token = token or self.current
        raise ParseError(message, token.span.start, token.span.end, frozenset(expected), self.source)

    def expect(self, kind: str) -> Token:
        if not self.at(kind):
            found = self.current.text or END
            self.fail(f"expected '{kind}' but found '{found}'", frozenset([kind]))
        return self.advance()

    # Entry points

    def parse_input(self) -> ParsedInput:
        if not self.propositional:
            while self.at("let"):
                self.preamble()
        formula = self.formula()
        if not self.at(END):
            self.fail(f"unexpected '{self.current.text}' after formula", frozenset(["->", "<->", "|", "&", END]))
        return ParsedInput(formula=formula, bindings=self.bindings)

    def preamble(self):
        self.expect("let")
        ident = self.expect("ident")
        self.expect("=")
        term = self.term()
        if not isinstance(term, Const):
            self.fail(f"'{term.name}' is not bound to a name", token=ident)
        self.expect(";")
        self.bindings[ident.text] = term.name

    # Formulas

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.advance()
            return Implies(left, self.formula())
        if self.at("<->"):
            self.advance()
            return iff(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.at("|"):
            self.advance()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.at("&"):
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.at("~"):
            self.advance()
            return Not(self.unary())
        if self.at("forall", "exists"):
            if self.propositional:
                self.fail("quantifiers are not part of propositional formulas")
            return self.quantifier()
        return self.primary()

    def quantifier(self) -> Formula:
        universal = self.advance().kind == "forall"
        var = self.expect("ident").text
        bound = None
        if self.at("in"):
            self.advance()
            bound = self.term()
        self.expect(".")
        # A bound variable shadows a `let` name of the same spelling.
        shadowed = self.bindings.pop(var, None)
        body = self.unary()
        if shadowed is not None:
            self.bindings[var] = shadowed
        if bound is None:
            return Forall(var, body) if universal else Exists(var, body)
        return BForall(var, bound, body) if universal else BExists(var, bound, body)

    def primary(self) -> Formula:
        if self.at("("):
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if self.propositional:
            if not self.at("ident"):
                self.fail("expected a propositional variable", frozenset(["ident", "(", "~"]))
            return PropVar(self.advance().text)
        left = self.term()
        if self.at("in"):
            self.advance()
            return Member(left, self.term())
        if self.at("eq"):
            self.advance()
            return Equal(left, self.term())
        self.fail("expected 'in' or 'eq' after a term", frozenset(["in", "eq"]))

    # Terms

    def term(self) -> Term:
        token = self.current
        if token.kind == "ident":
            self.advance()
            if token.text in self.bindings:
                return Const(self.bindings[token.text], label=token.text)
            return Var(token.text)
        if token.kind == "{":
            return Const(self.name_literal())
        if token.kind == "hat":
            return Const(self.hat())
        if token.kind == "univ":
            self.advance()
            self.expect("(")
            number = self.expect("number")
            rank = self.natural(number, "univ() takes a natural number rank")
            self.expect(")")
            return Const(self.require_store(token).universal_name(rank))
        self.fail("expected a term", frozenset(["ident", "{", "hat", "univ"]))

    def natural(self, token: Token, message: str) -> int:
        if not all(_is_digit(ch) for ch in token.text):
            self.fail(message, token=token)
        return int(token.text)

    def require_store(self, token: Token) -> NameStore:
        if self.store is None:
            self.fail("name constants need a structure to live in", token=token)
        return self.store

    def name_literal(self) -> Name:
        opening = self.expect("{")
        store = self.require_store(opening)
        entries = []
        while not self.at("}"):
            child_token = self.current
            child = self.term()
            if not isinstance(child, Const):
                self.fail(f"'{child.name}' is not a bound name", token=child_token)
            self.expect(":")
            value_token = self.current
            if not self.at("ident", "number"):
                self.fail("expected an element label", frozenset(store.algebra.carrier))
            self.advance()
            try:
                value = store.algebra.element(value_token.text)
            except UnknownElement:
                self.fail(f"'{value_token.text}' is not an element", frozenset(store.algebra.carrier), value_token)
            entries.append((child.name, value))
            if not self.at(","):
                break
            self.advance()
        self.expect("}")
        return store.make_name(entries)

    def hat(self) -> Name:
        token = self.expect("hat")
        store = self.require_store(token)
        self.expect("(")
        if self.at("number"):
            number = self.advance()
            result = store.von_neumann(self.natural(number, "hat() takes a natural number or a set literal"))
        else:
            result = store.hat(self.set_literal())
        self.expect(")")
        return result

    def set_literal(self) -> frozenset:
        self.expect("{")
        members = []
        while not self.at("}"):
            members.append(self.set_literal())
            if not self.at(","):
                break
            self.advance()
        self.expect("}")
        return frozenset(members)


def parse_input(
    text: str,
    store: Optional[NameStore] = None,
    bindings: Optional[Dict[str, Name]] = None,
    source: str = "<input>",
) -> ParsedInput:
    parsed = Parser(text, store=store, bindings=bindings, source=source).parse_input()
    parsed.text = text
    return parsed


def parse_formula(
    text: str,
    store: Optional[NameStore] = None,
    bindings: Optional[Dict[str, Name]] = None,
    source: str = "<input>",
) -> Formula:
    return parse_input(text, store, bindings, source).formula


def parse_prop_formula(text: str, source: str = "<input>") -> Formula:
    return Parser(text, propositional=True, source=source).parse_input().formula


# Pretty printing

PRECEDENCE = {Implies: 1, Or: 2, And: 3, Not: 4, Forall: 4, Exists: 4, BForall: 4, BExists: 4}


def _precedence(formula: Formula) -> int:
    return PRECEDENCE.get(type(formula), 5)


def print_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if term.label is not None:
        return term.label
    return term.name.render()


def _print(formula: Formula, minimum: int) -> str:
    text = _render(formula)
    return f"({text})" if _precedence(formula) < minimum else text


def _render(formula: Formula) -> str:
    if isinstance(formula, Member):
        return f"{print_term(formula.left)} in {print_term(formula.right)}"
    if isinstance(formula, Equal):
        return f"{print_term(formula.left)} eq {print_term(formula.right)}"
    if isinstance(formula, PropVar):
        return formula.name
    if isinstance(formula, Not):
        body = formula.body
        if _precedence(body) == 4 or isinstance(body, PropVar):
            return "~" + _render(body)
        return f"~({_render(body)})"
    if isinstance(formula, Implies):
        return f"{_print(formula.left, 2)} -> {_print(formula.right, 1)}"
    if isinstance(formula, Or):
        return f"{_print(formula.left, 2)} | {_print(formula.right, 3)}"
    if isinstance(formula, And):
        return f"{_print(formula.left, 3)} & {_print(formula.right, 4)}"
    if isinstance(formula, (Forall, Exists)):
        keyword = "forall" if isinstance(formula, Forall) else "exists"
        return f"{keyword} {formula.var}. {_print(formula.body, 4)}"
    if isinstance(formula, (BForall, BExists)):
        keyword = "forall" if isinstance(formula, BForall) else "exists"
        return f"{keyword} {formula.var} in {print_term(formula.bound)}. {_print(formula.body, 4)}"
    raise TypeError(f"not a formula: {formula!r}")


def pretty_print(formula: Formula) -> str:
    return _render(formula)
