"""
Recursive-descent parser for the formula DSL.

Grammar (loosest binding first)::

    formula     := implication
    implication := disjunction [ "->" implication ]
    disjunction := conjunction { "|" conjunction }
    conjunction := unary { "&" unary }
    unary       := "!" unary | quantifier | "(" formula ")" | atom
    quantifier  := ("exists" | "forall" | "existsSet" | "forallSet") IDENT "." formula
    atom        := "R" LETTER "(" IDENT ")" | IDENT ("<" | "<=" | "=") IDENT | IDENT "in" IDENT

A quantifier body extends as far to the right as possible. The optional header
line ``instance: x; params: y1,y2; alphabet: a,b,c`` declares the free
variables and the alphabet.
"""
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import FormulaSyntaxError, UnboundVariable
from src.formula.ast import (
    And, Equal, Exists, ExistsSet, Forall, ForallSet, FormulaAST, Implies, Label,
    Less, LessEq, Member, Node, Not, Or,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<le><=)
  | (?P<op>[&|!<=().,])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)

_QUANTIFIERS = {"exists": Exists, "forall": Forall, "existsSet": ExistsSet, "forallSet": ForallSet}
_KEYWORDS = set(_QUANTIFIERS) | {"in"}
_HEADER_KEYS = ("instance", "params", "alphabet")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str, offset: int = 0) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", offset + pos)
        kind = match.lastgroup
        if kind != "ws":
            value = match.group()
            if kind in ("op", "le", "arrow"):
                kind = value
            tokens.append(Token(kind, value, offset + pos))
        pos = match.end()
    tokens.append(Token("eof", "", offset + len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token], alphabet: Optional[Sequence[str]]):
        self.tokens = tokens
        self.index = 0
        self.alphabet = set(alphabet) if alphabet is not None else None

    # ---- token helpers ----

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _expect(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            raise FormulaSyntaxError(f"expected {what}, found {self.current.text or 'end of input'!r}", self.current.position)
        return self._advance()

    def _variable(self) -> str:
        token = self._expect("ident", "a variable")
        if token.text in _KEYWORDS:
            raise FormulaSyntaxError(f"keyword {token.text!r} used as variable", token.position)
        return token.text

    # ---- grammar ----

    def parse(self) -> Node:
        node = self._implication()
        if self.current.kind != "eof":
            raise FormulaSyntaxError(f"unexpected {self.current.text!r}", self.current.position)
        return node

    def _implication(self) -> Node:
        left = self._disjunction()
        if self.current.kind == "->":
            self._advance()
            return Implies(left, self._implication())
        return left

    def _disjunction(self) -> Node:
        node = self._conjunction()
        while self.current.kind == "|":
            self._advance()
            node = Or(node, self._conjunction())
        return node

    def _conjunction(self) -> Node:
        node = self._unary()
        while self.current.kind == "&":
            self._advance()
            node = And(node, self._unary())
        return node

    def _unary(self) -> Node:
        token = self.current
        if token.kind == "!":
            self._advance()
            return Not(self._unary())
        if token.kind == "(":
            self._advance()
            node = self._implication()
            self._expect(")", "')'")
            return node
        if token.kind == "ident" and token.text in _QUANTIFIERS:
            self._advance()
            var = self._variable()
            self._expect(".", "'.' after quantified variable")
            return _QUANTIFIERS[token.text](var, self._implication())
        if token.kind == "ident":
            return self._atom()
        raise FormulaSyntaxError(f"unexpected {token.text or 'end of input'!r}", token.position)

    def _atom(self) -> Node:
        token = self._advance()
        if self.current.kind == "(":
            if not (token.text.startswith("R") and len(token.text) == 2):
                raise FormulaSyntaxError(f"unknown predicate {token.text!r}", token.position)
            letter = token.text[1]
            if self.alphabet is not None and letter not in self.alphabet:
                raise FormulaSyntaxError(f"letter {letter!r} is not in the declared alphabet", token.position)
            self._advance()
            var = self._variable()
            self._expect(")", "')'")
            return Label(letter, var)

        if token.text in _KEYWORDS:
            raise FormulaSyntaxError(f"keyword {token.text!r} used as variable", token.position)
        left = token.text
        op = self.current
        if op.kind == "<":
            self._advance()
            return Less(left, self._variable())
        if op.kind == "<=":
            self._advance()
            return LessEq(left, self._variable())
        if op.kind == "=":
            self._advance()
            return Equal(left, self._variable())
        if op.kind == "ident" and op.text == "in":
            self._advance()
            return Member(left, self._variable())
        raise FormulaSyntaxError(f"expected a relation after {left!r}", op.position)


def _split_list(value: str) -> Tuple[str, ...]:
    return tuple(item.strip() for item in value.split(",") if item.strip())


def parse_header(line: str) -> Dict[str, Tuple[str, ...]]:
    """Parse ``instance: x; params: y; alphabet: a,b``."""
    fields: Dict[str, Tuple[str, ...]] = {}
    for part in line.split(";"):
        if not part.strip():
            continue
        key, sep, value = part.partition(":")
        key = key.strip()
        if not sep or key not in _HEADER_KEYS:
            raise FormulaSyntaxError(f"bad header entry {part.strip()!r}", 0)
        fields[key] = _split_list(value)
    return fields


def _looks_like_header(line: str) -> bool:
    head = line.strip().split(":", 1)[0].strip()
    return ":" in line and head in _HEADER_KEYS


def _check_binding(node: Node, first_order: frozenset, sets: frozenset) -> None:
    match node:
        case Label(_, var):
            _require(var, first_order)
        case Less(a, b) | LessEq(a, b) | Equal(a, b):
            _require(a, first_order)
            _require(b, first_order)
        case Member(var, setvar):
            _require(var, first_order)
            _require(setvar, sets)
        case Not(body):
            _check_binding(body, first_order, sets)
        case And(left, right) | Or(left, right) | Implies(left, right):
            _check_binding(left, first_order, sets)
            _check_binding(right, first_order, sets)
        case Exists(var, body) | Forall(var, body):
            _check_binding(body, first_order | {var}, sets - {var})
        case ExistsSet(var, body) | ForallSet(var, body):
            _check_binding(body, first_order - {var}, sets | {var})


def _require(name: str, scope: frozenset) -> None:
    if name not in scope:
        raise UnboundVariable(name)


def parse_formula(
    text: str,
    *,
    instance: Optional[Sequence[str]] = None,
    params: Optional[Sequence[str]] = None,
    alphabet: Optional[Sequence[str]] = None,
) -> FormulaAST:
    """
    Parse formula DSL text into a FormulaAST.

    The free-variable partition comes from a header line in ``text`` or from the
    keyword arguments (keywords win). Without either, the single instance
    variable ``x`` and no parameters are assumed.

    Args:
        text: Optional header line, then the formula body. Lines starting
              with '#' are comments.
        instance: Instance variables x1..xk
        params: Parameter variables y1..yl
        alphabet: Declared single-character letters

    Returns:
        FormulaAST with free-variable lists in declaration order

    Raises:
        FormulaSyntaxError: Text does not follow the grammar (carries the offset)
        UnboundVariable: A variable is neither bound nor declared free

    Example:
        >>> phi = parse_formula("Ra(x) & x <= y", instance=["x"], params=["y"])
        >>> phi.k, phi.ell, phi.quantifier_rank
        (1, 1, 0)
    """
    header: Dict[str, Tuple[str, ...]] = {}
    body_lines = []
    offset = 0
    body_offset = None
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if stripped.startswith("#") or (not stripped and body_offset is None):
            offset += len(line)
            continue
        if body_offset is None and not header and _looks_like_header(line):
            header = parse_header(line)
            offset += len(line)
            continue
        if body_offset is None:
            body_offset = offset
        body_lines.append(line)
        offset += len(line)

    instance_vars = tuple(instance) if instance is not None else header.get("instance", ("x",))
    param_vars = tuple(params) if params is not None else header.get("params", ())
    declared = tuple(alphabet) if alphabet is not None else header.get("alphabet")

    if set(instance_vars) & set(param_vars):
        raise FormulaSyntaxError("instance and parameter variables must be disjoint", 0)
    if len(set(instance_vars + param_vars)) != len(instance_vars) + len(param_vars):
        raise FormulaSyntaxError("free variables must be declared once", 0)
    if declared is not None and any(len(letter) != 1 for letter in declared):
        raise FormulaSyntaxError("letters must be single characters", 0)

    body = "".join(body_lines)
    if not body.strip():
        raise FormulaSyntaxError("empty formula", offset)
    tokens = tokenize(body, body_offset or 0)
    root = _Parser(tokens, declared).parse()
    _check_binding(root, frozenset(instance_vars + param_vars), frozenset())
    return FormulaAST(root, instance_vars, param_vars, declared, source=text)
