"""
Syntax tree of MSO formulas over words with signature {<, R_a}.

Nodes are frozen dataclasses, so formulas are hashable and can key caches.
First-order variables range over positions 1..n, set variables over subsets.
"""
from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, Optional, Tuple, Union


# ==================== Atoms ====================

@dataclass(frozen=True)
class Label:
    """R_a(var): the letter at ``var`` is ``letter``."""
    letter: str
    var: str


@dataclass(frozen=True)
class Less:
    left: str
    right: str


@dataclass(frozen=True)
class LessEq:
    left: str
    right: str


@dataclass(frozen=True)
class Equal:
    left: str
    right: str


@dataclass(frozen=True)
class Member:
    """var in setvar"""
    var: str
    setvar: str


# ==================== Connectives ====================

@dataclass(frozen=True)
class Not:
    body: "Node"


@dataclass(frozen=True)
class And:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Or:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Implies:
    left: "Node"
    right: "Node"


# ==================== Quantifiers ====================

@dataclass(frozen=True)
class Exists:
    var: str
    body: "Node"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Node"


@dataclass(frozen=True)
class ExistsSet:
    var: str
    body: "Node"


@dataclass(frozen=True)
class ForallSet:
    var: str
    body: "Node"


Atom = Union[Label, Less, LessEq, Equal, Member]
Node = Union[Atom, Not, And, Or, Implies, Exists, Forall, ExistsSet, ForallSet]

FIRST_ORDER_QUANTIFIERS = (Exists, Forall)
SET_QUANTIFIERS = (ExistsSet, ForallSet)
BINARY = (And, Or, Implies)
COMPARISONS = (Less, LessEq, Equal)

_COMPARISON_SYMBOL = {Less: "<", LessEq: "<=", Equal: "="}
_BINARY_SYMBOL = {And: "&", Or: "|", Implies: "->"}
_QUANTIFIER_KEYWORD = {Exists: "exists", Forall: "forall", ExistsSet: "existsSet", ForallSet: "forallSet"}

# Binding strength used by the printer; quantifiers extend as far right as possible.
_PRECEDENCE = {Implies: 1, Or: 2, And: 3, Not: 4}
_ATOM_PRECEDENCE = 5


def quantifier_rank(node: Node) -> int:
    """Maximal nesting depth of (first-order and set) quantifiers."""
    match node:
        case Exists(_, body) | Forall(_, body) | ExistsSet(_, body) | ForallSet(_, body):
            return 1 + quantifier_rank(body)
        case Not(body):
            return quantifier_rank(body)
        case And(left, right) | Or(left, right) | Implies(left, right):
            return max(quantifier_rank(left), quantifier_rank(right))
        case _:
            return 0


def subformulas(node: Node) -> Iterator[Node]:
    """Preorder walk over all subformulas."""
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        match current:
            case Not(body) | Exists(_, body) | Forall(_, body) | ExistsSet(_, body) | ForallSet(_, body):
                stack.append(body)
            case And(left, right) | Or(left, right) | Implies(left, right):
                stack.append(right)
                stack.append(left)


def free_variables(node: Node) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """Return (free first-order variables, free set variables)."""
    match node:
        case Label(_, var):
            return frozenset({var}), frozenset()
        case Less(a, b) | LessEq(a, b) | Equal(a, b):
            return frozenset({a, b}), frozenset()
        case Member(var, setvar):
            return frozenset({var}), frozenset({setvar})
        case Not(body):
            return free_variables(body)
        case And(left, right) | Or(left, right) | Implies(left, right):
            fo_l, so_l = free_variables(left)
            fo_r, so_r = free_variables(right)
            return fo_l | fo_r, so_l | so_r
        case Exists(var, body) | Forall(var, body):
            fo, so = free_variables(body)
            return fo - {var}, so
        case ExistsSet(var, body) | ForallSet(var, body):
            fo, so = free_variables(body)
            return fo, so - {var}
    raise TypeError(f"not a formula node: {node!r}")


def to_dsl(node: Node, context: int = 0) -> str:
    """Render a node in the formula DSL with minimal parentheses."""
    match node:
        case Label(letter, var):
            return f"R{letter}({var})"
        case Less(a, b) | LessEq(a, b) | Equal(a, b):
            return f"{a} {_COMPARISON_SYMBOL[type(node)]} {b}"
        case Member(var, setvar):
            return f"{var} in {setvar}"
        case Not(body):
            text = "!" + to_dsl(body, _PRECEDENCE[Not])
            return _wrap(text, _PRECEDENCE[Not], context)
        case And(left, right) | Or(left, right):
            prec = _PRECEDENCE[type(node)]
            text = f"{to_dsl(left, prec)} {_BINARY_SYMBOL[type(node)]} {to_dsl(right, prec + 1)}"
            return _wrap(text, prec, context)
        case Implies(left, right):
            prec = _PRECEDENCE[Implies]
            text = f"{to_dsl(left, prec + 1)} -> {to_dsl(right, prec)}"
            return _wrap(text, prec, context)
        case Exists(var, body) | Forall(var, body) | ExistsSet(var, body) | ForallSet(var, body):
            inner = to_dsl(body, 0)
            if _node_precedence(body) < _PRECEDENCE[Not]:
                inner = f"({inner})"
            text = f"{_QUANTIFIER_KEYWORD[type(node)]} {var}. {inner}"
            return _wrap(text, 0, context)
    raise TypeError(f"not a formula node: {node!r}")


def _node_precedence(node: Node) -> int:
    if isinstance(node, (Exists, Forall, ExistsSet, ForallSet)):
        return 0
    return _PRECEDENCE.get(type(node), _ATOM_PRECEDENCE)


def _wrap(text: str, prec: int, context: int) -> str:
    return f"({text})" if prec < context else text


@dataclass(frozen=True)
class FormulaAST:
    """
    A formula φ(x̄; ȳ) together with its free-variable partition.

    Attributes:
        root: Formula body
        instance_vars: Instance variables x1..xk in declaration order
        param_vars: Parameter variables y1..yl in declaration order
        alphabet: Declared alphabet, if any
        source: Original text the formula was parsed from (not compared)
    """
    root: Node
    instance_vars: Tuple[str, ...]
    param_vars: Tuple[str, ...] = ()
    alphabet: Optional[Tuple[str, ...]] = None
    source: Optional[str] = field(default=None, compare=False, repr=False)

    @property
    def k(self) -> int:
        return len(self.instance_vars)

    @property
    def ell(self) -> int:
        return len(self.param_vars)

    @property
    def free_vars(self) -> Tuple[str, ...]:
        return self.instance_vars + self.param_vars

    @property
    def quantifier_rank(self) -> int:
        return quantifier_rank(self.root)

    def letters(self) -> FrozenSet[str]:
        """Letters mentioned by label atoms."""
        return frozenset(n.letter for n in subformulas(self.root) if isinstance(n, Label))

    def header(self) -> str:
        parts = [f"instance: {','.join(self.instance_vars)}", f"params: {','.join(self.param_vars)}"]
        if self.alphabet is not None:
            parts.append(f"alphabet: {','.join(self.alphabet)}")
        return "; ".join(parts)

    def to_dsl(self) -> str:
        return to_dsl(self.root)

    def text(self) -> str:
        """Header line plus body, parseable by ``parse_formula``."""
        return f"{self.header()}\n{self.to_dsl()}\n"

    def with_alphabet(self, alphabet) -> "FormulaAST":
        return FormulaAST(self.root, self.instance_vars, self.param_vars, tuple(alphabet), self.source)
