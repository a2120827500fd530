"""
Structural validation of factorization trees.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from src.fforest.tree import Node
from src.monoid.base import FiniteMonoid

_MAX_ERRORS = 20


@dataclass
class VerificationReport:
    """Outcome of ``verify_tree``; truthy iff the tree is valid."""
    ok: bool = True
    errors: List[str] = field(default_factory=list)
    leaves: int = 0
    height: int = 0

    def fail(self, message: str) -> None:
        self.ok = False
        if len(self.errors) < _MAX_ERRORS:
            self.errors.append(message)

    def __bool__(self) -> bool:
        return self.ok


def verify_tree(tree: Node, monoid: FiniteMonoid, expected: Optional[Sequence[int]] = None) -> VerificationReport:
    """
    Check every factorization-tree invariant.

    * leaf labels are h of the leaf symbols (when the monoid has ``symbol_element``);
    * inner labels are the product of the children's labels;
    * nodes with three or more children share one idempotent label;
    * leaf positions increase strictly; stored heights and spans are exact;
    * the leaf labels equal ``expected`` when given.
    """
    report = VerificationReport(height=tree.height)
    symbol_element = getattr(monoid, "symbol_element", None)
    labels: List[int] = []
    last_position = None
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.children is None:
            report.leaves += 1
            labels.append(node.label)
            if node.height != 0 or node.first != node.last:
                report.fail(f"leaf at {node.first} has height {node.height} and span {node.first}..{node.last}")
            if last_position is not None and node.first <= last_position:
                report.fail(f"leaf position {node.first} follows {last_position}")
            last_position = node.first
            if symbol_element is not None and node.symbol is not None and symbol_element(node.symbol) != node.label:
                report.fail(f"leaf at {node.first}: label {node.label} is not h of symbol {node.symbol}")
            continue

        children = node.children
        where = f"node {node.first}..{node.last}"
        if len(children) < 2:
            report.fail(f"{where} has {len(children)} children")
            stack.extend(reversed(children))
            continue
        if node.height != 1 + max(child.height for child in children):
            report.fail(f"{where} stores height {node.height}")
        if node.first != children[0].first or node.last != children[-1].last:
            report.fail(f"{where} span disagrees with its children")
        if len(children) == 2:
            product = monoid.mul(children[0].label, children[1].label)
            if product != node.label:
                report.fail(f"{where}: label {node.label} != product {product} of its children")
        else:
            e = children[0].label
            if any(child.label != e for child in children):
                report.fail(f"{where}: idempotent node children carry different labels")
            elif not monoid.is_idempotent(e):
                report.fail(f"{where}: shared child label {e} is not idempotent")
            elif node.label != e:
                report.fail(f"{where}: label {node.label} differs from the idempotent {e}")
        stack.extend(reversed(children))

    if expected is not None and list(expected) != labels:
        report.fail("leaf label sequence differs from the expected sequence")
    return report
