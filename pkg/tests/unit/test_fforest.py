# tests/unit/test_fforest.py
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import EmptySequence, RangeOutOfBounds, TreeHeightExceeded
from src.fforest.builder import SimonTreeBuilder, build_simon_tree
from src.fforest.extract import subtree_for_range
from src.fforest.tree import (
    Node,
    TreeStats,
    count_nodes,
    iter_leaves,
    leaf,
    leaf_labels,
    make_node,
    tree_height_bound,
)
from src.fforest.verify import verify_tree
from src.monoid.base import TableMonoid

_ids = np.arange(3)
Z3 = TableMonoid((_ids[:, None] + _ids[None, :]) % 3)
# identity, const 0, swap, const 1
SWAP = TableMonoid.from_transformations([[0, 0], [1, 0]])

MONOIDS = {"z3": Z3, "swap": SWAP}


def _clifford_chain(g: int, k: int) -> TableMonoid:
    """Identity above k copies of Z_g, each level absorbing the ones above it."""
    level = np.concatenate([[0], np.repeat(np.arange(1, k + 1), g)])
    value = np.concatenate([[0], np.tile(np.arange(g), k)])
    lower = np.maximum(level[:, None], level[None, :])
    table = np.where(lower == 0, 0, 1 + (lower - 1) * g + (value[:, None] + value[None, :]) % g)
    return TableMonoid(table)


CHAINS = {f"z{g}^{k}": _clifford_chain(g, k) for g, k in [(2, 3), (3, 3), (5, 4), (6, 5)]}


class TestMakeNode:
    """Test suite for make_node."""

    def test_single_child_is_returned(self):
        child = leaf(1, 1)

        assert make_node([child], Z3) is child

    def test_binary_node_multiplies(self):
        stats = TreeStats()

        node = make_node([leaf(1, 1), leaf(2, 2)], Z3, stats)

        assert node.label == 0
        assert node.height == 1
        assert (node.first, node.last) == (1, 2)
        assert stats.products == 1
        assert stats.nodes_created == 1

    def test_idempotent_node(self):
        node = make_node([leaf(0, 1), leaf(0, 2), leaf(0, 3)], Z3)

        assert node.is_idempotent_node
        assert node.label == 0

    def test_empty_children(self):
        with pytest.raises(ValueError):
            make_node([], Z3)

    def test_idempotent_node_needs_shared_label(self):
        with pytest.raises(ValueError):
            make_node([leaf(0, 1), leaf(1, 2), leaf(0, 3)], Z3)

    def test_idempotent_node_needs_idempotent_label(self):
        with pytest.raises(ValueError):
            make_node([leaf(1, 1), leaf(1, 2), leaf(1, 3)], Z3)


class TestBuildSimonTree:
    """Test suite for the factorization tree builder."""

    def test_empty_sequence(self):
        with pytest.raises(EmptySequence):
            build_simon_tree([], Z3)

    def test_single_leaf(self):
        tree = build_simon_tree([2], Z3)

        assert tree.is_leaf
        assert tree.position == 1

    def test_custom_positions_and_symbols(self):
        tree = build_simon_tree([1, 1, 2], Z3, positions=[4, 5, 6], symbols=[7, 7, 8])

        assert [node.position for node in iter_leaves(tree)] == [4, 5, 6]
        assert [node.symbol for node in iter_leaves(tree)] == [7, 7, 8]
        assert tree.label == 1

    def test_long_constant_run_is_shallow(self):
        """Test a run of the identity collapses into one idempotent node."""
        tree = build_simon_tree([0] * 500, Z3)

        assert tree.height <= tree_height_bound(Z3)
        assert count_nodes(tree) < 2 * 500
        assert verify_tree(tree, Z3, expected=[0] * 500)

    def test_builder_over_subtrees(self):
        """Test items that are whole subtrees keep their leaves."""
        left = build_simon_tree([1, 2, 1], Z3)
        right = build_simon_tree([2, 2], Z3, positions=[4, 5])

        tree = SimonTreeBuilder(Z3).build([left, right])

        assert leaf_labels(tree) == [1, 2, 1, 2, 2]
        assert tree.label == Z3.product([1, 2, 1, 2, 2])
        assert verify_tree(tree, Z3)


@pytest.mark.parametrize("name", sorted(MONOIDS))
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_tree_is_valid_and_bounded(name, data):
    """Test any label sequence yields a valid tree within the height bound."""
    monoid = MONOIDS[name]
    labels = data.draw(st.lists(st.integers(0, monoid.size - 1), min_size=1, max_size=120))

    tree = build_simon_tree(labels, monoid)

    report = verify_tree(tree, monoid, expected=labels)
    assert report, report.errors
    assert report.leaves == len(labels)
    assert tree.label == monoid.product(labels)
    assert tree.height <= tree_height_bound(monoid)


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_range_extraction(data):
    """Test the extracted tree covers exactly [i..j] with height at most H + 2."""
    labels = data.draw(st.lists(st.integers(0, SWAP.size - 1), min_size=1, max_size=80))
    n = len(labels)
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(i, n))
    tree = build_simon_tree(labels, SWAP)

    part = subtree_for_range(tree, i, j, SWAP)

    assert verify_tree(part, SWAP, expected=labels[i - 1:j])
    assert (part.first, part.last) == (i, j)
    assert part.label == SWAP.product(labels[i - 1:j])
    assert part.height <= tree.height + 2


class TestSubtreeForRange:
    """Test suite for subtree_for_range edge cases."""

    def test_full_range_is_the_tree(self):
        tree = build_simon_tree([1, 2, 0, 1], Z3)

        assert subtree_for_range(tree, 1, 4, Z3) is tree

    def test_single_position(self):
        tree = build_simon_tree([1, 2, 0, 1], Z3)

        part = subtree_for_range(tree, 2, 2, Z3)

        assert part.is_leaf
        assert part.label == 2

    def test_reversed_range(self):
        tree = build_simon_tree([1, 2], Z3)

        with pytest.raises(RangeOutOfBounds):
            subtree_for_range(tree, 2, 1, Z3)

    def test_range_past_end(self):
        tree = build_simon_tree([1, 2], Z3)

        with pytest.raises(RangeOutOfBounds):
            subtree_for_range(tree, 1, 3, Z3)

    def test_counts_work(self):
        stats = TreeStats()
        tree = build_simon_tree(list(range(3)) * 20, Z3)

        subtree_for_range(tree, 5, 40, Z3, stats)

        assert stats.nodes_touched > 0
        assert stats.nodes_touched <= 4 * (tree.height + 1)


class TestVerifyTree:
    """Test suite for verify_tree failure reports."""

    def test_wrong_product_label(self):
        bad = Node(0, 1, 1, 2, (leaf(1, 1), leaf(1, 2)))

        report = verify_tree(bad, Z3)

        assert not report
        assert "product" in report.errors[0]

    def test_non_increasing_positions(self):
        bad = Node(2, 1, 2, 1, (leaf(1, 2), leaf(1, 1)))

        report = verify_tree(bad, Z3)

        assert not report

    def test_wrong_height(self):
        bad = Node(2, 3, 1, 2, (leaf(1, 1), leaf(1, 2)))

        assert not verify_tree(bad, Z3)

    def test_expected_sequence(self):
        tree = build_simon_tree([1, 2], Z3)

        assert not verify_tree(tree, Z3, expected=[2, 1])

    def test_non_idempotent_shared_label(self):
        bad = Node(1, 1, 1, 3, (leaf(1, 1), leaf(1, 2), leaf(1, 3)))

        report = verify_tree(bad, Z3)

        assert not report
        assert "idempotent" in report.errors[0]


@pytest.mark.parametrize("name", sorted(CHAINS))
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_group_chain_stays_within_bound(name, data):
    """Test chains of nontrivial groups, where each J-class step must stay within 3|J|."""
    monoid = CHAINS[name]
    labels = data.draw(st.lists(st.integers(0, monoid.size - 1), min_size=50, max_size=3000))
    if data.draw(st.booleans()):
        labels.sort()

    tree = build_simon_tree(labels, monoid)

    assert verify_tree(tree, monoid, expected=labels)
    assert tree.height <= tree_height_bound(monoid)


class TestHeightBound:
    """Test suite for the enforced height bound."""

    def test_clifford_chain_table(self):
        monoid = CHAINS["z2^3"]

        assert monoid.size == 7
        assert monoid.mul(1, 2) == 2
        assert monoid.mul(2, 4) == 3
        assert monoid.mul(0, 5) == 5
        assert monoid.green.j_count == 4

    def test_every_level_in_turn(self):
        """Test words descending through every level with non-identity group letters."""
        monoid = CHAINS["z5^4"]
        labels = [e for level in range(4) for e in [2 + 5 * level, 3 + 5 * level, 4 + 5 * level] * 40]

        tree = build_simon_tree(labels, monoid)

        assert verify_tree(tree, monoid, expected=labels)
        assert tree.height <= tree_height_bound(monoid)

    def test_taller_tree_is_an_error(self, mocker):
        mocker.patch("src.fforest.builder.tree_height_bound", return_value=0)

        with pytest.raises(TreeHeightExceeded) as exc:
            build_simon_tree([1, 2], Z3)

        assert (exc.value.height, exc.value.bound) == (1, 0)

    def test_single_leaf_meets_any_bound(self, mocker):
        mocker.patch("src.fforest.builder.tree_height_bound", return_value=0)

        assert build_simon_tree([2], Z3).height == 0
