# tests/unit/test_splice.py
import pytest

from src.automata.alphabet import class_of_label
from src.errors import ContradictoryLabels, PositionOutOfRange
from src.fforest.splice import normalize_labels, splice_training
from src.fforest.tree import TreeStats, iter_leaves, leaf_labels
from src.fforest.verify import verify_tree
from src.formula.word import WordStructure
from src.learner.index import build_index


class TestNormalizeLabels:
    """Test suite for normalize_labels."""

    def test_pairs_and_mapping(self):
        assert normalize_labels([(2, 1), (1, 0)], 3) == {2: 1, 1: 0}
        assert normalize_labels({3: True}, 3) == {3: 1}

    def test_duplicates_collapse(self):
        assert normalize_labels([(2, 1), (2, 1)], 3) == {2: 1}

    def test_contradiction(self):
        with pytest.raises(ContradictoryLabels):
            normalize_labels([(2, 1), (2, 0)], 3)

    @pytest.mark.parametrize("position", [0, 4])
    def test_out_of_range(self, position):
        with pytest.raises(PositionOutOfRange):
            normalize_labels({position: 1}, 3)


class TestSpliceTraining:
    """Test suite for splicing training labels into the base tree."""

    def test_empty_training_returns_base_tree(self, ababa_index):
        tree = splice_training(ababa_index.tree, ababa_index.word, {}, ababa_index.power)

        assert tree is ababa_index.tree

    @pytest.mark.parametrize("labels", [
        {1: 1},
        {5: 0},
        {1: 1, 5: 0},
        {2: 0, 3: 1, 4: 0},
        {1: 1, 2: 0, 3: 1, 4: 0, 5: 1},
    ])
    def test_leaves_carry_classified_symbols(self, ababa_index, labels):
        """Test each training position becomes a leaf for its classified symbol."""
        index = ababa_index
        alphabet = index.alphabet
        classes = {u: class_of_label(label) for u, label in labels.items()}
        gammas = [alphabet.gamma_encode(int(a), classes.get(u, 0)) for u, a in enumerate(index.word.codes, start=1)]
        expected = [index.power.symbol_element(g) for g in gammas]

        tree = splice_training(index.tree, index.word, labels, index.power)

        report = verify_tree(tree, index.power, expected=expected)
        assert report, report.errors
        assert tree.label == index.power.evaluate(gammas)
        assert [node.position for node in iter_leaves(tree)] == [1, 2, 3, 4, 5]

    def test_base_tree_is_unchanged(self, ababa_index):
        before = leaf_labels(ababa_index.tree)
        root_label = ababa_index.tree.label

        splice_training(ababa_index.tree, ababa_index.word, {2: 1, 4: 0}, ababa_index.power)

        assert leaf_labels(ababa_index.tree) == before
        assert ababa_index.tree.label == root_label

    def test_height_bound_on_longer_word(self, phi1):
        word = WordStructure.from_text("ab" * 60 + "a", ("a", "b"))
        index = build_index(word, phi1)
        labels = {u: u % 2 for u in range(3, word.n, 7)}
        stats = TreeStats()

        tree = splice_training(index.tree, word, labels, index.power, stats)

        assert verify_tree(tree, index.power)
        assert tree.height <= 2 * index.height + 3 * index.power.size + 1
        assert stats.nodes_created > 0
