# tests/unit/test_baselines.py
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.baselines.existential import LetterIndex, exist_learn_unary
from src.baselines.hypothesis import Hypothesis, QfClass
from src.baselines.oracle import (
    class_oracle_exist_unary,
    class_oracle_qf,
    consistent_parameters,
    oracle_learn,
    order_type,
)
from src.baselines.quantifier_free import qf_learn_general, qf_learn_unary
from src.errors import AlphabetError, ArityMismatch
from src.formula.word import WordStructure
from src.learner.training import TrainingSet

AB = ("a", "b")


def _training(labels):
    return TrainingSet.from_pairs(labels.items())


class TestOracle:
    """Test suite for the brute-force oracles."""

    def test_least_consistent_parameter(self, phi1, ababa):
        assert oracle_learn(ababa, phi1, _training({1: 1, 5: 0})) == (1,)

    def test_all_consistent_parameters(self, phi1, ababa):
        found = consistent_parameters(ababa, phi1, _training({3: 1, 5: 0}))

        assert found == [(3,), (4,)]

    def test_none(self, phi1, ababa):
        assert oracle_learn(ababa, phi1, _training({3: 1, 1: 0})) is None

    def test_arity_mismatch(self, phi1, ababa):
        with pytest.raises(ArityMismatch):
            oracle_learn(ababa, phi1, TrainingSet.from_pairs([((1, 2), 1)]))

    def test_order_type(self):
        assert order_type((5, 2, 5, 9)) == (1, 0, 1, 2)


class TestQuantifierFree:
    """Test suite for the quantifier-free learners."""

    def test_unary_places_parameter_at_conflict(self, ababa):
        training = _training({1: 1, 3: 0})

        hypothesis = qf_learn_unary(ababa, training, QfClass(1, AB))

        assert hypothesis.params == (3,)
        assert hypothesis.consistent_with(ababa, training.pairs())

    def test_unary_needs_enough_parameters(self):
        """Test four alternating labels on one letter need two parameters."""
        word = WordStructure.from_text("aaaa", AB)
        training = _training({1: 1, 2: 0, 3: 1, 4: 0})

        assert qf_learn_unary(word, training, QfClass(1, AB)) is None
        assert qf_learn_unary(word, training, QfClass(2, AB)) is not None

    def test_unary_alphabet_check(self, ababa):
        with pytest.raises(AlphabetError):
            qf_learn_unary(ababa, _training({}), QfClass(1, ("a",)))

    def test_general_binary_without_parameters(self):
        word = WordStructure.from_text("aba", AB)
        training = TrainingSet.from_pairs([((1, 2), 1), ((2, 1), 0)])

        hypothesis = qf_learn_general(word, training, k=2, ell=0)

        assert hypothesis.params == ()
        assert hypothesis.iterations == 2
        assert hypothesis.consistent_with(word, training.pairs())

    def test_general_counts_every_placement(self, ababa):
        """Test (2|T|k+1)^ℓ·|T| checks for a unary set with one parameter."""
        training = _training({1: 1, 3: 0})

        hypothesis = qf_learn_general(ababa, training, k=1, ell=1)

        assert hypothesis.iterations == 5 * 2
        assert hypothesis.consistent_with(ababa, training.pairs())

    def test_general_arity_mismatch(self, ababa):
        with pytest.raises(ArityMismatch):
            qf_learn_general(ababa, _training({1: 1}), k=2, ell=0)

    def test_record(self, ababa):
        hypothesis = qf_learn_unary(ababa, _training({1: 1, 3: 0}), QfClass(1, AB))

        record = hypothesis.record()

        assert record["params"] == {"y1": 3}
        assert record["learner"] == "qf-unary"


class TestExistential:
    """Test suite for the interval learner."""

    def test_letter_index(self, ababa):
        letters = LetterIndex.build(ababa)

        assert letters.count(0, 1, 5) == 3
        assert letters.count(1, 3, 2) == 0
        assert letters.next_at_or_after(1, 3) == 4
        assert letters.previous_at_or_before(1, 1) is None

    def test_interval_is_widened(self, ababa):
        training = _training({1: 1, 3: 1, 5: 0})

        hypothesis = exist_learn_unary(ababa, training)

        assert hypothesis.params == (1, 3)
        assert hypothesis.consistent_with(ababa, training.pairs())

    def test_negative_between_positives(self, ababa):
        assert exist_learn_unary(ababa, _training({1: 1, 3: 0, 5: 1})) is None

    def test_no_positives_is_constant_false(self, ababa):
        hypothesis = exist_learn_unary(ababa, _training({2: 0}))

        assert hypothesis.params == ()
        assert not hypothesis.classify(ababa, 2)


@settings(max_examples=40, deadline=None)
@given(text=st.text(alphabet="ab", min_size=1, max_size=7), ell=st.integers(0, 2), data=st.data())
def test_qf_unary_agrees_with_class_oracle(text, ell, data):
    word = WordStructure.from_text(text, AB)
    positions = data.draw(st.lists(st.integers(1, word.n), unique=True, max_size=word.n))
    training = TrainingSet.from_pairs((u, data.draw(st.integers(0, 1))) for u in positions)

    hypothesis = qf_learn_unary(word, training, QfClass(ell, AB))

    assert (hypothesis is not None) == class_oracle_qf(word, training, ell)
    if hypothesis is not None:
        assert isinstance(hypothesis, Hypothesis)
        assert hypothesis.consistent_with(word, training.pairs())


@settings(max_examples=40, deadline=None)
@given(text=st.text(alphabet="ab", min_size=1, max_size=8), data=st.data())
def test_exist_unary_agrees_with_class_oracle(text, data):
    word = WordStructure.from_text(text, AB)
    positions = data.draw(st.lists(st.integers(1, word.n), unique=True, max_size=word.n))
    training = TrainingSet.from_pairs((u, data.draw(st.integers(0, 1))) for u in positions)

    hypothesis = exist_learn_unary(word, training)

    assert (hypothesis is not None) == class_oracle_exist_unary(word, training)
    if hypothesis is not None:
        assert hypothesis.consistent_with(word, training.pairs())
