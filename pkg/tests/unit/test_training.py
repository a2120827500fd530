# tests/unit/test_training.py
import pytest
from pydantic import ValidationError

from src.errors import ArityMismatch, ContradictoryLabels, PositionOutOfRange
from src.learner.training import Example, TrainingSet


class TestExample:
    """Test suite for labeled instances."""

    def test_bare_position_is_unary(self):
        assert Example(instance=4, label=1).instance == (4,)

    def test_label_must_be_binary(self):
        with pytest.raises(ValidationError):
            Example(instance=1, label=2)


class TestTrainingSet:
    """Test suite for TrainingSet."""

    def test_duplicates_collapse(self):
        training = TrainingSet.from_pairs([(3, 1), (3, 1), (1, 0)])

        assert len(training) == 2
        assert training.unary() == {3: 1, 1: 0}

    def test_contradiction(self):
        with pytest.raises(ContradictoryLabels):
            TrainingSet.from_pairs([(3, 1), (3, 0)])

    def test_mixed_arity(self):
        with pytest.raises(ArityMismatch):
            TrainingSet.from_pairs([(1, 1), ((1, 2), 0)])

    def test_from_tsv(self):
        text = "# labels\n15\t1\n\n39\t0\n"

        training = TrainingSet.from_tsv(text)

        assert training.pairs() == [((15,), 1), ((39,), 0)]
        assert training.to_tsv() == "15\t1\n39\t0\n"

    def test_from_tsv_binary_instances(self):
        training = TrainingSet.from_tsv("1,2\t1\n2,1\t0\n")

        assert training.arity == 2
        assert training.positions() == [1, 2]

    @pytest.mark.parametrize("text", ["5\n", "5\t2\n", "x\t1\n", "1\t0\textra\n"])
    def test_from_tsv_rejects_bad_lines(self, text):
        with pytest.raises(ValueError):
            TrainingSet.from_tsv(text)

    def test_unary_of_binary_set(self):
        training = TrainingSet.from_pairs([((1, 2), 1)])

        with pytest.raises(ArityMismatch):
            training.unary()

    def test_empty_set(self):
        training = TrainingSet()

        assert len(training) == 0
        assert training.arity == 1
        assert training.unary() == {}

    def test_check_range(self):
        training = TrainingSet.from_pairs([(6, 1)])

        with pytest.raises(PositionOutOfRange):
            training.check_range(5)
