# tests/unit/test_corpus.py
import pytest

from src.corpus.adversarial import (
    ADVERSARIAL_ALPHABET,
    ADVERSARIAL_FORMULA,
    AdversarialSpec,
    gen_adversarial,
    gen_all_blocks,
)
from src.corpus.manifest import CorpusManifest, check_corpus, params_text, write_corpus
from src.corpus.random_gen import gen_random_consistent, random_word
from src.errors import InvalidSpec, NotEnoughInstances
from src.formula.parser import parse_formula
from src.formula.semantics import eval_semantic
from src.formula.word import WordStructure


class TestAdversarialSpec:
    """Test suite for the adversarial family layout."""

    def test_default_sizes(self):
        spec = AdversarialSpec()

        assert spec.block_length == 24
        assert spec.n == 120
        assert spec.training_positions() == [15, 39, 63, 87, 111]

    @pytest.mark.parametrize("i,expected", [(0, 25), (1, 73), (2, 120)])
    def test_canonical_parameter(self, i, expected):
        assert AdversarialSpec(i=i).parameter() == expected

    @pytest.mark.parametrize("fields", [
        {"ell": -1},
        {"s": 1},
        {"r": 0},
        {"i": 3},
    ])
    def test_invalid_spec(self, fields):
        with pytest.raises(InvalidSpec):
            AdversarialSpec(**fields)


class TestGenAdversarial:
    """Test suite for gen_adversarial."""

    def test_first_member(self):
        generated = gen_adversarial(AdversarialSpec())

        assert generated.word.n == 120
        assert generated.word.symbols.startswith("baaa" * 6 + "baaa")
        assert generated.params == (25,)
        assert generated.training.pairs() == [((15,), 1), ((39,), 0), ((63,), 1), ((87,), 0), ((111,), 1)]

    def test_all_members_share_training_set(self):
        members = gen_all_blocks()

        assert len(members) == 3
        assert len({m.training.to_tsv() for m in members}) == 1
        assert [m.params for m in members] == [(25,), (73,), (120,)]

    @pytest.mark.parametrize("i", [0, 1, 2])
    def test_canonical_parameter_is_consistent(self, i):
        """Test the generated parameter labels every training example correctly."""
        phi = parse_formula(ADVERSARIAL_FORMULA)
        generated = gen_adversarial(AdversarialSpec(i=i))

        for instance, label in generated.training.pairs():
            assert eval_semantic(phi, generated.word, instance, generated.params) == bool(label)

    def test_formula_alphabet(self):
        assert parse_formula(ADVERSARIAL_FORMULA).alphabet == ADVERSARIAL_ALPHABET


class TestRandomCorpus:
    """Test suite for seeded random generation."""

    def test_random_word_is_reproducible(self):
        first = random_word(50, ("a", "b", "c"), seed=7)
        second = random_word(50, ("a", "b", "c"), seed=7)

        assert first.symbols == second.symbols
        assert set(first.symbols) <= {"a", "b", "c"}

    def test_consistent_training_set(self, phi1):
        word = random_word(40, ("a", "b"), seed=3)

        generated = gen_random_consistent(word, phi1, 12, seed=3)

        assert len(generated.training) == 12
        assert len(set(generated.training.positions())) == 12
        for instance, label in generated.training.pairs():
            assert eval_semantic(phi1, word, instance, generated.params) == bool(label)

    def test_same_seed_same_output(self, phi1):
        word = random_word(30, ("a", "b"), seed=1)

        first = gen_random_consistent(word, phi1, 5, seed=9)
        second = gen_random_consistent(word, phi1, 5, seed=9)

        assert first.params == second.params
        assert first.training.to_tsv() == second.training.to_tsv()

    def test_semantic_engine_for_binary_formula(self):
        phi = parse_formula("instance: x1,x2; params: \nx1 < x2")
        word = WordStructure.from_text("abab", ("a", "b"))

        generated = gen_random_consistent(word, phi, 6, seed=0)

        assert generated.training.arity == 2
        for instance, label in generated.training.pairs():
            assert (instance[0] < instance[1]) == bool(label)

    def test_too_many_instances(self, phi1, ababa):
        with pytest.raises(NotEnoughInstances):
            gen_random_consistent(ababa, phi1, 6)


class TestManifest:
    """Test suite for corpus files and manifests."""

    def test_params_text(self):
        assert params_text((25,)) == "y1=25\n"
        assert params_text((2, 3), ["lo", "hi"]) == "lo=2\nhi=3\n"

    def test_write_and_check(self, temp_dir):
        generated = gen_adversarial(AdversarialSpec())

        manifest = write_corpus(temp_dir, generated, "adversarial", spec={"ell": 1})

        assert sorted(manifest.files) == ["B.txt", "T.tsv", "params.txt"]
        assert (temp_dir / "params.txt").read_text() == "y1=25\n"
        assert check_corpus(temp_dir) == []

    def test_tampered_file_is_reported(self, temp_dir):
        write_corpus(temp_dir, gen_adversarial(AdversarialSpec()), "adversarial")

        (temp_dir / "T.tsv").write_text("1\t1\n")

        assert check_corpus(temp_dir) == ["T.tsv"]

    def test_prefixed_members_share_manifest(self, temp_dir):
        for i, generated in enumerate(gen_all_blocks()):
            write_corpus(temp_dir, generated, "adversarial", prefix=f"i{i}_")

        manifest = CorpusManifest.model_validate_json((temp_dir / "manifest.json").read_bytes())

        assert len(manifest.files) == 9
        assert check_corpus(temp_dir) == []
