"""
Deterministic corpus generators.
"""
from .adversarial import (
    ADVERSARIAL_ALPHABET, ADVERSARIAL_FORMULA, AdversarialSpec, Generated, gen_adversarial,
    gen_all_blocks,
)
from .manifest import CorpusManifest, check_corpus, params_text, write_corpus
from .random_gen import gen_random_consistent, make_rng, random_word

__all__ = [
    "ADVERSARIAL_ALPHABET", "ADVERSARIAL_FORMULA", "AdversarialSpec", "Generated",
    "gen_adversarial", "gen_all_blocks", "CorpusManifest", "check_corpus", "params_text",
    "write_corpus", "gen_random_consistent", "make_rng", "random_word",
]
