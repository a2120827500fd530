"""
Integration fixtures: generated corpora and indexes shared across a module.

The adversarial family is small (n = 120 for l = 1, s = 2, r = 1) and is
indexed once per module. Acceptance runs are marked ``slow``; the largest
sizes need SIMONLEARN_FULL_ACCEPTANCE=1. Wall-clock checks are marked
``timing`` and are deselected unless run with ``-m timing``.
"""
import os

import pytest

from src.corpus.adversarial import ADVERSARIAL_FORMULA, gen_all_blocks
from src.formula.parser import parse_formula
from src.learner.index import build_index


def full_acceptance_enabled() -> bool:
    return os.getenv("SIMONLEARN_FULL_ACCEPTANCE", "").lower() in ("1", "true", "yes")


@pytest.fixture(scope="module")
def adversarial_phi():
    return parse_formula(ADVERSARIAL_FORMULA)


@pytest.fixture(scope="module")
def adversarial_members():
    """Every B_i of the default family with its canonical parameter and T."""
    return gen_all_blocks()


@pytest.fixture(scope="module")
def adversarial_indexes(adversarial_phi, adversarial_members):
    return [build_index(member.word, adversarial_phi) for member in adversarial_members]
