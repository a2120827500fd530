"""Pytest configuration and fixtures for simonlearn tests."""

import shutil
import tempfile
from pathlib import Path

import pytest

from src.formula.parser import parse_formula
from src.formula.word import WordStructure

# ============================================================================
# Formula battery
# ============================================================================

PHI1 = "instance: x; params: y; alphabet: a,b\nRa(x) & x <= y\n"
PHI2 = "instance: x; params: y; alphabet: a,b\nRa(x) & exists z. (Rb(z) & z = y) & x <= y\n"
PHI_INTERVAL = "instance: x; params: y1,y2; alphabet: a,b\ny1 <= x & x <= y2 & Ra(x)\n"
PHI_SET = (
    "instance: x; params: ; alphabet: a,b\n"
    "existsSet X. (x in X & forall z. (z in X -> Ra(z)))\n"
)
PHI_LETTER = "instance: x; params: ; alphabet: a,b\nRa(x)\n"


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    temp_path = tempfile.mkdtemp()
    yield Path(temp_path)
    shutil.rmtree(temp_path)


@pytest.fixture
def phi1():
    """Ra(x) & x <= y: a-positions up to the parameter."""
    return parse_formula(PHI1)


@pytest.fixture
def phi2():
    """a-positions before a b-position marked by the parameter."""
    return parse_formula(PHI2)


@pytest.fixture
def phi_interval():
    return parse_formula(PHI_INTERVAL)


@pytest.fixture
def phi_letter():
    return parse_formula(PHI_LETTER)


@pytest.fixture
def ababa():
    return WordStructure.from_text("ababa", ("a", "b"))


@pytest.fixture
def ababa_index(phi1, ababa):
    """Index of "ababa" for Ra(x) & x <= y."""
    from src.learner.index import build_index

    return build_index(ababa, phi1)


@pytest.fixture
def interval_index(phi_interval, ababa):
    from src.learner.index import build_index

    return build_index(ababa, phi_interval)
