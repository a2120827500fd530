# tests/unit/test_power_monoid.py
import itertools

import numpy as np
import pytest

from src.automata.consistency import build_consistency_dfa
from src.errors import MonoidBlowup, NoUniqueIdempotent
from src.formula.parser import parse_formula
from src.monoid.power import power_monoid
from src.monoid.tagged import transition_monoid
from tests.conftest import PHI1, PHI2


@pytest.fixture(scope="module")
def phi1_mhat():
    return transition_monoid(build_consistency_dfa(parse_formula(PHI1)))


@pytest.fixture(scope="module")
def phi1_power(phi1_mhat):
    return power_monoid(phi1_mhat)


def _annotations(mhat, gamma_word):
    """ĥ of every Σ̂ word projecting to ``gamma_word``."""
    alphabet = mhat.alphabet
    width = len(alphabet.sigma)
    masks = range(1 << alphabet.ell)
    found = set()
    for choice in itertools.product(masks, repeat=len(gamma_word)):
        codes = [
            alphabet.encode(gamma % width, mask, gamma // width)
            for gamma, mask in zip(gamma_word, choice)
        ]
        found.add(mhat.evaluate(codes))
    return sorted(found)


class TestPowerMonoid:
    """Test suite for the power monoid 𝓜."""

    def test_identity_is_singleton(self, phi1_power, phi1_mhat):
        assert phi1_power.members(0).tolist() == [phi1_mhat.identity]
        assert phi1_power.evaluate([]) == 0

    def test_generators_cover_gamma(self, phi1_power, phi1_mhat):
        assert len(phi1_power.symbols) == phi1_mhat.alphabet.gamma_size
        assert set(phi1_power.generators) <= set(range(phi1_power.size))

    @pytest.mark.parametrize("gamma_word", [
        [0],
        [0, 1],
        [2, 1, 0],
        [0, 0, 5, 1],
        [3, 4, 0, 1],
    ])
    def test_evaluate_collects_every_annotation(self, phi1_power, phi1_mhat, gamma_word):
        """Test h(A) is the set of ĥ(B̂) over all annotations of A."""
        s = phi1_power.evaluate(gamma_word)

        assert phi1_power.members(s).tolist() == _annotations(phi1_mhat, gamma_word)

    def test_product_matches_members(self, phi1_power, phi1_mhat):
        for a, b in itertools.product(range(phi1_power.size), repeat=2):
            expected = np.unique(phi1_mhat.table[np.ix_(phi1_power.members(a), phi1_power.members(b))])
            assert phi1_power.members(phi1_power.mul(a, b)).tolist() == expected.tolist()

    def test_lookup_inverts_members(self, phi1_power):
        for s in range(phi1_power.size):
            assert phi1_power.lookup(phi1_power.members(s)) == s

    def test_each_element_has_one_untagged_member(self, phi1_power, phi1_mhat):
        """Test the all-? annotation contributes exactly one ∅-tagged member."""
        for s in range(phi1_power.size):
            members = phi1_power.members(s)
            assert int(np.sum(phi1_mhat.tags[members] == 0)) == 1

    def test_idempotent_of_empty_class(self, phi1_power, phi1_mhat):
        for s in range(phi1_power.size):
            if not phi1_power.is_idempotent(s):
                continue
            e = phi1_power.idempotent_of_empty_class(s)
            assert phi1_mhat.tags[e] == 0
            assert phi1_mhat.is_idempotent(e)
            assert e in phi1_power.members(s)

    def test_idempotent_of_empty_class_rejects_non_idempotent(self, phi1_power):
        """Test a label whose ∅-member is not idempotent raises."""
        mhat = phi1_power.mhat
        for s in range(phi1_power.size):
            members = phi1_power.members(s)
            e = int(members[mhat.tags[members] == 0][0])
            if not mhat.is_idempotent(e):
                with pytest.raises(NoUniqueIdempotent):
                    phi1_power.idempotent_of_empty_class(s)
                return

    def test_decompose(self, phi1_power, phi1_mhat):
        left = phi1_power.evaluate([0, 1])
        right = phi1_power.evaluate([2])
        for m in phi1_power.members(phi1_power.mul(left, right)):
            m1, m2 = phi1_power.decompose(left, right, int(m))
            assert m1 in phi1_power.members(left)
            assert m2 in phi1_power.members(right)
            assert phi1_mhat.mul(m1, m2) == m

    def test_decompose_outside_product(self, phi1_power, phi1_mhat):
        s = phi1_power.evaluate([0])
        outside = [m for m in range(phi1_mhat.size) if m not in phi1_power.members(phi1_power.mul(s, s))]

        assert outside
        assert phi1_power.decompose(s, s, outside[0]) is None

    def test_decompose_around_idempotent(self, phi1_power, phi1_mhat):
        for s in range(phi1_power.size):
            if not phi1_power.is_idempotent(s):
                continue
            e = phi1_power.idempotent_of_empty_class(s)
            for m in phi1_power.members(s):
                m1, m2 = phi1_power.decompose_around(s, e, int(m))
                assert phi1_mhat.mul(phi1_mhat.mul(m1, e), m2) == m

    def test_accepting_members(self, phi1_power, phi1_mhat):
        for s in range(phi1_power.size):
            accepting = phi1_power.accepting_members(s)
            assert all(phi1_mhat.accepting[m] for m in accepting)

    def test_cap(self):
        mhat = transition_monoid(build_consistency_dfa(parse_formula(PHI2)))

        with pytest.raises(MonoidBlowup):
            power_monoid(mhat, cap=2)

    def test_dump(self, phi1_power):
        dump = phi1_power.dump()

        assert dump["elements"][0] == phi1_power.members(0).tolist()
        assert len(dump["symbols"]) == len(phi1_power.symbols)
