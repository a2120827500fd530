# tests/unit/test_persistence.py
import struct

import numpy as np
import pytest

from src.errors import ChecksumMismatch, IndexFormatError, VersionMismatch
from src.fforest.tree import leaf_labels
from src.fforest.verify import verify_tree
from src.harness.persistence import MAGIC, load_index, read_index, save_index, write_index
from src.learner.algorithm import learn_parameters


class TestIndexFiles:
    """Test suite for binary index files."""

    def test_round_trip_keeps_answers(self, interval_index):
        """Test a reloaded index answers queries exactly like the original."""
        loaded = load_index(save_index(interval_index))

        for labels in ({3: 1, 1: 0, 5: 0}, {1: 1}, {2: 1}, {}):
            assert learn_parameters(loaded, labels) == learn_parameters(interval_index, labels)

    def test_round_trip_contents(self, ababa_index):
        loaded = load_index(save_index(ababa_index))

        assert loaded.word.symbols == ababa_index.word.symbols
        assert loaded.formula == ababa_index.formula
        assert loaded.alphabet == ababa_index.alphabet
        assert np.array_equal(loaded.mhat.table, ababa_index.mhat.table)
        assert loaded.power.size == ababa_index.power.size
        assert leaf_labels(loaded.tree) == leaf_labels(ababa_index.tree)
        assert loaded.height == ababa_index.height
        assert verify_tree(loaded.tree, loaded.power, expected=list(ababa_index.power.symbols[loaded.word.codes]))

    def test_resave_is_byte_identical(self, ababa_index):
        data = save_index(ababa_index)

        assert save_index(load_index(data)) == data

    def test_write_and_read(self, ababa_index, temp_dir):
        path = temp_dir / "ababa.idx"

        size = write_index(path, ababa_index)

        assert size == path.stat().st_size
        assert read_index(path).word.n == 5

    def test_not_an_index(self):
        with pytest.raises(IndexFormatError):
            load_index(b"hello world")

    def test_version_mismatch(self, ababa_index):
        data = bytearray(save_index(ababa_index))
        data[len(MAGIC):len(MAGIC) + 2] = struct.pack("<H", 99)

        with pytest.raises(VersionMismatch):
            load_index(bytes(data))

    def test_truncated_file(self, ababa_index):
        data = save_index(ababa_index)

        with pytest.raises(ChecksumMismatch):
            load_index(data[:-5])

    @pytest.mark.parametrize("keep", [3, len(MAGIC), len(MAGIC) + 1, len(MAGIC) + 2, 40])
    def test_truncated_near_the_start(self, ababa_index, keep):
        data = save_index(ababa_index)

        with pytest.raises(ChecksumMismatch):
            load_index(data[:keep])

    def test_empty_file_is_not_an_index(self):
        with pytest.raises(IndexFormatError) as exc:
            load_index(b"")

        assert not isinstance(exc.value, ChecksumMismatch)

    def test_corrupted_byte(self, ababa_index):
        data = bytearray(save_index(ababa_index))
        data[len(data) // 2] ^= 0xFF

        with pytest.raises(ChecksumMismatch):
            load_index(bytes(data))

    def test_checksum_error_is_format_error(self):
        assert issubclass(ChecksumMismatch, IndexFormatError)
        assert issubclass(VersionMismatch, IndexFormatError)
