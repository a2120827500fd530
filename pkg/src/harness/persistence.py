"""
Binary index files.

Layout (all integers little-endian)::

    magic      8 bytes  b"SMLIDX\\0\\0"
    version    u16
    header     u32 length, then orjson object with sorted keys
    sections   for each of dfa, mhat, power, tree: u32 count, then count int32 values
    checksum   32 bytes sha256 of everything before it

See docs/formats.md for the contents of each section.
"""
import hashlib
import struct
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np
import orjson
from loguru import logger

from src.automata.alphabet import AnnotatedAlphabet
from src.automata.dfa import Dfa
from src.errors import ChecksumMismatch, IndexFormatError, VersionMismatch
from src.fforest.tree import Node, iter_preorder, leaf
from src.formula.parser import parse_formula
from src.formula.word import WordStructure
from src.learner.index import Index
from src.monoid.power import PowerMonoid
from src.monoid.tagged import TaggedMonoid

MAGIC = b"SMLIDX\0\0"
VERSION = 1
_SECTIONS = ("dfa", "mhat", "power", "tree")
_LEAF, _INNER = 0, 1
_DIGEST = 32


def _int32(values) -> bytes:
    return np.asarray(values, dtype="<i4").tobytes()


def _tree_stream(tree: Node) -> np.ndarray:
    stream: List[int] = []
    for node in iter_preorder(tree):
        if node.children is None:
            stream += [_LEAF, node.label, node.first, -1 if node.symbol is None else node.symbol]
        else:
            stream += [_INNER, node.label, len(node.children)]
    return np.array(stream, dtype=np.int64)


def _read_tree(stream: List[int]) -> Node:
    stack: List[list] = []
    position = 0
    while position < len(stream):
        if stream[position] == _LEAF:
            label, first, symbol = stream[position + 1:position + 4]
            position += 4
            node = leaf(label, first, None if symbol < 0 else symbol)
        elif stream[position] == _INNER:
            label, count = stream[position + 1:position + 3]
            position += 3
            stack.append([label, count, []])
            continue
        else:
            raise IndexFormatError(f"unknown node kind {stream[position]} in tree section")
        while True:
            if not stack:
                if position != len(stream):
                    raise IndexFormatError("trailing data after the tree root")
                return node
            parent = stack[-1]
            parent[2].append(node)
            if len(parent[2]) < parent[1]:
                break
            stack.pop()
            children = tuple(parent[2])
            node = Node(parent[0], 1 + max(c.height for c in children), children[0].first, children[-1].last, children)
    raise IndexFormatError("tree section ended inside a node")


def save_index(index: Index) -> bytes:
    """Serialize an index; equal indexes give identical bytes."""
    mhat, power, dfa = index.mhat, index.power, index.dfa
    members = [power.members(s) for s in range(power.size)]
    offsets = np.cumsum([0] + [m.size for m in members])
    sections = {
        "dfa": np.concatenate([dfa.delta.ravel(), dfa.accepting.astype(np.int64)]),
        "mhat": np.concatenate([
            mhat.maps.ravel(), mhat.tags, mhat.table.ravel(), mhat.hhat, mhat.accepting.astype(np.int64),
        ]),
        "power": np.concatenate([offsets, np.concatenate(members), power.symbols]),
        "tree": _tree_stream(index.tree),
    }
    header = {
        "n": index.word.n,
        "alphabet": list(index.alphabet.sigma),
        "params": list(index.alphabet.params),
        "formula": index.formula_text,
        "formula_sha256": hashlib.sha256(index.formula_text.encode()).hexdigest() if index.formula else None,
        "dfa": {"states": dfa.n_states, "symbols": dfa.n_symbols, "initial": dfa.initial},
        "mhat": {"size": mhat.size, "states": mhat.maps.shape[1], "initial_state": mhat.initial_state},
        "power": {"size": power.size, "members": int(offsets[-1])},
        "tree": {"height": index.tree.height},
    }
    header_bytes = orjson.dumps(header, option=orjson.OPT_SORT_KEYS)
    parts = [MAGIC, struct.pack("<H", VERSION), struct.pack("<I", len(header_bytes)), header_bytes]
    for name in _SECTIONS:
        values = sections[name]
        parts += [struct.pack("<I", values.size), _int32(values)]
    body = b"".join(parts)
    return body + hashlib.sha256(body).digest()


def _sections(body: bytes, offset: int) -> Tuple[Dict[str, np.ndarray], int]:
    result = {}
    for name in _SECTIONS:
        (count,) = struct.unpack_from("<I", body, offset)
        offset += 4
        end = offset + 4 * count
        if end > len(body):
            raise IndexFormatError(f"section {name} is truncated")
        result[name] = np.frombuffer(body, dtype="<i4", count=count, offset=offset).astype(np.int64)
        offset = end
    return result, offset


def load_index(data: bytes) -> Index:
    """
    Rebuild an index from ``save_index`` output.

    Raises:
        IndexFormatError: Not an index file, or inconsistent contents
        VersionMismatch: Written by an unsupported format version
        ChecksumMismatch: Truncated or corrupted data
    """
    lead = data[:len(MAGIC)]
    if not lead or not MAGIC.startswith(lead):
        raise IndexFormatError("not a simonlearn index file")
    if len(data) < len(MAGIC) + 6 + _DIGEST:
        raise ChecksumMismatch("index file is truncated")
    (version,) = struct.unpack_from("<H", data, len(MAGIC))
    if version != VERSION:
        raise VersionMismatch(f"index format version {version}, expected {VERSION}")
    body, digest = data[:-_DIGEST], data[-_DIGEST:]
    if hashlib.sha256(body).digest() != digest:
        raise ChecksumMismatch("index checksum does not match its contents")

    offset = len(MAGIC) + 2
    (header_length,) = struct.unpack_from("<I", body, offset)
    offset += 4
    header: Dict[str, Any] = orjson.loads(body[offset:offset + header_length])
    sections, offset = _sections(body, offset + header_length)
    if offset != len(body):
        raise IndexFormatError("unexpected data after the last section")

    alphabet = AnnotatedAlphabet(tuple(header["alphabet"]), tuple(header["params"]))
    q, symbols = header["dfa"]["states"], header["dfa"]["symbols"]
    raw = sections["dfa"]
    dfa = Dfa(raw[:q * symbols].reshape(q, symbols), header["dfa"]["initial"], raw[q * symbols:].astype(bool), alphabet)

    size, states = header["mhat"]["size"], header["mhat"]["states"]
    raw = sections["mhat"]
    cuts = np.cumsum([size * states, size, size * size, alphabet.size])
    mhat = TaggedMonoid(
        raw[:cuts[0]].reshape(size, states).astype(np.int32),
        raw[cuts[0]:cuts[1]].copy(),
        raw[cuts[1]:cuts[2]].reshape(size, size).copy(),
        raw[cuts[2]:cuts[3]].copy(),
        raw[cuts[3]:].astype(bool),
        alphabet,
        header["mhat"]["initial_state"],
    )

    count = header["power"]["size"]
    raw = sections["power"]
    offsets = raw[:count + 1]
    flat = raw[count + 1:count + 1 + offsets[-1]]
    elements = [flat[offsets[s]:offsets[s + 1]].astype(np.int32) for s in range(count)]
    power = PowerMonoid(mhat, elements, raw[count + 1 + offsets[-1]:].copy(), {})

    tree = _read_tree(sections["tree"].tolist())
    codes = [node.symbol for node in iter_preorder(tree) if node.children is None]
    word = WordStructure(alphabet.sigma, codes)
    if word.n != header["n"]:
        raise IndexFormatError(f"tree has {word.n} leaves, header says {header['n']}")
    formula = parse_formula(header["formula"]) if header.get("formula") else None
    logger.debug(f"loaded index: n={word.n}, |M̂|={mhat.size}, |𝓜|={power.size}, height {tree.height}")
    return Index(word, formula, dfa, mhat, power, tree)


def write_index(path: Path, index: Index) -> int:
    data = save_index(index)
    Path(path).write_bytes(data)
    return len(data)


def read_index(path: Path) -> Index:
    return load_index(Path(path).read_bytes())
