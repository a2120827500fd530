"""
Corpus manifests: what was generated, from which inputs, with output hashes.
"""
import hashlib
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import orjson
from pydantic import BaseModel, Field

from src.config import settings
from src.corpus.adversarial import Generated

MANIFEST_NAME = "manifest.json"


class CorpusManifest(BaseModel):
    """Manifest written next to generated corpus files."""
    generator: str
    spec: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    rng_algorithm: str = Field(default_factory=lambda: settings.rng_algorithm)
    files: Dict[str, str] = Field(default_factory=dict, description="File name -> sha256 hex digest")

    def to_json(self) -> bytes:
        return orjson.dumps(self.model_dump(), option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS)


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def params_text(params: Sequence[int], names: Optional[Sequence[str]] = None) -> str:
    names = names or [f"y{i}" for i in range(1, len(params) + 1)]
    return "".join(f"{name}={position}\n" for name, position in zip(names, params))


def write_corpus(
    directory: Path,
    generated: Generated,
    generator: str,
    spec: Optional[Dict[str, Any]] = None,
    seed: Optional[int] = None,
    param_names: Optional[Sequence[str]] = None,
    prefix: str = "",
) -> CorpusManifest:
    """
    Write B.txt, T.tsv and params.txt (optionally prefixed) plus manifest.json.

    Returns:
        The manifest that was written
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    outputs = {
        f"{prefix}B.txt": (generated.word.symbols + "\n").encode(),
        f"{prefix}T.tsv": generated.training.to_tsv().encode(),
        f"{prefix}params.txt": params_text(generated.params, param_names).encode(),
    }
    manifest_path = directory / MANIFEST_NAME
    files: Dict[str, str] = {}
    if prefix and manifest_path.exists():
        files = CorpusManifest.model_validate_json(manifest_path.read_bytes()).files
    for name, data in outputs.items():
        (directory / name).write_bytes(data)
        files[name] = sha256_hex(data)
    manifest = CorpusManifest(generator=generator, spec=spec or {}, seed=seed, files=files)
    manifest_path.write_bytes(manifest.to_json())
    return manifest


def check_corpus(directory: Path) -> List[str]:
    """Files whose content no longer matches the manifest hash."""
    directory = Path(directory)
    manifest = CorpusManifest.model_validate_json((directory / MANIFEST_NAME).read_bytes())
    stale = []
    for name, digest in sorted(manifest.files.items()):
        path = directory / name
        if not path.exists() or sha256_hex(path.read_bytes()) != digest:
            stale.append(name)
    return stale
