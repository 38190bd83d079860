"""Canonical encodings shared by the CLI and the tests.

Config and state files are canonical JSON: sorted keys, UTF-8, LF line end. Floats use
orjson's shortest round-trip representation, so equal values always encode to equal bytes.
"""

import hashlib
from pathlib import Path
from typing import Any, Iterable, Iterator

import orjson
import yaml

from src.exceptions import ConfigurationException

CANONICAL_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_APPEND_NEWLINE


def canonical_dumps(obj: Any) -> bytes:
    """Encode a JSON-compatible object canonically."""
    return orjson.dumps(obj, option=CANONICAL_OPTIONS)


def digest(obj: Any) -> str:
    """SHA-256 hex digest of the canonical encoding."""
    return hashlib.sha256(canonical_dumps(obj)).hexdigest()


def write_canonical(path: Path, obj: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(canonical_dumps(obj))
    return path


def write_jsonl(path: Path, records: Iterable[dict]) -> Path:
    """Write one record per line, keeping each record's own key order."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as handle:
        for record in records:
            handle.write(orjson.dumps(record, option=orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_APPEND_NEWLINE))
    return path


def read_jsonl(path: Path) -> Iterator[dict]:
    with path.open("rb") as handle:
        for line in handle:
            if line.strip():
                yield orjson.loads(line)


def read_document(path: Path) -> Any:
    """Load a JSON or YAML document, chosen by file suffix."""
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ConfigurationException(f"cannot read {path}: {e.strerror}")

    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            return yaml.safe_load(raw.decode("utf-8"))
        return orjson.loads(raw)
    except (orjson.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigurationException(f"cannot parse {path}: {e}")


def write_document(path: Path, obj: Any) -> Path:
    """Write canonical JSON, or sorted-key YAML for .yaml/.yml paths."""
    if path.suffix.lower() in (".yaml", ".yml"):
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(yaml.safe_dump(obj, sort_keys=True), encoding="utf-8")
        return path
    return write_canonical(path, obj)
