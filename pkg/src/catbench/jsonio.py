"""Canonical JSON helpers.

Every file this package writes uses the same canonical form: sorted keys,
compact separators, ASCII only, trailing newline.  Content hashes are
computed over that canonical form, so identical payloads hash identically
on every platform.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def content_hash(obj) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode("ascii")).hexdigest()


def dump_versioned(path: str | Path, schema: str, body, hashed: bool = False) -> None:
    """Write a versioned JSON document; ``hashed`` adds a content_hash field."""
    doc = {"schema": schema, "body": body}
    if hashed:
        doc["content_hash"] = content_hash(body)
    Path(path).write_text(canonical_dumps(doc) + "\n", encoding="ascii")


def load_versioned(path: str | Path, schema: str):
    doc = json.loads(Path(path).read_text(encoding="ascii"))
    if doc.get("schema") != schema:
        raise ValueError(f"expected schema {schema!r}, found {doc.get('schema')!r}")
    if "content_hash" in doc and doc["content_hash"] != content_hash(doc["body"]):
        raise ValueError(f"content hash mismatch in {path}")
    return doc["body"]
