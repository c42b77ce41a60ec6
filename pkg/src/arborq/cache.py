"""Content-addressed on-disk cache for computed series.

Each entry is one JSON file named after the hash of its key.  The payload
hash is stored alongside and re-verified on every load, so a corrupted or
hand-edited entry is reported instead of silently used.  Entries carry the
serialization format version; gc removes entries from other versions.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass

from .serialize import canonical_json

FORMAT_VERSION = 1


class CacheError(Exception):
    """Cache corruption: payload hash mismatch or unreadable entry."""


@dataclass(frozen=True)
class CacheEntry:
    key: dict
    payload: dict
    sha256: str


def payload_hash(payload: dict) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def make_key(series: str, params: dict, order: int) -> dict:
    return {
        "series": series,
        "params": params,
        "order": order,
        "version": FORMAT_VERSION,
    }


def key_hash(key: dict) -> str:
    return hashlib.sha256(canonical_json(key).encode()).hexdigest()


def entry_path(directory: str, key: dict) -> str:
    return os.path.join(directory, f"{key['series']}-{key_hash(key)[:16]}.json")


def store(directory: str, key: dict, payload: dict) -> str:
    os.makedirs(directory, exist_ok=True)
    path = entry_path(directory, key)
    entry = {"key": key, "payload": payload, "sha256": payload_hash(payload)}
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(canonical_json(entry) + "\n")
    os.replace(tmp, path)
    return path


def load(directory: str, key: dict) -> dict | None:
    """Return the cached payload, or None if absent; raise on corruption."""
    path = entry_path(directory, key)
    if not os.path.exists(path):
        return None
    entry = _read_entry(path)
    if entry.key != key:
        raise CacheError(f"{path}: stored key does not match the request")
    return entry.payload


def _read_entry(path: str) -> CacheEntry:
    try:
        with open(path) as fh:
            raw = json.load(fh)
        entry = CacheEntry(raw["key"], raw["payload"], raw["sha256"])
    except (OSError, ValueError, KeyError) as exc:
        raise CacheError(f"{path}: unreadable cache entry ({exc})") from exc
    if payload_hash(entry.payload) != entry.sha256:
        raise CacheError(f"{path}: payload hash mismatch")
    return entry


def list_entries(directory: str) -> list[dict]:
    out = []
    if not os.path.isdir(directory):
        return out
    for name in sorted(os.listdir(directory)):
        if not name.endswith(".json"):
            continue
        path = os.path.join(directory, name)
        try:
            entry = _read_entry(path)
            out.append(
                {
                    "file": name,
                    "series": entry.key.get("series"),
                    "params": entry.key.get("params"),
                    "order": entry.key.get("order"),
                    "version": entry.key.get("version"),
                    "sha256": entry.sha256[:12],
                    "status": "ok",
                }
            )
        except CacheError as exc:
            out.append({"file": name, "status": f"corrupt: {exc}"})
    return out


def gc(directory: str) -> int:
    """Remove entries whose format version differs from the current one."""
    removed = 0
    if not os.path.isdir(directory):
        return removed
    for name in sorted(os.listdir(directory)):
        if not name.endswith(".json"):
            continue
        path = os.path.join(directory, name)
        try:
            entry = _read_entry(path)
            stale = entry.key.get("version") != FORMAT_VERSION
        except CacheError:
            stale = True
        if stale:
            os.remove(path)
            removed += 1
    return removed


def verify_hashes(directory: str) -> list[tuple[str, bool]]:
    """Re-hash every payload; returns (file, ok) pairs."""
    out = []
    if not os.path.isdir(directory):
        return out
    for name in sorted(os.listdir(directory)):
        if not name.endswith(".json"):
            continue
        path = os.path.join(directory, name)
        try:
            _read_entry(path)
            out.append((name, True))
        except CacheError:
            out.append((name, False))
    return out
