"""Restartable block sums for long runs.

A checkpoint file stores, for one summation keyed by its full
configuration, the per-block compensated partial sums produced so far.
On resume the key must match and the first stored block is recomputed
and compared bit-for-bit before any stored data is trusted; a mismatch
discards the file (stale or foreign data never mixes into a result).
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path


def config_hash(key: dict) -> str:
    """Stable short hash of a JSON-serializable configuration."""
    canon = json.dumps(key, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


@dataclass
class BlockRecord:
    """Partial sums of one block: per tracked series (value, abs_sum, n_terms)."""

    index: int
    lo: int
    hi: int
    parts: dict[str, tuple[float, float, int]]

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "lo": self.lo,
            "hi": self.hi,
            "parts": {k: [v[0], v[1], v[2]] for k, v in self.parts.items()},
        }

    @staticmethod
    def from_json_dict(d: dict) -> "BlockRecord":
        return BlockRecord(
            index=int(d["index"]),
            lo=int(d["lo"]),
            hi=int(d["hi"]),
            parts={k: (float(v[0]), float(v[1]), int(v[2])) for k, v in d["parts"].items()},
        )


class CheckpointStore:
    """One summation's checkpoint file under ``directory``.

    The filename is content-addressed by the configuration hash, so runs
    with different parameters can never collide.
    """

    def __init__(self, directory: str | Path, kind: str, key: dict):
        self.directory = Path(directory)
        self.key = key
        self.path = self.directory / f"{kind}-{config_hash(key)}.json"

    def load(self) -> list[BlockRecord]:
        """Stored block records in index order; [] if absent or key mismatch."""
        if not self.path.exists():
            return []
        try:
            with open(self.path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return []
        if doc.get("key") != self.key:
            return []
        records = [BlockRecord.from_json_dict(b) for b in doc.get("blocks", [])]
        records.sort(key=lambda r: r.index)
        expect = list(range(len(records)))
        if [r.index for r in records] != expect:
            return []
        return records

    def save(self, records: list[BlockRecord]) -> None:
        """Atomically rewrite the file with the given records."""
        self.directory.mkdir(parents=True, exist_ok=True)
        doc = {
            "schema_version": 1,
            "key": self.key,
            "blocks": [r.to_json_dict() for r in records],
        }
        tmp = self.path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            json.dump(doc, fh)
        os.replace(tmp, self.path)

    def discard(self) -> None:
        if self.path.exists():
            self.path.unlink()
