"""Line-delimited JSON checkpoints for long searches.

The first line is a header describing the search; every later line is one
finished root task::

    {"kind": "header", "format": 1, "P": 25, "N": 5, ...}
    {"kind": "task", "task": 0, "status": "done", "best": 118, "nodes": 4711, "witness": [...]}

Records are appended a whole batch at a time and flushed, so a killed run
loses at most the batch in flight. A torn final line is ignored on resume.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

FORMAT_VERSION = 1


class CheckpointMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TaskRecord:
    task: int
    status: str
    best: int
    nodes: int
    witness: tuple[int, ...] | None = None

    def to_json(self) -> str:
        return json.dumps({
            "kind": "task", "task": self.task, "status": self.status,
            "best": self.best, "nodes": self.nodes,
            "witness": None if self.witness is None else list(self.witness),
        })

    @classmethod
    def from_dict(cls, d: dict) -> "TaskRecord":
        w = d.get("witness")
        return cls(int(d["task"]), d["status"], int(d["best"]), int(d["nodes"]),
                   None if w is None else tuple(int(c) for c in w))


class Checkpoint:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)

    def read(self) -> tuple[dict | None, dict[int, TaskRecord]]:
        if not self.path.exists():
            return None, {}
        header = None
        records: dict[int, TaskRecord] = {}
        with open(self.path) as f:
            for line in f:
                if not line.endswith("\n"):
                    break
                d = json.loads(line)
                if d["kind"] == "header":
                    header = d
                elif d["kind"] == "task" and d["status"] == "done":
                    records[int(d["task"])] = TaskRecord.from_dict(d)
        return header, records

    def open(self, header: dict) -> dict[int, TaskRecord]:
        """Start or resume; returns the finished tasks already on disk."""
        header = {"kind": "header", "format": FORMAT_VERSION, **header}
        old, records = self.read()
        if old is None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "w") as f:
                f.write(json.dumps(header) + "\n")
            return {}
        if old != header:
            raise CheckpointMismatch(
                f"{self.path} belongs to a different search: {old} != {header}")
        self._truncate_torn_tail()
        return records

    def _truncate_torn_tail(self):
        data = self.path.read_bytes()
        if data and not data.endswith(b"\n"):
            self.path.write_bytes(data[: data.rfind(b"\n") + 1])

    def append(self, records) -> None:
        with open(self.path, "a") as f:
            for r in records:
                f.write(r.to_json() + "\n")
            f.flush()
            os.fsync(f.fileno())
