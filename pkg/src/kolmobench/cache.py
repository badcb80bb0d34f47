"""Append-only verdict cache: one JSON record per line.

Records are keyed by (machine index, program, budget) and carry the full
verdict summary, including the divergence certificate when there is one.
Text lines keep the store diffable and make corruption local: a bad line
is reported by number, everything else stays readable.
"""

from __future__ import annotations

import json
import os


class CacheCorruptionError(RuntimeError):
    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


_FIELDS = ("i", "p", "budget", "status", "steps", "output", "cert")
_STATUSES = {"halted", "invalid", "diverges", "unknown"}


def raw_to_record(i: int, p: str, budget: int, raw) -> dict:
    """Internal analyze result -> JSON-able record."""
    rec = {"i": i, "p": p, "budget": budget, "steps": None, "output": None, "cert": None}
    if raw[0] == "h":
        rec["status"] = "invalid" if raw[2] is None else "halted"
        rec["steps"] = raw[1]
        rec["output"] = raw[2]
    elif raw[0] == "d":
        rec["status"] = "diverges"
        rec["steps"] = raw[2]  # certificate discovery step
        rec["cert"] = _cert_to_json(raw[1])
    else:
        rec["status"] = "unknown"
    return rec


def record_to_raw(rec: dict):
    status = rec["status"]
    if status == "halted":
        return ("h", rec["steps"], rec["output"])
    if status == "invalid":
        return ("h", rec["steps"], None)
    if status == "diverges":
        return ("d", _cert_from_json(rec["cert"]), rec["steps"])
    return ("u", rec["budget"])


def _cert_to_json(ct):
    return list(ct[:-1]) + [list(map(list, ct[-1]))] if ct[0] == "splice" else list(ct)


def _cert_from_json(doc):
    if doc[0] == "splice":
        return ("splice", doc[1], doc[2], doc[3], tuple(tuple(c) for c in doc[4]))
    return tuple(doc)


def _validate(rec, path, line_no):
    for f in _FIELDS[:4]:
        if f not in rec:
            raise CacheCorruptionError(path, line_no, f"missing field {f!r}")
    if rec["status"] not in _STATUSES:
        raise CacheCorruptionError(path, line_no, f"bad status {rec['status']!r}")


class VerdictCache:
    """In-memory map over a JSONL file; appends go straight to disk."""

    def __init__(self, path: str):
        self.path = path
        self.records = {}
        self._fh = None
        if os.path.exists(path):
            self._load()

    def _load(self):
        with open(self.path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as e:
                    raise CacheCorruptionError(self.path, line_no, f"bad JSON ({e.msg})")
                _validate(rec, self.path, line_no)
                key = (rec["i"], rec["p"], rec["budget"])
                prev = self.records.get(key)
                if prev is not None and prev != rec:
                    raise CacheCorruptionError(
                        self.path, line_no, f"conflicting duplicate for key {key}"
                    )
                self.records[key] = rec

    def lookup(self, i: int, p: str, budget: int):
        rec = self.records.get((i, p, budget))
        return None if rec is None else record_to_raw(rec)

    def record(self, i: int, p: str, budget: int, raw) -> None:
        key = (i, p, budget)
        if key in self.records:
            return
        rec = raw_to_record(i, p, budget, raw)
        self.records[key] = rec
        if self._fh is None:
            self._fh = open(self.path, "a", encoding="utf-8")
        self._fh.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")

    def flush(self) -> None:
        if self._fh is not None:
            self._fh.flush()

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def __len__(self) -> int:
        return len(self.records)

    def status_counts(self) -> dict:
        counts = {}
        for rec in self.records.values():
            counts[rec["status"]] = counts.get(rec["status"], 0) + 1
        return counts

    def compact(self) -> int:
        """Rewrite the file without duplicate lines; returns records kept."""
        self.close()
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for key in sorted(self.records):
                fh.write(
                    json.dumps(self.records[key], sort_keys=True, separators=(",", ":"))
                    + "\n"
                )
        os.replace(tmp, self.path)
        return len(self.records)
