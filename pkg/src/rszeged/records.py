"""Sweep records and their JSONL / CSV persistence."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

COLUMNS = ("run", "n", "base", "lengths", "g6", "sz4", "dsq")


class RecordError(ValueError):
    pass


@dataclass(frozen=True)
class SweepRecord:
    run: str
    n: int
    base: str
    lengths: tuple[int, ...]
    g6: str
    sz4: int
    dsq: int
    is_current_max: bool = False

    def check(self) -> None:
        """Enforce ``sz4 = m n^2 - dsq`` with ``m = n + 2``."""
        if self.sz4 != (self.n + 2) * self.n ** 2 - self.dsq:
            raise RecordError(f"record violates sz4 = (n+2)n^2 - dsq: {self}")

    def to_dict(self) -> dict:
        return {
            "run": self.run,
            "n": self.n,
            "base": self.base,
            "lengths": list(self.lengths),
            "g6": self.g6,
            "sz4": self.sz4,
            "dsq": self.dsq,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepRecord":
        missing = [k for k in COLUMNS if k not in d]
        if missing:
            raise RecordError(f"record missing keys {missing}")
        rec = cls(
            run=str(d["run"]),
            n=int(d["n"]),
            base=str(d["base"]),
            lengths=tuple(int(x) for x in d["lengths"]),
            g6=str(d["g6"]),
            sz4=int(d["sz4"]),
            dsq=int(d["dsq"]),
        )
        rec.check()
        return rec


def write_jsonl(fh: IO[str], records: Iterable[SweepRecord]) -> int:
    k = 0
    for r in records:
        fh.write(json.dumps(r.to_dict(), separators=(",", ":")) + "\n")
        k += 1
    return k


def read_jsonl(fh: IO[str]) -> Iterator[SweepRecord]:
    for lineno, line in enumerate(fh, 1):
        line = line.strip()
        if not line:
            continue
        try:
            d = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordError(f"line {lineno}: {exc}") from None
        yield SweepRecord.from_dict(d)


def _csv_row(r: SweepRecord) -> list:
    return [r.run, r.n, r.base, " ".join(map(str, r.lengths)), r.g6, r.sz4, r.dsq]


def write_csv(fh: IO[str], records: Iterable[SweepRecord], header: bool = True) -> int:
    w = csv.writer(fh, lineterminator="\n")
    if header:
        w.writerow(COLUMNS)
    k = 0
    for r in records:
        w.writerow(_csv_row(r))
        k += 1
    return k


def read_csv(fh: IO[str]) -> Iterator[SweepRecord]:
    for row in csv.DictReader(fh):
        row = dict(row)
        row["lengths"] = row["lengths"].split()
        yield SweepRecord.from_dict(row)


def existing_runs(fh: IO[str]) -> set[str]:
    """Run ids already present in a JSONL file."""
    runs = set()
    for line in fh:
        line = line.strip()
        if line:
            runs.add(json.loads(line)["run"])
    return runs
