"""Brute-force representation search and runs of consecutive representable integers.

``find_representations`` is the exact oracle for a single n.  ``scan_runs``
marks a whole interval by joining a sorted table of two-cube sums with the
single cubes, block by block, and reports maximal runs of represented
integers.  ``build_five_run`` and ``build_seven_run`` produce runs directly
from the two-cube identities without any search.
"""

from __future__ import annotations

import enum
import json
import os
from bisect import bisect_left, bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping

from .cubes import CubeTriple, congruence_class, sum_of_cubes
from .errors import PreconditionError
from .method1 import TwoCubePair

BUDGET_ENV = "CUBECHAINS_TABLE_BUDGET"
DEFAULT_TABLE_BUDGET = 2_000_000  # two-cube table entries held at once
UNITS = frozenset({-1, 0, 1})


class Status(str, enum.Enum):
    FOUND = "Found"
    OBSTRUCTED = "Obstructed"
    UNKNOWN = "UnknownWithinHeight"


@dataclass(frozen=True)
class RepWitness:
    n: int
    triple: CubeTriple | None
    status: Status

    def to_dict(self) -> dict:
        return {
            "n": str(self.n),
            "triple": None if self.triple is None else [str(c) for c in self.triple],
            "status": self.status.value,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "RepWitness":
        triple = d.get("triple")
        return cls(
            int(d["n"]),
            None if triple is None else CubeTriple(*(int(c) for c in triple)),
            Status(d["status"]),
        )


@dataclass(frozen=True)
class RunReport:
    start: int
    length: int
    witnesses: tuple[RepWitness, ...]
    exclude_units: bool = False

    def to_dict(self) -> dict:
        return {
            "start": str(self.start),
            "length": self.length,
            "exclude_units": self.exclude_units,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> "RunReport":
        return cls(
            int(d["start"]),
            int(d["length"]),
            tuple(RepWitness.from_dict(w) for w in d["witnesses"]),
            bool(d.get("exclude_units", False)),
        )

    def text(self) -> str:
        lines = [f"run of {self.length} starting at {self.start}"]
        lines += [f"  {w.n} = {w.triple.text()}" for w in self.witnesses]
        return "\n".join(lines)

    def is_sound(self) -> bool:
        """Every witness is Found, consecutive and sums correctly."""
        return len(self.witnesses) == self.length and all(
            w.status is Status.FOUND
            and w.n == self.start + i
            and sum_of_cubes(w.triple) == w.n
            and not (self.exclude_units and UNITS.intersection(w.triple))
            for i, w in enumerate(self.witnesses)
        )


def _coords(height: int, exclude_units: bool) -> list[int]:
    return [x for x in range(-height, height + 1) if not (exclude_units and x in UNITS)]


def find_representations(n: int, height: int, exclude_units: bool = False) -> list[CubeTriple]:
    """All representations of n with |x_i| <= height, each sorted descending.

    For each third cube, x1^3 + x2^3 = n - x3^3 is resolved by a two-pointer
    sweep over the sorted cubes.
    """
    if height < 1:
        raise PreconditionError("height must be >= 1")
    xs = _coords(height, exclude_units)
    cubes = [x**3 for x in xs]  # increasing with x
    found = set()
    for x3, c3 in zip(xs, cubes):
        target = n - c3
        i, j = 0, len(xs) - 1
        while i <= j:
            s = cubes[i] + cubes[j]
            if s < target:
                i += 1
            elif s > target:
                j -= 1
            else:
                found.add(CubeTriple(xs[i], xs[j], x3).canonical())
                i += 1
                j -= 1
    return sorted(found, reverse=True)


def witness_key(t: CubeTriple) -> tuple:
    """Preference among representations: smallest height, then smallest
    sum of absolute values, then largest canonical triple."""
    return (max(abs(c) for c in t), sum(abs(c) for c in t), tuple(-c for c in t))


def _table_budget() -> int:
    try:
        return max(1, int(os.environ.get(BUDGET_ENV, DEFAULT_TABLE_BUDGET)))
    except ValueError:
        return DEFAULT_TABLE_BUDGET


def _scan_block(args) -> list[tuple[int, CubeTriple | None]]:
    """Best witness (or None) for each n in [lo, hi]."""
    lo, hi, height, exclude_units, budget = args
    xs = _coords(height, exclude_units)
    best: dict[int, CubeTriple] = {}
    # rows of the two-cube table are processed a slab at a time to honour the budget
    rows_per_slab = max(1, budget // max(1, len(xs)))
    for start in range(0, len(xs), rows_per_slab):
        table = []
        for a in xs[start:start + rows_per_slab]:
            ca = a**3
            for b in xs:
                if b > a:
                    break
                table.append((ca + b**3, a, b))
        table.sort()
        sums = [row[0] for row in table]
        for c in xs:
            cc = c**3
            i = bisect_left(sums, lo - cc)
            j = bisect_right(sums, hi - cc)
            for s, a, b in table[i:j]:
                n = s + cc
                cand = CubeTriple(a, b, c).canonical()
                old = best.get(n)
                if old is None or witness_key(cand) < witness_key(old):
                    best[n] = cand
    return [(n, best.get(n)) for n in range(lo, hi + 1)]


def mark_range(
    lo: int, hi: int, height: int, exclude_units: bool = False, jobs: int = 1,
    block: int | None = None,
) -> list[RepWitness]:
    """Status and witness for every n in [lo, hi]."""
    if lo > hi:
        raise PreconditionError("empty range: lo > hi")
    if height < 1:
        raise PreconditionError("height must be >= 1")
    budget = _table_budget()
    span = hi - lo + 1
    if block is None:
        block = max(1, -(-span // max(1, jobs)))
    tasks = [
        (b, min(hi, b + block - 1), height, exclude_units, budget)
        for b in range(lo, hi + 1, block)
    ]
    if jobs <= 1 or len(tasks) == 1:
        parts = [_scan_block(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_block, tasks))
    out = []
    for part in parts:
        for n, triple in part:
            if triple is not None:
                out.append(RepWitness(n, triple, Status.FOUND))
            elif congruence_class(n)[1]:
                out.append(RepWitness(n, None, Status.OBSTRUCTED))
            else:
                out.append(RepWitness(n, None, Status.UNKNOWN))
    return out


def runs_from_witnesses(witnesses, min_len: int, exclude_units: bool = False) -> list[RunReport]:
    runs = []
    current: list[RepWitness] = []
    for w in [*witnesses, None]:
        if w is not None and w.status is Status.FOUND and (not current or w.n == current[-1].n + 1):
            current.append(w)
            continue
        if len(current) >= min_len:
            runs.append(RunReport(current[0].n, len(current), tuple(current), exclude_units))
        current = [w] if w is not None and w.status is Status.FOUND else []
    return runs


def scan_runs(
    lo: int, hi: int, height: int, min_len: int = 1, exclude_units: bool = False,
    jobs: int = 1, block: int | None = None,
) -> list[RunReport]:
    """Maximal runs of length >= min_len in [lo, hi] represented at ``height``."""
    witnesses = mark_range(lo, hi, height, exclude_units, jobs, block)
    return runs_from_witnesses(witnesses, min_len, exclude_units)


def build_five_run(pair: TwoCubePair, point: Mapping[str, int]) -> RunReport:
    """n = x1^3 + x2^3 - 1 and the four integers after it."""
    x1, x2, z1, z2 = pair.at(point)
    if z1**3 + z2**3 - x1**3 - x2**3 != 2:
        raise PreconditionError(f"pair does not satisfy the two-cube relation at {dict(point)}")
    n = x1**3 + x2**3 - 1
    triples = [
        CubeTriple(x1, x2, -1), CubeTriple(x1, x2, 0), CubeTriple(x1, x2, 1),
        CubeTriple(z1, z2, 0), CubeTriple(z1, z2, 1),
    ]
    return _run_from_triples(n, triples)


def build_seven_run(x1: int, x2: int, x3: int) -> RunReport:
    """Seven integers from x3^3 - 2, given x1^3 + x2^3 - x3^3 = 3.

    n .. n+4 use x3 with cubes of -1, 0, 1; n+5 and n+6 use x1, x2 with 0, 1.
    """
    if x1**3 + x2**3 - x3**3 != 3:
        raise PreconditionError(f"({x1}, {x2}, {x3}) does not satisfy x1^3 + x2^3 - x3^3 = 3")
    n = x3**3 - 2
    triples = [
        CubeTriple(x3, -1, -1), CubeTriple(x3, -1, 0), CubeTriple(x3, 0, 0),
        CubeTriple(x3, 1, 0), CubeTriple(x3, 1, 1),
        CubeTriple(x1, x2, 0), CubeTriple(x1, x2, 1),
    ]
    return _run_from_triples(n, triples)


def _run_from_triples(n: int, triples: list[CubeTriple]) -> RunReport:
    witnesses = tuple(RepWitness(n + i, t, Status.FOUND) for i, t in enumerate(triples))
    run = RunReport(n, len(witnesses), witnesses)
    assert run.is_sound()
    return run
