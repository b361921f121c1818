"""Cube triples, three-consecutive chains and their triviality classes."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CubeChainError, UnverifiedChainError

OBSTRUCTED_RESIDUES = frozenset({4, 5})


class CubeTriple(NamedTuple):
    x1: int
    x2: int
    x3: int

    def canonical(self) -> "CubeTriple":
        """Entries sorted descending; used for deduplication and stable output."""
        return CubeTriple(*sorted(self, reverse=True))

    def __neg__(self) -> "CubeTriple":
        return CubeTriple(-self.x1, -self.x2, -self.x3)

    def text(self) -> str:
        return " + ".join(f"{c}^3" if c >= 0 else f"({c})^3" for c in self)


def sum_of_cubes(t) -> int:
    a, b, c = t
    return a**3 + b**3 + c**3


@dataclass(frozen=True)
class TripleChain:
    """Witness that n, n+1, n+2 are sums of the cubes in x, y, z."""

    n: int
    x: CubeTriple
    y: CubeTriple
    z: CubeTriple

    def __post_init__(self):
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            if not isinstance(value, CubeTriple):
                object.__setattr__(self, name, CubeTriple(*value))

    def triples(self) -> tuple[CubeTriple, CubeTriple, CubeTriple]:
        return (self.x, self.y, self.z)

    def entries(self) -> tuple[int, ...]:
        return (*self.x, *self.y, *self.z)

    def to_record(self) -> dict[str, str]:
        # decimal strings: values routinely exceed 64 bits
        rec = {"n": str(self.n)}
        for letter, triple in zip("xyz", self.triples()):
            for i, c in enumerate(triple, 1):
                rec[f"{letter}{i}"] = str(c)
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "TripleChain":
        try:
            n = int(rec["n"])
            parts = [CubeTriple(*(int(rec[f"{l}{i}"]) for i in (1, 2, 3))) for l in "xyz"]
        except (KeyError, TypeError, ValueError) as exc:
            raise CubeChainError(f"malformed chain record: {exc}") from exc
        return cls(n, *parts)

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_json(cls, text: str) -> "TripleChain":
        try:
            return cls.from_record(json.loads(text))
        except json.JSONDecodeError as exc:
            raise CubeChainError(f"chain is not valid JSON: {exc}") from exc

    def text(self) -> str:
        return "\n".join(
            f"{self.n + k} = {triple.text()}" for k, triple in enumerate(self.triples())
        )


def verify_chain(c: TripleChain) -> bool:
    return (
        sum_of_cubes(c.x) == c.n
        and sum_of_cubes(c.y) == c.n + 1
        and sum_of_cubes(c.z) == c.n + 2
    )


def is_trivial_difference(minuend, subtrahend) -> bool:
    """Whether ``sum_of_cubes(minuend) - sum_of_cubes(subtrahend) = 1`` holds trivially.

    Trivial means: among the minuend entries and the negated subtrahend
    entries, one entry is 0, another is 1, and the other four split into two
    pairs that each sum to 0.  All placements are tried exhaustively.
    """
    six = [*minuend, *(-s for s in subtrahend)]
    for i in range(6):
        if six[i] != 0:
            continue
        for j in range(6):
            if j == i or six[j] != 1:
                continue
            a, b, c, d = (six[k] for k in range(6) if k not in (i, j))
            if (a + b == 0 and c + d == 0) or (a + c == 0 and b + d == 0) or (a + d == 0 and b + c == 0):
                return True
    return False


class ChainTag(str, enum.Enum):
    TRIVIAL = "Trivial"
    SEMI_TRIVIAL = "SemiTrivial"
    NONTRIVIAL = "Nontrivial"


@dataclass(frozen=True)
class ChainClass:
    tag: ChainTag
    first_diff_trivial: bool
    second_diff_trivial: bool

    @classmethod
    def from_flags(cls, first: bool, second: bool) -> "ChainClass":
        if first and second:
            tag = ChainTag.TRIVIAL
        elif first or second:
            tag = ChainTag.SEMI_TRIVIAL
        else:
            tag = ChainTag.NONTRIVIAL
        return cls(tag, first, second)


def classify_chain(c: TripleChain) -> ChainClass:
    if not verify_chain(c):
        raise UnverifiedChainError(f"chain starting at {c.n} does not verify")
    return ChainClass.from_flags(
        is_trivial_difference(c.y, c.x),
        is_trivial_difference(c.z, c.y),
    )


def congruence_class(n: int) -> tuple[int, bool]:
    """Residue of n mod 9 and whether it rules out any three-cube representation."""
    r = n % 9
    return r, r in OBSTRUCTED_RESIDUES


def has_distinct_entries(c: TripleChain) -> bool:
    return len(set(c.entries())) == 9


def same_up_to_order(a: TripleChain, b: TripleChain) -> bool:
    """Equal chains modulo reordering inside each triple."""
    return a.n == b.n and all(
        sorted(p) == sorted(q) for p, q in zip(a.triples(), b.triples())
    )
