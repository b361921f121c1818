"""Catalog of closed-form parametric chain families.

A family is data: nine coordinate polynomials ``x1..z3`` and the polynomial
for ``n``.  Certification is a uniform symbolic check, so families derived at
runtime by :mod:`cubechains.method1` or :mod:`cubechains.method2` can be
registered next to the built-in ones.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .cubes import CubeTriple, TripleChain, verify_chain
from .errors import CubeChainError
from .polyring import Polynomial, parse

COORD_NAMES = ("x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3")


@dataclass(frozen=True)
class FamilyDescriptor:
    id: str
    param_names: tuple[str, ...]
    coords: tuple[Polynomial, ...]
    n_poly: Polynomial
    provenance: str = ""
    generic_class: str = ""  # informational; classification is per instance

    def __post_init__(self):
        if len(self.coords) != 9:
            raise ValueError(f"family {self.id} needs 9 coordinates, got {len(self.coords)}")
        extra = set().union(*(p.variables for p in (*self.coords, self.n_poly))) - set(self.param_names)
        if extra:
            raise ValueError(f"family {self.id} uses undeclared parameters {sorted(extra)}")

    @property
    def x(self) -> tuple[Polynomial, ...]:
        return self.coords[0:3]

    @property
    def y(self) -> tuple[Polynomial, ...]:
        return self.coords[3:6]

    @property
    def z(self) -> tuple[Polynomial, ...]:
        return self.coords[6:9]

    def coord(self, name: str) -> Polynomial:
        return self.coords[COORD_NAMES.index(name)]

    def with_coord(self, name: str, poly: Polynomial) -> "FamilyDescriptor":
        coords = list(self.coords)
        coords[COORD_NAMES.index(name)] = poly
        return replace(self, coords=tuple(coords))

    def relabel(self, mapping: Mapping[str, str], new_id: str | None = None) -> "FamilyDescriptor":
        """Rename parameters, e.g. ``{"s": "v"}``."""
        binds = {old: Polynomial.var(new) for old, new in mapping.items()}
        return FamilyDescriptor(
            id=new_id or self.id,
            param_names=tuple(mapping.get(p, p) for p in self.param_names),
            coords=tuple(c.subs(binds) for c in self.coords),
            n_poly=self.n_poly.subs(binds),
            provenance=self.provenance,
            generic_class=self.generic_class,
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": list(self.param_names),
            "coords": {name: str(p) for name, p in zip(COORD_NAMES, self.coords)},
            "n_poly": str(self.n_poly),
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "FamilyDescriptor":
        try:
            return cls(
                id=data["id"],
                param_names=tuple(data["params"]),
                coords=tuple(parse(data["coords"][name]) for name in COORD_NAMES),
                n_poly=parse(data["n_poly"]),
                provenance=data.get("provenance", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CubeChainError(f"malformed family document: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _family(fid, params, coords, n_poly, provenance, generic_class) -> FamilyDescriptor:
    return FamilyDescriptor(
        id=fid,
        param_names=tuple(params),
        coords=tuple(parse(c) for c in coords),
        n_poly=parse(n_poly),
        provenance=provenance,
        generic_class=generic_class,
    )


def _build_catalog() -> tuple[FamilyDescriptor, ...]:
    big_m = "995328*p^4*q^4*r^5 - 2880*p^2*q^2*r^3"
    x3_pqr = f"{big_m} + p - q + 3*r"
    x3_r = "10364749588252332*r^9 + 61893800514*r^6 + 74529*r^3 + 7"
    return (
        _family(
            "TRIV_A", ["a"],
            ["a", "0", "0", "a", "1", "0", "a", "1", "1"],
            "a^3",
            "trivial chain a^3, a^3 + 1, a^3 + 2",
            "Trivial",
        ),
        _family(
            "TRIV_AB", ["a", "b"],
            ["a", "b", "-1", "a", "b", "0", "a", "b", "1"],
            "a^3 + b^3 - 1",
            "trivial chain a^3 + b^3 + (-1, 0, 1)^3",
            "Trivial",
        ),
        _family(
            "SEMI_T_V", ["t", "v"],
            [
                "t^2 + t - 1", "v", "-v",
                "0", "1", "t^2 + t - 1",
                "t^2", "t^2", "-t^2 + t + 1",
            ],
            "(t^2 + t - 1)^3",
            "semi-trivial chain from the four-cube identity for 2, n = (t^2 + t - 1)^3",
            "SemiTrivial",
        ),
        _family(
            "M1_PQR", ["p", "q", "r"],
            [
                "-576*p^2*q^2*r^2",
                "576*p^2*q^2*r^2 + 24*p*q*r - 1",
                x3_pqr,
                f"{big_m} + p + q + 3*r",
                "-995328*p^4*q^4*r^5 + 2880*p^2*q^2*r^3 + p - q - 3*r",
                f"{big_m} - p - q + 3*r",
                "576*p^2*q^2*r^2",
                "-576*p^2*q^2*r^2 + 24*p*q*r + 1",
                x3_pqr,
            ],
            f"(-576*p^2*q^2*r^2)^3 + (576*p^2*q^2*r^2 + 24*p*q*r - 1)^3 + ({x3_pqr})^3",
            "auxiliary condition z3 = x3 with the 24mpq substitution, t = -24pqr",
            "Nontrivial",
        ),
        _family(
            "M1_R", ["r"],
            [
                "14196*r^2",
                "645918*r^3 - 1",
                x3_r,
                "6909833058834888*r^9 + 41262533676*r^6 + 49686*r^3 + 7",
                "1151638843139148*r^9 + 6877088946*r^6 + 8281*r^3 - 5",
                "9213110745113184*r^9 + 55016711568*r^6 + 66248*r^3 + 5",
                "645918*r^3 + 1",
                "7098*r^2",
                x3_r,
            ],
            f"(14196*r^2)^3 + (645918*r^3 - 1)^3 + ({x3_r})^3",
            "auxiliary condition z3 = x3 with (u, v1, v2, v3) = (9, 6, 1, 8), (g, h) = (2, -1), t = 13r",
            "Nontrivial",
        ),
        _family(
            "M2_LIN1", ["v"],
            [
                "-66*v + 5", "68*v - 5", "-2*v - 1",
                "-22*v + 2", "34*v - 2", "-12*v",
                "33*v - 2", "-17*v + 2", "-16*v + 1",
            ],
            "26928*v^3 - 4032*v^2 + 144*v - 1",
            "bilinear ansatz with seed (5, 2, -2, 1), u = 1 - 17v",
            "Nontrivial",
        ),
        _family(
            "M2_LIN2", ["v"],
            [
                "-97*v - 4", "145*v + 4", "-48*v - 1",
                "194*v + 6", "-174*v - 6", "-20*v",
                "582*v + 19", "-580*v - 19", "-2*v + 1",
            ],
            "2025360*v^3 + 132480*v^2 + 2160*v - 1",
            "bilinear ansatz with seed (-4, 6, 19, 1)",
            "Nontrivial",
        ),
        _family(
            "M2_QUAD", ["m"],
            [
                "-147*m^2 - 42*m - 1", "294*m^2 + 77*m + 3", "-147*m^2 - 35*m - 3",
                "-147*m^2 - 56*m - 4", "294*m^2 + 77*m + 4", "-147*m^2 - 21*m",
                "-147*m^2 - 14*m + 1", "294*m^2 + 77*m + 5", "-147*m^2 - 63*m - 5",
            ],
            "19059138*m^6 + 14975037*m^5 + 4429845*m^4 + 617400*m^3 + 40572*m^2 + 1008*m - 1",
            "quadratic family, verified by direct computation",
            "Nontrivial",
        ),
    )


_CATALOG = _build_catalog()
_registered: list[FamilyDescriptor] = []
_lock = threading.Lock()


def catalog() -> list[FamilyDescriptor]:
    """The eight built-in families."""
    return list(_CATALOG)


def register(f: FamilyDescriptor) -> None:
    """Add a certified family to the runtime registry."""
    if not certify_family(f):
        raise CubeChainError(f"refusing to register uncertified family {f.id}")
    with _lock:
        if any(g.id == f.id for g in (*_CATALOG, *_registered)):
            raise CubeChainError(f"family id {f.id} already in use")
        _registered.append(f)


def registry() -> list[FamilyDescriptor]:
    """Snapshot of built-in plus registered families."""
    with _lock:
        return [*_CATALOG, *_registered]


def get_family(fid: str) -> FamilyDescriptor:
    for f in registry():
        if f.id == fid:
            return f
    raise CubeChainError(f"unknown family {fid!r}")


def _cube_sum(polys: Iterable[Polynomial]) -> Polynomial:
    total = Polynomial.const(0)
    for p in polys:
        total = total + p**3
    return total


def certify_family(f: FamilyDescriptor) -> bool:
    """Symbolic check of both unit differences and of the n-polynomial."""
    sx, sy, sz = _cube_sum(f.x), _cube_sum(f.y), _cube_sum(f.z)
    return sy - sx == 1 and sz - sy == 1 and f.n_poly == sx


def instantiate(f: FamilyDescriptor, params: Mapping[str, int]) -> TripleChain:
    if set(params) != set(f.param_names):
        raise CubeChainError(
            f"family {f.id} takes parameters {list(f.param_names)}, got {sorted(params)}"
        )
    vals = [c.eval(params) for c in f.coords]
    return TripleChain(
        f.n_poly.eval(params),
        CubeTriple(*vals[0:3]),
        CubeTriple(*vals[3:6]),
        CubeTriple(*vals[6:9]),
    )


def positivity_domain(
    f: FamilyDescriptor, box: Mapping[str, Sequence[int]]
) -> list[dict[str, int]]:
    """Parameter points of ``box`` at which every coordinate is positive.

    ``box`` maps each parameter to an iterable of values (e.g. a range).
    """
    names = list(f.param_names)
    out = []
    for values in itertools.product(*(list(box[n]) for n in names)):
        point = dict(zip(names, values))
        chain = instantiate(f, point)
        if all(c > 0 for c in chain.entries()):
            out.append(point)
    return out

