"""Families obtained by forcing z3 = x3.

With z3 = x3 the two outer sums reduce to ``z1^3 + z2^3 - x1^3 - x2^3 = 2``,
and the middle sum to

    y1^3 + y2^3 + y3^3 - x3^3 = x1^3 + x2^3 + 1.

The left side is made linear in a fresh parameter ``m`` by one of two
substitutions, after which ``m`` is read off by exact division.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping

from .errors import CertificationError, DegenerateError, NotDivisibleError, PreconditionError
from .families import FamilyDescriptor, certify_family
from .polyring import Polynomial, PolyLike, variables


@dataclass(frozen=True)
class TwoCubePair:
    """Polynomials with z1^3 + z2^3 - x1^3 - x2^3 = 2."""

    x1: Polynomial
    x2: Polynomial
    z1: Polynomial
    z2: Polynomial

    def residual(self) -> Polynomial:
        return self.z1**3 + self.z2**3 - self.x1**3 - self.x2**3

    def certify(self) -> bool:
        return self.residual() == 2

    def subs(self, bindings: Mapping[str, PolyLike]) -> "TwoCubePair":
        return TwoCubePair(*(p.subs(bindings) for p in (self.x1, self.x2, self.z1, self.z2)))

    def at(self, point: Mapping[str, int]) -> tuple[int, int, int, int]:
        return tuple(p.eval(point) for p in (self.x1, self.x2, self.z1, self.z2))

    @property
    def variables(self) -> tuple[str, ...]:
        names = set()
        for p in (self.x1, self.x2, self.z1, self.z2):
            names.update(p.variables)
        return tuple(sorted(names))


@dataclass(frozen=True)
class UVQuad:
    u: int
    v1: int
    v2: int
    v3: int


def eqzxred_sol1() -> TwoCubePair:
    """One-parameter pair in t, from the four-cube identity for 2."""
    (t,) = variables("t")
    pair = TwoCubePair(-(t**2), t**2 - t - 1, t**2, -(t**2) - t + 1)
    if not pair.certify():
        raise CertificationError("first two-cube pair does not certify")
    return pair


def eqzxred_sol2() -> TwoCubePair:
    """Three-parameter pair in g, h, t."""
    g, h, t = variables("g", "h", "t")
    s = g**3 + h**3
    pair = TwoCubePair(
        6 * g * t**2 * s,
        6 * t**3 * s**2 - 1,
        6 * t**3 * s**2 + 1,
        -6 * h * t**2 * s,
    )
    if not pair.certify():
        raise CertificationError("second two-cube pair does not certify")
    return pair


def simple_substitution() -> tuple[Polynomial, Polynomial, Polynomial, Polynomial]:
    """(x3, y1, y2, y3) in m, p, q."""
    m, p, q = variables("m", "p", "q")
    return m + p - q, m + p + q, -m + p - q, m - p - q


def certify_simple_substitution() -> Polynomial:
    x3, y1, y2, y3 = simple_substitution()
    lhs = y1**3 + y2**3 + y3**3 - x3**3
    m, p, q = variables("m", "p", "q")
    if lhs != 24 * m * p * q:
        raise CertificationError(f"simple substitution reduced to {lhs}, not 24*m*p*q")
    return lhs


def _assemble(
    fid: str,
    pair: TwoCubePair,
    x3: Polynomial,
    y: tuple[Polynomial, Polynomial, Polynomial],
    provenance: str,
) -> FamilyDescriptor:
    coords = (pair.x1, pair.x2, x3, *y, pair.z1, pair.z2, x3)
    names = set()
    for c in coords:
        names.update(c.variables)
    n_poly = pair.x1**3 + pair.x2**3 + x3**3
    family = FamilyDescriptor(
        id=fid,
        param_names=tuple(sorted(names)),
        coords=coords,
        n_poly=n_poly,
        provenance=provenance,
        generic_class="Nontrivial",
    )
    if not certify_family(family):
        raise CertificationError(f"derived family {fid} does not certify")
    return family


def derive_family_simple() -> FamilyDescriptor:
    """Three-parameter family in p, q, r from the first pair and 24mpq.

    Sets t = -24pqr and m = 3r(331776 p^4 q^4 r^4 - 960 p^2 q^2 r^2 + 1),
    which solves 24mpq = x1^3 + x2^3 + 1 = -t(3t^4 - 5t^2 + 3).
    """
    p, q, r = variables("p", "q", "r")
    m = 3 * r * (331776 * p**4 * q**4 * r**4 - 960 * p**2 * q**2 * r**2 + 1)
    t = -24 * p * q * r
    pair = eqzxred_sol1()
    rhs = pair.x1**3 + pair.x2**3 + 1
    (tv,) = variables("t")
    if rhs != -tv * (3 * tv**4 - 5 * tv**2 + 3):
        raise CertificationError("x1^3 + x2^3 + 1 is not -t(3t^4 - 5t^2 + 3)")
    if 24 * m * p * q != rhs.subs({"t": t}):
        raise CertificationError("chosen m does not solve the reduced equation")
    pair = pair.subs({"t": t})
    x3, y1, y2, y3 = (c.subs({"m": m}) for c in simple_substitution())
    return _assemble("M1_PQR", pair, x3, (y1, y2, y3), "simple substitution, t = -24pqr")


def check_uvquad(q: UVQuad) -> bool:
    return q.u**3 == q.v1**3 + q.v2**3 + q.v3**3


def general_substitution(q: UVQuad, p: int, qq: int):
    """(x3, y1, y2, y3) = (u m + p, v1 m + p, v2 m + q, v3 m - q)."""
    (m,) = variables("m")
    return q.u * m + p, q.v1 * m + p, q.v2 * m + qq, q.v3 * m - qq


def reduce_general_substitution(q: UVQuad) -> tuple[int, int, Polynomial]:
    """Primitive (p, q) killing the m^2 term, and the resulting m coefficient.

    The pair is (v2^2 - v3^2, u^2 - v1^2) divided by its gcd, signed so that
    p > 0 (or q > 0 when p = 0).
    """
    if not check_uvquad(q):
        raise PreconditionError(f"{q} does not satisfy u^3 = v1^3 + v2^3 + v3^3")
    p_raw = q.v2**2 - q.v3**2
    q_raw = q.u**2 - q.v1**2
    g = gcd(p_raw, q_raw)
    if g == 0:
        raise DegenerateError(f"{q}: both p and q vanish, m coefficient is zero")
    p_, q_ = p_raw // g, q_raw // g
    if p_ < 0 or (p_ == 0 and q_ < 0):
        p_, q_ = -p_, -q_
    x3, y1, y2, y3 = general_substitution(q, p_, q_)
    lhs = y1**3 + y2**3 + y3**3 - x3**3
    coeffs = lhs.coefficients("m")
    if set(coeffs) - {1}:
        # structural: everything except the linear term must cancel
        raise CertificationError(f"{q}: substitution is not linear in m: {lhs}")
    m_coeff = coeffs.get(1, Polynomial.const(0))
    if not m_coeff:
        raise DegenerateError(f"{q}: m coefficient vanishes identically")
    return p_, q_, m_coeff


def derive_family_general(
    q: UVQuad,
    pair: TwoCubePair,
    t_binding: PolyLike,
    *,
    t_var: str = "t",
    fid: str = "M1_GEN",
) -> FamilyDescriptor:
    """Family from a cube quadruple, a two-cube pair and a scaling of t.

    ``t_binding`` (e.g. ``13*r``) must make x1^3 + x2^3 + 1 exactly divisible
    by the m coefficient; otherwise NotDivisibleError is raised.
    """
    if not pair.certify():
        raise CertificationError(f"pair does not satisfy z1^3 + z2^3 - x1^3 - x2^3 = 2: {pair}")
    p_, q_, m_coeff = reduce_general_substitution(q)
    pair = pair.subs({t_var: t_binding})
    rhs = pair.x1**3 + pair.x2**3 + 1
    try:
        m = rhs.divexact(m_coeff)
    except NotDivisibleError as exc:
        raise NotDivisibleError(
            f"x1^3 + x2^3 + 1 is not divisible by the m coefficient {m_coeff}"
        ) from exc
    x3, y1, y2, y3 = (c.subs({"m": m}) for c in general_substitution(q, p_, q_))
    return _assemble(
        fid, pair, x3, (y1, y2, y3),
        f"general substitution with (u, v1, v2, v3) = ({q.u}, {q.v1}, {q.v2}, {q.v3}), "
        f"(p, q) = ({p_}, {q_})",
    )


def solve_m_general(q: UVQuad, pair: TwoCubePair, t_binding: PolyLike, t_var: str = "t") -> Polynomial:
    """The m polynomial alone (same divisibility rule as derive_family_general)."""
    _, _, m_coeff = reduce_general_substitution(q)
    pair = pair.subs({t_var: t_binding})
    return (pair.x1**3 + pair.x2**3 + 1).divexact(m_coeff)
