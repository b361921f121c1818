"""Families from the homogeneous bilinear ansatz.

The right-hand sides 1 are replaced by t^3 and every unknown is taken linear
in (u, v) with integer coefficient vectors a = (a1..a4), b = (b1..b4)::

    x = (a1 u + b1 v, -a1 u - b4 v, -a4 u - b1 v)
    y = (a2 u + b2 v, -a2 u,        -b2 v)
    z = (a3 u + b3 v, -a3 u + b4 v,  a4 u - b3 v)
    t = a4 u + b4 v

b is fixed by closed formulas in a (up to a scalar k); what remains is a
quintic condition on a alone.  A seed a satisfying it, with gcd(a4, b4) = 1,
is dehomogenized by solving a4 u + b4 v = 1.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .errors import CertificationError, DegenerateError, NotCoprimeError, PreconditionError
from .families import FamilyDescriptor, certify_family
from .polyring import Polynomial, variables


class ASeed(NamedTuple):
    a1: int
    a2: int
    a3: int
    a4: int


@dataclass(frozen=True)
class BVector:
    b1: int
    b2: int
    b3: int
    b4: int
    k: Fraction  # b = k * raw formulas

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.b1, self.b2, self.b3, self.b4)


def conda_eval(a) -> int:
    a1, a2, a3, a4 = a
    d = a3**2 - a4**2
    return (
        d * a1**3
        - (a2**3 - a3**3 + a3 * a4**2) * a1**2
        - d * a4**2 * a1
        - (a3**2 - 2 * a4**2) * a2**3
        - a3**3 * a4**2
        + a3 * a4**4
    )


def conda_poly() -> Polynomial:
    """The seed condition as a polynomial in a1..a4."""
    return _conda_generic(*variables("a1", "a2", "a3", "a4"))


def _conda_generic(a1, a2, a3, a4):
    d = a3**2 - a4**2
    return (
        d * a1**3
        - (a2**3 - a3**3 + a3 * a4**2) * a1**2
        - d * a4**2 * a1
        - (a3**2 - 2 * a4**2) * a2**3
        - a3**3 * a4**2
        + a3 * a4**4
    )


def conda_parametric(p, q) -> ASeed:
    """Two-parameter solution of the seed condition (works on ints or polynomials)."""
    return ASeed(-(p**2) - p * q + q**2, 2 * p * q, p**2 - p * q - q**2, p**2 + p * q + q**2)


def raw_b(a) -> tuple:
    """The b formulas at k = 1 (ints or polynomials)."""
    a1, a2, a3, a4 = a
    d = a3**2 - a4**2
    b1 = d * (a1**3 + a1**2 * a4 - a1 * a4**2 + a2**3 - a4**3)
    b2 = 2 * a2 * (a1**2 - a4**2) * d
    b3 = -(
        d * a1**3
        - (2 * a2**3 - a3**2 * a4 + a4**3) * a1**2
        - a4**2 * d * a1
        - a2**3 * a3**2
        + 3 * a2**3 * a4**2
        - a3**2 * a4**3
        + a4**5
    )
    b4 = d * (a1**3 + a1**2 * a4 - a1 * a4**2 - a2**3 - a4**3)
    return b1, b2, b3, b4


def derive_b(a) -> BVector:
    """Primitive b-vector for the seed, first nonzero entry positive."""
    a = ASeed(*a)
    if a.a2 == 0:
        raise PreconditionError(f"seed {tuple(a)} has a2 = 0, which forces b2 = 0")
    raw = raw_b(a)
    g = 0
    for c in raw:
        g = gcd(g, c)
    if g == 0:
        raise DegenerateError(f"seed {tuple(a)} gives the zero b-vector")
    lead = next(c for c in raw if c)
    if lead < 0:
        g = -g
    return BVector(*(c // g for c in raw), k=Fraction(1, g))


@dataclass(frozen=True)
class HomFamily:
    seed: ASeed
    b: BVector
    coords: tuple[Polynomial, ...]  # nine forms in u, v
    t_form: Polynomial

    def residuals(self) -> tuple[Polynomial, Polynomial]:
        cube = lambda ps: sum((p**3 for p in ps), Polynomial.const(0))
        sx, sy, sz = cube(self.coords[0:3]), cube(self.coords[3:6]), cube(self.coords[6:9])
        t3 = self.t_form**3
        return sy - sx - t3, sz - sy - t3


def hom_coords(a, b, u, v):
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    coords = (
        a1 * u + b1 * v, -a1 * u - b4 * v, -a4 * u - b1 * v,
        a2 * u + b2 * v, -a2 * u, -b2 * v,
        a3 * u + b3 * v, -a3 * u + b4 * v, a4 * u - b3 * v,
    )
    return coords, a4 * u + b4 * v


def build_hom(a, b: BVector) -> HomFamily:
    """Bilinear family in (u, v); both cube differences must equal t^3 identically."""
    u, v = variables("u", "v")
    coords, t = hom_coords(tuple(a), b.as_tuple(), u, v)
    fam = HomFamily(ASeed(*a), b, tuple(coords), t)
    r1, r2 = fam.residuals()
    if r1 or r2:
        raise CertificationError(
            f"seed {tuple(a)} with b = {b.as_tuple()} leaves residuals {r1} and {r2}"
        )
    return fam


def base_point(a4: int, b4: int) -> tuple[int, int]:
    """(u0, v0) with a4 u0 + b4 v0 = 1, v0 minimal nonnegative when a4 != 0."""
    if gcd(a4, b4) != 1:
        raise NotCoprimeError(f"gcd({a4}, {b4}) = {gcd(a4, b4)}")
    if a4 == 0:
        return 0, b4  # b4 = +-1
    m = abs(a4)
    v0 = pow(b4, -1, m) if m > 1 else 0
    u0, rem = divmod(1 - b4 * v0, a4)
    assert rem == 0
    return u0, v0


def dehomogenize(f: HomFamily, param: str = "s", fid: str | None = None) -> FamilyDescriptor:
    """One-parameter family on the line a4 u + b4 v = 1.

    Uses u = u0 - b4 s, v = v0 + a4 s, so for a4 = 1 the parameter is v itself.
    """
    a4, b4 = f.seed.a4, f.b.b4
    u0, v0 = base_point(a4, b4)
    (s,) = variables(param)
    binds = {"u": u0 - b4 * s, "v": v0 + a4 * s}
    coords = tuple(c.subs(binds) for c in f.coords)
    n_poly = sum((c**3 for c in coords[0:3]), Polynomial.const(0))
    family = FamilyDescriptor(
        id=fid or "M2_" + "_".join(str(c) for c in f.seed),
        param_names=(param,),
        coords=coords,
        n_poly=n_poly,
        provenance=f"bilinear ansatz with seed {tuple(f.seed)}, b = {f.b.as_tuple()}, k = {f.b.k}",
        generic_class="Nontrivial",
    )
    if f.t_form.subs(binds) != 1 or not certify_family(family):
        raise CertificationError(f"dehomogenized family for seed {tuple(f.seed)} does not certify")
    return family


def derive_family(a, param: str = "s") -> FamilyDescriptor:
    """Seed to certified one-parameter family."""
    return dehomogenize(build_hom(a, derive_b(a)), param)


# -- seed search --------------------------------------------------------------


def _icbrt(n: int) -> int | None:
    """Exact integer cube root of n, or None."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    m = abs(n)
    r = round(m ** (1 / 3))
    # float guess may be off by a few for big m
    while r**3 > m:
        r -= 1
    while (r + 1) ** 3 <= m:
        r += 1
    return sign * r if r**3 == m else None


def _seed_passes(a: ASeed) -> bool:
    if a.a2 == 0:
        return False
    raw = raw_b(a)
    if raw[1] == 0:
        return False
    b = derive_b(a)
    return gcd(a.a4, b.b4) == 1


def _search_slice(args: tuple[int, tuple[int, ...]]) -> list[ASeed]:
    # the condition is cubic in a2 alone:
    #   a2^3 (a1^2 + a3^2 - 2 a4^2) = R(a1, a3, a4)
    # so for fixed (a1, a3, a4) at most one a2 works unless both sides vanish
    bound, a1_values = args
    found = []
    for a1 in a1_values:
        r1 = bound - abs(a1)
        for a3 in range(-r1, r1 + 1):
            r3 = r1 - abs(a3)
            for a4 in range(-r3, r3 + 1):
                r4 = r3 - abs(a4)
                if r4 < 1:
                    continue
                d = a3**2 - a4**2
                rest = (
                    d * a1**3 + (a3**3 - a3 * a4**2) * a1**2 - d * a4**2 * a1
                    - a3**3 * a4**2 + a3 * a4**4
                )
                lead = a1**2 + a3**2 - 2 * a4**2
                if lead == 0:
                    if rest != 0:
                        continue
                    candidates = [a2 for a2 in range(-r4, r4 + 1) if a2]
                else:
                    q, rem = divmod(rest, lead)
                    if rem:
                        continue
                    a2 = _icbrt(q)
                    if not a2 or abs(a2) > r4:
                        continue
                    candidates = [a2]
                for a2 in candidates:
                    seed = ASeed(a1, a2, a3, a4)
                    if _seed_passes(seed):
                        found.append(seed)
    return found


def search_seeds_raw(bound: int, jobs: int = 1) -> list[ASeed]:
    """All seeds in the L1 ball of radius ``bound`` passing the filters, sorted."""
    if bound < 1:
        raise PreconditionError("bound must be >= 1")
    a1_all = list(range(-bound, bound + 1))
    if jobs <= 1:
        seeds = _search_slice((bound, tuple(a1_all)))
    else:
        chunks = [tuple(a1_all[i::jobs]) for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            seeds = [s for part in pool.map(_search_slice, [(bound, c) for c in chunks]) for s in part]
    return sorted(seeds)


# -- equivalence of one-parameter families ------------------------------------


def _shift(f: FamilyDescriptor, sign: int, c: int) -> tuple[Polynomial, ...]:
    (s,) = f.param_names
    binds = {s: sign * Polynomial.var("s") + c}
    return tuple(p.subs(binds) for p in (*f.coords, f.n_poly))


def _poly_key(p: Polynomial) -> tuple:
    return tuple(sorted(p.terms.items()))


def family_key(f: FamilyDescriptor) -> tuple:
    """Canonical key under s -> +-s + c and reordering within each triple.

    The shift c is pinned by the n-polynomial (or the sum of squared
    coordinates when n is constant): after the shift its second coefficient
    lies in [0, d*|lead|).
    """
    if len(f.param_names) != 1:
        raise ValueError("family_key needs a one-parameter family")
    (name,) = f.param_names
    sig = f.n_poly
    if sig.degree(name) < 1:
        sig = sum((c**2 for c in f.coords), Polynomial.const(0))
    d = sig.degree(name)
    keys = []
    for sign in (1, -1):
        c = 0
        if d >= 1:
            flipped = sig.subs({name: sign * Polynomial.var(name)})
            lead = flipped.coefficient(name, d).as_constant()
            second = flipped.coefficient(name, d - 1).as_constant()
            # s -> s + c adds d*lead*c to the second coefficient
            step = d * abs(lead)
            c = -(second // step) if lead > 0 else second // step
        shifted = _shift(f, sign, sign * c)
        triples = tuple(
            tuple(sorted(_poly_key(p) for p in shifted[i:i + 3])) for i in (0, 3, 6)
        )
        keys.append(triples)
    return min(keys)


def reflect(f: FamilyDescriptor) -> FamilyDescriptor:
    """The chain symmetry (x, y, z; n) -> (-z, -y, -x; -n - 2)."""
    neg = tuple(-c for c in f.coords)
    return FamilyDescriptor(
        id=f.id + "_refl",
        param_names=f.param_names,
        coords=neg[6:9] + neg[3:6] + neg[0:3],
        n_poly=-f.n_poly - 2,
        provenance=f.provenance,
        generic_class=f.generic_class,
    )


def _l1_key(seed: ASeed) -> tuple:
    return (sum(abs(c) for c in seed), seed)


def _group(seeds, key) -> list[list[ASeed]]:
    groups: dict[tuple, list[ASeed]] = {}
    for seed in seeds:
        groups.setdefault(key(seed), []).append(seed)
    out = [sorted(g, key=_l1_key) for g in groups.values()]
    return sorted(out, key=lambda g: _l1_key(g[0]))


@dataclass
class SeedSearchResult:
    """Seeds passing all filters, and their equivalence classes.

    ``classes`` uses the declared relation (s -> +-s + c, reordering inside
    triples).  ``coarse_classes`` additionally drops non-primitive seeds
    (gcd(a) > 1, which only give sub-progressions of a primitive seed's
    family) and identifies a family with its reflection.
    """

    bound: int
    seeds: list[ASeed]
    classes: list[list[ASeed]] = field(default_factory=list)
    coarse_classes: list[list[ASeed]] = field(default_factory=list)

    def __contains__(self, seed) -> bool:
        return ASeed(*seed) in self.seeds

    @property
    def independent_count(self) -> int:
        return len(self.classes)

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "seeds": [list(s) for s in self.seeds],
            "classes": [[list(s) for s in g] for g in self.classes],
            "independent_count": self.independent_count,
            "coarse_classes": [[list(s) for s in g] for g in self.coarse_classes],
            "coarse_count": len(self.coarse_classes),
        }


def search_seeds(bound: int, jobs: int = 1) -> SeedSearchResult:
    """Exhaustive seed search over |a1| + |a2| + |a3| + |a4| <= bound."""
    seeds = search_seeds_raw(bound, jobs)
    families = {seed: derive_family(seed) for seed in seeds}
    keys = {seed: family_key(f) for seed, f in families.items()}
    classes = _group(seeds, keys.__getitem__)
    primitive = [s for s in seeds if gcd(*s) == 1]
    coarse = _group(
        primitive, lambda s: min(keys[s], family_key(reflect(families[s])))
    )
    return SeedSearchResult(bound, seeds, classes, coarse)


def default_jobs() -> int:
    return max(1, min(8, os.cpu_count() or 1))
