"""Sparse multivariate polynomials with exact integer coefficients.

A :class:`Polynomial` maps monomials to nonzero Python ints.  A monomial is a
tuple of ``(variable, exponent)`` pairs sorted by variable name, with no zero
exponents, so two polynomials are equal exactly when their term maps are.

Values are immutable; every operation returns a new polynomial.

    >>> t = Polynomial.var("t")
    >>> str((t**2 + t - 1) ** 3)
    't^6 + 3*t^5 - 5*t^3 + 3*t - 1'
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Union

from .errors import NotDivisibleError, PolynomialSyntaxError, UnboundVariableError

Monomial = tuple  # tuple[tuple[str, int], ...]
PolyLike = Union["Polynomial", int]

MAX_EXPONENT = 2**63 - 1

_ONE: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """Return a / b when b divides a, else None."""
    da = dict(a)
    for v, e in b:
        have = da.get(v, 0)
        if have < e:
            return None
        if have == e:
            del da[v]
        else:
            da[v] = have - e
    return tuple(sorted(da.items()))


def _coerce(value: PolyLike) -> "Polynomial":
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Polynomial.const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, int] = {}
        for mono, coeff in items:
            exps: dict[str, int] = {}
            for v, e in mono:
                exps[v] = exps.get(v, 0) + e
            mono = tuple(sorted((v, e) for v, e in exps.items() if e))
            for v, e in mono:
                if e < 0 or e > MAX_EXPONENT:
                    raise OverflowError(f"exponent {e} of {v} out of range")
            c = clean.get(mono, 0) + coeff
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical and zero-free
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls._raw({_ONE: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        if not name or not isinstance(name, str):
            raise ValueError("variable name must be a nonempty string")
        return cls._raw({((name, 1),): 1})

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse(text)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def variables(self) -> tuple[str, ...]:
        names = {v for mono in self._terms for v, _ in mono}
        return tuple(sorted(names))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or the degree in ``var``.  The zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e for _, e in mono) for mono in self._terms)
        return max(dict(mono).get(var, 0) for mono in self._terms)

    def coefficients(self, var: str) -> dict[int, "Polynomial"]:
        """Split into ``{k: c_k}`` with ``self == sum(c_k * var**k)``."""
        parts: dict[int, dict] = {}
        for mono, c in self._terms.items():
            k = 0
            rest = []
            for v, e in mono:
                if v == var:
                    k = e
                else:
                    rest.append((v, e))
            parts.setdefault(k, {})[tuple(rest)] = c
        return {k: Polynomial._raw(t) for k, t in parts.items()}

    def coefficient(self, var: str, k: int) -> "Polynomial":
        return self.coefficients(var).get(k, ZERO)

    def as_constant(self) -> int | None:
        """The constant value, or None if any variable survives."""
        if not self._terms:
            return 0
        if len(self._terms) == 1 and _ONE in self._terms:
            return self._terms[_ONE]
        return None

    def content(self) -> int:
        """Gcd of the coefficients (0 for the zero polynomial)."""
        from math import gcd

        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> "Polynomial":
        return self

    def __add__(self, other: PolyLike) -> "Polynomial":
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other: PolyLike) -> "Polynomial":
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: PolyLike) -> "Polynomial":
        return _coerce(other) - self

    def __mul__(self, other: PolyLike) -> "Polynomial":
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Monomial, int] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if k and self.degree() * k > MAX_EXPONENT:
            raise OverflowError("exponent overflow")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divexact(self, divisor: PolyLike) -> "Polynomial":
        """Exact quotient ``self / divisor``; raises NotDivisibleError otherwise.

        Uses division by leading terms in lex order, which succeeds exactly
        when the divisor divides ``self`` in Z[vars].
        """
        divisor = _coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        c = divisor.as_constant()
        if c is not None:
            out = {}
            for m, a in self._terms.items():
                q, r = divmod(a, c)
                if r:
                    raise NotDivisibleError(f"coefficient {a} is not divisible by {c}")
                out[m] = q
            return Polynomial._raw(out)
        names = tuple(sorted(set(self.variables) | set(divisor.variables)))
        key = _lex_key(names)
        lead_m = max(divisor._terms, key=key)
        lead_c = divisor._terms[lead_m]
        rem = self
        quotient = ZERO
        while rem:
            m = max(rem._terms, key=key)
            qm = _mono_div(m, lead_m)
            qc, r = divmod(rem._terms[m], lead_c)
            if qm is None or r:
                raise NotDivisibleError("polynomial is not divisible by the divisor")
            step = Polynomial._raw({qm: qc})
            quotient = quotient + step
            rem = rem - step * divisor
        return quotient

    # -- evaluation ---------------------------------------------------------

    def subs(self, bindings: Mapping[str, PolyLike]) -> "Polynomial":
        """Compose: replace each bound variable by its polynomial."""
        binds = {v: _coerce(p) for v, p in bindings.items()}
        if not binds:
            return self
        powers: dict[tuple[str, int], Polynomial] = {}

        def power(v: str, e: int) -> Polynomial:
            key = (v, e)
            if key not in powers:
                powers[key] = binds[v] ** e
            return powers[key]

        out = ZERO
        for mono, c in self._terms.items():
            term = Polynomial._raw({tuple((v, e) for v, e in mono if v not in binds): c})
            for v, e in mono:
                if v in binds:
                    term = term * power(v, e)
            out = out + term
        return out

    def eval(self, point: Mapping[str, int]) -> int:
        missing = set(self.variables) - set(point)
        if missing:
            raise UnboundVariableError(missing)
        total = 0
        for mono, c in self._terms.items():
            for v, e in mono:
                c *= point[v] ** e
            total += c
        return total

    __call__ = eval

    # -- comparison & display ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self.as_constant() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in descending lexicographic order of exponent vectors."""
        key = _lex_key(self.variables)
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r})"


def _lex_key(names: tuple[str, ...]):
    index = {v: i for i, v in enumerate(names)}
    width = len(names)

    def key(mono: Monomial) -> tuple[int, ...]:
        vec = [0] * width
        for v, e in mono:
            vec[index[v]] = e
        return tuple(vec)

    return key


ZERO = Polynomial._raw({})
ONE = Polynomial.const(1)


def ring_op(lhs: PolyLike, rhs: PolyLike, op: str) -> Polynomial:
    lhs, rhs = _coerce(lhs), _coerce(rhs)
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown ring operation {op!r}")


def variables(*names: str) -> tuple[Polynomial, ...]:
    """``t, v = variables("t", "v")``"""
    return tuple(Polynomial.var(n) for n in names)


# -- text form ---------------------------------------------------------------


def _render_monomial(mono: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)


def render(p: Polynomial) -> str:
    """Canonical text: descending lex order, explicit signs, ``^`` for powers."""
    if not p:
        return "0"
    pieces = []
    for i, (mono, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = _render_monomial(mono)
        else:
            body = f"{mag}*{_render_monomial(mono)}"
        if i == 0:
            pieces.append(body if sign == "+" else "-" + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    # expr   := ["+"|"-"] term (("+"|"-") term)*
    # term   := factor ("*" factor)*
    # factor := "-" factor | atom ["^" num]
    # atom   := num | name | "(" expr ")"

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise PolynomialSyntaxError(f"expected {want} at token {self.pos}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial")
        p = self.expr()
        if self.pos != len(self.tokens):
            raise PolynomialSyntaxError(f"trailing input at token {self.pos}: {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exp = int(self.take("num")[1])
            return base**exp
        return base

    def atom(self) -> Polynomial:
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return Polynomial.const(int(value))
        if kind == "name":
            self.take()
            return Polynomial.var(value)
        if (kind, value) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise PolynomialSyntaxError(f"unexpected token {value!r} at {self.pos}")


def parse(text: str) -> Polynomial:
    """Parse the canonical text form (plus parentheses and ``**``)."""
    return _Parser(text).parse()
