"""Sparse multivariate polynomials with exact coefficients.

A ``Poly`` lives in a ring described by a variable count and optional caps.
With caps ``(D_1, ..., D_k)`` the ring is ``Z[x_1..x_k] / <x_i^{D_i}>``: any
term with ``e_i >= D_i`` is dropped as soon as it is produced.

Coefficients are Python ints by default. Fractions and floats also work, since
nothing here depends on the coefficient type beyond ``+``, ``*`` and ``== 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb, factorial
from typing import Any, Callable, Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    nvars: int
    caps: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.nvars < 0:
            raise ValueError("variable count must be nonnegative")
        if self.caps is not None:
            if len(self.caps) != self.nvars:
                raise ValueError("caps length must equal the variable count")
            if any(c < 1 for c in self.caps):
                raise ValueError("caps must be positive")

    def admits(self, e: Exponent) -> bool:
        if self.caps is None:
            return True
        return all(ei < ci for ei, ci in zip(e, self.caps))

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: Any) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, i: int, coeff: Any = 1) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): coeff})

    def monomial(self, e: Sequence[int], coeff: Any = 1) -> "Poly":
        return Poly(self, {tuple(e): coeff})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]


def _grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


class Poly:
    """Immutable sparse polynomial. Zero coefficients are never stored."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, Any]):
        clean: dict[Exponent, Any] = {}
        for e, c in terms.items():
            if len(e) != ring.nvars:
                raise ValueError(f"exponent {e} has wrong length for {ring}")
            if c != 0 and ring.admits(e):
                clean[e] = c
        self.ring = ring
        self._terms = clean

    @classmethod
    def _trusted(cls, ring: Ring, terms: dict[Exponent, Any]) -> "Poly":
        """Wrap terms already known to have the right length and to fit the caps."""
        p = object.__new__(cls)
        p.ring = ring
        p._terms = {e: c for e, c in terms.items() if c != 0}
        return p

    # -- basic access -----------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Any]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, Any]]:
        """Terms in canonical order: graded-lex, highest first."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, e: Sequence[int]) -> Any:
        return self._terms.get(tuple(e), 0)

    def support(self) -> set[Exponent]:
        return set(self._terms)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def _check(self, other: "Poly") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _lift(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.const(other)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Any) -> "Poly":
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Poly._trusted(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._trusted(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Any) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly):
            return Poly._trusted(self.ring, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        out: dict[Exponent, Any] = {}
        caps = self.ring.caps
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if caps is None or all(x < c for x, c in zip(e, caps)):
                    out[e] = out.get(e, 0) + c1 * c2
        return Poly._trusted(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self._terms == other._terms
        if other == 0:
            return self.is_zero()
        return self == self.ring.const(other)

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._terms.items())))

    # -- transformations ---------------------------------------------------
    def map_coefficients(self, f: Callable[[Any], Any]) -> "Poly":
        return Poly(self.ring, {e: f(c) for e, c in self._terms.items()})

    def truncate(self, caps: Sequence[int]) -> "Poly":
        ring = Ring(self.ring.nvars, tuple(caps))
        return Poly(ring, self._terms)

    def in_ring(self, ring: Ring) -> "Poly":
        return Poly(ring, self._terms)

    def diff(self, i: int) -> "Poly":
        out: dict[Exponent, Any] = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.ring, out)

    def evaluate(self, values: Sequence[Any]) -> Any:
        total: Any = 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def substitute_monomials(self, ring: Ring, images: Sequence[Sequence[int]]) -> "Poly":
        """Replace variable ``i`` by the monomial with exponent ``images[i]`` in ``ring``."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable required")
        out: dict[Exponent, Any] = {}
        for e, c in self._terms.items():
            f = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    for j, m in enumerate(images[i]):
                        f[j] += k * m
            t = tuple(f)
            out[t] = out.get(t, 0) + c
        return Poly(ring, out)

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient of an exact division; raises ``ArithmeticError`` on a remainder."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.ring.caps is not None:
            raise ArithmeticError("exact division is only defined without caps")
        lead_e, lead_c = max(divisor._terms.items(), key=lambda t: t[0])
        rem = dict(self._terms)
        quot: dict[Exponent, Any] = {}
        while rem:
            e, c = max(rem.items(), key=lambda t: t[0])
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(s < 0 for s in shift):
                raise ArithmeticError("division leaves a remainder")
            if isinstance(c, int) and isinstance(lead_c, int):
                q = c // lead_c if c % lead_c == 0 else Fraction(c, lead_c)
            else:
                q = c / lead_c
            quot[shift] = quot.get(shift, 0) + q
            for de, dc in divisor._terms.items():
                t = tuple(a + b for a, b in zip(shift, de))
                v = rem.get(t, 0) - q * dc
                if v == 0:
                    rem.pop(t, None)
                else:
                    rem[t] = v
        return Poly(self.ring, quot)

    # -- printing ---------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None, fmt: Callable[[Any], str] = str) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.ring.nvars)]
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for e, c in self.items():
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
            neg = c < 0
            mag = -c if neg else c
            if not factors:
                body = fmt(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([fmt(mag)] + factors)
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r}, nvars={self.ring.nvars}, caps={self.ring.caps})"


def linear_form(ring: Ring, coeffs: Iterable[Any]) -> Poly:
    terms = {}
    for i, c in enumerate(coeffs):
        e = [0] * ring.nvars
        e[i] = 1
        terms[tuple(e)] = c
    return Poly(ring, terms)


@lru_cache(maxsize=4096)
def tridiag_det_identity(l: int, a: Poly, b: Poly) -> Poly:
    """Determinant of the l x l tridiagonal matrix with diagonal a+b and off-diagonals a, b.

    Computed by the cofactor recursion and checked against sum_{i=0}^{l} a^i b^(l-i).
    """
    if l < 1:
        raise ValueError("l must be at least 1")
    a._check(b)
    s, ab = a + b, a * b
    prev, cur = a.ring.one(), s
    for _ in range(l - 1):
        prev, cur = cur, s * cur - ab * prev
    closed = a.ring.zero()
    for i in range(l + 1):
        closed = closed + a**i * b ** (l - i)
    assert cur == closed, "tridiagonal determinant identity failed"
    return cur


def multinomial(parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts):
        raise ValueError("parts must be nonnegative")
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def binom(a: int, b: int) -> int:
    """Binomial coefficient with C(a, b) = 0 whenever a < b or b < 0."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)
