"""Exact arithmetic helpers: quadratic surds, square-free parts, 2-adic
valuations and integer characteristic polynomials.

Everything in this module is exact; no floating point enters except in
explicit conversions (``float(...)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def square_free_part(n: int) -> tuple[int, int]:
    """Split a positive integer as n = delta * m**2 with delta square-free.

    Returns (delta, m).
    """
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    delta, m = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            m *= d ** (e // 2)
            if e % 2:
                delta *= d
        d += 1 if d == 2 else 2
    return delta * n, m


def two_adic_valuation(n: int) -> int:
    """Largest e such that 2**e divides n. Undefined (rejected) for n = 0."""
    if n == 0:
        raise ValueError("2-adic valuation of 0 is undefined")
    n = abs(n)
    return (n & -n).bit_length() - 1


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def fermat_two_squares(p: int) -> tuple[int, int]:
    """Write a prime p = 1 (mod 4) as f**2 + g**2 with f > g > 0."""
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    for g in range(1, math.isqrt(p // 2) + 1):
        rest = p - g * g
        f = math.isqrt(rest)
        if f * f == rest:
            return f, g
    raise AssertionError(f"no two-square decomposition found for {p}")


def rationalize(x: float, max_denominator: int = 10**6,
                tol: float = 1e-7) -> Fraction | None:
    """Reconstruct a rational from a float via continued fractions.

    Returns None if no fraction with a bounded denominator reproduces x
    within tol.
    """
    if not math.isfinite(x):
        return None
    cand = Fraction(x).limit_denominator(max_denominator)
    if abs(float(cand) - x) < tol:
        return cand
    return None


@dataclass(frozen=True)
class QuadraticValue:
    """Exact value p + q*sqrt(delta) with rational p, q and square-free delta.

    delta = 1 values are normalized to a pure rational (q = 0). Arithmetic is
    closed for operands sharing the same radicand; mixing distinct radicands
    raises.
    """

    p: Fraction
    q: Fraction
    delta: int

    def __post_init__(self) -> None:
        p, q, delta = Fraction(self.p), Fraction(self.q), self.delta
        if delta <= 0:
            raise ValueError(f"radicand must be positive, got {delta}")
        sf, m = square_free_part(delta)
        if m != 1:
            q *= m
            delta = sf
        if delta == 1 or q == 0:
            p, q, delta = p + (q if delta == 1 else 0), Fraction(0), 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "delta", delta)

    @classmethod
    def of(cls, value: int | Fraction) -> "QuadraticValue":
        return cls(Fraction(value), Fraction(0), 1)

    @classmethod
    def sqrt(cls, n: int) -> "QuadraticValue":
        """Exact square root of a nonnegative integer."""
        if n < 0:
            raise ValueError("negative radicand")
        if n == 0:
            return cls.of(0)
        delta, m = square_free_part(n)
        return cls(Fraction(0), Fraction(m), delta)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.p

    def conjugate(self) -> "QuadraticValue":
        return QuadraticValue(self.p, -self.q, self.delta)

    def _coerce(self, other) -> "QuadraticValue":
        if isinstance(other, QuadraticValue):
            if other.delta != self.delta and not (other.is_rational or self.is_rational):
                raise ValueError(
                    f"mixed radicands {self.delta} and {other.delta}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticValue.of(other)
        return NotImplemented  # type: ignore[return-value]

    def _delta_of(self, other: "QuadraticValue") -> int:
        return self.delta if not self.is_rational else other.delta

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticValue(self.p + o.p, self.q + o.q, self._delta_of(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticValue(-self.p, -self.q, self.delta)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._delta_of(o)
        return QuadraticValue(self.p * o.p + self.q * o.q * d,
                              self.p * o.q + self.q * o.p, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._delta_of(o)
        norm = o.p * o.p - o.q * o.q * d
        if norm == 0:
            raise ZeroDivisionError("division by zero quadratic value")
        inv = QuadraticValue(o.p / norm, -o.q / norm, d)
        return self * inv

    def __rtruediv__(self, other):
        return QuadraticValue.of(other) / self

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(self.delta)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.p == other
        if isinstance(other, QuadraticValue):
            return (self.p == other.p and self.q == other.q
                    and (self.q == 0 or self.delta == other.delta))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.q, self.delta if self.q else 1))

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.p)
        surd = f"sqrt({self.delta})"
        head = "" if self.p == 0 else f"{self.p} "
        if self.q == 1:
            tail = surd
        elif self.q == -1:
            tail = f"-{surd}"
        else:
            tail = f"{self.q}*{surd}"
        if head and self.q > 0:
            return f"{head}+ {tail}"
        if head:
            return f"{head}- {-self.q}*{surd}" if self.q != -1 else f"{head}- {surd}"
        return tail


def charpoly_int(A: Sequence[Sequence[int]]) -> list[int]:
    """Exact characteristic polynomial of an integer matrix.

    Faddeev-LeVerrier with integer arithmetic; all divisions are exact.
    Returns coefficients c_0..c_n (ascending) of det(tI - A).
    """
    n = len(A)
    if n == 0:
        return [1]
    rows = [[int(x) for x in row] for row in A]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]  # M_0 = 0
    c = 1
    for k in range(1, n + 1):
        # M_k = A @ M_{k-1} + c * I
        AM = [[sum(rows[i][l] * M[l][j] for l in range(n)) for j in range(n)]
              for i in range(n)]
        for i in range(n):
            AM[i][i] += c
        M = AM
        trace = sum(rows[i][l] * M[l][i] for i in range(n) for l in range(n))
        q, r = divmod(-trace, k)
        if r:
            raise ArithmeticError("non-exact division in Faddeev-LeVerrier")
        c = q
        coeffs[n - k] = c
    return coeffs


def poly_mul(a: Iterable[int], b: Iterable[int]) -> list[int]:
    a, b = list(a), list(b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_text(coeffs: Sequence[int], var: str = "t") -> str:
    """Render an ascending integer coefficient list as a readable polynomial."""
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            body = str(abs(c))
        else:
            power = var if e == 1 else f"{var}^{e}"
            body = power if abs(c) == 1 else f"{abs(c)}*{power}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text
