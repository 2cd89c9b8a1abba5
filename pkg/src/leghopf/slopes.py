"""Slope normalization on the thickened torus, negative continued fractions,
and counts of tight minimally twisting contact structures.

Conventions: the vector (x, y) is the curve x*mu + y*lambda and has slope
y/x.  The boundary slopes are s0 = 1/t0 and s1 = t1.  Matrices act on
column vectors (x, y)^T.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exact import Extended, format_rational, ratio


class OutOfRange(ValueError):
    pass


class NormalizationError(RuntimeError):
    pass


DEFAULT_MAX_ITER = 10000


def max_iterations() -> int:
    raw = os.environ.get("LEGHOPF_MAX_ITER")
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_ITER
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"LEGHOPF_MAX_ITER must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("LEGHOPF_MAX_ITER must be positive")
    return value


@dataclass(frozen=True)
class SL2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"not in SL(2,Z): det = {self.a * self.d - self.b * self.c}")

    @classmethod
    def identity(cls) -> "SL2":
        return cls(1, 0, 0, 1)

    def __matmul__(self, o: "SL2") -> "SL2":
        return SL2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                   self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def apply(self, x: int, y: int) -> tuple:
        return self.a * x + self.b * y, self.c * x + self.d * y

    def slope_image(self, x: int, y: int) -> Extended:
        u, v = self.apply(x, y)
        return ratio(v, u)

    def power(self, k: int) -> "SL2":
        base = self if k >= 0 else SL2(self.d, -self.b, -self.c, self.a)
        out = SL2.identity()
        for _ in range(abs(k)):
            out = out @ base
        return out

    def rows(self) -> list:
        return [[self.a, self.b], [self.c, self.d]]


def stabilizer_power(k: int) -> SL2:
    """B^k for the parabolic B = I + v w, v = (1,-1)^T, w = (1,1); fixes (1,-1)."""
    return SL2(1 + k, k, -k, 1 - k)


@dataclass(frozen=True)
class CFrac:
    entries: tuple

    def __post_init__(self):
        entries = tuple(int(r) for r in self.entries)
        if not entries:
            raise ValueError("continued fraction must be nonempty")
        if any(r > -2 for r in entries):
            raise ValueError(f"all entries must be <= -2, got {list(entries)}")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "[" + ",".join(str(r) for r in self.entries) + "]"


@dataclass(frozen=True)
class Finite:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a finite count is at least 1")

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True)
class IntegralFamily:
    def __str__(self):
        return "integral-family"


TightCount = Union[Finite, IntegralFamily]


def cfrac(s) -> CFrac:
    """Negative continued fraction [r0, ..., rk] of a rational s < -1."""
    s = Fraction(s)
    if s >= -1:
        raise OutOfRange(f"cfrac needs s < -1, got {format_rational(s)}")
    out = []
    while True:
        r = s.numerator // s.denominator
        if r == s:
            out.append(r)
            break
        out.append(r)
        s = 1 / (r - s)
    return CFrac(tuple(out))


def cfrac_eval(c: Union[CFrac, Sequence[int]]) -> Fraction:
    entries = list(c.entries if isinstance(c, CFrac) else c)
    if not entries:
        raise ValueError("empty continued fraction")
    v = Fraction(entries[-1])
    for r in reversed(entries[:-1]):
        v = r - 1 / v
    return v


def honda_count(c: Union[CFrac, Sequence[int]]) -> int:
    entries = list(c.entries if isinstance(c, CFrac) else c)
    n = entries[-1]
    for r in entries[:-1]:
        n *= r + 1
    return abs(n)


@dataclass(frozen=True)
class Normalization:
    s1p: Fraction
    A: SL2
    k: int
    iterations: int


def _start_matrix(t0: int) -> SL2:
    # sends (t0, 1) to (1, -1)
    return SL2(0, 1, -1, t0 - 1)


def normalize(t0: int, t1: int) -> Normalization:
    """Find A in SL(2,Z) with A(t0,1) = (1,-1) and finite image slope s1' <= -1.

    A = B^k A0.  The image of (1, t1) is (x, D - x) with D = t0*t1 - 1 and
    x = t1 + k*D, so the slope is D/x - 1.  The power k is jump-started at
    the value the unit-step search would reach, then checked step by step.
    """
    A0 = _start_matrix(t0)
    D = t0 * t1 - 1
    limit = max_iterations()

    def good(k):
        x, y = (stabilizer_power(k) @ A0).apply(1, t1)
        return x != 0 and Fraction(y, x) <= -1

    # x*D < 0 holds exactly on a half-line of k; take its end nearest 0
    if D == 0 or t1 * D < 0:
        k = 0
    else:
        k = -(t1 * D // (D * D)) - 1
    iterations = 0

    def tick():
        nonlocal iterations
        iterations += 1
        if iterations > limit:
            raise NormalizationError(
                f"normalization of ({t0},{t1}) did not finish within {limit} steps")

    while not good(k):
        tick()
        k -= 1
    toward = 1 if k < 0 else -1
    while k != 0 and good(k + toward):
        tick()
        k += toward
    A = stabilizer_power(k) @ A0
    x, y = A.apply(1, t1)
    return Normalization(Fraction(y, x), A, k, iterations)


def count_tight(t0: int, t1: int) -> TightCount:
    s1p = normalize(t0, t1).s1p
    if s1p == -1:
        return IntegralFamily()
    return Finite(honda_count(cfrac(s1p)))


def count_twisting(t0: int, t1: int, n: int, up_to_diffeo: bool = False) -> int:
    if n < 1:
        raise OutOfRange("twisting count needs n >= 1; use count_tight for n = 0")
    if up_to_diffeo and normalize(t0, t1).s1p == -1:
        return 1
    return 2


def swap_to_canonical(t0: int, t1: int) -> tuple:
    """Exchange the roles of the two components if the listed cases need it.

    Returns (t0', t1', swapped).  Canonical orientations: both negative;
    t0 < 0 < t1; t0 >= t1 > 0; t0 = 0.
    """
    swap = (t1 < 0 < t0) or (t1 == 0 and t0 != 0) or (t0 > 0 and t1 > 0 and t0 < t1)
    return (t1, t0, True) if swap else (t0, t1, False)


def case_label(t0: int, t1: int) -> str:
    a, b, _ = swap_to_canonical(t0, t1)
    if a < 0 and b < 0:
        return "a2" if a == b == -1 else "a1"
    if a == 0:
        return "d"
    if a < 0 < b:
        return "b1" if b >= 2 else "b2"
    if (a, b) == (1, 1):
        return "c1"
    if (a, b) in ((2, 1), (3, 1), (2, 2)):
        return "c2"
    if b <= 2:
        return "c3"
    return "c4"
