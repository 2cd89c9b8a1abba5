"""Enumerators for Legendrian Hopf links in S^3, grouped by the kind of
contact structure on the link complement, plus small closed forms for
the contact-cut models and loose bookkeeping.

Component types: "tight-ambient" (the ambient structure is tight), or
"loose" / "exceptional" according to the Eliashberg-Fraser
classification of exceptional unknots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List

from .slopes import OutOfRange, swap_to_canonical

HALF = Fraction(1, 2)
TIGHT = "tight-ambient"
LOOSE = "loose"
EXCEPTIONAL = "exceptional"

B1_NOTE = "b1: r0 range follows the parity-consistent table rows"


class ParityMismatch(ValueError):
    pass


class NotHalfInteger(ValueError):
    pass


class NotCoprime(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Realization:
    t0: int
    r0: int
    t1: int
    r1: int
    ambient_d3: Fraction
    twisting: int = 0
    type0: str = LOOSE
    type1: str = LOOSE
    case: str = field(default="", compare=False)
    note: str = field(default="", compare=False)

    def __post_init__(self):
        if (self.t0 + self.r0) % 2 == 0 or (self.t1 + self.r1) % 2 == 0:
            raise ParityMismatch(f"tb + rot must be odd: {self.invariants()}")

    def invariants(self) -> tuple:
        return (self.t0, self.r0, self.t1, self.r1)

    def key(self) -> tuple:
        return (self.t0, self.r0, self.t1, self.r1, self.ambient_d3)

    def swapped(self) -> "Realization":
        return Realization(self.t1, self.r1, self.t0, self.r0, self.ambient_d3, self.twisting,
                           self.type1, self.type0, self.case, self.note)


def _sorted(rows) -> list:
    uniq = {r.key() + (r.twisting,): r for r in rows}
    return sorted(uniq.values(), key=lambda r: (r.r0, r.r1, r.ambient_d3, r.t0, r.t1))


def exceptional_unknot_check(tb: int, rot: int) -> bool:
    return tb >= 1 and abs(rot) == tb - 1


def component_type(tb: int, rot: int, d3) -> str:
    """Exceptional unknots occur only in d3 = 1/2 and with the Eliashberg-Fraser invariants."""
    return EXCEPTIONAL if Fraction(d3) == HALF and exceptional_unknot_check(tb, rot) else LOOSE


def _real(t0, r0, t1, r1, d3, case, twisting=0, note=""):
    d3 = Fraction(d3)
    return Realization(t0, r0, t1, r1, d3, twisting, component_type(t0, r0, d3),
                       component_type(t1, r1, d3), case, note)


# --- tight ambient structure -----------------------------------------------------

def tight_realizations(t0: int, t1: int) -> List[Realization]:
    if t0 >= 0 or t1 >= 0:
        raise OutOfRange("the tight case needs t0, t1 < 0")
    d3 = -HALF
    return _sorted(Realization(t0, r0, t1, r1, d3, 0, TIGHT, TIGHT, "a")
                   for r0 in range(t0 + 1, -t0, 2) for r1 in range(t1 + 1, -t1, 2))


# --- strongly exceptional ---------------------------------------------------------

def _pm(t0, r0, t1, r1, d3, case, note=""):
    return [_real(t0, r0, t1, r1, d3, case, note=note), _real(t0, -r0, t1, -r1, d3, case, note=note)]


def _se_canonical(t0: int, t1: int) -> list:
    m, h, p = -HALF, HALF, 3 * HALF
    if t0 < 0 and t1 < 0:
        return []
    if t0 == 0:
        return _pm(0, 1, t1, t1 - 1, h, "d")
    if t0 < 0:
        if t1 == 1:
            return [_real(t0, r0, 1, 0, h, "b2") for r0 in range(t0 - 1, -t0 + 2, 2)]
        n = t1 - 2
        e = (-1) ** n
        rows = []
        for k in range(-t0 + 1):
            l = -t0 - k
            rows += _pm(t0, l - k - e, t1, -e * (n + 1), h, "b1", B1_NOTE)
        return rows
    # t0 >= t1 >= 1
    if (t0, t1) == (1, 1):
        return [_real(1, 0, 1, 0, h, "c1")]
    if (t0, t1) == (2, 1):
        return _pm(2, 3, 1, 2, m, "c2")
    if (t0, t1) == (3, 1):
        return _pm(3, 4, 1, 2, m, "c2") + [_real(3, 0, 1, 0, p, "c2")]
    if (t0, t1) == (2, 2):
        return _pm(2, 3, 2, 3, m, "c2") + _pm(2, 1, 2, 1, p, "c2")
    if t1 == 1:
        return _pm(t0, t0 + 1, 1, 2, m, "c3") + _pm(t0, t0 - 3, 1, 0, p, "c3")
    if t1 == 2:
        return (_pm(t0, t0 + 1, 2, 3, m, "c3") + _pm(t0, t0 - 1, 2, 1, p, "c3")
                + _pm(t0, t0 - 3, 2, -1, p, "c3"))
    return (_pm(t0, t0 + 1, t1, t1 + 1, m, "c4") + _pm(t0, t0 - 1, t1, t1 - 1, p, "c4")
            + _pm(t0, t0 - 3, t1, -(t1 - 1), p, "c4") + _pm(t0, t0 - 1, t1, -(t1 - 3), p, "c4"))


def strongly_exceptional(t0: int, t1: int) -> List[Realization]:
    """All strongly exceptional realisations with tb = (t0, t1).

    Inputs outside the canonical orientation are handled by exchanging the
    components and exchanging them back in the output.
    """
    a, b, swapped = swap_to_canonical(t0, t1)
    rows = _se_canonical(a, b)
    if swapped:
        rows = [r.swapped() for r in rows]
    return _sorted(rows)


def summary_patterns(t0: int, t1: int) -> list:
    """(pattern, r0, r1, d3) for t0 >= t1 >= 1, arranged by the four row patterns.

    Pattern 0 marks the two exceptions: the unique row at (1,1), and the
    (2,+-1,2,+-1) rows that extend the second pattern to t0 = 2.
    """
    if not t0 >= t1 >= 1:
        raise OutOfRange("summary patterns need t0 >= t1 >= 1")
    m, p = -HALF, 3 * HALF
    if (t0, t1) == (1, 1):
        # the first pattern would give rot 2 on a tb 1 unknot
        return [(0, 0, 0, HALF)]
    out = []
    for s in (1, -1):
        out.append((1, s * (t0 + 1), s * (t1 + 1), m))
        if t0 >= 3:
            out.append((2, s * (t0 - 3), -s * (t1 - 1), p))
            if t1 >= 2:
                out.append((3, s * (t0 - 1), -s * (t1 - 3), p))
            if t1 >= 3:
                out.append((4, s * (t0 - 1), s * (t1 - 1), p))
        if (t0, t1) == (2, 2):
            out.append((0, s, s, p))
    return sorted(set(out))


def summary_rows(t0: int, t1: int) -> set:
    return {(r0, r1, d3) for _, r0, r1, d3 in summary_patterns(t0, t1)}


# --- positive twisting -------------------------------------------------------------

def min_alpha_index(sign_a: int, sign_b: int) -> int:
    if sign_a > 0 and sign_b > 0:
        return 2
    if sign_a < 0 and sign_b < 0:
        return 0
    return 1


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def cut_realizations(t0: int, t1: int, p: int) -> List[Realization]:
    """Hopf links of torus knots in the contact cut model with index p."""
    p0 = min_alpha_index(_sign(t0), _sign(t1))
    if p < p0:
        raise OutOfRange(f"index p = {p} is below the minimum {p0} for ({t0},{t1})")
    twisting = p - p0
    a, b = t0, t1
    swapped = False
    if p0 == 1 and not (a <= 0 <= b):
        a, b, swapped = b, a, True
    if p % 2 == 0:
        d3 = -HALF
        pairs = {(a + 1, b + 1), (-(a + 1), -(b + 1))}
    else:
        d3 = HALF
        pairs = {(a - 1, -(b - 1)), (-(a - 1), b - 1)}
    rows = []
    for r0, r1 in pairs:
        if p0 == 0 and p == 0:
            row = Realization(a, r0, b, r1, d3, 0, TIGHT, TIGHT, "cut")
        else:
            exc1 = p == 1 and b >= 1 and exceptional_unknot_check(b, r1)
            row = Realization(a, r0, b, r1, d3, twisting, LOOSE, EXCEPTIONAL if exc1 else LOOSE,
                              "cut")
        rows.append(row.swapped() if swapped else row)
    return _sorted(rows)


def cut_index(t0: int, t1: int, n: int) -> int:
    return n + min_alpha_index(_sign(t0), _sign(t1))


def twisting_realizations(t0: int, t1: int, n: int) -> List[Realization]:
    if n < 1:
        raise OutOfRange("twisting realisations need n >= 1")
    rows = cut_realizations(t0, t1, cut_index(t0, t1, n))
    return [Realization(r.t0, r.r0, r.t1, r.r1, r.ambient_d3, n, r.type0, r.type1, "e")
            for r in rows]


# --- loose links ---------------------------------------------------------------------

def _require_half_integer(d) -> Fraction:
    d = Fraction(d)
    if d.denominator != 2:
        raise NotHalfInteger(f"{d} is not in Z + 1/2")
    return d


def loose_realization_exists(t0: int, r0: int, t1: int, r1: int, d) -> bool:
    _require_half_integer(d)
    return (t0 + r0) % 2 == 1 and (t1 + r1) % 2 == 1


MOVES = {"stab+": (-1, 1), "stab-": (-1, -1), "sumK10": (2, 0)}


def loose_plan(start: tuple, target: tuple) -> list:
    """Shortest sequence of stabilisations and connected sums with the
    loose (tb, rot) = (1, 0) unknot taking start to target."""
    (tb, rot), (tb2, rot2) = start, target
    if (tb + rot) % 2 == 0 or (tb2 + rot2) % 2 == 0:
        raise ParityMismatch("tb + rot must be odd at both ends")
    dtb, drot = tb2 - tb, rot2 - rot
    s = max(abs(drot), -dtb)
    c = (dtb + s) // 2
    plus, minus = (s + drot) // 2, (s - drot) // 2
    return ["stab+"] * plus + ["stab-"] * minus + ["sumK10"] * c


def replay(start: tuple, moves: list) -> tuple:
    tb, rot = start
    for mv in moves:
        dtb, drot = MOVES[mv]
        tb, rot = tb + dtb, rot + drot
    return tb, rot


# --- closed forms from the cut model -------------------------------------------------

@dataclass(frozen=True)
class TorusKnotSpec:
    a: int
    b: int
    orient: int
    p: int

    def __post_init__(self):
        if self.orient not in (1, -1):
            raise ValueError("orient must be +1 or -1")
        if self.p < 0:
            raise ValueError("p must be nonnegative")


def torus_knot_invariants(s: TorusKnotSpec) -> tuple:
    if gcd(s.a, s.b) != 1:
        raise NotCoprime(f"gcd({s.a}, {s.b}) != 1")
    return s.a * s.b, s.orient * (s.a + (-1) ** s.p * s.b)


def cut_model_constants(p: int) -> tuple:
    if p < 0:
        raise ValueError("p must be nonnegative")
    d3 = -HALF if p % 2 == 0 else HALF
    return d3, (-1) ** (p + 1), int(-d3 - HALF)


def d3_connected_sum(d, dp) -> Fraction:
    return _require_half_integer(d) + _require_half_integer(dp) + HALF


def sl_pushoff(tb: int, rot: int) -> int:
    return tb - rot


def classify(t0: int, t1: int, case: str = "") -> List[Realization]:
    """Realisations with zero twisting: tight case for t0, t1 < 0, otherwise strongly exceptional."""
    if case == "tight" or (not case and t0 < 0 and t1 < 0):
        return tight_realizations(t0, t1)
    if case in ("", "exceptional"):
        return strongly_exceptional(t0, t1)
    raise ValueError(f"unknown case {case!r}")
