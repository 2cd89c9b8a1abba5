"""Contact (+-1)-surgery diagrams and the classical invariants of link
components drawn in them.

A diagram consists of Legendrian surgery knots K_1..K_n in the standard
contact S^3 (with their invariants *before* surgery), their pairwise
linking numbers, and the Legendrian link components L_i whose invariants
after surgery we want.  All formulas work with the linking matrix M whose
diagonal is the topological framing tb(K_j) + coeff(K_j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import IntMatrix, SingularMatrix, det, dot, signature, solve

HALF = Fraction(1, 2)


class DiagramError(ValueError):
    pass


class ZeroTbKnot(DiagramError):
    pass


class ParityViolation(DiagramError):
    pass


@dataclass(frozen=True)
class SurgeryKnot:
    tb: int
    rot: int
    coeff: int

    def __post_init__(self):
        if self.coeff not in (1, -1):
            raise DiagramError(f"contact surgery coefficient must be +1 or -1, got {self.coeff}")
        if (self.tb + self.rot) % 2 == 0:
            raise DiagramError(f"tb + rot must be odd for a Legendrian knot, got ({self.tb}, {self.rot})")

    @property
    def framing(self) -> int:
        return self.tb + self.coeff


@dataclass(frozen=True)
class ComponentKnot:
    tb: int
    rot: int
    lk: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "lk", tuple(int(v) for v in self.lk))
        if (self.tb + self.rot) % 2 == 0:
            raise DiagramError(f"tb + rot must be odd for a Legendrian knot, got ({self.tb}, {self.rot})")

    def reversed(self) -> "ComponentKnot":
        """Same knot with the opposite orientation."""
        return ComponentKnot(self.tb, -self.rot, tuple(-v for v in self.lk), self.label)


@dataclass(frozen=True)
class SurgeryDiagram:
    knots: tuple = ()
    lk: tuple = ()
    components: tuple = ()
    lk_pre: tuple = ()
    s3: bool = False
    name: str = ""
    cancellations: tuple = field(default=(), compare=False)

    def __post_init__(self):
        knots = tuple(self.knots)
        n = len(knots)
        lk = tuple(tuple(int(v) for v in row) for row in self.lk) if self.lk else tuple(
            (0,) * n for _ in range(n))
        comps = tuple(self.components)
        m = len(comps)
        lk_pre = tuple(tuple(Fraction(v) for v in row) for row in self.lk_pre) if self.lk_pre else tuple(
            (Fraction(0),) * m for _ in range(m))
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "lk", lk)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "lk_pre", lk_pre)
        object.__setattr__(self, "cancellations", tuple(self.cancellations))

        if len(lk) != n or any(len(r) != n for r in lk):
            raise DiagramError(f"linking data must be {n}x{n}")
        for i in range(n):
            if lk[i][i] != 0:
                raise DiagramError("linking data must have zero diagonal")
            for j in range(i):
                if lk[i][j] != lk[j][i]:
                    raise DiagramError(f"linking data not symmetric at ({i}, {j})")
        for c in comps:
            if len(c.lk) != n:
                raise DiagramError(f"component {c.label!r} has {len(c.lk)} linking numbers, expected {n}")
        if len(lk_pre) != m or any(len(r) != m for r in lk_pre):
            raise DiagramError(f"lk_pre must be {m}x{m}")
        for i in range(m):
            for j in range(i):
                if lk_pre[i][j] != lk_pre[j][i]:
                    raise DiagramError("lk_pre not symmetric")
        if self.s3 and abs(det(linking_matrix(self))) != 1:
            raise DiagramError("diagram flagged as S^3 but |det M| != 1")

    @property
    def rot_vector(self) -> list:
        return [k.rot for k in self.knots]

    @property
    def q(self) -> int:
        return sum(1 for k in self.knots if k.coeff == 1)

    # JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "knots": [{"tb": k.tb, "rot": k.rot, "coeff": k.coeff} for k in self.knots],
            "lk": [list(r) for r in self.lk],
            "components": [{"tb": c.tb, "rot": c.rot, "lk": list(c.lk)} for c in self.components],
            "lk_pre": [[_json_number(v) for v in r] for r in self.lk_pre],
            "s3": self.s3,
        }
        for entry, c in zip(out["components"], self.components):
            if c.label:
                entry["label"] = c.label
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SurgeryDiagram":
        try:
            knots = [SurgeryKnot(int(k["tb"]), int(k["rot"]), int(k["coeff"])) for k in data.get("knots", [])]
            comps = [ComponentKnot(int(c["tb"]), int(c["rot"]), tuple(c["lk"]), str(c.get("label", "")))
                     for c in data.get("components", [])]
            lk_pre = [[_parse_number(v) for v in r] for r in data.get("lk_pre", [])]
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram: {exc}") from exc
        return cls(knots=tuple(knots), lk=tuple(map(tuple, data.get("lk", []))),
                   components=tuple(comps), lk_pre=tuple(map(tuple, lk_pre)),
                   s3=bool(data.get("s3", False)))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    @classmethod
    def loads(cls, text: str) -> "SurgeryDiagram":
        return cls.from_json(json.loads(text))


def _json_number(v: Fraction):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _parse_number(v) -> Fraction:
    if isinstance(v, str):
        from .exact import parse_rational
        return parse_rational(v)
    return Fraction(v)


def linking_matrix(d: SurgeryDiagram) -> IntMatrix:
    n = len(d.knots)
    return IntMatrix([[d.knots[i].framing if i == j else d.lk[i][j] for j in range(n)]
                      for i in range(n)])


def _component(d: SurgeryDiagram, i: int) -> ComponentKnot:
    if not 0 <= i < len(d.components):
        raise IndexError(f"component index {i} out of range ({len(d.components)} components)")
    return d.components[i]


def extended_matrix(d: SurgeryDiagram, i: int) -> IntMatrix:
    return linking_matrix(d).bordered(_component(d, i).lk)


def _nonsingular(d: SurgeryDiagram) -> tuple:
    M = linking_matrix(d)
    D = det(M)
    if D == 0:
        raise SingularMatrix("linking matrix is singular")
    return M, D


def tb_after(d: SurgeryDiagram, i: int) -> Fraction:
    c = _component(d, i)
    M, D = _nonsingular(d)
    return c.tb + Fraction(det(M.bordered(c.lk)), D)


def rot_after(d: SurgeryDiagram, i: int) -> Fraction:
    c = _component(d, i)
    M, _ = _nonsingular(d)
    return c.rot - dot(d.rot_vector, solve(M, c.lk))


def lk_after(d: SurgeryDiagram, i: int, j: int) -> Fraction:
    if i == j:
        raise ValueError("lk_after needs two distinct components")
    ci, cj = _component(d, i), _component(d, j)
    M, _ = _nonsingular(d)
    return d.lk_pre[i][j] - dot(ci.lk, solve(M, cj.lk))


@dataclass(frozen=True)
class D3Data:
    c2: Fraction
    sigma: int
    chi: int
    q: int
    d3: Fraction


def d3_data(d: SurgeryDiagram) -> D3Data:
    """c^2, signature, Euler characteristic and the resulting d3 of the surgered S^3."""
    for k in d.knots:
        if k.tb == 0:
            raise ZeroTbKnot("the d3 surgery formula needs tb != 0 for every surgery knot")
    M, _ = _nonsingular(d)
    rot = d.rot_vector
    c2 = dot(solve(M, rot), rot)
    sigma = signature(M)
    chi = 1 + len(d.knots)
    q = d.q
    return D3Data(c2, sigma, chi, q, (c2 - 3 * sigma - 2 * chi) / 4 + q)


def d3_after(d: SurgeryDiagram) -> Fraction:
    return d3_data(d).d3


@dataclass
class ParityReport:
    checked: bool
    rows: list

    @property
    def ok(self) -> bool:
        return all(r["odd"] for r in self.rows)


def parity_check(d: SurgeryDiagram) -> ParityReport:
    """tb + rot of every component after surgery must be an odd integer.

    Only meaningful when the surgered manifold is S^3 (|det M| = 1); for
    other diagrams the report is returned with ``checked=False``.
    """
    if abs(det(linking_matrix(d))) != 1:
        return ParityReport(False, [])
    rows = []
    for i, c in enumerate(d.components):
        tb, rot = tb_after(d, i), rot_after(d, i)
        s = tb + rot
        odd = s.denominator == 1 and s.numerator % 2 == 1
        rows.append({"component": i, "label": c.label, "tb": tb, "rot": rot, "odd": odd})
        if not odd:
            raise ParityViolation(
                f"component {i} ({c.label or 'unlabelled'}): tb + rot = {tb} + {rot} is not an odd integer")
    return ParityReport(True, rows)


def permuted(d: SurgeryDiagram, perm: Sequence[int]) -> SurgeryDiagram:
    """Relabel surgery knots: new knot i is old knot perm[i]."""
    return SurgeryDiagram(
        knots=tuple(d.knots[p] for p in perm),
        lk=tuple(tuple(d.lk[a][b] for b in perm) for a in perm),
        components=tuple(ComponentKnot(c.tb, c.rot, tuple(c.lk[p] for p in perm), c.label)
                         for c in d.components),
        lk_pre=d.lk_pre, s3=d.s3, name=d.name)


def reoriented(d: SurgeryDiagram, j: int) -> SurgeryDiagram:
    """Reverse the auxiliary orientation of surgery knot j."""
    n = len(d.knots)
    s = [(-1 if k == j else 1) for k in range(n)]
    kj = d.knots[j]
    knots = tuple(SurgeryKnot(kj.tb, -kj.rot, kj.coeff) if k == j else d.knots[k] for k in range(n))
    return SurgeryDiagram(
        knots=knots,
        lk=tuple(tuple(d.lk[a][b] * s[a] * s[b] for b in range(n)) for a in range(n)),
        components=tuple(ComponentKnot(c.tb, c.rot, tuple(v * s[k] for k, v in enumerate(c.lk)), c.label)
                         for c in d.components),
        lk_pre=d.lk_pre, s3=d.s3, name=d.name)


def component_reversed(d: SurgeryDiagram, i: int) -> SurgeryDiagram:
    """Reverse the orientation of link component i (negates its rot, lk vector and lk_pre row)."""
    m = len(d.components)
    comps = tuple(c.reversed() if k == i else c for k, c in enumerate(d.components))
    s = [(-1 if k == i else 1) for k in range(m)]
    lk_pre = tuple(tuple(d.lk_pre[a][b] * s[a] * s[b] for b in range(m)) for a in range(m))
    return SurgeryDiagram(knots=d.knots, lk=d.lk, components=comps, lk_pre=lk_pre,
                          s3=d.s3, name=d.name, cancellations=d.cancellations)


@dataclass(frozen=True)
class Invariants:
    tb: tuple
    rot: tuple
    d3: Optional[Fraction]
    lk: dict


def invariants(d: SurgeryDiagram) -> Invariants:
    m = len(d.components)
    tbs = tuple(tb_after(d, i) for i in range(m))
    rots = tuple(rot_after(d, i) for i in range(m))
    try:
        d3 = d3_after(d)
    except ZeroTbKnot:
        d3 = None
    lks = {(i, j): lk_after(d, i, j) for i in range(m) for j in range(i + 1, m)}
    return Invariants(tbs, rots, d3, lks)
