"""The acceptance suite, shared by ``leghopf selfcheck`` and the tests.

Each check returns a CheckResult; none of them raise on failure.  The
reference values come from sources independent of the code under test:
closed forms written out case by case, a Sturm-sequence signature, and
the family diagrams themselves for the classification tables.
"""

from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from . import classify as C
from . import families as F
from .exact import IntMatrix, det, signature
from .slopes import (Finite, IntegralFamily, cfrac, cfrac_eval, count_tight, count_twisting,
                     swap_to_canonical)
from .surgery import (ComponentKnot, SurgeryDiagram, SurgeryKnot, d3_after, d3_data,
                      extended_matrix, invariants, linking_matrix, permuted, reoriented)

HALF = Fraction(1, 2)


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.detail} ({self.seconds:.2f}s)"


class _Fail(Exception):
    pass


def _expect(cond, msg):
    if not cond:
        raise _Fail(msg)


# --- independent oracles -------------------------------------------------------------

def closed_form_count(t0: int, t1: int):
    """Tight counts written out case by case from the proposition's list."""
    a, b, _ = swap_to_canonical(t0, t1)
    if a < 0 and b < 0:
        return IntegralFamily() if a == b == -1 else Finite(a * b)
    if a == 0:
        return Finite(2)
    if a < 0 < b:
        return Finite(2 * abs(a - 1)) if b >= 2 else Finite(abs(a - 2))
    if (a, b) == (1, 1):
        return IntegralFamily()
    small = {(2, 1): 2, (3, 1): 3, (2, 2): 4}
    if (a, b) in small:
        return Finite(small[(a, b)])
    if b == 1:
        return Finite(4)
    if b == 2:
        return Finite(6)
    return Finite(8)


def _charpoly(M) -> list:
    """Coefficients (highest degree first) of det(xI - M), Faddeev-LeVerrier."""
    n = len(M)
    A = [[Fraction(v) for v in row] for row in M]
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A (M_{k-1} + c_{k-1} I)
        prev = [[Mk[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(A[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(Mk[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def _trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _polydivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        f = a[0] / b[0]
        q[len(q) - (len(a) - len(b)) - 1] = f
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = a[1:]
    return _trim(q), _trim(a or [Fraction(0)])


def _deriv(p):
    n = len(p) - 1
    return _trim([c * (n - i) for i, c in enumerate(p[:-1])]) if n > 0 else [Fraction(0)]


def _gcd(a, b):
    while any(b):
        _, r = _polydivmod(a, b)
        a, b = b, r
    return [c / a[0] for c in a]


def _sturm_sign_changes(seq, x):
    vals = []
    for p in seq:
        if x == "inf":
            v = p[0]
        elif x == "-inf":
            v = p[0] * (-1) ** (len(p) - 1)
        else:
            v = sum(c * x ** (len(p) - 1 - i) for i, c in enumerate(p))
        if v != 0:
            vals.append(v > 0)
    return sum(1 for u, w in zip(vals, vals[1:]) if u != w)


def _distinct_roots(p):
    """(#positive, #negative) distinct real roots of p with p(0) != 0."""
    if len(p) == 1:
        return 0, 0
    seq = [p, _deriv(p)]
    while len(seq[-1]) > 1 or seq[-1][0] == 0:
        _, r = _polydivmod(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append([-c for c in r])
    at0 = _sturm_sign_changes(seq, Fraction(0))
    return at0 - _sturm_sign_changes(seq, "inf"), _sturm_sign_changes(seq, "-inf") - at0


def sturm_signature(M) -> int:
    """Signature from the characteristic polynomial; multiplicities via Yun's factorisation."""
    p = _charpoly(M)
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    pos = neg = 0
    # Yun: p = prod a_i^i
    b = _gcd(p, _deriv(p)) if len(p) > 1 else [Fraction(1)]
    c, _ = _polydivmod(p, b)
    d, _ = _polydivmod(_deriv(p), b)
    d = _sub(d, _deriv(c))
    i = 1
    while len(c) > 1:
        a = _gcd(c, d)
        P, N = _distinct_roots(a)
        pos += i * P
        neg += i * N
        c, _ = _polydivmod(c, a)
        d, _ = _polydivmod(d, a)
        d = _sub(d, _deriv(c))
        i += 1
    return pos - neg


def _sub(a, b):
    n = max(len(a), len(b))
    a = [Fraction(0)] * (n - len(a)) + list(a)
    b = [Fraction(0)] * (n - len(b)) + list(b)
    return _trim([x - y for x, y in zip(a, b)])


# --- random diagrams ------------------------------------------------------------------

def random_diagram(rng: random.Random, max_knots: int = 5) -> SurgeryDiagram:
    """A random nonsingular diagram with two components (retries until det != 0)."""
    while True:
        n = rng.randint(1, max_knots)
        knots = []
        for _ in range(n):
            tb = rng.choice([-4, -3, -2, -1, 1, 2, 3])
            rot = rng.randrange(-abs(tb) - 1, abs(tb) + 2)
            if (tb + rot) % 2 == 0:
                rot += 1
            knots.append(SurgeryKnot(tb, rot, rng.choice([1, -1])))
        L = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                L[i][j] = L[j][i] = rng.randint(-2, 2)
        comps = []
        for label in ("L0", "L1"):
            tb = rng.randint(-4, 2)
            rot = rng.randint(-3, 3)
            if (tb + rot) % 2 == 0:
                rot += 1
            comps.append(ComponentKnot(tb, rot, tuple(rng.randint(-2, 2) for _ in range(n)), label))
        v = rng.randint(-2, 2)
        d = SurgeryDiagram(tuple(knots), tuple(map(tuple, L)), tuple(comps), ((0, v), (v, 0)))
        if det(linking_matrix(d)) != 0:
            return d


def _outputs(d: SurgeryDiagram):
    inv = invariants(d)
    return inv.tb, inv.rot, inv.d3, inv.lk


# --- the eight criteria ---------------------------------------------------------------

def check_prop_grid():
    cells = 0
    for t0 in range(-8, 9):
        for t1 in range(-8, 9):
            got, want = count_tight(t0, t1), closed_form_count(t0, t1)
            _expect(got == want, f"count_tight({t0},{t1}) = {got}, closed form {want}")
            cells += 1
    return f"{cells} cells agree"


def check_cfrac(seed: int = 20240501):
    rng = random.Random(seed)
    for p in range(1, 13):
        _expect(cfrac(Fraction(-(p + 1), p)).entries == (-2,) * p, f"-(p+1)/p expansion, p={p}")
        _expect(cfrac_eval([-2] * p + [-3]) == Fraction(-(2 * p + 3), 2 * p + 1), f"[-2^p,-3], p={p}")
    for p in range(1, 7):
        for _ in range(100):
            b = rng.randint(1, 1000)
            a = -rng.randint(b + 1, 2000)
            tail = cfrac(Fraction(a, b)).entries
            got = cfrac_eval([-2] * p + list(tail))
            x = Fraction(a, b)
            a, b = x.numerator, x.denominator
            want = -Fraction((p + 1) * a + p * b, p * a + (p - 1) * b)
            _expect(got == want,
                    f"generalized expansion p={p}, a/b={a}/{b}: {got} vs {want}")
    for _ in range(1000):
        q = rng.randint(1, 10 ** 6)
        num = rng.randint(q + 1, 10 ** 6 + 1) if q < 10 ** 6 else 10 ** 6 + 1
        s = Fraction(-num, q)
        c = cfrac(s)
        _expect(cfrac_eval(c) == s and all(r <= -2 for r in c), f"round trip {s}")
        _expect(len(c) <= -s.numerator, f"length bound {s}")
    return "[-2 x p] and [-2 x p, -3] identities p<=12, generalized p<=6 x100, 1000 round trips"


def check_lutz():
    neg, pos = F.instantiate(F.LUTZ_NEG), F.instantiate(F.LUTZ_POS)
    _expect(linking_matrix(neg).to_lists() == [[0, -1], [-1, 2]], "Lutz(-) matrix")
    _expect(linking_matrix(pos).to_lists() == [[2, 1], [1, 0]], "Lutz(+) matrix")
    _expect(d3_after(neg) == HALF, f"d3 Lutz(-) = {d3_after(neg)}")
    _expect(d3_after(pos) == Fraction(-3, 2), f"d3 Lutz(+) = {d3_after(pos)}")
    _expect(d3_after(SurgeryDiagram()) == -HALF, "d3 of the empty diagram")
    return "1/2, -3/2, -1/2"


def check_golden():
    d = F.instantiate(F.C2_31("L"))
    inv, data = invariants(d), d3_data(d)
    _expect(linking_matrix(d).rows[0] == (-2, -1, -1, -1), "C2_31 first row")
    _expect((inv.tb, inv.rot) == ((3, 1), (4, 2)), f"C2_31(L) tb/rot {inv.tb} {inv.rot}")
    _expect((det(linking_matrix(d)), det(extended_matrix(d, 0)), det(extended_matrix(d, 1))) == (1, 6, 2),
            "C2_31 determinants")
    _expect((data.sigma, data.c2, data.d3) == (0, -8, -HALF), f"C2_31(L) sigma/c2/d3 {data}")
    r = F.instantiate(F.C2_31("R"))
    _expect(invariants(r).rot == (0, 0) and d3_after(r) == Fraction(3, 2), "C2_31(R)")
    for n in range(2, 9):
        d = F.instantiate(F.D(n))
        inv, data = invariants(d), d3_data(d)
        _expect(inv.tb == (0, 2 - n) and inv.rot == (-1, n - 1), f"D({n}) tb/rot {inv.tb} {inv.rot}")
        _expect((data.sigma, data.c2, data.d3) == (n - 1, n - 1, HALF), f"D({n}) {data}")
        _expect(det(extended_matrix(d, 1)) == n - 4, f"D({n}) det M1")
    return "C2_31 L/R and D(2..8) exact"


def check_family_sweep():
    t = time.perf_counter()
    count = 0
    for fid in F.sweep_ids():
        F.verify(fid)
        count += 1
    for n in range(6):
        rows = [r.key() for v in (1, 2, 3) for r in F.expected(F.C3_T02(v, n))]
        _expect(len(set(rows)) == 6 and set(rows) == {r.key() for r in C.strongly_exceptional(n + 3, 2)},
                f"C3_T02 rows at n={n}")
        rows = [r.key() for s in "LR" for r in F.expected(F.C3_T01(s, n))]
        _expect(len(set(rows)) == 4 and set(rows) == {r.key() for r in C.strongly_exceptional(n + 4, 1)},
                f"C3_T01 rows at n={n}")
    for n in range(5):
        for m in range(5):
            rows = [r.key() for v in (1, 2, 3, 4) for r in F.expected(F.C4(v, n, m))]
            _expect(len(set(rows)) == 8 and set(rows) == {r.key() for r in C.strongly_exceptional(n + 3, m + 3)},
                    f"C4 rows at n={n}, m={m}")
    dt = time.perf_counter() - t
    _expect(dt < 5, f"sweep took {dt:.2f}s")
    return f"{count} family members verified"


def check_classification():
    cells = 0
    for t0 in range(-8, 9):
        for t1 in range(-8, 9):
            if t0 < 0 and t1 < 0:
                continue
            rows = C.strongly_exceptional(t0, t1)
            n = count_tight(t0, t1)
            want = n.n if isinstance(n, Finite) else 1
            _expect(len(rows) == want, f"({t0},{t1}): {len(rows)} rows, count {n}")
            cells += 1
    for t0 in range(-6, 0):
        for t1 in range(-6, 0):
            _expect(len(C.tight_realizations(t0, t1)) == t0 * t1, f"tight ({t0},{t1})")
    for t0 in range(1, 7):
        for t1 in range(1, t0 + 1):
            got = {(r.r0, r.r1, r.ambient_d3) for r in C.strongly_exceptional(t0, t1)}
            _expect(got == C.summary_rows(t0, t1), f"summary ({t0},{t1})")
    return f"{cells} cells; tight 36 cells; summary 21 cells"


def check_twisting():
    coincide = {(1, 1): 1, (-1, -1): 0}
    for t0, t1 in [(2, 1), (1, 1), (-1, -1), (-3, 2), (0, 4)]:
        for n in range(1, 6):
            rows = C.twisting_realizations(t0, t1, n)
            p = C.cut_index(t0, t1, n)
            single = (t0, t1) in coincide and p % 2 == coincide[(t0, t1)]
            _expect(len(rows) == (1 if single else 2), f"({t0},{t1}) n={n}: {len(rows)} rows")
            _expect(len(rows) <= count_twisting(t0, t1, n), "bounded by the isotopy count")
            if single:
                _expect(count_twisting(t0, t1, n, up_to_diffeo=True) == 1, "diffeomorphism count 1")
            _expect(all(r.twisting == n for r in rows), "twisting recorded")
    boundary = {r.key() for r in C.cut_realizations(2, 1, 2)}
    _expect(boundary == {r.key() for r in C.strongly_exceptional(2, 1)}, "(2,1) at p = 2")
    return "sizes for n<=5 on 5 sign cases; (2,1) boundary"


def check_properties(seed: int = 7):
    rng = random.Random(seed)
    for _ in range(200):
        n = rng.randint(1, 5)
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                M[i][j] = M[j][i] = rng.randint(-5, 5)
        _expect(signature(IntMatrix(M)) == sturm_signature(M), f"signature of {M}")
    for _ in range(100):
        d = random_diagram(rng)
        base = _outputs(d)
        perm = list(range(len(d.knots)))
        rng.shuffle(perm)
        _expect(_outputs(permuted(d, perm)) == base, "permutation invariance")
        j = rng.randrange(len(d.knots))
        _expect(_outputs(reoriented(d, j)) == base, "reorientation invariance")
    count = 0
    allowed = {-HALF, HALF, 3 * HALF}
    for t0 in range(-8, 9):
        for t1 in range(-8, 9):
            rows = C.strongly_exceptional(t0, t1)
            if t0 < 0 and t1 < 0:
                rows = rows + C.tight_realizations(t0, t1)
            for n in (1, 2, 3):
                rows = rows + C.twisting_realizations(t0, t1, n)
            for r in rows:
                _expect((r.t0 + r.r0) % 2 == 1 and (r.t1 + r.r1) % 2 == 1, f"parity {r}")
                _expect(r.ambient_d3 in allowed, f"d3 {r}")
                count += 1
    return f"200 signatures, 100 diagrams, {count} realizations"


CHECKS: List[tuple] = [
    (1, "tight counts on [-8,8]^2", check_prop_grid),
    (2, "continued fraction identities", check_cfrac),
    (3, "Lutz twist d3 values", check_lutz),
    (4, "worked surgery computations", check_golden),
    (5, "family sweep", check_family_sweep),
    (6, "classification cross-check", check_classification),
    (7, "twisting case", check_twisting),
    (8, "property suites", check_properties),
]


def run_check(number: int) -> CheckResult:
    num, name, fn = next(c for c in CHECKS if c[0] == number)
    t = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except _Fail as exc:
        ok, detail = False, str(exc)
    except Exception as exc:  # report crashes as failures with their cause
        ok, detail = False, f"{type(exc).__name__}: {exc} | {traceback.format_exc(limit=2).splitlines()[-1]}"
    dt = time.perf_counter() - t
    if ok and number == 1 and dt >= 1:
        ok, detail = False, f"too slow: {dt:.2f}s"
    return CheckResult(num, name, ok, detail, dt)


def run_all() -> List[CheckResult]:
    return [run_check(c[0]) for c in CHECKS]
