from fractions import Fraction

import pytest

from leghopf.classify import strongly_exceptional
from leghopf.exact import det
from leghopf.families import (B1, B2, C2_22, C2_31, C3_T01, C3_T02, C4, D, LUTZ_NEG, BadParams,
                              ExpectedRow, FamilyId, Mismatch, c4_pattern, expected, expected_d3,
                              instantiate, sweep_ids, uncancelled_plus, verify, verify_diagram)
from leghopf.surgery import d3_after, linking_matrix, tb_after

HALF = Fraction(1, 2)


def test_b1_smallest_member():
    d = instantiate(B1(1, 2, 0))
    assert linking_matrix(d).rows == ((-1,),)
    assert tb_after(d, 0) == -3
    (row, neg) = expected(B1(1, 2, 0))
    assert (row.t0, row.r0, row.t1, row.r1, row.d3) == (-3, 0, 2, -1, HALF)
    assert neg.key() == (-3, 0, 2, 1, HALF)


def test_d_members():
    d = instantiate(D(2))
    M = linking_matrix(d)
    assert [M.rows[i][i] for i in range(3)] == [-1, 0, 0]
    assert tb_after(d, 1) == 0
    keys = {r.key() for r in expected(D(5))}
    assert keys == {(0, -1, -3, 4, HALF), (0, 1, -3, -4, HALF)}
    assert all((r.type0, r.type1) == ("loose", "loose") for r in expected(D(5)))


def test_c2_31_left():
    assert d3_after(instantiate(C2_31("L"))) == -HALF
    assert verify(C2_31("L")).d3 == -HALF


def test_c4_all_even_member():
    assert sorted(c4_pattern(v, 0, 0) for v in (1, 2, 3, 4)) == [1, 2, 3, 4]
    keys = {r.key() for v in (1, 2, 3, 4) for r in expected(C4(v, 0, 0))}
    assert (3, 4, 3, 4, -HALF) in keys and (3, -4, 3, -4, -HALF) in keys


@pytest.mark.parametrize("fid", [B1(k, l, n) for k in range(3) for l in range(3) if k + l
                                 for n in range(4)])
def test_b1_verifies(fid):
    rep = verify(fid)
    assert rep.uncancelled == 0
    assert det(linking_matrix(instantiate(fid))) == (-1) ** (fid.n + 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_d_verifies(n):
    assert verify(D(n)).d3 == HALF


def test_every_family_kind_verifies():
    for fid in [B2(2, 1), C2_22("L"), C2_22("R"), C3_T01("L", 2), C3_T01("R", 3),
                C3_T02(1, 2), C3_T02(3, 1), C4(3, 1, 2), LUTZ_NEG]:
        verify(fid)


def test_sweep_rows_are_strongly_exceptional():
    for fid in sweep_ids(bound_b1=2, bound_n=2, bound_b2=3, bound_c4=2):
        rows = expected(fid)
        if not rows:
            continue
        se = {r.key() for r in strongly_exceptional(rows[0].t0, rows[0].t1)}
        for row in rows:
            assert row.key() in se, (str(fid), row)


def test_sweep_size():
    assert len(list(sweep_ids())) == 315


def test_bad_params():
    for bad in [lambda: B1(0, 0, 1), lambda: D(1), lambda: C2_31("X"), lambda: C3_T02(4, 0),
                lambda: C4(0, 1, 1), lambda: B1(-1, 2, 0), lambda: FamilyId("E7")]:
        with pytest.raises(BadParams):
            bad()


def test_negative_control_raises_mismatch():
    fid = C2_31("L")
    row = expected(fid)[0]
    wrong = ExpectedRow(row.t0, row.r0 + 2, row.t1, row.r1, row.d3, row.type0, row.type1)
    with pytest.raises(Mismatch):
        verify_diagram(instantiate(fid), wrong, expected_d3(fid), str(fid))
    with pytest.raises(Mismatch):
        verify_diagram(instantiate(fid), row, HALF, str(fid))


def test_cancellations_cover_plus_surgeries():
    d = instantiate(D(4))
    assert sum(1 for k in d.knots if k.coeff == 1) == len(d.cancellations)
    assert uncancelled_plus(d) == 0
    assert uncancelled_plus(instantiate(LUTZ_NEG)) > 0


def test_family_names():
    assert str(B1(1, 2, 0)) == "B1(k=1,l=2,n=0)"
    assert str(C4(2, 1, 3)) == "C4(v=2,n=1,m=3)"
