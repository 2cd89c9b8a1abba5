import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from leghopf.checks import random_diagram
from leghopf.exact import IntMatrix, det
from leghopf.families import B1, C2_31, D, LUTZ_NEG, LUTZ_POS, instantiate
from leghopf.surgery import (ComponentKnot, DiagramError, ParityViolation, SurgeryDiagram,
                             SurgeryKnot, ZeroTbKnot, component_reversed, d3_after, d3_data,
                             extended_matrix, invariants, linking_matrix, lk_after, parity_check,
                             permuted, reoriented, rot_after, tb_after)

HALF = Fraction(1, 2)


def test_linking_matrix_b1_chain():
    M = linking_matrix(instantiate(B1(1, 1, 2)))
    assert M.rows == ((-1, -1, 0), (-1, -2, -1), (0, -1, -2))


def test_linking_matrix_empty():
    M = linking_matrix(SurgeryDiagram())
    assert M.n == 0 and det(M) == 1


def test_worked_left_diagram():
    d = instantiate(C2_31("L"))
    assert linking_matrix(d).rows[0] == (-2, -1, -1, -1)
    assert det(linking_matrix(d)) == 1
    assert extended_matrix(d, 0).rows[0] == (0, 3, 1, 1, 1)
    assert det(extended_matrix(d, 0)) == 6
    assert det(extended_matrix(d, 1)) == 2
    assert (tb_after(d, 0), rot_after(d, 0)) == (3, 4)
    assert (tb_after(d, 1), rot_after(d, 1)) == (1, 2)
    data = d3_data(d)
    assert (data.sigma, data.c2, data.d3) == (0, -8, -HALF)
    assert lk_after(d, 0, 1) == 1
    assert parity_check(d).ok


def test_worked_right_diagram():
    d = instantiate(C2_31("R"))
    assert (rot_after(d, 0), rot_after(d, 1)) == (0, 0)
    assert d3_after(d) == 3 * HALF


@pytest.mark.parametrize("n", range(2, 9))
def test_d_family(n):
    d = instantiate(D(n))
    assert (tb_after(d, 0), rot_after(d, 0)) == (0, -1)
    assert (tb_after(d, 1), rot_after(d, 1)) == (2 - n, n - 1)
    data = d3_data(d)
    assert (data.sigma, data.c2, data.d3) == (n - 1, n - 1, HALF)
    if n == 5:
        assert det(extended_matrix(d, 1)) == 1


def test_lutz_diagrams():
    neg = instantiate(LUTZ_NEG)
    assert linking_matrix(neg).rows == ((0, -1), (-1, 2))
    assert d3_after(neg) == HALF
    pos = instantiate(LUTZ_POS)
    assert linking_matrix(pos).rows == ((2, 1), (1, 0))
    assert d3_after(pos) == -3 * HALF
    assert d3_after(SurgeryDiagram()) == -HALF


def test_unlinked_component_is_unchanged():
    d = SurgeryDiagram(knots=(SurgeryKnot(-1, 0, -1), SurgeryKnot(-2, 1, -1)),
                       lk=((0, 1), (1, 0)),
                       components=(ComponentKnot(-3, 2, (0, 0)), ComponentKnot(-1, 0, (0, 0))))
    assert det(extended_matrix(d, 0)) == 0
    assert (tb_after(d, 0), rot_after(d, 0)) == (-3, 2)
    assert lk_after(d, 0, 1) == 0
    assert parity_check(d).ok


def test_b1_orientation_gives_negative_hopf_link():
    d = instantiate(B1(1, 1, 1))
    assert lk_after(d, 0, 1) == 1
    assert lk_after(component_reversed(d, 1), 0, 1) == -1


def test_corrupted_rotation_raises_parity_violation():
    d = instantiate(D(3))
    k = d.knots[0]
    bad = SurgeryKnot(k.tb, k.rot, k.coeff)
    object.__setattr__(bad, "rot", k.rot + 1)  # skip validation, as a hand-edited file might
    broken = SurgeryDiagram(knots=(bad,) + d.knots[1:], lk=d.lk, components=d.components,
                            lk_pre=d.lk_pre)
    with pytest.raises(ParityViolation):
        parity_check(broken)


@pytest.mark.parametrize("delta", [1, -1, 2, 5])
def test_corrupted_lk_keeps_parity(delta):
    # rot is characteristic for M, so tb + rot stays odd whatever the lk vector
    d = instantiate(D(3))
    c = d.components[1]
    bad = ComponentKnot(c.tb, c.rot, (c.lk[0] + delta,) + c.lk[1:], c.label)
    broken = SurgeryDiagram(knots=d.knots, lk=d.lk, components=(d.components[0], bad),
                            lk_pre=d.lk_pre)
    assert parity_check(broken).ok
    assert (tb_after(broken, 1), rot_after(broken, 1)) != (tb_after(d, 1), rot_after(d, 1))


def test_parity_skipped_off_s3():
    d = SurgeryDiagram(knots=(SurgeryKnot(-2, 1, -1),), components=(ComponentKnot(-1, 0, (1,)),))
    assert not parity_check(d).checked


def test_diagram_validation():
    with pytest.raises(DiagramError):
        SurgeryKnot(-1, 1, -1)
    with pytest.raises(DiagramError):
        SurgeryKnot(-1, 0, 2)
    with pytest.raises(DiagramError):
        SurgeryDiagram(knots=(SurgeryKnot(-1, 0, -1), SurgeryKnot(-1, 0, -1)), lk=((0, 1), (2, 0)))
    with pytest.raises(DiagramError):
        SurgeryDiagram(knots=(SurgeryKnot(-2, 1, -1),), s3=True)
    with pytest.raises(DiagramError):
        SurgeryDiagram.from_json({"knots": [{"tb": -1}]})


def test_zero_tb_knot_blocks_d3():
    d = SurgeryDiagram(knots=(SurgeryKnot(0, 1, -1), SurgeryKnot(-1, 0, -1)), lk=((0, 1), (1, 0)))
    with pytest.raises(ZeroTbKnot):
        d3_after(d)


@pytest.mark.parametrize("fid", [B1(2, 1, 3), C2_31("L"), D(4), LUTZ_POS])
def test_json_round_trip(fid):
    d = instantiate(fid)
    back = SurgeryDiagram.loads(d.dumps())
    assert back.knots == d.knots and back.lk == d.lk
    assert back.components == d.components and back.lk_pre == d.lk_pre
    assert invariants(back) == invariants(d)


def test_json_fractional_lk_pre():
    d = SurgeryDiagram(components=(ComponentKnot(-1, 0, ()), ComponentKnot(-1, 0, ())),
                       lk_pre=((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    data = d.to_json()
    assert data["lk_pre"][0][1] == "1/2"
    assert SurgeryDiagram.from_json(data).lk_pre == d.lk_pre


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.data())
def test_invariance_under_permutation_and_reorientation(seed, data):
    d = random_diagram(random.Random(seed))
    base = invariants(d)
    n = len(d.knots)
    perm = data.draw(st.permutations(range(n)))
    assert invariants(permuted(d, perm)) == base
    if n:
        j = data.draw(st.integers(min_value=0, max_value=n - 1))
        assert invariants(reoriented(d, j)) == base


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_component_reversal(seed):
    d = random_diagram(random.Random(seed))
    if len(d.components) < 2:
        return
    a, b = invariants(d), invariants(component_reversed(d, 0))
    assert b.tb == a.tb and b.rot[0] == -a.rot[0] and b.rot[1:] == a.rot[1:]
    assert b.lk[(0, 1)] == -a.lk[(0, 1)] and b.d3 == a.d3
