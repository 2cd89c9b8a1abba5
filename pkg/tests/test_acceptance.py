"""One line per acceptance criterion; run with -s to see them inline."""

import pytest

from leghopf.checks import CHECKS, run_check


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"criterion-{c[0]}" for c in CHECKS])
def test_criterion(number, capsys):
    result = run_check(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.detail
