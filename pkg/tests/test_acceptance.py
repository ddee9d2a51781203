"""The acceptance battery: one test per criterion, each printing a pass/fail
line.  Tolerances are pinned inside kacmod.suite; nothing is deferred."""

import pytest

from kacmod.suite import CRITERIA


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, fn):
    result = fn(quick=False)
    status = "PASS" if result["pass"] else "FAIL"
    print(f"[{status}] criterion {name}: "
          f"{ {k: v for k, v in result.items() if k != 'pass'} }")
    assert result["pass"], result
