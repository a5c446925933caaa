from __future__ import annotations

from fractions import Fraction

import pytest

from spinhl.params import InhomogeneitySequence, ParamSet

# criterion number -> (passed, note); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def base_params():
    """t = 1/3, gamma = 2, s = 1/5 everywhere, u = (1/7, 1/11)."""
    return ParamSet(Fraction(1, 3), Fraction(2), InhomogeneitySequence.constant(Fraction(1, 5)),
                    (Fraction(1, 7), Fraction(1, 11)))


@pytest.fixture
def inhomogeneous_params():
    s = InhomogeneitySequence((Fraction(1, 5), Fraction(1, 4), Fraction(-1, 3)), Fraction(1, 6))
    return ParamSet(Fraction(1, 3), Fraction(2), s, (Fraction(1, 7), Fraction(-1, 5), Fraction(2, 9)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {note}")
