"""Acceptance suite: one PASS/FAIL line per criterion, at the stated time limits."""

from fractions import Fraction

import pytest

from rootdatum import acceptance
from rootdatum import datum as dt

SEED = acceptance.seed_from_env()


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    res = acceptance.run_criterion(number, SEED)
    with capsys.disabled():
        status = "PASS" if res.passed else "FAIL"
        print(f"\ncriterion {number:2d} {status} {res.seconds:6.3f}s "
              f"(limit {acceptance.CRITERION_LIMITS[number]}s)  {res.name}")
    assert res.passed, res.detail


def test_criterion_3_catches_mutated_delta(monkeypatch):
    real = dt.half_sum_positive_roots

    def shifted(rd):
        delta = real(rd)
        return (delta[0] + Fraction(1, 2),) + tuple(delta[1:]) if delta else delta

    monkeypatch.setattr(dt, "half_sum_positive_roots", shifted)
    assert not acceptance.criterion_3(SEED).passed


def test_criterion_reports_are_seed_stable():
    a = acceptance.criterion_6(SEED).to_json()
    b = acceptance.criterion_6(SEED).to_json()
    assert a == b
