import pytest

from hermarea.checks import CHECKS, CheckResult, VerifyReport, c_im, g_u_constant, run_check, select_checks, verify
from hermarea.scalars import PiScalar


@pytest.mark.parametrize("name", list(CHECKS))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_check_passes(name, n):
    result = run_check(name, n)
    assert result.passed, result.witness


def test_select_checks():
    assert select_checks(None) == list(CHECKS)
    assert select_checks("oracle-*") == ["oracle-t-table"]
    assert select_checks("binomial, dimensions") == ["binomial", "dimensions"]
    with pytest.raises(KeyError):
        select_checks("nothing-here")


def test_verify_report_format():
    report = verify(2, "dimensions")
    assert report.ok and not report.failures
    text = report.format()
    assert text.splitlines()[0].startswith("PASS  dimensions")
    assert text.endswith("2/2 checks passed")
    with pytest.raises(ValueError):
        verify(0)


def test_failing_check_is_reported(monkeypatch):
    monkeypatch.setitem(CHECKS, "always-fails", lambda n: [f"witness n={n}"])
    def boom(n):
        raise ArithmeticError("boom")

    monkeypatch.setitem(CHECKS, "raises", boom)
    report = verify(1, "always-fails,raises")
    assert not report.ok
    assert [r.name for r in report.failures] == ["always-fails", "raises"]
    assert "FAIL  always-fails" in report.format()
    assert "ArithmeticError: boom" in report.format()
    assert report.format().endswith("0/2 checks passed")


def test_g_u_constant_values():
    # (2i+1)!/(i! pi^i)
    assert g_u_constant(0) == PiScalar({0: 1})
    assert g_u_constant(1) == PiScalar({-1: 6})
    assert g_u_constant(2) == PiScalar({-2: 60})


def test_dataclasses():
    r = CheckResult("x", 1, True)
    assert r.witness == [] and VerifyReport(1, None, [r]).ok
