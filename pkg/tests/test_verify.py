import pytest

from framequant.verify import BatteryReport, run_battery


@pytest.mark.parametrize("d", [3, 9])
def test_battery_passes(d):
    report = run_battery(d, samples=4, seed=1)
    assert report.passed, report.failures()
    data = report.as_dict()
    assert data["theorem_1_residual"] < 1e-10
    assert set(data["thresholds"]) == {c.name for c in report.checks}


def test_failure_is_reported():
    report = BatteryReport(3)
    report.add("small", 1e-3, 1e-6)
    report.add("large", 0.5, 0.1, above=True)
    report.add("nan", float("nan"), 1.0)
    assert report.failures() == ["small", "nan"]
    assert not report.as_dict()["passed"]
