import asyncio
import csv
import json
from concurrent.futures import Executor, Future
from concurrent.futures.process import BrokenProcessPool

import pytest

from unitcodes.types import INFINITE, CaseTag, CheckStatus, CodeParams, SweepConfig, Unknown
from unitcodes.verify import (
    CSV_HEADER, DISCONNECTED, check_instance, encode_value, exit_code, report_to_json,
    summarize, sweep, sweep_async, write_csv, write_json,
)

FAST = dict(budget=2 ** 16)


def statuses(record):
    return {result.name: result.status for result in record.checks}


def test_check_instance_z5_z5_binary():
    record = check_instance(5, 5, 2, SweepConfig(**FAST))
    assert record.case_tag == CaseTag.PP_ODD_ODD

    edge = record.check("EdgeCountFormula")
    assert (edge.predicted, edge.observed, edge.status) == (192, 192, CheckStatus.PASS)
    diameter = record.check("DiameterBound")
    assert (diameter.observed, diameter.status) == (2, CheckStatus.PASS)
    lam = record.check("LambdaFormula")
    assert (lam.predicted, lam.observed, lam.status) == (15, 15, CheckStatus.PASS)

    params = record.check("CodeParamsVsPredicted")
    assert params.status == CheckStatus.SKIPPED
    assert params.reason == "budget exceeded"
    assert record.check("ConjectureIICode").status == CheckStatus.CONJECTURE_PASS
    assert record.check("DualDistanceVsPredicted").status == CheckStatus.PASS
    assert record.check("DualDistanceEqualsGirth").status == CheckStatus.PASS
    assert record.check("GirthWitness").status == CheckStatus.PASS
    assert not record.has_failure()


def test_check_instance_exact_code_parameters():
    record = check_instance(3, 4, 3, SweepConfig())
    params = record.check("CodeParamsVsPredicted")
    assert params.status == CheckStatus.PASS
    assert params.observed == CodeParams(24, 11, 4)
    assert record.check("CodeDistanceEqualsLambda").status == CheckStatus.PASS
    dual = record.check("DualDistanceVsPredicted")
    assert (dual.predicted, dual.observed, dual.status) == (4, 4, CheckStatus.PASS)
    assert record.check("DualDimension").observed == 13


def test_check_instance_hexagon():
    record = check_instance(3, 2, 3, SweepConfig())
    dual = record.check("DualDistanceVsPredicted")
    assert (dual.predicted, dual.observed, dual.status) == (6, 6, CheckStatus.PASS)
    assert record.check("DiameterBound").observed == 3


def test_check_instance_both_even():
    record = check_instance(6, 4, 3, SweepConfig(**FAST))
    assert record.case_tag == CaseTag.BOTH_EVEN
    found = statuses(record)
    assert found["DisconnectedIfBothEven"] == CheckStatus.PASS
    assert found["BipartiteIffOneEven"] == CheckStatus.SKIPPED
    for name in ("CodeParamsVsPredicted", "CodeDistanceEqualsLambda", "DualDimension",
                 "DualDistanceVsPredicted", "DualDistanceEqualsGirth"):
        assert found[name] == CheckStatus.SKIPPED
        assert record.check(name).reason == DISCONNECTED
    assert "ConjectureIDiameter" not in found
    assert "ConjectureIICode" not in found


def test_check_instance_general_one_even():
    record = check_instance(15, 2, 3, SweepConfig(**FAST))
    assert record.case_tag == CaseTag.GENERAL_ONE_EVEN
    conjecture = record.check("ConjectureIICode")
    assert conjecture.predicted == CodeParams(120, 29, 8)
    assert conjecture.observed.length == 120
    assert conjecture.observed.dimension == 29
    assert isinstance(conjecture.observed.min_distance, Unknown)
    assert conjecture.status == CheckStatus.CONJECTURE_PASS
    assert "bound check" in conjecture.reason

    assert record.check("CodeParamsVsPredicted").status == CheckStatus.SKIPPED
    dual = record.check("DualDistanceVsPredicted")
    assert dual.status == CheckStatus.SKIPPED
    assert dual.observed == 4
    assert record.check("DualDistanceEqualsGirth").status == CheckStatus.PASS


def test_check_instance_records_errors():
    record = check_instance(1, 5, 2)
    assert record.case_tag == CaseTag.OTHER
    error = record.check("InstanceError")
    assert error.status == CheckStatus.FAIL
    assert error.reason == "ValueError"
    assert record.has_failure()


def test_check_instance_respects_flow_cap():
    record = check_instance(5, 5, 2, SweepConfig(max_flow_vertices=10, **FAST))
    assert record.check("LambdaFormula").status == CheckStatus.SKIPPED
    assert record.check("LambdaEqualsMinDegree").status == CheckStatus.SKIPPED


def test_check_instance_respects_matrix_cap():
    record = check_instance(5, 5, 2, SweepConfig(max_matrix_entries=100, **FAST))
    assert record.check("DualDimension").status == CheckStatus.SKIPPED
    assert record.check("ConjectureIICode").status == CheckStatus.SKIPPED


@pytest.mark.parametrize("kwargs", [
    dict(n_range=(1, 5)),
    dict(m_range=(2, 65)),
    dict(fields=(2, 4)),
    dict(budget=100),
    dict(dual_cap=1),
    dict(jobs=0),
])
def test_sweep_config_validation(kwargs):
    with pytest.raises(ValueError):
        SweepConfig(**kwargs)


def test_sweep_config_instances_are_ordered():
    config = SweepConfig(n_range=(2, 3), m_range=(4, 4), fields=(5, 2, 2))
    assert config.instances() == [(2, 4, 2), (2, 4, 5), (3, 4, 2), (3, 4, 5)]
    assert "jobs" not in config.to_dict()


def test_empty_sweep():
    report = sweep(SweepConfig(n_range=(5, 3)))
    assert report.records == []
    assert report.summary == {"by_check": {}, "by_case": {}, "instances": 0}
    assert report.exit_code == 0


def test_small_sweep_has_no_failures():
    report = sweep(SweepConfig(n_range=(2, 6), m_range=(2, 6), fields=(2, 3), **FAST))
    assert [record.key for record in report.records] == SweepConfig(
        n_range=(2, 6), m_range=(2, 6), fields=(2, 3)).instances()
    assert report.exit_code == 0
    for record in report.records:
        assert record.check("EdgeCountFormula").status == CheckStatus.PASS
        for result in record.checks:
            assert result.status not in (CheckStatus.FAIL, CheckStatus.CONJECTURE_FAIL), (record.key, result)
    assert report.summary["instances"] == 50
    assert report.summary["by_check"]["EdgeCountFormula"] == {"Pass": 50}


def test_odd_moduli_binary_dual_equals_girth():
    report = sweep(SweepConfig(n_range=(3, 9), m_range=(3, 9), fields=(2,), **FAST))
    for record in report.records:
        if record.n % 2 and record.m % 2:
            assert record.check("DualDistanceEqualsGirth").status == CheckStatus.PASS


def test_summarize_counts():
    records = [check_instance(3, 2, 3), check_instance(6, 4, 3, SweepConfig(**FAST))]
    summary = summarize(records)
    assert summary["instances"] == 2
    assert summary["by_check"]["EdgeCountFormula"] == {"Pass": 2}
    assert set(summary["by_case"]) == {"BothEven", "PP_OddTwo"}
    total = sum(sum(counts.values()) for counts in summary["by_check"].values())
    assert total == sum(len(record.checks) for record in records)


def test_exit_code():
    assert exit_code([check_instance(3, 2, 3)]) == 0
    assert exit_code([check_instance(3, 2, 3), check_instance(1, 2, 3)]) == 2


@pytest.mark.parametrize("value,encoded", [
    (INFINITE, "Infinite"),
    (Unknown(1, None), "Unknown[1,?]"),
    (Unknown(1, 7), "Unknown[1,7]"),
    (CodeParams(6, 5, 2), [6, 5, 2]),
    (CodeParams(20, 9, Unknown(1, 4)), [20, 9, "Unknown[1,4]"]),
    (CheckStatus.PASS, "Pass"),
    (True, True),
    (None, None),
    ("<=2", "<=2"),
])
def test_encode_value(value, encoded):
    assert encode_value(value) == encoded


def test_json_report_is_deterministic_and_round_trips(tmp_path):
    config = SweepConfig(n_range=(2, 4), m_range=(2, 4), fields=(2, 3), **FAST)
    first = report_to_json(sweep(config))
    second = report_to_json(sweep(config))
    assert first == second
    assert first.endswith("}\n")
    assert json.dumps(json.loads(first), indent=2) + "\n" == first

    path = tmp_path / "report.json"
    write_json(sweep(config), path)
    data = json.loads(path.read_text())
    assert set(data) == {"config", "records", "summary"}
    assert data["summary"]["instances"] == 18
    check = data["records"][0]["checks"][0]
    assert set(check) == {"name", "predicted", "observed", "status"}
    skipped = [c for r in data["records"] for c in r["checks"] if c["status"] == "Skipped"]
    assert all("reason" in c for c in skipped)


def test_csv_report(tmp_path):
    report = sweep(SweepConfig(n_range=(3, 3), m_range=(2, 3), fields=(3,), **FAST))
    path = tmp_path / "report.csv"
    write_csv(report, path)
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == CSV_HEADER
    assert len(rows) - 1 == sum(len(record.checks) for record in report.records)
    assert rows[1][:5] == ["3", "2", "3", "PP_OddTwo", "EdgeCountFormula"]


def test_parallel_sweep_matches_serial():
    serial = SweepConfig(n_range=(2, 5), m_range=(2, 5), fields=(2, 3), **FAST)
    parallel = SweepConfig(n_range=(2, 5), m_range=(2, 5), fields=(2, 3), jobs=2, **FAST)
    expected = report_to_json(sweep(serial))
    assert report_to_json(asyncio.run(sweep_async(parallel))) == expected


@pytest.mark.slow
def test_default_sweep_has_no_theorem_failures():
    report = sweep(SweepConfig(jobs=4))
    assert report.exit_code == 0


@pytest.mark.slow
def test_conjecture_evidence_sweep():
    report = sweep(SweepConfig(n_range=(2, 10), m_range=(2, 10), fields=(2, 3), jobs=4))
    assert report.exit_code == 0
    for record in report.records:
        for result in record.checks:
            assert result.status != CheckStatus.CONJECTURE_FAIL, (record.key, result)


class DyingWorkerExecutor(Executor):
    """Runs instances inline, except that the worker for one instance dies."""

    def __init__(self, dead):
        self.dead = dead

    def submit(self, fn, *args, **kwargs):
        future = Future()
        if args[:3] == self.dead:
            future.set_exception(BrokenProcessPool("worker exited abruptly"))
        else:
            future.set_result(fn(*args, **kwargs))
        return future


def test_dead_worker_fails_only_its_instance():
    config = SweepConfig(n_range=(3, 3), m_range=(2, 3), fields=(3,), **FAST)
    report = asyncio.run(sweep_async(config, DyingWorkerExecutor((3, 2, 3))))
    assert [record.key for record in report.records] == [(3, 2, 3), (3, 3, 3)]

    dead, alive = report.records
    assert dead.case_tag == CaseTag.PP_ODD_TWO
    error = dead.check("InstanceError")
    assert (error.status, error.reason) == (CheckStatus.FAIL, "BrokenProcessPool")
    assert not alive.has_failure()
    assert report.exit_code == 2
