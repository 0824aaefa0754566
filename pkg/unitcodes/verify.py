"""
Verification harness: compare every closed form that applies to an instance
against the independent graph and code oracles, and record the evidence.
"""

import asyncio
import csv
import json
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np

from .core.ring import RingSpec, classify, euler_phi
from .objects.code import LinearCode, conjecture_params, predict
from .objects.graph import UnitGraph, edge_count_formula, girth_witness, parity_bipartition, witness_is_cycle
from .types import (
    INFINITE, CaseTag, CheckRecord, CheckResult, CheckStatus, CodeParams, Distance,
    ParityCase, StructureProfile, SweepConfig, SweepReport, Unknown,
)

NO_THEOREM = "no theorem applies"
DISCONNECTED = "disconnected: no theorem applies"
BUDGET_EXCEEDED = "budget exceeded"
MATRIX_CAP = "incidence matrix exceeds entry cap"
FLOW_CAP = "graph exceeds max-flow vertex cap"
DUAL_CAP = "dual search cap reached"

CONJECTURE_CHECKS = ("ConjectureIDiameter", "ConjectureIICode")

_ODD_ODD_TAGS = (CaseTag.PP_ODD_ODD, CaseTag.PPPP_ODD_ODD)


class InstanceChecker:
    """
    Runs every check for one (n, m, r) and appends the results to a record.

    Expensive quantities (max-flow, rank, exhaustive distance, dual search)
    are computed on first use, so checks whose hypotheses fail cost nothing.
    """

    def __init__(self, n: int, m: int, r: int, config: SweepConfig):
        self.spec = RingSpec(n, m)
        self.profile: StructureProfile = classify(self.spec)
        self.r = r
        self.config = config
        self.record = CheckRecord(n, m, r, self.profile.case_tag)
        self.graph = UnitGraph.build(self.spec)
        self._code: Optional[LinearCode] = None
        self._distance: Optional[Distance] = None
        self._dual_distance: Optional[Distance] = None

    @property
    def units(self) -> int:
        return euler_phi(self.spec.n) * euler_phi(self.spec.m)

    @property
    def parity(self) -> ParityCase:
        return self.profile.parity

    @property
    def tag(self) -> CaseTag:
        return self.profile.case_tag

    def _emit(self, name: str, predicted: object, observed: object, passed: bool,
              conjecture: bool = False, reason: Optional[str] = None) -> None:
        if conjecture:
            status = CheckStatus.CONJECTURE_PASS if passed else CheckStatus.CONJECTURE_FAIL
        else:
            status = CheckStatus.PASS if passed else CheckStatus.FAIL
        result = CheckResult(name, predicted, observed, status, reason)
        self.record.checks.append(result)
        if status == CheckStatus.FAIL:
            logging.error(f"{name} failed for {self.record.key} ({self.tag.value}): "
                          f"predicted {predicted}, observed {observed}")
        elif status == CheckStatus.CONJECTURE_FAIL:
            logging.warning(f"{name} counterexample at n={self.spec.n}, m={self.spec.m}, r={self.r} "
                            f"({self.tag.value}): predicted {predicted}, observed {observed}")

    def _skip(self, name: str, reason: str, predicted: object = None, observed: object = None) -> None:
        self.record.checks.append(CheckResult(name, predicted, observed, CheckStatus.SKIPPED, reason))

    def run(self) -> CheckRecord:
        self.check_edge_count()
        self.check_bipartite()
        self.check_disconnected()
        self.check_diameter()
        self.check_lambda()
        self.check_code()
        self.check_girth_witness()
        return self.record

    # ===== Graph structure =====

    def check_edge_count(self) -> None:
        predicted = edge_count_formula(self.spec)
        self._emit("EdgeCountFormula", predicted, self.graph.num_edges, predicted == self.graph.num_edges)

    def check_bipartite(self) -> None:
        name = "BipartiteIffOneEven"
        if self.parity == ParityCase.BOTH_EVEN:
            self._skip(name, "both moduli even")
            return
        predicted = self.parity == ParityCase.EXACTLY_ONE_EVEN
        observed = self.graph.is_bipartite()
        if predicted and not _is_proper_colouring(self.graph, parity_bipartition(self.spec)):
            self._emit(name, predicted, observed, False, reason="parity classes are not a proper colouring")
            return
        self._emit(name, predicted, observed, predicted == observed)

    def check_disconnected(self) -> None:
        name = "DisconnectedIfBothEven"
        if self.parity != ParityCase.BOTH_EVEN:
            self._skip(name, "not both even")
            return
        observed = self.graph.is_connected()
        self._emit(name, False, observed, not observed)

    def check_diameter(self) -> None:
        if self.parity == ParityCase.BOTH_EVEN:
            self._skip("DiameterBound", NO_THEOREM)
            return
        bound = 2 if self.parity == ParityCase.BOTH_ODD else 3
        diameter = self.graph.diameter()
        within = diameter is not INFINITE and diameter <= bound
        if self.tag.is_theorem_case:
            self._emit("DiameterBound", f"<={bound}", diameter, within)
        else:
            self._skip("DiameterBound", NO_THEOREM, f"<={bound}", diameter)
        self._emit("ConjectureIDiameter", f"<={bound}", diameter, within, conjecture=True)

    def check_lambda(self) -> None:
        if self.graph.num_vertices > self.config.max_flow_vertices:
            self._skip("LambdaFormula", FLOW_CAP)
            self._skip("LambdaEqualsMinDegree", FLOW_CAP)
            return

        if self.tag.is_theorem_case:
            predicted = self.units - 1 if self.tag in _ODD_ODD_TAGS else self.units
            observed = self.graph.edge_connectivity()
            self._emit("LambdaFormula", predicted, observed, predicted == observed)
        else:
            self._skip("LambdaFormula", NO_THEOREM)

        diameter = self.graph.diameter()
        if diameter is not INFINITE and (diameter <= 2 or (self.graph.is_bipartite() and diameter <= 3)):
            predicted = self.graph.min_degree
            observed = self.graph.edge_connectivity()
            self._emit("LambdaEqualsMinDegree", predicted, observed, predicted == observed)
        else:
            self._skip("LambdaEqualsMinDegree", "diameter hypothesis not met")

    def check_girth_witness(self) -> None:
        name = "GirthWitness"
        witness = girth_witness(self.profile)
        if witness is None:
            self._skip(name, NO_THEOREM)
            return
        girth = self.graph.girth()
        if not witness_is_cycle(self.graph, witness):
            self._emit(name, len(witness), girth, False, reason="witness is not a cycle of the graph")
            return
        self._emit(name, len(witness), girth, len(witness) == girth)

    # ===== Codes =====

    @property
    def code(self) -> LinearCode:
        if self._code is None:
            self._code = LinearCode.from_incidence(self.graph, self.r)
        return self._code

    @property
    def distance(self) -> Distance:
        if self._distance is None:
            self._distance = self.code.min_distance_exact(self.config.budget)
        return self._distance

    @property
    def dual_distance(self) -> Distance:
        if self._dual_distance is None:
            self._dual_distance = self.code.dual_min_distance(self.config.dual_cap)
        return self._dual_distance

    def _observed_params(self) -> CodeParams:
        return CodeParams(self.code.length, self.code.dimension, self.distance)

    def check_code(self) -> None:
        names = ("CodeParamsVsPredicted", "CodeDistanceEqualsLambda", "DualDimension",
                 "DualDistanceVsPredicted", "DualDistanceEqualsGirth")
        conjectured = conjecture_params(self.profile, self.r)

        reason = None
        if not self.graph.is_connected():
            reason = DISCONNECTED
        elif self.graph.num_vertices * self.graph.num_edges > self.config.max_matrix_entries:
            reason = MATRIX_CAP
        if reason is not None:
            for name in names:
                self._skip(name, reason)
            if conjectured.primal is not None:
                self._skip("ConjectureIICode", reason, conjectured.primal)
            return

        self.check_code_params()
        self.check_conjecture_code(conjectured.primal)
        self.check_distance_equals_lambda()
        self.check_dual_dimension()
        self.check_dual_distance()
        self.check_dual_equals_girth()

    def check_code_params(self) -> None:
        name = "CodeParamsVsPredicted"
        predicted = predict(self.profile, self.r)
        if not predicted.source.is_proven:
            self._skip(name, NO_THEOREM)
            return
        expected = predicted.primal
        observed = self._observed_params()
        if (observed.length, observed.dimension) != (expected.length, expected.dimension):
            self._emit(name, expected, observed, False)
        elif isinstance(observed.min_distance, Unknown):
            self._skip(name, BUDGET_EXCEEDED, expected, observed)
        else:
            self._emit(name, expected, observed, observed.min_distance == expected.min_distance)

    def check_conjecture_code(self, expected: Optional[CodeParams]) -> None:
        if expected is None:
            return
        name = "ConjectureIICode"
        observed = self._observed_params()
        if (observed.length, observed.dimension) != (expected.length, expected.dimension):
            self._emit(name, expected, observed, False, conjecture=True)
        elif isinstance(observed.min_distance, Unknown):
            self._emit(name, expected, observed, observed.min_distance.contains(expected.min_distance),
                       conjecture=True, reason=f"{BUDGET_EXCEEDED}; bound check")
        else:
            self._emit(name, expected, observed, observed.min_distance == expected.min_distance,
                       conjecture=True)

    def check_distance_equals_lambda(self) -> None:
        name = "CodeDistanceEqualsLambda"
        if self.r != 2 and not self.graph.is_bipartite():
            self._skip(name, "odd field needs a bipartite graph")
        elif self.graph.num_vertices > self.config.max_flow_vertices:
            self._skip(name, FLOW_CAP)
        elif isinstance(self.distance, Unknown):
            self._skip(name, BUDGET_EXCEEDED, self.graph.edge_connectivity(), self.distance)
        else:
            predicted = self.graph.edge_connectivity()
            self._emit(name, predicted, self.distance, predicted == self.distance)

    def check_dual_dimension(self) -> None:
        predicted = self.code.dual_dimension()
        generator = self.code.generator
        nullspace = generator.nullspace()
        product = generator.to_array() @ nullspace.to_array().T
        annihilates = not np.any(product % self.r)
        if not annihilates:
            self._emit("DualDimension", predicted, nullspace.rows, False,
                       reason="nullspace basis is not orthogonal to the generator")
            return
        self._emit("DualDimension", predicted, nullspace.rows, predicted == nullspace.rows)

    def check_dual_distance(self) -> None:
        name = "DualDistanceVsPredicted"
        predicted = predict(self.profile, self.r)
        if predicted.source.is_conjecture:
            self._skip(name, "conjectured dual distance not stated", None, self.dual_distance)
            return
        if not predicted.source.is_proven:
            self._skip(name, NO_THEOREM)
            return
        expected = predicted.dual.min_distance
        observed = self.dual_distance
        if isinstance(observed, Unknown) and observed.lower > expected:
            self._emit(name, expected, observed, False)
        elif isinstance(observed, Unknown):
            self._skip(name, DUAL_CAP, expected, observed)
        else:
            self._emit(name, expected, observed, observed == expected)

    def check_dual_equals_girth(self) -> None:
        name = "DualDistanceEqualsGirth"
        girth = self.graph.girth()
        even_girth = girth is not INFINITE and girth % 2 == 0
        if self.r != 2 and not even_girth:
            self._skip(name, "odd field with odd girth")
            return
        observed = self.dual_distance
        if isinstance(observed, Unknown) and (girth is INFINITE or girth > self.config.dual_cap):
            self._skip(name, DUAL_CAP, girth, observed)
            return
        self._emit(name, girth, observed, observed == girth)


def _is_proper_colouring(graph: UnitGraph, classes) -> bool:
    if classes is None:
        return False
    side = {}
    for label, members in enumerate(classes):
        for v in members:
            side[v] = label
    return len(side) == graph.num_vertices and all(side[u] != side[w] for u, w in graph.edges)


def _instance_error(n: int, m: int, r: int, error: BaseException) -> CheckRecord:
    """Record holding a single InstanceError Fail; tagged OTHER when the moduli are invalid."""
    try:
        case_tag = classify(RingSpec(n, m)).case_tag
    except ValueError:
        case_tag = CaseTag.OTHER
    record = CheckRecord(n, m, r, case_tag)
    record.checks.append(CheckResult("InstanceError", None, str(error), CheckStatus.FAIL, type(error).__name__))
    return record


async def _run_guarded(
        loop: asyncio.AbstractEventLoop,
        pool: Executor,
        n: int,
        m: int,
        r: int,
        config: SweepConfig,
) -> CheckRecord:
    """check_instance on the pool; a worker that dies or cannot be reached fails only its instance."""
    try:
        return await loop.run_in_executor(pool, check_instance, n, m, r, config)
    except Exception as e:
        logging.error(f"Worker for ({n}, {m}, {r}) failed with {type(e).__name__}: {e}")
        return _instance_error(n, m, r, e)


def check_instance(n: int, m: int, r: int, config: Optional[SweepConfig] = None) -> CheckRecord:
    """
    Build, measure and check one instance; never raises.

    An exception inside the pipeline becomes a Fail check named InstanceError,
    so a sweep always completes.
    """
    config = config or SweepConfig()
    try:
        checker = InstanceChecker(n, m, r, config)
    except Exception as e:
        logging.error(f"Instance ({n}, {m}, {r}) could not be set up: {e}")
        return _instance_error(n, m, r, e)

    try:
        record = checker.run()
    except Exception as e:
        logging.error(f"Instance ({n}, {m}, {r}) raised {type(e).__name__}: {e}")
        record = checker.record
        record.checks.append(CheckResult("InstanceError", None, str(e), CheckStatus.FAIL, type(e).__name__))
    logging.debug(f"Checked ({n}, {m}, {r}): {len(record.checks)} checks")
    return record


def summarize(records: List[CheckRecord]) -> dict:
    """Status counts per check name and per case tag, keys sorted."""
    by_check: Dict[str, Dict[str, int]] = {}
    by_case: Dict[str, Dict[str, int]] = {}
    for record in records:
        for result in record.checks:
            status = result.status.value
            per_check = by_check.setdefault(result.name, {})
            per_check[status] = per_check.get(status, 0) + 1
            per_case = by_case.setdefault(record.case_tag.value, {})
            per_case[status] = per_case.get(status, 0) + 1
    return {
        "by_check": {name: dict(sorted(counts.items())) for name, counts in sorted(by_check.items())},
        "by_case": {tag: dict(sorted(counts.items())) for tag, counts in sorted(by_case.items())},
        "instances": len(records),
    }


async def sweep_async(config: SweepConfig, executor: Optional[Executor] = None) -> SweepReport:
    """
    Check every instance of the config, in parallel when jobs > 1.

    Args:
        config: Ranges, fields and resource caps
        executor: Pool to run instances on; a ProcessPoolExecutor of width
            config.jobs is created (and shut down) when omitted

    Returns:
        SweepReport whose records are ordered by (n, m, r) regardless of
        completion order
    """
    instances = config.instances()
    logging.info(f"Sweeping {len(instances)} instances with {config.jobs} worker(s)")

    if executor is None and config.jobs == 1:
        records = [check_instance(n, m, r, config) for n, m, r in instances]
    else:
        loop = asyncio.get_running_loop()
        pool = executor or ProcessPoolExecutor(max_workers=config.jobs)
        try:
            futures = [_run_guarded(loop, pool, n, m, r, config) for n, m, r in instances]
            records = list(await asyncio.gather(*futures))
        finally:
            if executor is None:
                pool.shutdown()

    records.sort(key=lambda record: record.key)
    return SweepReport(config=config, records=records, summary=summarize(records))


def sweep(config: SweepConfig) -> SweepReport:
    """Synchronous wrapper around sweep_async."""
    return asyncio.run(sweep_async(config))


# ===== Reports =====

def encode_value(value: object) -> object:
    """JSON-ready form of a predicted or observed value."""
    if value is INFINITE:
        return "Infinite"
    if isinstance(value, Unknown):
        return str(value)
    if isinstance(value, CodeParams):
        return [encode_value(v) for v in value.as_list()]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return value


def _check_to_dict(result: CheckResult) -> dict:
    data = {
        "name": result.name,
        "predicted": encode_value(result.predicted),
        "observed": encode_value(result.observed),
        "status": result.status.value,
    }
    if result.reason is not None:
        data["reason"] = result.reason
    return data


def report_to_dict(report: SweepReport) -> dict:
    return {
        "config": report.config.to_dict(),
        "records": [
            {
                "n": record.n,
                "m": record.m,
                "r": record.r,
                "case": record.case_tag.value,
                "checks": [_check_to_dict(result) for result in record.checks],
            }
            for record in report.records
        ],
        "summary": report.summary,
    }


def report_to_json(report: SweepReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def write_json(report: SweepReport, path: Union[str, Path]) -> None:
    Path(path).write_text(report_to_json(report), encoding="utf-8")
    logging.info(f"Wrote JSON report to {path}")


CSV_HEADER = ["n", "m", "r", "case", "check", "predicted", "observed", "status", "reason"]


def _csv_cell(value: object) -> str:
    encoded = encode_value(value)
    if encoded is None:
        return ""
    if isinstance(encoded, str):
        return encoded
    return json.dumps(encoded, separators=(",", ":"))


def write_csv(report: SweepReport, path: Union[str, Path]) -> None:
    """One row per check in record order."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in report.records:
            for result in record.checks:
                writer.writerow([
                    record.n, record.m, record.r, record.case_tag.value, result.name,
                    _csv_cell(result.predicted), _csv_cell(result.observed),
                    result.status.value, result.reason or "",
                ])
    logging.info(f"Wrote CSV report to {path}")


def exit_code(records: List[CheckRecord]) -> int:
    """2 iff some proven-theorem check failed."""
    return 2 if any(record.has_failure() for record in records) else 0
