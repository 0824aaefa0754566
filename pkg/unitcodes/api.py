import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Optional, Sequence, Tuple

from .core import RingSpec, classify
from .objects import DEFAULT_BUDGET, DEFAULT_DUAL_CAP, LinearCode, UnitGraph, predict
from .types import CheckRecord, PredictedParams, StructureProfile, SweepConfig, SweepReport
from .verify import check_instance, sweep_async


class UnitCodeAPI:
    """
    High-level entry point for unit graphs, their incidence codes and sweeps.

    Graphs are built once per (n, m) and shared by every code asked for on
    them. Used as an async context manager the API owns a process pool of
    width jobs, which verify() and check() schedule instances on.

    Example:
        async with UnitCodeAPI(jobs=4) as api:
            code = api.Code(3, 5, 2)
            print(code.params())                     # [56,14,7]
            report = await api.verify((2, 8), (2, 8), (2, 3))
            print(report.exit_code)                  # 0
    """

    def __init__(
            self,
            jobs: int = 1,
            budget: int = DEFAULT_BUDGET,
            dual_cap: int = DEFAULT_DUAL_CAP,
            max_matrix_entries: int = 200_000,
            max_flow_vertices: int = 900,
    ):
        if jobs < 1:
            raise ValueError(f"Parallelism width {jobs} must be at least 1")
        self.jobs = jobs
        self.budget = budget
        self.dual_cap = dual_cap
        self.max_matrix_entries = max_matrix_entries
        self.max_flow_vertices = max_flow_vertices
        self._executor: Optional[ProcessPoolExecutor] = None
        self._graphs: Dict[Tuple[int, int], UnitGraph] = {}

    async def start(self) -> None:
        """Start the worker pool; a no-op when jobs == 1."""
        if self.jobs > 1 and self._executor is None:
            self._executor = ProcessPoolExecutor(max_workers=self.jobs)
            logging.info(f"Started worker pool with {self.jobs} processes")

    async def shutdown(self) -> None:
        """Stop the worker pool, waiting for scheduled instances."""
        if self._executor is not None:
            executor, self._executor = self._executor, None
            await asyncio.get_running_loop().run_in_executor(None, executor.shutdown)
            logging.info("Worker pool stopped")

    def is_running(self) -> bool:
        return self._executor is not None

    async def __aenter__(self) -> "UnitCodeAPI":
        await self.start()
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        await self.shutdown()

    def config(
            self,
            n_range: Tuple[int, int],
            m_range: Tuple[int, int],
            fields: Sequence[int],
    ) -> SweepConfig:
        """SweepConfig carrying this API's caps and width."""
        return SweepConfig(
            n_range=tuple(n_range),
            m_range=tuple(m_range),
            fields=tuple(fields),
            budget=self.budget,
            dual_cap=self.dual_cap,
            jobs=self.jobs,
            max_matrix_entries=self.max_matrix_entries,
            max_flow_vertices=self.max_flow_vertices,
        )

    def Ring(self, n: int, m: int) -> RingSpec:
        """Create a RingSpec for Z_n (+) Z_m."""
        return RingSpec(n, m)

    def Profile(self, n: int, m: int) -> StructureProfile:
        """Classify Z_n (+) Z_m."""
        return classify(RingSpec(n, m))

    def Graph(self, n: int, m: int) -> UnitGraph:
        """Build (or reuse) the unit graph of Z_n (+) Z_m."""
        key = (n, m)
        if key not in self._graphs:
            self._graphs[key] = UnitGraph.build(RingSpec(n, m))
        return self._graphs[key]

    def Code(self, n: int, m: int, r: int) -> LinearCode:
        """Create the incidence code of G(Z_n (+) Z_m) over GF(r)."""
        return LinearCode.from_incidence(self.Graph(n, m), r)

    def predict(self, n: int, m: int, r: int) -> PredictedParams:
        return predict(self.Profile(n, m), r)

    async def check(self, n: int, m: int, r: int) -> CheckRecord:
        """Run every check for one instance, on the pool when one is running."""
        config = self.config((n, n), (m, m), (r,))
        if self._executor is None:
            return check_instance(n, m, r, config)
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(self._executor, check_instance, n, m, r, config)

    async def verify(
            self,
            n_range: Tuple[int, int],
            m_range: Tuple[int, int],
            fields: Sequence[int],
    ) -> SweepReport:
        """Sweep the ranges; records come back in (n, m, r) order."""
        return await sweep_async(self.config(n_range, m_range, fields), self._executor)
