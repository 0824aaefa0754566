import asyncio

import pytest

from unitcodes import UnitCodeAPI, __version__
from unitcodes.types import CheckStatus, CodeParams, TheoremSource
from unitcodes.verify import report_to_json


def test_version():
    assert __version__ == "0.1.0"


def test_rejects_zero_jobs():
    with pytest.raises(ValueError):
        UnitCodeAPI(jobs=0)


def test_factories():
    api = UnitCodeAPI()
    assert api.Graph(5, 5) is api.Graph(5, 5)
    assert api.Ring(3, 4).order == 12
    assert api.Profile(15, 21).case_tag.value == "PPPP_OddOdd"

    code = api.Code(3, 5, 2)
    assert code.graph is api.Graph(3, 5)
    assert code.params() == CodeParams(56, 14, 7)
    assert api.predict(3, 5, 2).source == TheoremSource.S4_C2


def test_context_manager_owns_the_pool():
    async def scenario():
        api = UnitCodeAPI(jobs=2, budget=2 ** 16)
        async with api:
            assert api.is_running()
            records = await asyncio.gather(api.check(3, 2, 3), api.check(5, 5, 2))
        assert not api.is_running()
        return records

    hexagon, z5 = asyncio.run(scenario())
    assert hexagon.key == (3, 2, 3)
    assert hexagon.check("DualDistanceVsPredicted").observed == 6
    assert z5.check("EdgeCountFormula").observed == 192
    assert not hexagon.has_failure() and not z5.has_failure()


def test_serial_api_runs_in_process():
    async def scenario():
        async with UnitCodeAPI() as api:
            assert not api.is_running()
            return await api.check(3, 4, 3)

    record = asyncio.run(scenario())
    assert record.check("CodeParamsVsPredicted").status == CheckStatus.PASS


def test_verify_on_pool_matches_serial():
    async def scenario(jobs):
        async with UnitCodeAPI(jobs=jobs, budget=2 ** 16) as api:
            return await api.verify((2, 5), (2, 4), (2, 3))

    parallel = asyncio.run(scenario(2))
    serial = asyncio.run(scenario(1))
    assert [record.key for record in parallel.records] == [record.key for record in serial.records]
    assert report_to_json(parallel) == report_to_json(serial)
    assert parallel.exit_code == 0
