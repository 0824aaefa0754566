import asyncio
from unitcodes import UnitCodeAPI
from unitcodes.objects import ExportFormat, export_graph


async def main():
    """Example: graphs, codes and a small verification sweep."""

    async with UnitCodeAPI(jobs=2) as api:
        graph = api.Graph(5, 5)
        print(f"G(Z5+Z5): {graph.num_vertices} vertices, {graph.num_edges} edges")

        inv = graph.invariants()
        print(f"Diameter: {inv.diameter}, girth: {inv.girth}, lambda: {inv.edge_connectivity}")

        # Incidence code over GF(2) against the closed form
        code = api.Code(3, 5, 2)
        print(f"\nC_2(H) for Z3+Z5: {code.params()}")
        print(f"Predicted: {api.predict(3, 5, 2).primal}")
        print(f"Dual distance: {code.dual_min_distance()}")

        # Small exports are handy for eyeballing
        print(export_graph(api.Graph(3, 2), ExportFormat.EDGE_LIST).decode())

        # Several instances concurrently on the worker pool
        print("Checking instances concurrently...")
        records = await asyncio.gather(
            api.check(3, 4, 3),
            api.check(5, 5, 2),
            api.check(6, 4, 3),
        )
        for record in records:
            failed = [c.name for c in record.checks if c.status.value == "Fail"]
            print(f"  {record.key} {record.case_tag.value}: {len(record.checks)} checks, failed {failed}")

        report = await api.verify((2, 7), (2, 7), (2, 3))
        print(f"\nSweep of {report.summary['instances']} instances, exit code {report.exit_code}")


if __name__ == "__main__":
    asyncio.run(main())
