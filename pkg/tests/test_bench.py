import math

import pytest

from rit_layout import GeneratorSpec, fit_linear, run_bench
from rit_layout.bench import (
    BenchRecord,
    compare_kernels,
    records_from_csv,
    records_to_csv,
)
from rit_layout.measure import have_compiled_kernel


class TestFitLinear:
    def test_exact_line(self):
        fit = fit_linear([(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)])
        assert fit.slope == pytest.approx(2.0, rel=1e-12)
        assert fit.intercept == pytest.approx(1.0, rel=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_constant_y_convention(self):
        fit = fit_linear([(0.0, 2.0), (1.0, 2.0), (5.0, 2.0)])
        assert fit.slope == 0.0
        assert fit.r_squared == 0.0

    def test_requires_two_distinct_abscissae(self):
        with pytest.raises(ValueError):
            fit_linear([(1.0, 2.0), (1.0, 3.0)])

    def test_noisy_line_r2_below_one(self):
        pts = [(x, 2.0 * x + (1 if x % 2 else -1)) for x in range(10)]
        fit = fit_linear([(float(x), float(y)) for x, y in pts])
        assert 0.9 < fit.r_squared < 1.0


class TestRunBench:
    def test_records_and_visits(self):
        specs = [GeneratorSpec("fixed", 2, d, seed=d) for d in range(1, 5)]
        result = run_bench(specs, repeats=2, node_cap=10_000)
        assert len(result.records) == 8
        for rec in result.records:
            assert rec.visits == 3 * (rec.nodes - 1) + 1
            assert rec.seconds >= 0.0
        assert result.fit.defined
        assert [r.nodes for r in result.records[::2]] == [3, 7, 15, 31]

    def test_node_cap_skips_with_record(self):
        specs = [GeneratorSpec("fixed", 2, 2), GeneratorSpec("fixed", 2, 10)]
        result = run_bench(specs, repeats=1, node_cap=100)
        assert len(result.skipped) == 1
        assert result.skipped[0][0].depth == 10
        assert {r.depth for r in result.records} == {2}

    def test_single_spec_fit_undefined(self):
        result = run_bench([GeneratorSpec("fixed", 2, 3)], repeats=3, node_cap=1000)
        assert not result.fit.defined
        assert math.isnan(result.fit.slope)

    def test_parallel_geometry_identical(self):
        specs = [GeneratorSpec("random", 4, d, seed=d) for d in range(2, 5)]
        serial = run_bench(specs, repeats=1, node_cap=10_000, parallel=False)
        parallel = run_bench(specs, repeats=1, node_cap=10_000, parallel=True)
        assert serial.digests == parallel.digests
        assert parallel.parallel

    def test_repeat_determinism(self):
        specs = [GeneratorSpec("semi-random", 5, 3, seed=11)]
        a = run_bench(specs, repeats=2, node_cap=10_000)
        b = run_bench(specs, repeats=2, node_cap=10_000)
        assert a.digests == b.digests


class TestCsv:
    def test_round_trip(self):
        records = [
            BenchRecord("fixed", 2, 3, 15, 0, 0.00123456789, 43),
            BenchRecord("random", 8, 2, 9, 1, 0.5, 25),
        ]
        assert records_from_csv(records_to_csv(records)) == records

    def test_header(self):
        text = records_to_csv([])
        assert text.splitlines()[0] == "generator,cmax,depth,nodes,repeat,seconds,visits"

    def test_bad_header_rejected(self):
        with pytest.raises(ValueError):
            records_from_csv("a,b,c\n1,2,3\n")


class TestKernelComparison:
    def test_rows_have_timings_and_agreement(self):
        rows = compare_kernels([GeneratorSpec("fixed", 2, 3, seed=1)], max_arc_step=1e-3)
        assert len(rows) == 1
        row = rows[0]
        assert row["python_seconds"] > 0.0
        if have_compiled_kernel():
            assert row["compiled_seconds"] > 0.0
            assert row["max_rel_disagreement"] < 1e-9
