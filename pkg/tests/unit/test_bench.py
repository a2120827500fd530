# tests/unit/test_bench.py
import orjson
import pytest

from src.harness.bench import (
    BenchRecord,
    BenchReport,
    config_hash,
    fit_slope,
    run_indexing_bench,
    run_learning_bench,
)


class TestHelpers:
    """Test suite for benchmark helpers."""

    def test_fit_slope_linear(self):
        assert fit_slope([10, 100, 1000], [2, 20, 200]) == pytest.approx(1.0)

    def test_fit_slope_needs_two_sizes(self):
        assert fit_slope([10], [1.0]) is None
        assert fit_slope([10, 10], [1.0, 2.0]) is None

    def test_config_hash_depends_on_caps(self, phi1):
        base = config_hash(phi1, ("a", "b"), {"monoid_cap": 10})

        assert len(base) == 16
        assert base == config_hash(phi1, ("a", "b"), {"monoid_cap": 10})
        assert base != config_hash(phi1, ("a", "b"), {"monoid_cap": 11})
        assert base != config_hash(phi1, ("a", "b", "c"), {"monoid_cap": 10})

    def test_summary_frame(self):
        report = BenchReport(suite="learning", formula="Ra(x)", records=[
            BenchRecord(operation="learn", n=10, seconds=1.0, nodes_touched=4, config_hash="h"),
            BenchRecord(operation="learn", n=10, seconds=3.0, nodes_touched=6, config_hash="h"),
        ])

        frame = report.summary_frame()

        assert frame.height == 1
        assert frame["mean_seconds"][0] == pytest.approx(2.0)
        assert frame["mean_nodes_touched"][0] == pytest.approx(5.0)
        assert frame["runs"][0] == 2
        assert "log-log slope: n/a" in report.render()


class TestRunBench:
    """Test suite for the bench runners on small sizes."""

    def test_indexing_bench(self, phi1):
        report = run_indexing_bench(phi1, [8, 16, 32], repeats=1, show_progress=False)

        assert report.suite == "indexing"
        assert [r.n for r in report.records] == [8, 16, 32]
        assert all(r.index_bytes > 0 for r in report.records)
        assert len({r.config_hash for r in report.records}) == 1
        assert report.slope is not None

    def test_learning_bench(self, phi1):
        report = run_learning_bench(phi1, [10, 20], t=4, queries=3, workers=2, show_progress=False)

        assert len(report.records) == 6
        assert all(r.operation == "learn" and r.t == 4 for r in report.records)
        payload = orjson.loads(report.to_json())
        assert payload["suite"] == "learning"
        assert len(payload["records"]) == 6

    def test_progress_bar_advances_per_run(self, phi1, mocker):
        bar_cls = mocker.patch("src.harness.bench.Bar")

        run_indexing_bench(phi1, [8, 16], repeats=2)

        bar_cls.assert_called_once_with("Indexing", max=4)
        assert bar_cls.return_value.next.call_count == 4
        bar_cls.return_value.finish.assert_called_once()
