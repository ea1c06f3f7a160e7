import json

import pytest

from hclustpants import bench
from hclustpants.treecluster import APPROXIMATION_RATIO


def test_rows_ordered_and_deterministic():
    a = bench.run_suite("metric", [7, 6], 3)
    b = bench.run_suite("metric", [6, 7], 3)
    assert [(r.n, r.seed) for r in a] == [(6, 0), (6, 1), (6, 2), (7, 0), (7, 1), (7, 2)]
    assert a == b


def test_parallel_matches_serial():
    assert bench.run_suite("euclid", [5], 4, jobs=2) == bench.run_suite("euclid", [5], 4)


def test_metric_suite_ratio():
    rows = bench.run_suite("metric", [6, 8, 10], 10)
    assert max(r.ratio_lower for r in rows) <= APPROXIMATION_RATIO
    assert min(r.ratio_oracle for r in rows) >= 1.0 - 1e-12


def test_msthull_suite():
    rows = bench.run_suite("msthull", [40], 5)
    assert all(r.normalized <= 2.0 for r in rows)


def test_star_suite_has_no_oracle_above_limit():
    rows = bench.run_suite("star", [8, 32], 1)
    assert rows[0].oracle is not None and rows[1].oracle is None


def test_oracle_limit():
    with pytest.raises(ValueError):
        bench.run_suite("metric", [16], 1)


def test_table_respects_no_color(monkeypatch):
    class Tty:
        def isatty(self):
            return True

    rep = bench.report("metric", bench.run_suite("metric", [6], 2), 2)
    assert "\x1b[" in bench.format_table(rep, Tty())
    monkeypatch.setenv("NO_COLOR", "1")
    assert "\x1b[" not in bench.format_table(rep, Tty())
    json.dumps(rep)
