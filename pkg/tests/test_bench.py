import pytest

from modenergy.bench import BenchRow, disagreements, grouped_bound, parse_sizes, run_bench


def test_parse_sizes():
    assert parse_sizes("100,5:12") == [(100, 100), (5, 12)]
    assert parse_sizes("1e6") == [(10**6, 10**6)]
    for bad in ("", "1:2:3", "x", "5:", "0"):
        with pytest.raises(ValueError):
            parse_sizes(bad)


def test_grouped_bound():
    assert grouped_bound(10**6, 10**6) == 2002
    assert grouped_bound(10, 10**9) == 2 * 4 + 2


def test_run_bench_rows_agree():
    logs = []
    rows = run_bench([(100, 100), (7, 23)], reps=3, backend="both", log=logs.append)
    assert rows and all(isinstance(r, BenchRow) for r in rows)
    assert disagreements(rows) == []
    assert any("diagonal" in msg for msg in logs)  # m != n skipped
    grouped = [r for r in rows if r.algo == "grouped"]
    assert all(r.work <= grouped_bound(r.m, r.n) for r in grouped)


def test_run_bench_budget_skips():
    logs = []
    rows = run_bench([(10**9, 10**9)], reps=3, algos=("naive", "grouped"), log=logs.append)
    assert [r.algo for r in rows] == ["grouped"]
    assert any("skip naive" in msg for msg in logs)
    with pytest.raises(ValueError):
        run_bench([(5, 5)], reps=2)
