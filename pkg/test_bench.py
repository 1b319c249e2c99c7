"""
Tests for the bench runner
Ledger records, growth fit and output files
"""
import os

import pandas as pd
import pytest

from artifact_store import load_job, load_sentence
from bench import BENCH_COLUMNS, BenchRecord, bench_family, fit_growth
from catalog import build_catalog
from sentence_synth import SYNTH_CONSTANTS

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def jobs(*names):
    return [load_job(os.path.join(FIXTURES, "jobs", f"{name}.json")) for name in names]


def small_catalog():
    return [entry for entry in build_catalog() if entry.order <= 8]


def test_empty_bench():
    result = bench_family([], sweep=False, workers=1)
    assert result.records == []
    assert result.fit.points == 0
    assert result.fit.slope is None
    assert list(result.frame().columns) == BENCH_COLUMNS


def test_wrong_v_is_recorded_not_raised():
    result = bench_family(jobs("a5_wrong_v"), sweep=False, workers=1)
    record = result.records[0]
    assert record.status == "DiameterExceeded"
    assert record.symbol_count is None
    assert record.v == 1
    assert record.error


def test_deep_job_within_factor_two_of_bound():
    record = bench_family(jobs("c2_deep"), sweep=False, workers=1).records[0]
    assert record.status == "ok"
    assert record.symbol_count == 227
    assert record.bound == 273
    assert record.symbol_count <= record.bound <= 2 * record.symbol_count
    assert record.holds_on_target
    assert record.v_min == 0


def test_sweep_marks_unique_sentence():
    record = bench_family(jobs("c3"), catalog=small_catalog(), workers=1).records[0]
    assert record.unique is True
    assert record.sweep_max_order == 400


def test_growth_fit():
    result = bench_family(jobs("c2", "c2_deep", "c3"), sweep=False, workers=1)
    fit = result.fit
    assert fit.points == 3
    assert fit.slope > 0
    assert fit.ratio_max < SYNTH_CONSTANTS.D + SYNTH_CONSTANTS.E


def test_fit_skips_failed_records():
    records = [
        BenchRecord(name="a", order=2, presentation_length=3, v=0, symbol_count=23),
        BenchRecord(name="b", order=2, presentation_length=3, status="DiameterExceeded"),
    ]
    fit = fit_growth(records)
    assert fit.points == 1
    assert fit.slope is None
    assert fit.ratio_min == fit.ratio_max == 23 / 3


def test_output_files_are_stable(tmp_path):
    out = str(tmp_path)
    bench_family(jobs("c2", "c3"), sweep=False, out_dir=out, workers=1)
    with open(os.path.join(out, "bench.csv"), encoding="utf-8") as handle:
        first = handle.read()
    bench_family(jobs("c2", "c3"), sweep=False, out_dir=out, workers=1)
    with open(os.path.join(out, "bench.csv"), encoding="utf-8") as handle:
        assert handle.read() == first

    frame = pd.read_csv(os.path.join(out, "bench.csv"))
    assert list(frame.columns) == BENCH_COLUMNS
    assert list(frame["name"]) == ["c2", "c3"]
    assert os.path.exists(os.path.join(out, "bench.json"))
    assert load_sentence(os.path.join(out, "c2.sexp")).free_vars == frozenset()


def test_parallel_bench_matches_serial():
    serial = bench_family(jobs("c2", "c3", "a5_wrong_v"), sweep=False, workers=1)
    parallel = bench_family(jobs("c2", "c3", "a5_wrong_v"), sweep=False, workers=2)
    assert [r.ledger_row() for r in serial.records] == [r.ledger_row() for r in parallel.records]


@pytest.mark.slow
def test_alternating_family_is_unique():
    result = bench_family(jobs("a4", "a5", "a6"), catalog=build_catalog(), workers=1)
    assert [r.status for r in result.records] == ["ok"] * 3
    assert all(r.unique for r in result.records)
    assert all(r.symbol_count <= r.bound for r in result.records)
