"""
Bench Module
Runs describing-sentence jobs end to end and keeps the length ledger
"""
import functools
import logging
import os
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from artifact_store import save_sentence, write_frame, write_json
from catalog import CatalogEntry
from config import Config
from exceptions import DescribeError
from fo_syntax import length
from group_kernel import Group, ceil_log2
from model_check import check_sentence, describes_uniquely
from sentence_synth import (SYNTH_CONSTANTS, DescriptionJob,
                            describing_sentence, psi_bound_for,
                            verify_presentation)
from workers import run_jobs

logger = logging.getLogger(__name__)

# Ledger columns, in file order
BENCH_COLUMNS = [
    "name", "order", "presentation_length", "diameter", "v", "v_min",
    "symbol_count", "bound", "holds_on_target", "unique", "status",
    "error", "sweep_max_order",
]


@dataclass
class BenchRecord:
    """One row of the compressibility ledger"""
    name: str
    order: int
    presentation_length: int
    diameter: Optional[int] = None
    v: Optional[int] = None
    v_min: Optional[int] = None
    symbol_count: Optional[int] = None
    bound: Optional[int] = None
    holds_on_target: Optional[bool] = None
    unique: Optional[bool] = None
    status: str = "ok"
    error: str = ""
    sweep_max_order: int = 0
    check_time: float = 0.0

    def ledger_row(self) -> Dict[str, Any]:
        row = asdict(self)
        return {column: row[column] for column in BENCH_COLUMNS}


@dataclass
class GrowthFit:
    """Least-squares line of symbol_count against v + l"""
    slope: Optional[float]
    intercept: Optional[float]
    ratio_min: Optional[float]
    ratio_max: Optional[float]
    points: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class BenchResult:
    records: List[BenchRecord]
    fit: GrowthFit

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.ledger_row() for r in self.records], columns=BENCH_COLUMNS)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "constants": SYNTH_CONSTANTS.to_dict(),
            "records": [r.ledger_row() for r in self.records],
            "fit": self.fit.to_dict(),
        }


def _bench_one(job: DescriptionJob, catalog: Sequence[Tuple[str, Group]], sweep: bool,
               max_order: int, out_dir: Optional[str]) -> BenchRecord:
    presentation = job.presentation
    record = BenchRecord(
        name=job.name,
        order=job.target.order,
        presentation_length=presentation.presentation_length,
        sweep_max_order=max_order,
    )
    try:
        report = verify_presentation(job)
        record.diameter = report.diameter
        record.v = report.v
        record.v_min = ceil_log2(report.diameter) if report.diameter is not None else None

        sentence = describing_sentence(job)
        record.symbol_count = length(sentence).symbol_count
        record.bound = psi_bound_for(job, record.v)

        start = time.perf_counter()
        record.holds_on_target = check_sentence(sentence, job.target, jobs=1).value
        record.check_time = time.perf_counter() - start

        if sweep and catalog:
            if job.target.order > max_order:
                logger.warning(f"{job.name}: target order {job.target.order} above sweep cap {max_order}")
            else:
                cap = min(2 * job.target.order, max_order)
                uniqueness = describes_uniquely(sentence, job.target, catalog, max_order=cap)
                record.unique = uniqueness.unique

        if out_dir:
            save_sentence(sentence, os.path.join(out_dir, f"{job.name}.sexp"),
                          comments=[f"describing sentence for {job.name}",
                                    f"symbols {record.symbol_count}, v {record.v}, "
                                    f"l {record.presentation_length}"])
    except DescribeError as e:
        record.status = type(e).__name__
        record.error = str(e)
        logger.warning(f"Bench job {job.name} failed: {record.status}: {e}")
    return record


def fit_growth(records: Sequence[BenchRecord]) -> GrowthFit:
    """Fit symbol_count = slope * (v + l) + intercept over successful records"""
    done = [r for r in records if r.status == "ok" and r.symbol_count is not None]
    if not done:
        return GrowthFit(None, None, None, None, 0)
    x = np.array([r.v + r.presentation_length for r in done], dtype=float)
    y = np.array([r.symbol_count for r in done], dtype=float)
    ratios = y / x
    slope, intercept = (None, None)
    if len(np.unique(x)) >= 2:
        slope, intercept = (float(c) for c in np.polyfit(x, y, 1))
    return GrowthFit(slope, intercept, float(ratios.min()), float(ratios.max()), len(done))


def bench_family(jobs: Sequence[DescriptionJob], catalog: Optional[Sequence[CatalogEntry]] = None,
                 sweep: bool = True, out_dir: Optional[str] = None,
                 workers: Optional[int] = None) -> BenchResult:
    """
    Synthesize, check and sweep every job; failures are recorded, not raised

    Args:
        jobs: Description jobs
        catalog: Groups for the uniqueness sweep
        sweep: Run the uniqueness sweep
        out_dir: Write sentences plus bench.csv / bench.json here
        workers: Parallel jobs (default Config.JOBS)

    Returns:
        BenchResult with one record per job and the growth fit
    """
    pairs = [(entry.name, entry.table) for entry in catalog or []]
    run = functools.partial(_bench_one, catalog=pairs, sweep=sweep,
                            max_order=Config.SWEEP_MAX_ORDER, out_dir=out_dir)
    results = run_jobs(run, list(jobs), Config.JOBS if workers is None else workers)

    records = []
    for job, result in zip(jobs, results):
        if isinstance(result, BaseException):
            logger.error(f"Bench job {job.name} crashed: {result}")
            result = BenchRecord(name=job.name, order=job.target.order,
                                 presentation_length=job.presentation.presentation_length,
                                 status=type(result).__name__, error=str(result))
        records.append(result)

    bench = BenchResult(records=records, fit=fit_growth(records))
    for record in records:
        logger.info(f"{record.name}: {record.status}, symbols {record.symbol_count}, "
                    f"unique {record.unique}, check {record.check_time:.2f}s")

    if out_dir:
        write_frame(bench.frame(), os.path.join(out_dir, "bench.csv"))
        write_json(os.path.join(out_dir, "bench.json"), bench.to_dict())
    return bench
