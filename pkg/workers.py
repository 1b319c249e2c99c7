"""
Workers Module
Process-pool fan-out for model checking and bench jobs
"""
import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


def split_range(n: int, parts: int) -> List[range]:
    """Split range(n) into at most parts contiguous, nonempty chunks"""
    parts = max(1, min(parts, n))
    size, extra = divmod(n, parts)
    chunks = []
    start = 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        chunks.append(range(start, stop))
        start = stop
    return [c for c in chunks if len(c)]


def _check_chunk(payload: Tuple[Any, Any, range, Optional[int], Optional[bool]]) -> Tuple[bool, int]:
    """Evaluate the body of a quantifier at every value of one chunk"""
    from fo_syntax import Exists
    from model_check import Environment, ModelChecker

    sentence, table, chunk, budget, memo = payload
    checker = ModelChecker(table, budget=budget, memo=memo)
    decisive = isinstance(sentence, Exists)
    nodes = 0
    for value in chunk:
        outcome = checker.evaluate(sentence.body, Environment({sentence.var: value}))
        nodes += outcome.nodes_visited
        if outcome.value == decisive:
            return True, nodes
    return False, nodes


def check_split(sentence, table, jobs: int, budget: Optional[int] = None,
                memo: Optional[bool] = None):
    """
    Model-check a sentence with its outermost quantifier split across processes

    Args:
        sentence: Closed formula whose root is a quantifier
        table: GroupTable to evaluate in
        jobs: Worker process count
        budget: Node budget per chunk
        memo: Memoization setting passed to each worker

    Returns:
        CheckOutcome with nodes summed over chunks
    """
    from fo_syntax import Exists
    from model_check import CheckOutcome

    chunks = split_range(table.order, jobs)
    payloads = [(sentence, table, chunk, budget, memo) for chunk in chunks]
    start = time.perf_counter()
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        results = list(pool.map(_check_chunk, payloads))
    elapsed = time.perf_counter() - start

    decided = any(found for found, _ in results)
    nodes = 1 + sum(n for _, n in results)
    value = decided if isinstance(sentence, Exists) else not decided
    logger.debug(f"Split check over {len(chunks)} chunks: {value} ({nodes:,} nodes)")
    return CheckOutcome(value=value, nodes_visited=nodes, elapsed=elapsed)


async def _run_all(func: Callable, items: Sequence, jobs: int) -> List[Any]:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        tasks = [loop.run_in_executor(pool, func, item) for item in items]
        return await asyncio.gather(*tasks, return_exceptions=True)


def run_jobs(func: Callable, items: Sequence, jobs: int) -> List[Any]:
    """
    Apply func to every item, at most jobs at a time

    Exceptions are returned in place of results, in item order.
    """
    if jobs <= 1 or len(items) <= 1:
        results = []
        for item in items:
            try:
                results.append(func(item))
            except Exception as e:
                results.append(e)
        return results
    logger.info(f"Running {len(items)} jobs on {jobs} workers")
    return asyncio.run(_run_all(func, items, jobs))
