"""
Indexing and learning benchmarks.

Indexing time should grow linearly in |B| (log-log slope near 1); learning
work should not grow with |B| at all once the index exists.
"""
import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

import numpy as np
import orjson
import polars as pl
from loguru import logger
from progress.bar import Bar
from pydantic import BaseModel, Field

from src.config import settings
from src.corpus.random_gen import gen_random_consistent, random_word
from src.formula.ast import FormulaAST
from src.harness.persistence import save_index
from src.learner.algorithm import QueryStats, learn_parameters
from src.learner.index import Index, build_index


class BenchRecord(BaseModel):
    operation: str
    n: int
    t: int = 0
    seconds: float
    nodes_touched: int = 0
    products: int = 0
    index_bytes: int = 0
    config_hash: str


class BenchReport(BaseModel):
    """Benchmark records plus the fitted log-log slope of time against |B|."""
    suite: str
    formula: str
    records: List[BenchRecord] = Field(default_factory=list)
    slope: Optional[float] = None

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame([r.model_dump() for r in self.records])

    def summary_frame(self) -> pl.DataFrame:
        """Mean time and work per (operation, n)."""
        return (
            self.to_frame()
            .group_by(["operation", "n"])
            .agg(
                pl.col("seconds").mean().alias("mean_seconds"),
                pl.col("nodes_touched").mean().alias("mean_nodes_touched"),
                pl.col("products").mean().alias("mean_products"),
                pl.len().alias("runs"),
            )
            .sort(["operation", "n"])
        )

    def render(self) -> str:
        slope = "n/a" if self.slope is None else f"{self.slope:.3f}"
        return f"{self.summary_frame()}\nlog-log slope: {slope}"

    def to_json(self) -> bytes:
        return orjson.dumps(self.model_dump(), option=orjson.OPT_INDENT_2)


def config_hash(phi: FormulaAST, alphabet: Sequence[str], caps: Optional[Dict[str, int]] = None) -> str:
    """Hash of formula, alphabet and caps identifying comparable runs."""
    payload = {
        "formula": phi.text(),
        "alphabet": list(alphabet),
        "caps": caps if caps is not None else settings.caps_dict(),
    }
    return hashlib.sha256(orjson.dumps(payload, option=orjson.OPT_SORT_KEYS)).hexdigest()[:16]


def fit_slope(sizes: Sequence[float], values: Sequence[float]) -> Optional[float]:
    """Slope of log(value) against log(size); None with fewer than two sizes."""
    points = [(s, v) for s, v in zip(sizes, values) if s > 0 and v > 0]
    if len({s for s, _ in points}) < 2:
        return None
    x = np.log([s for s, _ in points])
    y = np.log([v for _, v in points])
    return float(np.polyfit(x, y, 1)[0])


def _alphabet(phi: FormulaAST, alphabet: Optional[Sequence[str]]) -> Sequence[str]:
    return tuple(alphabet) if alphabet is not None else (phi.alphabet or tuple(sorted(phi.letters())))


def run_indexing_bench(
    phi: FormulaAST,
    sizes: Sequence[int],
    alphabet: Optional[Sequence[str]] = None,
    repeats: Optional[int] = None,
    seed: int = 0,
    show_progress: bool = True,
) -> BenchReport:
    """Time build_index on random words of each size (best of ``repeats``)."""
    letters = _alphabet(phi, alphabet)
    repeats = settings.bench_repeats if repeats is None else repeats
    digest = config_hash(phi, letters)
    report = BenchReport(suite="indexing", formula=phi.text())
    best: List[float] = []
    bar = Bar("Indexing", max=len(sizes) * repeats) if show_progress else None
    try:
        for n in sizes:
            word = random_word(int(n), letters, seed + int(n))
            times = []
            index: Optional[Index] = None
            for _ in range(repeats):
                started = time.perf_counter()
                index = build_index(word, phi, verify=False)
                times.append(time.perf_counter() - started)
                if bar is not None:
                    bar.next()
            best.append(min(times))
            report.records.append(BenchRecord(
                operation="index",
                n=word.n,
                seconds=min(times),
                nodes_touched=index.build_stats.nodes_touched,
                products=index.build_stats.products,
                index_bytes=len(save_index(index)),
                config_hash=digest,
            ))
    finally:
        if bar is not None:
            bar.finish()
    report.slope = fit_slope([r.n for r in report.records], best)
    logger.info(f"indexing bench over {list(sizes)}: slope {report.slope}")
    return report


def run_learning_bench(
    phi: FormulaAST,
    sizes: Sequence[int],
    alphabet: Optional[Sequence[str]] = None,
    t: Optional[int] = None,
    queries: int = 8,
    workers: Optional[int] = None,
    seed: int = 0,
    show_progress: bool = True,
) -> BenchReport:
    """
    Time learn_parameters for consistent training sets of size t.

    Each size is indexed once; the queries then run concurrently against
    that one index.
    """
    letters = _alphabet(phi, alphabet)
    t = settings.bench_query_size if t is None else t
    workers = settings.bench_workers if workers is None else workers
    digest = config_hash(phi, letters)
    report = BenchReport(suite="learning", formula=phi.text())
    means: List[float] = []

    def query(index: Index, training) -> BenchRecord:
        stats = QueryStats()
        started = time.perf_counter()
        learn_parameters(index, training, stats)
        return BenchRecord(
            operation="learn",
            n=index.word.n,
            t=len(training),
            seconds=time.perf_counter() - started,
            nodes_touched=stats.nodes_touched,
            products=stats.products,
            config_hash=digest,
        )

    bar = Bar("Learning", max=len(sizes) * queries) if show_progress else None
    try:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for n in sizes:
                word = random_word(int(n), letters, seed + int(n))
                index = build_index(word, phi, verify=False)
                trainings = [
                    gen_random_consistent(word, phi, min(t, word.n), seed + q).training for q in range(queries)
                ]
                records = []
                for record in pool.map(lambda training: query(index, training), trainings):
                    records.append(record)
                    if bar is not None:
                        bar.next()
                report.records.extend(records)
                means.append(float(np.mean([r.seconds for r in records])))
    finally:
        if bar is not None:
            bar.finish()
    report.slope = fit_slope([int(n) for n in sizes], means)
    logger.info(f"learning bench over {list(sizes)}: slope {report.slope}")
    return report
