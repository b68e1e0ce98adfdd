"""Latency measurement with length-bucketed statistics.

Inputs are grouped by length.  Each bucket is packed once and tokenized
as a batch until at least ``min_time`` seconds have elapsed (or a fixed
number of iterations); the per-input time of the bucket is the batch
time divided by the bucket size.  Every input is then assigned its
bucket's per-input time, and the mean and 95th percentile are taken over
those values.  With ``repeats > 1`` each bucket's value is the average
over repeats.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .e2e import E2EModel, text_runner
from .matcher import Batch, TokenizerModel, batch_runner

WORD_ENGINES = ("linmax", "fst", "naive")
TEXT_ENGINES = ("e2e", "e2e-naive")

# reported times are rounded to this many decimals (nanoseconds)
PRECISION = 1


@dataclass
class EngineResult:
    engine: str
    backend: str
    n_items: int
    mean_ns: float
    p95_ns: float
    bucket_ns: dict[int, float] = field(default_factory=dict)
    bucket_count: dict[int, int] = field(default_factory=dict)

    def line(self) -> str:
        return (f"{self.engine:<10} {self.backend:<7} n={self.n_items:<7} "
                f"mean_ns={self.mean_ns:.{PRECISION}f} p95_ns={self.p95_ns:.{PRECISION}f}")


@dataclass
class BenchReport:
    mode: str
    repeats: int
    warmup: int
    results: list[EngineResult]

    def by_engine(self, engine: str, backend: Optional[str] = None) -> EngineResult:
        for r in self.results:
            if r.engine == engine and (backend is None or r.backend == backend):
                return r
        raise KeyError(engine)


def bucketed_stats(lengths: Sequence[int], bucket_ns: dict[int, float], q: float = 95.0
                   ) -> tuple[float, float]:
    """Mean and ``q``-th percentile (linear interpolation) over the inputs,
    each represented by its bucket's per-input time."""
    per_item = np.fromiter((bucket_ns[n] for n in lengths), dtype=np.float64, count=len(lengths))
    return float(per_item.mean()), float(np.percentile(per_item, q))


def _time(run, min_time: float, iterations: Optional[int]) -> float:
    """Seconds per call of ``run``."""
    if iterations is not None:
        t0 = time.perf_counter()
        for _ in range(iterations):
            run()
        return (time.perf_counter() - t0) / iterations
    calls = 0
    batch = 1
    t0 = time.perf_counter()
    while True:
        for _ in range(batch):
            run()
        calls += batch
        elapsed = time.perf_counter() - t0
        if elapsed >= min_time:
            return elapsed / calls
        batch *= 2


def _runner(model, items: list[str], engine: str, mode: str, backend: str):
    if mode == "word":
        if engine not in WORD_ENGINES:
            raise ValueError(f"engine {engine!r} is not a word engine")
        base = model.base if isinstance(model, E2EModel) else model
        return batch_runner(base, Batch.from_words(base, items), engine, backend)[0]
    if not isinstance(model, E2EModel):
        raise ValueError("text mode needs a model built for text (e2e)")
    if engine not in TEXT_ENGINES:
        raise ValueError(f"engine {engine!r} is not a text engine")
    # the boundary char always classifies as whitespace, so texts joined by it
    # tokenize independently and a bucket runs as one call
    joined = model.vocab.boundary_char.join(items)
    return text_runner(model, joined, backend, engine)[0]


def bench(model, items: Sequence[str], engines: Sequence[str], mode: str = "word",
          backend: Optional[str] = None, repeats: int = 10, warmup: int = 1,
          min_time: float = 0.01, iterations: Optional[int] = None) -> BenchReport:
    if not items:
        raise ValueError("empty corpus")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    backend = backend or kernels.DEFAULT_BACKEND
    buckets: dict[int, list[str]] = defaultdict(list)
    for s in items:
        buckets[len(s)].append(s)
    lengths = [len(s) for s in items]
    results = []
    for engine in engines:
        runners = {n: _runner(model, b, engine, mode, backend) for n, b in sorted(buckets.items())}
        for run in runners.values():
            for _ in range(warmup):
                run()
        samples: dict[int, list[float]] = defaultdict(list)
        for _ in range(repeats):
            for n, run in runners.items():
                samples[n].append(_time(run, min_time, iterations) * 1e9 / len(buckets[n]))
        bucket_ns = {n: float(np.mean(v)) for n, v in samples.items()}
        mean, p95 = bucketed_stats(lengths, bucket_ns)
        results.append(EngineResult(engine, backend, len(items), round(mean, PRECISION),
                                    round(p95, PRECISION), bucket_ns,
                                    {n: len(b) for n, b in buckets.items()}))
    return BenchReport(mode, repeats, warmup, results)
