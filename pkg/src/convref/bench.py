"""Offline throughput/latency benchmark over a text corpus.

Each corpus line is treated as one segment and pushed through a fresh
extraction session; timing covers the extraction pipeline only (no sockets,
no providers). The words-per-second figure uses the single-threaded wall time
of the extraction loop.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .hub.tracing import percentile
from .nlp.extract import ExtractionParams, KeywordExtractor, StageTimings

_STAGES = ("tokenize", "chunk", "classify", "rank")


@dataclass
class BenchReport:
    words: int = 0
    segments: int = 0
    keywords: int = 0
    elapsed_s: float = 0.0
    segment_ms: list[float] = field(default_factory=list, repr=False)
    stage_ms: dict[str, list[float]] = field(
        default_factory=lambda: {name: [] for name in _STAGES}, repr=False)
    keywords_sha256: str = ""

    @property
    def words_per_second(self) -> float:
        return self.words / self.elapsed_s if self.elapsed_s > 0 else 0.0

    def _dist(self, values: list[float]) -> dict:
        if not values:
            return {"p50_ms": 0.0, "p95_ms": 0.0, "max_ms": 0.0}
        return {
            "p50_ms": percentile(values, 50),
            "p95_ms": percentile(values, 95),
            "max_ms": max(values),
        }

    def to_json(self) -> dict:
        stages = {name: self._dist(times) for name, times in self.stage_ms.items()}
        return {
            "schema": 1,
            "words": self.words,
            "segments": self.segments,
            "keywords": self.keywords,
            "elapsed_s": self.elapsed_s,
            "words_per_second": self.words_per_second,
            "segment_latency": self._dist(self.segment_ms),
            "stage_latency": stages,
            "keywords_sha256": self.keywords_sha256,
        }

    def to_text(self) -> str:
        data = self.to_json()
        lines = [
            f"words              {data['words']}",
            f"segments           {data['segments']}",
            f"keywords           {data['keywords']}",
            f"elapsed_s          {data['elapsed_s']:.3f}",
            f"words_per_second   {data['words_per_second']:.1f}",
            "stage                p50_ms    p95_ms    max_ms",
        ]
        rows = dict(data["stage_latency"])
        rows["segment"] = data["segment_latency"]
        for name in (*_STAGES, "segment"):
            d = rows[name]
            lines.append(f"{name:<16} {d['p50_ms']:>9.4f} {d['p95_ms']:>9.4f} {d['max_ms']:>9.4f}")
        return "\n".join(lines)


def run_bench(corpus_path: Path, params: ExtractionParams | None = None) -> BenchReport:
    """Benchmark extraction over a corpus file; raises ValueError when empty."""
    lines = [line.strip() for line in
             Path(corpus_path).read_text(encoding="utf-8").splitlines()]
    segments = [line for line in lines if line and not line.startswith("#")]
    total_words = sum(len(s.split()) for s in segments)
    if total_words == 0:
        raise ValueError("corpus contains no words")

    extractor = KeywordExtractor(params)
    report = BenchReport(words=total_words, segments=len(segments))
    emitted: set[str] = set()
    digest = hashlib.sha256()
    counter = iter(range(10 ** 9))

    started = time.perf_counter()
    for seq, text in enumerate(segments):
        timings = StageTimings()
        t0 = time.perf_counter()
        keywords = extractor.extract_keywords(
            text, emitted, seq, lambda: f"bench:k{next(counter)}", timings)
        report.segment_ms.append((time.perf_counter() - t0) * 1000.0)
        report.keywords += len(keywords)
        for keyword in keywords:
            digest.update(json.dumps(keyword.to_json(), sort_keys=True).encode())
        report.stage_ms["tokenize"].append(timings.tokenize_ms)
        report.stage_ms["chunk"].append(timings.chunk_ms)
        report.stage_ms["classify"].append(timings.classify_ms)
        report.stage_ms["rank"].append(timings.rank_ms)
    report.elapsed_s = time.perf_counter() - started
    report.keywords_sha256 = digest.hexdigest()
    return report
