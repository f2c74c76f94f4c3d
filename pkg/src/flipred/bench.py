"""Generator-to-reducer benchmark cells and their reports.

A cell is one (setting, length, redundancy, seed) combination. Each run
produces a flat record that serializes to a ``key=value`` line; a table view
aggregates the records per (setting, length, redundancy).
"""

from __future__ import annotations

import math
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .reducer import reduce
from .seqgen import GenSpec, GenerationError, random_instance, random_sequence, redundancy
from .triangulation import Setting

# desk-scale caps; larger cells are reported as skipped
MAX_LENGTH = 100_000
MAX_EDGES = 200_000

# published gain percentages for convex polygons, for side-by-side reports
REFERENCE_GAIN_PERCENT = {1.1: 13.0, 2.0: 48.0, 10.0: 87.0}


@dataclass(frozen=True)
class BenchCell:
    setting: Setting
    length: int
    redundancy: float
    seed: int
    edges: int | None = None

    def resolved_edges(self) -> int:
        if self.edges is not None:
            return self.edges
        return default_edges(self.setting, self.length, self.redundancy)


def default_edges(setting: Setting | str, length: int, r: float) -> int:
    """Instance size giving about twice as many interior edges as distinct flips."""
    d = max(1, round(length / r))
    setting = Setting(setting)
    if setting is Setting.CONVEX:
        return max(64, 4 * d + 16)
    return max(64, 3 * d + 64)


@dataclass
class BenchRecord:
    setting: str
    edges: int
    length: int
    r_requested: float
    r_measured: float
    final: int
    gain: int
    gain_percent: float
    elapsed: float
    seed: int
    backend: str
    status: str = "ok"

    def line(self) -> str:
        parts = []
        for k, v in asdict(self).items():
            if isinstance(v, float):
                v = f"{v:.6g}"
            parts.append(f"{k}={v}")
        return " ".join(parts)

    @classmethod
    def parse(cls, line: str) -> "BenchRecord":
        fields = dict(tok.split("=", 1) for tok in line.split())
        kinds = {k: type(v) for k, v in asdict(cls("", 0, 0, 0.0, 0.0, 0, 0, 0.0, 0.0, 0, "")).items()}
        return cls(**{k: kinds[k](v) for k, v in fields.items()})


def run_cell(cell: BenchCell, backend: str | None = None) -> BenchRecord:
    edges = cell.resolved_edges()
    setting = Setting(cell.setting)
    if cell.length > MAX_LENGTH or edges > MAX_EDGES:
        return BenchRecord(setting.value, edges, cell.length, cell.redundancy, 0.0, 0, 0, 0.0, 0.0, cell.seed, "", "skipped")
    spec = GenSpec(setting, edges, cell.length, cell.redundancy, cell.seed)
    try:
        T = random_instance(spec)
        seq = random_sequence(T, spec)
    except GenerationError:
        return BenchRecord(setting.value, edges, cell.length, cell.redundancy, 0.0, 0, 0, 0.0, 0.0, cell.seed, "", "skipped")
    start = time.perf_counter()
    out, rep = reduce(seq, T, backend=backend, seed=cell.seed, validate=False)
    elapsed = time.perf_counter() - start
    return BenchRecord(
        setting=setting.value,
        edges=T.edge_count,
        length=len(seq),
        r_requested=cell.redundancy,
        r_measured=round(redundancy(seq), 4),
        final=len(out),
        gain=len(seq) - len(out),
        gain_percent=round(100.0 * (len(seq) - len(out)) / len(seq), 3),
        elapsed=elapsed,
        seed=cell.seed,
        backend=rep.backend,
    )


def _run(args: tuple[BenchCell, str | None]) -> BenchRecord:
    return run_cell(*args)


def make_cells(
    settings: Iterable[Setting | str],
    lengths: Iterable[int],
    redundancies: Iterable[float],
    seeds: Iterable[int],
    edges: int | None = None,
) -> list[BenchCell]:
    seeds = list(seeds)
    return [
        BenchCell(Setting(s), f, r, seed, edges)
        for s in settings
        for f in lengths
        for r in redundancies
        for seed in seeds
    ]


def run_bench(cells: Sequence[BenchCell], jobs: int = 1, backend: str | None = None) -> list[BenchRecord]:
    """Run every cell; with ``jobs > 1`` cells run in separate processes."""
    if jobs <= 1:
        return [run_cell(c, backend) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, [(c, backend) for c in cells]))


def fit_exponent(lengths: Sequence[float], times: Sequence[float]) -> float:
    """Slope of log(time) against log(length) by least squares."""
    x = np.log(np.asarray(lengths, dtype=float))
    y = np.log(np.maximum(np.asarray(times, dtype=float), 1e-9))
    if len(x) < 2 or np.ptp(x) == 0:
        raise ValueError("need at least two different lengths")
    return float(np.polyfit(x, y, 1)[0])


@dataclass
class CellSummary:
    setting: str
    length: int
    redundancy: float
    runs: int
    mean_final: float
    mean_gain: float
    mean_gain_percent: float
    mean_elapsed: float

    @property
    def estimate_percent(self) -> float:
        return 100.0 * (1.0 - 1.0 / self.redundancy)


def summarize(records: Iterable[BenchRecord]) -> list[CellSummary]:
    groups: dict[tuple, list[BenchRecord]] = defaultdict(list)
    for rec in records:
        if rec.status == "ok":
            groups[(rec.setting, rec.length, rec.r_requested)].append(rec)
    out = []
    for (setting, f, r), recs in sorted(groups.items()):
        k = len(recs)
        out.append(
            CellSummary(
                setting,
                f,
                r,
                k,
                sum(x.final for x in recs) / k,
                sum(x.gain for x in recs) / k,
                sum(x.gain_percent for x in recs) / k,
                sum(x.elapsed for x in recs) / k,
            )
        )
    return out


def exponents(records: Iterable[BenchRecord]) -> dict[tuple[str, float], float]:
    """Fitted runtime exponent against length per (setting, redundancy)."""
    per: dict[tuple[str, float], list[CellSummary]] = defaultdict(list)
    for s in summarize(records):
        per[(s.setting, s.redundancy)].append(s)
    out = {}
    for key, rows in per.items():
        if len({r.length for r in rows}) >= 2:
            out[key] = fit_exponent([r.length for r in rows], [r.mean_elapsed for r in rows])
    return out


def _fmt_time(t: float) -> str:
    if t < 1:
        return f"{t * 1000:.1f}ms"
    if t < 60:
        return f"{t:.2f}s"
    return f"{int(t // 60)}min{t % 60:.0f}s"


def render_table(records: Sequence[BenchRecord]) -> str:
    """Human-readable grid: one row per cell with mean gain, estimate and time."""
    rows = [("setting", "f", "r", "runs", "gain", "gain %", "f(1-1/r) %", "ref %", "time")]
    for s in summarize(records):
        ref = REFERENCE_GAIN_PERCENT.get(s.redundancy) if s.setting == "convex" else None
        rows.append(
            (
                s.setting,
                str(s.length),
                f"{s.redundancy:g}",
                str(s.runs),
                f"{s.mean_gain:.1f}",
                f"{s.mean_gain_percent:.1f}",
                f"{s.estimate_percent:.1f}",
                "-" if ref is None else f"{ref:g}",
                _fmt_time(s.mean_elapsed),
            )
        )
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    exps = exponents(records)
    if exps:
        lines.append("")
        for (setting, r), e in sorted(exps.items()):
            lines.append(f"runtime exponent {setting} r={r:g}: {e:.2f}")
    skipped = sum(1 for rec in records if rec.status != "ok")
    if skipped:
        lines.append(f"{skipped} cells skipped")
    return "\n".join(lines)


@dataclass
class KernelComparison:
    cell: BenchCell
    python_seconds: float
    compiled_seconds: float
    identical: bool

    @property
    def speedup(self) -> float:
        return self.python_seconds / self.compiled_seconds if self.compiled_seconds > 0 else math.inf

    def line(self) -> str:
        c = self.cell
        return (
            f"setting={c.setting.value} length={c.length} r={c.redundancy:g} seed={c.seed} "
            f"python={self.python_seconds:.4f} compiled={self.compiled_seconds:.4f} "
            f"speedup={self.speedup:.1f} identical={str(self.identical).lower()}"
        )


def compare_kernels(cells: Sequence[BenchCell]) -> list[KernelComparison]:
    """Time both reduction backends on the same inputs and check they agree."""
    from .kernel import compiled_available

    if not compiled_available():
        raise RuntimeError("the compiled kernel is not built")
    out = []
    for cell in cells:
        spec = GenSpec(cell.setting, cell.resolved_edges(), cell.length, cell.redundancy, cell.seed)
        T = random_instance(spec)
        seq = random_sequence(T, spec)
        timings = {}
        results = {}
        for name in ("python", "compiled"):
            start = time.perf_counter()
            results[name] = reduce(seq, T, backend=name, validate=False)
            timings[name] = time.perf_counter() - start
        (a, ra), (b, rb) = results["python"], results["compiled"]
        same = a == b and ra.operations == rb.operations and ra.attempts == rb.attempts
        out.append(KernelComparison(cell, timings["python"], timings["compiled"], same))
    return out
