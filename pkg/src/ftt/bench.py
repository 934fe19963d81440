"""Sparsity-sweep benchmarks: matrix product, MPO and PEPO site contractions.

For every sparsity on a descending grid both operands are drawn at that
sparsity (or only ``a`` with ``sweep_one_side``), the sparse kernel is
timed, and the deterministic work counter is recorded next to the wall
time. ``fit_slope`` fits ``log y = slope * log sparsity + c``.
"""

from __future__ import annotations

import csv
import hashlib
import logging
import math
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from ftt.contract import ContractionStats, contract_sparse_sparse
from ftt.errors import ConfigError, FttError, OracleGuardError
from ftt.oracle import MAX_LOOP_SIZE, dense_contract, max_abs_diff
from ftt.plan import plan_for
from ftt.randgen import random_sparse_at
from ftt.tensor import to_dense

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "experiment",
    "sparsity",
    "nnz_a",
    "nnz_b",
    "mult_count",
    "time_sparse_s",
    "time_dense_s",
    "checksum",
)

DEFAULTS = {
    "matmul": ("ab,bc->ac", (64, 64), (64, 64)),
    "mpo": ("ABab,BCcd->ACabcd", (20, 20, 20, 20), (20, 20, 20, 20)),
    "pepo": ("ABCDab,DEFGcd->ABCEFGabcd", (8,) * 6, (8,) * 6),
}

ORACLE_RTOL = 1e-12


@dataclass
class ExperimentConfig:
    experiment: str
    sparsity_grid: tuple[float, ...]
    subscripts: str | None = None
    shape_a: tuple[int, ...] | None = None
    shape_b: tuple[int, ...] | None = None
    seeds: int = 3
    include_dense_control: bool = False
    oracle_check: bool = False
    sweep_one_side: bool = False
    base_seed: int = 0
    spec: str = field(init=False)

    def __post_init__(self):
        if self.experiment not in (*DEFAULTS, "custom"):
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.experiment == "custom":
            if not (self.subscripts and self.shape_a and self.shape_b):
                raise ConfigError("custom experiments need subscripts and both shapes")
            spec = self.subscripts
        else:
            spec, sa, sb = DEFAULTS[self.experiment]
            spec = self.subscripts or spec
            self.shape_a = self.shape_a or sa
            self.shape_b = self.shape_b or sb
        self.spec = spec
        self.shape_a = tuple(int(s) for s in self.shape_a)
        self.shape_b = tuple(int(s) for s in self.shape_b)
        if any(s <= 0 for s in self.shape_a + self.shape_b):
            raise ConfigError("shapes must be positive")
        self.sparsity_grid = tuple(float(p) for p in self.sparsity_grid)
        if not self.sparsity_grid or any(not 0.0 < p <= 1.0 for p in self.sparsity_grid):
            raise ConfigError("sparsity grid values must lie in (0, 1]")
        if self.seeds < 1:
            raise ConfigError("seeds must be at least 1")
        # validates labels and extents early
        plan_for(self.spec, self.shape_a, self.shape_b)


def sparsity_grid(start: float, stop: float, points: int) -> tuple[float, ...]:
    """Geometric grid from ``start`` down to ``stop``, largest first."""
    if points < 1:
        raise ConfigError("grid needs at least one point")
    if not (0 < start <= 1 and 0 < stop <= 1):
        raise ConfigError("grid bounds must lie in (0, 1]")
    grid = np.geomspace(start, stop, points)
    return tuple(sorted(grid.tolist(), reverse=True))


def _checksum(results) -> str:
    h = hashlib.sha256()
    for r in results:
        h.update(np.asarray(r.shape, dtype=np.int64).tobytes())
        h.update(r.indices.tobytes())
        h.update(r.data.tobytes())
    return h.hexdigest()[:16]


def _dense_control_time(cfg: ExperimentConfig, plan) -> float | None:
    out_size = math.prod(plan.output_shape)
    if out_size > MAX_LOOP_SIZE:
        log.info("dense control skipped: output of %d elements", out_size)
        return None
    a = to_dense(random_sparse_at(cfg.shape_a, 1.0, cfg.base_seed)).array
    b = to_dense(random_sparse_at(cfg.shape_b, 1.0, cfg.base_seed + 1)).array
    times = []
    for k in range(cfg.seeds + 1):
        t0 = time.perf_counter()
        np.einsum(cfg.spec, a, b)
        if k:
            times.append(time.perf_counter() - t0)
    return statistics.median(times)


def _check_against_oracle(a, b, plan, result) -> None:
    try:
        ref = dense_contract(to_dense(a), to_dense(b), plan)
    except OracleGuardError:
        log.info("oracle check skipped: contraction too large for the brute-force oracle")
        return
    scale = max(1.0, float(np.abs(ref.array).max(initial=0.0)))
    err = max_abs_diff(to_dense(result), ref)
    if err > ORACLE_RTOL * scale:
        raise FttError(f"sparse result differs from the oracle by {err:.3e}")


def run_experiment(
    cfg: ExperimentConfig, on_row: Callable[[dict], None] | None = None
) -> list[dict]:
    """Run the sweep; rows follow the grid order. ``on_row`` sees each row as it completes."""
    plan = plan_for(cfg.spec, cfg.shape_a, cfg.shape_b)
    dense_time = _dense_control_time(cfg, plan) if cfg.include_dense_control else None
    rows = []
    for p in cfg.sparsity_grid:
        times, counts, results = [], [], []
        for s in range(cfg.seeds):
            seed = cfg.base_seed + 2 * s
            a = random_sparse_at(cfg.shape_a, p, seed)
            b = random_sparse_at(cfg.shape_b, 1.0 if cfg.sweep_one_side else p, seed + 1)
            if s == 0:
                contract_sparse_sparse(a, b, plan)  # warm-up
            stats = ContractionStats()
            t0 = time.perf_counter()
            result = contract_sparse_sparse(a, b, plan, stats)
            times.append(time.perf_counter() - t0)
            counts.append(stats.mult_count)
            results.append(result)
            if cfg.oracle_check and s == 0:
                _check_against_oracle(a, b, plan, result)
        row = {
            "experiment": cfg.experiment,
            "sparsity": a.nnz / a.dense_size,
            "nnz_a": a.nnz,
            "nnz_b": b.nnz,
            "mult_count": int(statistics.median_low(counts)),
            "time_sparse_s": statistics.median(times),
            "time_dense_s": dense_time,
            "checksum": _checksum(results),
        }
        rows.append(row)
        if on_row is not None:
            on_row(row)
    return rows


def timer_resolution() -> float:
    return time.get_clock_info("perf_counter").resolution


def fit_slope(rows: Iterable[dict], y: str = "time_sparse_s", x: str = "sparsity") -> float:
    """Least-squares slope of ``log(y)`` against ``log(x)``.

    For timing columns only points above ten timer ticks are used; at
    least five usable points are required.
    """
    floor = 10 * timer_resolution() if y.startswith("time") else 0.0
    pts = [
        (float(r[x]), float(r[y]))
        for r in rows
        if r[y] not in (None, "") and float(r[y]) > floor and float(r[x]) > 0
    ]
    if len(pts) < 5:
        raise ConfigError(f"need at least 5 usable points to fit a slope, got {len(pts)}")
    lx, ly = np.log([p[0] for p in pts]), np.log([p[1] for p in pts])
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)


def crossover(rows: Iterable[dict]) -> float | None:
    """Largest sparsity at which the sparse kernel beats the dense control."""
    best = None
    for r in rows:
        dense = r.get("time_dense_s")
        if dense in (None, ""):
            continue
        if float(r["time_sparse_s"]) < float(dense):
            p = float(r["sparsity"])
            best = p if best is None else max(best, p)
    return best


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


class CsvSink:
    """Writes rows as they arrive so an interrupted sweep keeps what finished."""

    def __init__(self, fh):
        self._fh = fh
        self._writer = csv.writer(fh, lineterminator="\n")
        self._writer.writerow(CSV_COLUMNS)
        fh.flush()

    def __call__(self, row: dict) -> None:
        self._writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
        self._fh.flush()


def read_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ConfigError(f"{path}: unexpected CSV columns {reader.fieldnames}")
        return list(reader)
