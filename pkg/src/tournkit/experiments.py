"""Seeded Monte Carlo harness over (model, n, p, k) grids.

Two metrics per cell: average percentage of k-kings and the fraction of
tournaments in which all alternatives are k-kings. Aggregation uses exact
integer counts so results are independent of evaluation order and worker
count; trial t of a cell always draws from substream t of the cell seed.
"""

from __future__ import annotations

import concurrent.futures
import io
import math
import os
import tempfile
from dataclasses import dataclass, field

from .errors import InvalidConfig, IoFailure
from .models import CONDORCET, GAP, GENERALIZED, UNIFORM, ModelSpec, RngStream, probability_matrix, sample
from .solutions import MAX, k_kings

_MASK64 = 0xFFFFFFFFFFFFFFFF

CSV_HEADER = "model,n,p,k,trials,seed,avg_pct,all_pct,stderr_pct"

_METRICS = ("avg_pct", "all_pct")


@dataclass(frozen=True)
class ResultRow:
    """Aggregated statistics of one (model, n, p, k) grid cell."""

    model: str
    n: int
    p: float
    k: object  # int or MAX
    trials: int
    seed: int
    avg_pct: float
    all_pct: float
    stderr_pct: float


@dataclass
class ExperimentConfig:
    """One sweep: a model, its p grid, sizes, k values, trials, and a seed."""

    model: ModelSpec
    p_values: list[float]
    n_values: list[int]
    k_values: list  # ints >= 2 and/or MAX
    trials: int
    master_seed: int
    fresh_per_k: bool = False
    metrics: tuple[str, ...] = _METRICS

    def validate(self) -> None:
        if self.trials < 1:
            raise InvalidConfig(f"trials must be >= 1, got {self.trials}")
        if not self.n_values or not self.p_values or not self.k_values:
            raise InvalidConfig("n, p, and k grids must be non-empty")
        for n in self.n_values:
            if n < 2:
                raise InvalidConfig(f"n must be >= 2, got {n}")
        for k in self.k_values:
            if k is not MAX and (not isinstance(k, int) or k < 2):
                raise InvalidConfig(f"k must be an integer >= 2 or MAX, got {k!r}")
        for p in self.p_values:
            if self.model.kind in (CONDORCET, GAP) and not 0.0 <= p <= 0.5:
                raise InvalidConfig(f"p={p} outside [0, 0.5] for {self.model.kind}")
            if self.model.kind == UNIFORM and p != 0.5:
                raise InvalidConfig("uniform model admits only p = 0.5")
        if not self.metrics or set(self.metrics) - set(_METRICS):
            raise InvalidConfig(f"metrics must be a subset of {_METRICS}")


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def cell_seed(master_seed: int, n: int, p: float, k_term: int) -> int:
    """Stable 64-bit seed for one grid cell, mixing all cell coordinates."""
    h = _splitmix64(master_seed & _MASK64)
    for v in (n, round(p * 1_000_000), k_term):
        h = _splitmix64(h ^ _splitmix64(v & _MASK64))
    return h


def run_cell(
    matrix,
    k,
    trials: int,
    master_seed: int,
    *,
    model_label: str = "generalized",
    p_label: float = 0.0,
) -> ResultRow:
    """Monte Carlo aggregate of one probability matrix at one k.

    Trial t samples from substream t; counts are accumulated as exact
    integers before conversion to percentages.
    """
    if trials < 1:
        raise InvalidConfig(f"trials must be >= 1, got {trials}")
    n = matrix.shape[0]
    sum_kings = 0
    sum_sq = 0
    all_count = 0
    for t in range(trials):
        tournament = sample(matrix, RngStream(master_seed, t))
        count = len(k_kings(tournament, k).members)
        sum_kings += count
        sum_sq += count * count
        if count == n:
            all_count += 1
    avg_pct = 100.0 * sum_kings / (trials * n)
    all_pct = 100.0 * all_count / trials
    if trials > 1:
        var_counts = (sum_sq - sum_kings * sum_kings / trials) / (trials - 1)
        stderr_pct = (100.0 / n) * math.sqrt(max(var_counts, 0.0) / trials)
    else:
        stderr_pct = 0.0
    return ResultRow(
        model=model_label,
        n=n,
        p=p_label,
        k=k,
        trials=trials,
        seed=master_seed,
        avg_pct=avg_pct,
        all_pct=all_pct,
        stderr_pct=stderr_pct,
    )


def _cell_task(args) -> ResultRow:
    spec, n, p, k, trials, seed = args
    matrix = probability_matrix(spec.with_p(p), n)
    return run_cell(
        matrix, k, trials, seed, model_label=spec.kind, p_label=p
    )


def _grid_cells(config: ExperimentConfig):
    for n in config.n_values:
        for p in config.p_values:
            for k in config.k_values:
                if config.fresh_per_k:
                    k_term = (n - 1) if k is MAX else k
                else:
                    k_term = 0
                seed = cell_seed(config.master_seed, n, p, k_term)
                yield (config.model, n, p, k, config.trials, seed)


def run_grid(config: ExperimentConfig, workers: int = 1, progress=None) -> list[ResultRow]:
    """One ResultRow per (n, p, k) cell, in n-major then p then k order.

    The output is a pure function of (config, master_seed) regardless of
    the worker count; by default all k values of a cell replay identical
    tournaments (fresh_per_k mixes k into the cell seed instead).
    """
    config.validate()
    cells = list(_grid_cells(config))
    if workers > 1 and len(cells) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_cell_task, cells))
    else:
        rows = []
        for cell in cells:
            rows.append(_cell_task(cell))
            if progress is not None:
                progress(len(rows), len(cells))
    if workers > 1 and progress is not None:
        progress(len(rows), len(cells))
    return rows


# -- CSV ------------------------------------------------------------------
# model,n,p,k,trials,seed,avg_pct,all_pct,stderr_pct with p at 6 decimals,
# percentages at 4, LF endings, `max` for the symbolic k.


def format_row(row: ResultRow) -> str:
    k_text = "max" if row.k is MAX else str(row.k)
    return (
        f"{row.model},{row.n},{row.p:.6f},{k_text},{row.trials},{row.seed},"
        f"{row.avg_pct:.4f},{row.all_pct:.4f},{row.stderr_pct:.4f}"
    )


def write_csv(rows: list[ResultRow], destination) -> None:
    """Emit the CSV; `destination` is a path or a text file object."""
    payload = "\n".join([CSV_HEADER] + [format_row(r) for r in rows]) + "\n"
    if hasattr(destination, "write"):
        destination.write(payload)
        return
    try:
        directory = os.path.dirname(os.path.abspath(destination))
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
                fh.write(payload)
            os.replace(tmp, destination)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as exc:
        raise IoFailure(f"could not write {destination}: {exc}") from exc


def read_csv(source) -> list[ResultRow]:
    """Parse a CSV produced by write_csv back into rows."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="ascii") as fh:
            text = fh.read()
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise IoFailure(f"unexpected CSV header: {lines[0] if lines else ''!r}")
    rows = []
    for line in lines[1:]:
        model, n, p, k, trials, seed, avg, all_, stderr = line.split(",")
        rows.append(
            ResultRow(
                model=model,
                n=int(n),
                p=float(p),
                k=MAX if k == "max" else int(k),
                trials=int(trials),
                seed=int(seed),
                avg_pct=float(avg),
                all_pct=float(all_),
                stderr_pct=float(stderr),
            )
        )
    return rows
