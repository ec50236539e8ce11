"""Renders experiment CSVs into multi-panel percentage-vs-p figures.

One panel per tournament size n, one curve per k, x in [0, 0.5] and
y in [0, 100]. Reads the experiments CSV schema exactly:
model,n,p,k,trials,seed,avg_pct,all_pct,stderr_pct
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

CSV_HEADER = ["model", "n", "p", "k", "trials", "seed", "avg_pct", "all_pct", "stderr_pct"]

METRICS = ("avg_pct", "all_pct")

# fixed style per k so panels are comparable side by side
_STYLES = {
    2: dict(color="black", marker="^"),
    3: dict(color="tab:red", marker="s"),
    4: dict(color="tab:blue", marker="o"),
    "max": dict(color="tab:green", marker="D"),
}
_FALLBACK_COLORS = ["tab:purple", "tab:orange", "tab:brown", "tab:pink", "tab:gray"]


class MissingData(ValueError):
    """A requested (n, k, p) point is absent from the CSV."""


class SchemaMismatch(ValueError):
    """The CSV header does not match the experiments schema."""


@dataclass
class FigureSpec:
    csv_path: str
    metric: str
    panels: list[int]
    output_path: str
    image_format: str | None = None  # derived from output_path when None

    def resolved_format(self) -> str:
        if self.image_format:
            return self.image_format
        suffix = Path(self.output_path).suffix.lstrip(".").lower()
        return suffix or "png"


@dataclass
class _Panel:
    n: int
    # k key -> {p -> value}; k keys are ints or the string "max"
    curves: dict = field(default_factory=dict)


def _k_key(token: str):
    return "max" if token == "max" else int(token)


def _k_sort(key) -> tuple[int, int]:
    return (1, 0) if key == "max" else (0, key)


def _k_label(key, n: int) -> str:
    return "k = n-1" if key == "max" else f"k = {key}"


def load_rows(csv_path: str) -> list[dict]:
    with open(csv_path, "r", encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch(f"{csv_path}: empty file, no header") from None
        if header != CSV_HEADER:
            raise SchemaMismatch(f"{csv_path}: header {header} != {CSV_HEADER}")
        rows = []
        for line_no, record in enumerate(reader, start=2):
            if len(record) != len(CSV_HEADER):
                raise SchemaMismatch(f"{csv_path}:{line_no}: {len(record)} fields")
            rows.append(
                {
                    "model": record[0],
                    "n": int(record[1]),
                    "p": float(record[2]),
                    "k": _k_key(record[3]),
                    "avg_pct": float(record[6]),
                    "all_pct": float(record[7]),
                }
            )
    if not rows:
        raise MissingData(f"{csv_path}: no data rows")
    return rows


def _collect_panels(rows: list[dict], spec: FigureSpec) -> list[_Panel]:
    if spec.metric not in METRICS:
        raise SchemaMismatch(f"metric must be one of {METRICS}, got {spec.metric!r}")
    by_n: dict[int, _Panel] = {}
    for row in rows:
        panel = by_n.setdefault(row["n"], _Panel(n=row["n"]))
        panel.curves.setdefault(row["k"], {})[row["p"]] = row[spec.metric]
    panels = []
    for n in spec.panels:
        if n not in by_n:
            raise MissingData(f"no rows for n={n}")
        panel = by_n[n]
        p_grid = sorted({p for curve in panel.curves.values() for p in curve})
        for k, curve in panel.curves.items():
            missing = [p for p in p_grid if p not in curve]
            if missing:
                raise MissingData(
                    f"n={n} k={k}: missing p={missing[0]:.6f} (and {len(missing) - 1} more)"
                )
        panels.append(panel)
    return panels


def build_figure(spec: FigureSpec):
    """Assemble the matplotlib figure (separated from render for testing)."""
    panels = _collect_panels(load_rows(spec.csv_path), spec)
    count = len(panels)
    cols = 1 if count == 1 else 2
    rows_ = (count + cols - 1) // cols
    fig, axes = plt.subplots(
        rows_, cols, figsize=(5.2 * cols, 3.9 * rows_), squeeze=False
    )
    flat = [ax for row in axes for ax in row]
    fallback = iter(_FALLBACK_COLORS * 4)
    for ax, panel in zip(flat, panels):
        for k in sorted(panel.curves, key=_k_sort):
            curve = panel.curves[k]
            ps = sorted(curve)
            style = _STYLES.get(k) or dict(color=next(fallback), marker="x")
            ax.plot(
                ps,
                [curve[p] for p in ps],
                label=_k_label(k, panel.n),
                markersize=4,
                linewidth=1.2,
                alpha=0.85,
                **style,
            )
        ax.set_xlim(0.0, 0.5)
        ax.set_ylim(0.0, 100.0)
        ax.set_title(f"n = {panel.n}")
        ax.set_xlabel("p")
        ax.set_ylabel("percentage")
        ax.grid(True, linestyle="--", alpha=0.5)
        ax.legend(loc="lower right", fontsize=8)
    for ax in flat[count:]:
        ax.set_visible(False)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> str:
    """Write the figure image and return the output path."""
    fig = build_figure(spec)
    fmt = spec.resolved_format()
    # strip volatile metadata and pin element ids so repeated renders are identical
    metadata = {"Date": None} if fmt == "svg" else None
    try:
        with plt.rc_context({"svg.hashsalt": "tournfigures"}):
            fig.savefig(spec.output_path, format=fmt, dpi=150, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.output_path
