"""Negativity over a (k, t) grid, with CSV and SVG output."""
from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from . import energy
from .channel import negativity
from .report import scenario_choi
from .scenario import ConfigError, Scenario

SVG_ETA_MAX = 0.18


@dataclass(frozen=True)
class SweepResult:
    k: np.ndarray
    t: np.ndarray
    eta: np.ndarray  # shape (len(k), len(t))

    def rows(self):
        """(k, t, eta) triples, k outer and t inner."""
        for i, k in enumerate(self.k):
            for j, t in enumerate(self.t):
                yield float(k), float(t), float(self.eta[i, j])


def parse_range(text: str) -> tuple[float, float, int]:
    """Parse ``min:max:count``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected min:max:count, got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 2:
        raise ValueError(f"grid count must be at least 2, got {n}")
    return lo, hi, n


def default_threads() -> int:
    env = os.environ.get("NEGCHAN_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def _analytic_row(scen: Scenario, k: float, ts: np.ndarray) -> np.ndarray:
    spec = scen.spectrum(k)
    kind = scen.assignment.kind
    if kind == "copy":
        return np.array([negativity(energy.analytic_choi_copy(spec, t)) for t in ts])
    f = energy.f_nu_extended(spec) if len(spec) > 4 else energy.f_nu(spec)
    return energy.rotated_negativity(f * ts)


def _numeric_row(scen: Scenario, k: float, ts: np.ndarray) -> np.ndarray:
    return np.array([negativity(scenario_choi(scen, k, t), scen.tolerance) for t in ts])


def run_sweep(
    scen: Scenario,
    k_range: tuple[float, float, int],
    t_range: tuple[float, float, int],
    pipeline: str = "analytic",
    threads: int | None = None,
) -> SweepResult:
    d = scen.dynamics
    if not d.is_hamiltonian or d.name == "custom":
        raise ConfigError("sweeps need ising or ising_transverse Hamiltonian dynamics", "dynamics")
    if pipeline not in ("analytic", "numeric"):
        raise ValueError(f"unknown pipeline {pipeline!r}")
    if pipeline == "analytic" and not (d.frame == "energy" and scen.assignment.has_analytic_form):
        raise ConfigError(
            "no closed form for this assignment/frame; use --pipeline numeric", "assignment"
        )
    for lo, hi, n in (k_range, t_range):
        if n < 2:
            raise ValueError("grid counts must be at least 2")
    ks = np.linspace(*k_range)
    ts = np.linspace(*t_range)
    row = _analytic_row if pipeline == "analytic" else _numeric_row
    threads = default_threads() if threads is None else threads
    if threads <= 1:
        rows = [row(scen, k, ts) for k in ks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            # map preserves input order
            rows = list(pool.map(lambda k: row(scen, k, ts), ks))
    return SweepResult(ks, ts, np.vstack(rows))


def fmt(x: float) -> str:
    return f"{x:.12g}"


def write_csv(result: SweepResult, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "t", "eta"])
        for k, t, eta in result.rows():
            w.writerow([fmt(k), fmt(t), fmt(eta)])


def read_csv(path) -> list[tuple[float, float, float]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["k", "t", "eta"]:
            raise ValueError(f"unexpected CSV header {header!r}")
        return [(float(a), float(b), float(c)) for a, b, c in reader]


def write_svg(result: SweepResult, path, cell: int = 4) -> None:
    """Grayscale heatmap: white at eta = 0, black at eta >= 0.18. t runs right, k runs up."""
    nk, nt = result.eta.shape
    margin = 50
    width = nt * cell + margin + 20
    height = nk * cell + margin + 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    for i in range(nk):
        y = 10 + (nk - 1 - i) * cell
        for j in range(nt):
            level = min(max(result.eta[i, j] / SVG_ETA_MAX, 0.0), 1.0)
            g = int(round(255 * (1 - level)))
            parts.append(
                f'<rect x="{margin + j * cell}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="rgb({g},{g},{g})"/>'
            )
    label_y = 10 + nk * cell + 20
    parts.append(
        f'<text x="{margin + nt * cell / 2}" y="{label_y}" font-size="12" text-anchor="middle">'
        f"{escape(f't [{fmt(result.t[0])}, {fmt(result.t[-1])}]')}</text>"
    )
    parts.append(
        f'<text x="12" y="{10 + nk * cell / 2}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 12 {10 + nk * cell / 2})">'
        f"{escape(f'k [{fmt(result.k[0])}, {fmt(result.k[-1])}]')}</text>"
    )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
