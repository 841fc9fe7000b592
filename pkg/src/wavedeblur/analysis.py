"""Desk-scale analytics: per-band statistics tables, level sweeps, and a
variance-of-Laplacian sharpness proxy.

Outputs are CSV-friendly row lists so any plotting tool can consume
them; no rendering happens here.
"""

import csv
import os
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .image import l1_distance, save_image
from .packet import index_to_path, packet_decompose, path_text
from .transfer import TransferConfig, deblur_idwt, prepare_style

__all__ = [
    "StatsRow",
    "SweepEntry",
    "stats_report",
    "level_sweep",
    "sharpness",
    "detail_energy",
    "write_stats_csv",
    "write_sweep_csv",
]

STATS_HEADER = ("label", "band_index", "path", "mean", "std")
SWEEP_HEADER = ("level", "l1_style", "l1_blurry", "detail_energy", "output_path")


@dataclass(frozen=True)
class StatsRow:
    label: str
    band_index: int
    path: str
    mean: float
    std: float


@dataclass(frozen=True)
class SweepEntry:
    level: int
    l1_style: float
    l1_blurry: float
    detail_energy: float
    output_path: str
    output: np.ndarray


def stats_report(
    images: Sequence[tuple[str, np.ndarray]], level: int
) -> list[StatsRow]:
    """Per-band (mean, std) rows for each labeled image, canonical order.

    All images must share dimensions divisible by ``2**level``; each
    image contributes exactly ``4**level`` rows.
    """
    if not images:
        return []
    shape = np.asarray(images[0][1]).shape
    for label, img in images:
        if np.asarray(img).shape != shape:
            raise ValueError(f"dimension mismatch for {label!r}: {np.asarray(img).shape} vs {shape}")
    paths = [path_text(index_to_path(i, level)) for i in range(4**level)]
    rows = []
    for label, img in images:
        bands = packet_decompose(img, level).bands
        means = bands.mean(axis=(1, 2))
        stds = bands.std(axis=(1, 2))
        rows.extend(
            StatsRow(label, i, paths[i], float(means[i]), float(stds[i]))
            for i in range(bands.shape[0])
        )
    return rows


def detail_energy(img: np.ndarray, level: int = 1) -> float:
    """Total squared coefficient mass outside the pure low-pass band."""
    bands = packet_decompose(img, level).bands
    return float(np.sum(bands[1:] ** 2))


def level_sweep(
    blurry: np.ndarray,
    style: np.ndarray,
    cfg: TransferConfig = TransferConfig(),
    levels: Iterable[int] = range(1, 9),
    save_dir: str | None = None,
) -> list[SweepEntry]:
    """Run the deblurring pipeline once per level and record fidelity metrics.

    The style image is prepared once (binarized when the config says so)
    and `l1_style` measures distance to that prepared image. Outputs are
    saved as 8-bit PNGs when `save_dir` is given.
    """
    styled = prepare_style(np.asarray(style, dtype=np.float64), cfg)
    entries = []
    for level in levels:
        run_cfg = replace(cfg, level=level, style_mode="sharp")
        out = deblur_idwt(blurry, styled, run_cfg)
        out_path = ""
        if save_dir is not None:
            out_path = os.path.join(save_dir, f"sweep_L{level}.png")
            save_image(out, out_path, bit_depth=8)
        entries.append(
            SweepEntry(
                level=level,
                l1_style=l1_distance(out, styled),
                l1_blurry=l1_distance(out, blurry),
                detail_energy=detail_energy(out, level=1),
                output_path=out_path,
                output=out,
            )
        )
    return entries


def sharpness(img: np.ndarray) -> float:
    """Variance of the 3x3 Laplacian response over interior pixels.

    Zero for constant images; drops under any blur. Serves as the open
    stand-in for external quality scoring.
    """
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 3 or arr.shape[1] < 3:
        raise ValueError("image must be at least 3x3")
    lap = (
        arr[:-2, 1:-1]
        + arr[2:, 1:-1]
        + arr[1:-1, :-2]
        + arr[1:-1, 2:]
        - 4.0 * arr[1:-1, 1:-1]
    )
    return float(np.var(lap))


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def write_stats_csv(rows: Iterable[StatsRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(STATS_HEADER)
        for row in rows:
            writer.writerow([row.label, row.band_index, row.path, _fmt(row.mean), _fmt(row.std)])


def write_sweep_csv(entries: Iterable[SweepEntry], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for e in entries:
            writer.writerow(
                [e.level, _fmt(e.l1_style), _fmt(e.l1_blurry), _fmt(e.detail_energy), e.output_path]
            )
