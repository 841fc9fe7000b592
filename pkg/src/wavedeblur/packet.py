"""2D Haar analysis/synthesis steps and the full wavelet-packet transform.

A level-L packet decomposition recursively splits *every* band (not just
the approximation), yielding ``4**L`` equally sized sub-bands. Bands are
kept stacked in one ``(4**L, h, w)`` float64 array in canonical order:
depth-first by filter choice with LL=0, LH=1, HL=2, HH=3, most
significant digit first. The per-step kernel convention lives in
``wavedeblur._haar_np``.

The transform is orthonormal: round trips are exact to float precision
and energy is conserved between pixel and coefficient domains.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import backend

__all__ = [
    "FILTER_NAMES",
    "WaveletPacket",
    "path_to_index",
    "index_to_path",
    "path_text",
    "parse_path_text",
    "max_level",
    "haar_analysis_step",
    "haar_synthesis_step",
    "packet_decompose",
    "packet_reconstruct",
]

FILTER_NAMES = ("LL", "LH", "HL", "HH")
_FILTER_INDEX = {name: i for i, name in enumerate(FILTER_NAMES)}


def path_to_index(steps: Sequence[str]) -> int:
    """Canonical band index of a filter-choice path (first step is the
    most significant base-4 digit)."""
    idx = 0
    for step in steps:
        if step not in _FILTER_INDEX:
            raise ValueError(f"unknown filter choice {step!r}")
        idx = idx * 4 + _FILTER_INDEX[step]
    return idx


def index_to_path(index: int, level: int) -> tuple[str, ...]:
    """Inverse of :func:`path_to_index` for a level-`level` packet."""
    if not 0 <= index < 4**level:
        raise ValueError(f"band index {index} out of range for level {level}")
    digits = []
    for _ in range(level):
        digits.append(FILTER_NAMES[index % 4])
        index //= 4
    return tuple(reversed(digits))


def path_text(steps: Sequence[str]) -> str:
    """Dash-joined text form used in CSV output, e.g. ``LL-HL-HH``."""
    return "-".join(steps)


def parse_path_text(text: str) -> tuple[str, ...]:
    steps = tuple(text.split("-")) if text else ()
    for step in steps:
        if step not in _FILTER_INDEX:
            raise ValueError(f"bad path text {text!r}")
    return steps


def max_level(height: int, width: int) -> int:
    """Largest decomposition level both dimensions allow (2**L divides each)."""
    level = 0
    while height % 2 == 0 and width % 2 == 0 and height > 0 and width > 0:
        height //= 2
        width //= 2
        level += 1
    return level


@dataclass
class WaveletPacket:
    """Full packet decomposition: ``4**level`` bands stacked canonically.

    ``bands[i]`` is the 2D coefficient array of the band whose path is
    ``index_to_path(i, level)``; every band is
    ``(source_height / 2**level) x (source_width / 2**level)``.
    """

    level: int
    source_height: int
    source_width: int
    bands: np.ndarray

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")
        step = 1 << self.level
        if self.source_height % step or self.source_width % step:
            raise ValueError(
                f"source {self.source_width}x{self.source_height} not divisible by 2**{self.level}"
            )
        self.bands = np.ascontiguousarray(self.bands, dtype=np.float64)
        expected = (4**self.level, self.source_height // step, self.source_width // step)
        if self.bands.shape != expected:
            raise ValueError(f"bands shape {self.bands.shape} != expected {expected}")

    @property
    def band_count(self) -> int:
        return self.bands.shape[0]

    def band(self, steps: Sequence[str]) -> np.ndarray:
        """Look a band up by its filter path."""
        if len(steps) != self.level:
            raise ValueError(f"path length {len(steps)} != level {self.level}")
        return self.bands[path_to_index(steps)]


def _as_even_2d(img: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("input must be a non-empty 2D array")
    if arr.shape[0] % 2 or arr.shape[1] % 2:
        raise ValueError(f"dimensions must be even, got {arr.shape}")
    return arr


def haar_analysis_step(img: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Split one even-dimensioned array into (LL, LH, HL, HH) at half size."""
    arr = _as_even_2d(img)
    out = backend.analysis_stack(arr[np.newaxis])
    return out[0], out[1], out[2], out[3]


def haar_synthesis_step(
    ll: np.ndarray, lh: np.ndarray, hl: np.ndarray, hh: np.ndarray
) -> np.ndarray:
    """Recombine four equally shaped bands into the double-size array."""
    stack = [np.asarray(b, dtype=np.float64) for b in (ll, lh, hl, hh)]
    if any(b.shape != stack[0].shape for b in stack[1:]) or stack[0].ndim != 2:
        raise ValueError(
            f"band shapes must match, got {[b.shape for b in stack]}"
        )
    if stack[0].size == 0:
        raise ValueError("bands must be non-empty")
    return backend.synthesis_stack(np.ascontiguousarray(np.stack(stack)))[0]


def packet_decompose(img: np.ndarray, level: int) -> WaveletPacket:
    """Full wavelet-packet transform of `img` down to `level`.

    All four children are decomposed at every step, so the result holds
    ``4**level`` bands and exactly as many coefficients as pixels.
    """
    arr = np.ascontiguousarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("input must be a non-empty 2D array")
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    height, width = arr.shape
    feasible = max_level(height, width)
    if level > feasible:
        raise ValueError(
            f"level {level} exceeds maximum {feasible} for a {width}x{height} image"
        )
    stack = arr[np.newaxis]
    for _ in range(level):
        stack = backend.analysis_stack(stack)
    return WaveletPacket(level=level, source_height=height, source_width=width, bands=stack)


def packet_reconstruct(packet: WaveletPacket) -> np.ndarray:
    """Invert :func:`packet_decompose`; no clamping is applied."""
    stack = packet.bands
    for _ in range(packet.level):
        stack = backend.synthesis_stack(stack)
    return stack[0]
