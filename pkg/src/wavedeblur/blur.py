"""Synthetic blur: kernel construction, application, and seeded sampling.

Three kernel families share one sizing rule, k = 6*sigma - 1 with
integer sigma in [3, 6]; the box ("average") variant uses floor(k/2)
shrunk to the next odd size so it stays center-anchored. Every kernel
is non-negative and sums to 1.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

__all__ = ["BLUR_KINDS", "BlurSpec", "build_kernel", "apply_blur", "sample_blur"]

BLUR_KINDS = ("gaussian", "motion", "average")


@dataclass(frozen=True)
class BlurSpec:
    kind: str
    sigma: int
    angle: float = 0.0  # degrees, used by motion only
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in BLUR_KINDS:
            raise ValueError(f"kind must be one of {BLUR_KINDS}, got {self.kind!r}")
        if self.sigma not in (3, 4, 5, 6):
            raise ValueError(f"sigma must be an integer in [3, 6], got {self.sigma}")
        if not 0.0 <= self.angle < 180.0:
            raise ValueError(f"angle must be in [0, 180), got {self.angle}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @property
    def kernel_size(self) -> int:
        """Side length of the kernel this spec builds."""
        k = 6 * self.sigma - 1
        if self.kind != "average":
            return k
        half = k // 2
        return half - 1 if half % 2 == 0 else half

    def to_text(self) -> str:
        """Single-line form ``kind:sigma:angle:seed`` used in manifests."""
        return f"{self.kind}:{self.sigma}:{self.angle:.17g}:{self.seed}"

    @classmethod
    def from_text(cls, text: str) -> "BlurSpec":
        parts = text.strip().split(":")
        if len(parts) != 4:
            raise ValueError(f"bad blur spec {text!r} (expected kind:sigma:angle:seed)")
        kind, sigma, angle, seed = parts
        return cls(kind=kind, sigma=int(sigma), angle=float(angle), seed=int(seed))


def _symmetric_round(z: float) -> int:
    # round-half-away-from-zero, so the rasterized line is point-symmetric
    return int(math.floor(z + 0.5)) if z >= 0 else -int(math.floor(-z + 0.5))


def _motion_kernel(k: int, angle: float) -> np.ndarray:
    """1-pixel-wide line of length k through the kernel center."""
    c = (k - 1) // 2
    rad = math.radians(angle)
    dx, dy = math.cos(rad), math.sin(rad)
    kern = np.zeros((k, k))
    if abs(dx) >= abs(dy):
        slope = dy / dx
        for i in range(-c, c + 1):
            kern[c + _symmetric_round(i * slope), c + i] = 1.0
    else:
        slope = dx / dy
        for i in range(-c, c + 1):
            kern[c + i, c + _symmetric_round(i * slope)] = 1.0
    return kern / kern.sum()


def build_kernel(spec: BlurSpec) -> np.ndarray:
    """Build the kernel for a spec: odd side length, weights summing to 1."""
    k = spec.kernel_size
    if spec.kind == "gaussian":
        offsets = np.arange(k, dtype=np.float64) - (k - 1) / 2.0
        taps = np.exp(-(offsets**2) / (2.0 * spec.sigma**2))
        kern = np.outer(taps, taps)
        return kern / kern.sum()
    if spec.kind == "motion":
        return _motion_kernel(k, spec.angle)
    return np.full((k, k), 1.0 / (k * k))


def apply_blur(img: np.ndarray, spec: BlurSpec) -> np.ndarray:
    """Correlate with the spec's kernel, reflect-101 boundaries.

    The kernel is a convex combination, so output stays in [0, 1] for
    in-range input (clipped against float residue).
    """
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("image must be a non-empty 2D array")
    kern = build_kernel(spec)
    if kern.shape[0] > min(arr.shape):
        raise ValueError(
            f"kernel size {kern.shape[0]} exceeds image extent {arr.shape[1]}x{arr.shape[0]}"
        )
    out = ndimage.correlate(arr, kern, mode="mirror")
    return np.clip(out, 0.0, 1.0)


def sample_blur(seed: int, sigma_range: tuple[int, int] = (3, 6)) -> BlurSpec:
    """Draw a spec fully determined by `seed`: kind uniform over the three
    families, sigma uniform on the integer range, angle uniform in [0, 180)."""
    rng = np.random.default_rng(seed)
    kind = BLUR_KINDS[int(rng.integers(3))]
    sigma = int(rng.integers(sigma_range[0], sigma_range[1] + 1))
    angle = float(rng.uniform(0.0, 180.0))
    return BlurSpec(kind=kind, sigma=sigma, angle=angle, seed=seed)
