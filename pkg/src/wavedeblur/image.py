"""Grayscale image representation, file I/O, and pixel metrics.

Images are plain 2D float64 arrays with a nominal [0, 1] range. Decoded
files always land in [0, 1]; intermediate arithmetic elsewhere in the
pipeline may leave that range, and only :func:`save_image` clamps.

Supported formats: PNG (8/16-bit grayscale; color is collapsed to
Rec.601 luminance) and binary PGM (P5, maxval 255 or 65535).
"""

import math
import os
from dataclasses import dataclass

import numpy as np
from PIL import Image

__all__ = [
    "ImageMeta",
    "load_image",
    "save_image",
    "image_info",
    "l1_distance",
    "psnr",
    "clamp01",
]

# Rec.601 luma weights for collapsing color input.
_LUMA = np.array([0.299, 0.587, 0.114])

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


@dataclass(frozen=True)
class ImageMeta:
    source_path: str
    bit_depth: int  # 8 or 16


def clamp01(img: np.ndarray) -> np.ndarray:
    """Clip to [0, 1]; applied once at write-out, never mid-pipeline."""
    return np.clip(img, 0.0, 1.0)


# ---------------------------------------------------------------------------
# PGM (binary, P5)
# ---------------------------------------------------------------------------

def _read_pgm_tokens(data: bytes, count: int) -> tuple[list[int], int]:
    """Parse `count` whitespace-separated integer header tokens.

    Handles '#' comments. Returns the tokens and the offset just past the
    single whitespace byte that terminates the header.
    """
    tokens: list[int] = []
    i = 0
    while len(tokens) < count:
        if i >= len(data):
            raise ValueError("truncated PGM header")
        ch = data[i : i + 1]
        if ch == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        elif ch.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            tok = data[i:j]
            if not tok.isdigit():
                raise ValueError(f"bad PGM header token {tok!r}")
            tokens.append(int(tok))
            i = j
    if i >= len(data) or not data[i : i + 1].isspace():
        raise ValueError("malformed PGM header")
    return tokens, i + 1


def _load_pgm(data: bytes, path: str) -> tuple[np.ndarray, int]:
    (width, height, maxval), offset = _read_pgm_tokens(data[2:], 3)
    offset += 2  # account for the stripped "P5"
    if width <= 0 or height <= 0:
        raise ValueError(f"zero-dimension image: {path}")
    if maxval == 255:
        dtype, depth = np.dtype(np.uint8), 8
    elif maxval == 65535:
        dtype, depth = np.dtype(">u2"), 16
    else:
        raise ValueError(f"unsupported PGM maxval {maxval} in {path} (expected 255 or 65535)")
    need = width * height * dtype.itemsize
    raster = data[offset : offset + need]
    if len(raster) < need:
        raise ValueError(f"truncated PGM raster in {path}")
    pixels = np.frombuffer(raster, dtype=dtype).reshape(height, width)
    return pixels.astype(np.float64) / maxval, depth


def _save_pgm(codes: np.ndarray, maxval: int, path: str) -> None:
    header = f"P5\n{codes.shape[1]} {codes.shape[0]}\n{maxval}\n".encode("ascii")
    raster = codes.astype(">u2" if maxval > 255 else np.uint8).tobytes()
    with open(path, "wb") as fh:
        fh.write(header + raster)


# ---------------------------------------------------------------------------
# PNG (via Pillow)
# ---------------------------------------------------------------------------

def _decode_pil(img: Image.Image, path: str) -> tuple[np.ndarray, int]:
    mode = img.mode
    if mode == "P":
        img, mode = img.convert("RGB"), "RGB"
    elif mode == "1":
        img, mode = img.convert("L"), "L"
    if mode == "L":
        return np.asarray(img, dtype=np.float64) / 255.0, 8
    if mode == "LA":
        return np.asarray(img, dtype=np.float64)[..., 0] / 255.0, 8
    if mode in ("I;16", "I;16B", "I;16L", "I"):
        arr = np.asarray(img, dtype=np.float64)
        return arr / 65535.0, 16
    if mode in ("RGB", "RGBA"):
        arr = np.asarray(img, dtype=np.float64)[..., :3] / 255.0
        return arr @ _LUMA, 8
    raise ValueError(f"unsupported image mode {mode!r} in {path}")


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def _load(path: str) -> tuple[np.ndarray, int]:
    with open(path, "rb") as fh:
        head = fh.read(8)
        fh.seek(0)
        if head[:2] == b"P5":
            return _load_pgm(fh.read(), path)
        if head == _PNG_MAGIC:
            with Image.open(fh) as img:
                data, depth = _decode_pil(img, path)
            if data.shape[0] == 0 or data.shape[1] == 0:
                raise ValueError(f"zero-dimension image: {path}")
            return data, depth
    raise ValueError(f"unsupported format: {path} (expected PNG or binary PGM)")


def load_image(path: str) -> np.ndarray:
    """Read a PNG or binary PGM file as a float64 array in [0, 1]."""
    data, _ = _load(path)
    return data


def image_info(path: str) -> ImageMeta:
    """Header-only inspection: source path and stored bit depth."""
    with open(path, "rb") as fh:
        head = fh.read(8)
    if head[:2] == b"P5":
        with open(path, "rb") as fh:
            (_, _, maxval), _ = _read_pgm_tokens(fh.read()[2:], 3)
        return ImageMeta(source_path=path, bit_depth=16 if maxval > 255 else 8)
    if head == _PNG_MAGIC:
        with Image.open(path) as img:
            depth = 16 if img.mode in ("I;16", "I;16B", "I;16L", "I") else 8
        return ImageMeta(source_path=path, bit_depth=depth)
    raise ValueError(f"unsupported format: {path} (expected PNG or binary PGM)")


def save_image(img: np.ndarray, path: str, bit_depth: int = 8) -> None:
    """Clamp to [0, 1], quantize to `bit_depth`, and write PNG or PGM.

    The container is chosen by file extension (.png or .pgm). Quantization
    is round-to-nearest (ties to even), so a saved image reloads within
    half a quantization step of its clamped values.
    """
    if bit_depth not in (8, 16):
        raise ValueError(f"bit_depth must be 8 or 16, got {bit_depth}")
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.size == 0:
        raise ValueError("image must be a non-empty 2D array")
    maxval = (1 << bit_depth) - 1
    codes = np.rint(clamp01(img) * maxval)
    ext = os.path.splitext(path)[1].lower()
    if ext == ".pgm":
        _save_pgm(codes, maxval, path)
    elif ext == ".png":
        if bit_depth == 8:
            Image.fromarray(codes.astype(np.uint8), mode="L").save(path, format="PNG")
        else:
            Image.fromarray(codes.astype(np.uint16)).save(path, format="PNG")
    else:
        raise ValueError(f"unsupported output extension {ext!r} (use .png or .pgm)")


def l1_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Mean absolute pixel difference."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.mean(np.abs(a - b)))


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB with peak 1.0; inf when equal."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)
