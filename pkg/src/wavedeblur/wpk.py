"""WPK1 container: on-disk format for a wavelet packet.

Layout, all little-endian:

    bytes 0-3   magic "WPK1"
    bytes 4-15  uint32 source-width, source-height, level
    then        4**level bands in canonical order, each row-major
                float64 IEEE-754

Writers emit exactly this layout; readers reject anything else.
"""

import struct

import numpy as np

from .packet import WaveletPacket, max_level

__all__ = ["write_wpk", "read_wpk", "MAGIC"]

MAGIC = b"WPK1"
_HEADER = struct.Struct("<III")


def write_wpk(packet: WaveletPacket, path: str) -> None:
    payload = np.ascontiguousarray(packet.bands, dtype="<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_HEADER.pack(packet.source_width, packet.source_height, packet.level))
        fh.write(payload)


def read_wpk(path: str) -> WaveletPacket:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != MAGIC:
        raise ValueError(f"bad magic in {path}: not a WPK1 container")
    if len(data) < 4 + _HEADER.size:
        raise ValueError(f"truncated container: {path}")
    width, height, level = _HEADER.unpack_from(data, 4)
    if width == 0 or height == 0 or level == 0:
        raise ValueError(f"invalid container header in {path}: {width}x{height} level {level}")
    if level > max_level(height, width):
        raise ValueError(
            f"inconsistent container header in {path}: "
            f"level {level} impossible for {width}x{height}"
        )
    count = 4**level * (height >> level) * (width >> level)
    expected = 4 + _HEADER.size + 8 * count
    if len(data) < expected:
        raise ValueError(f"truncated container: {path}")
    if len(data) > expected:
        raise ValueError(f"trailing data in container: {path}")
    bands = np.frombuffer(data, dtype="<f8", offset=4 + _HEADER.size).reshape(
        4**level, height >> level, width >> level
    )
    return WaveletPacket(
        level=level, source_height=height, source_width=width, bands=bands.copy()
    )
