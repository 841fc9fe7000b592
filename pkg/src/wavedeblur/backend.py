"""Backend selection for the Haar filter-bank kernels.

The compiled extension is preferred when importable; the numpy fallback
is always available. ``WAVEDEBLUR_BACKEND`` (``cython`` or ``python``)
forces the choice at import time, and :func:`set_backend` switches it at
runtime (used by the benchmark and the backend-equivalence tests).
"""

import os

from . import _haar_np

try:
    from . import _haar_cy
except ImportError:  # extension not built
    _haar_cy = None

_IMPLS = {"python": _haar_np}
if _haar_cy is not None:
    _IMPLS["cython"] = _haar_cy


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_IMPLS))


def _initial() -> str:
    forced = os.environ.get("WAVEDEBLUR_BACKEND", "").strip().lower()
    if forced:
        if forced not in _IMPLS:
            raise ImportError(
                f"WAVEDEBLUR_BACKEND={forced!r} is not available; "
                f"choose from {available_backends()}"
            )
        return forced
    return "cython" if "cython" in _IMPLS else "python"


_active = _initial()


def get_backend() -> str:
    """Name of the backend currently serving the kernels."""
    return _active


def set_backend(name: str) -> None:
    if name not in _IMPLS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    global _active
    _active = name


def analysis_stack(x):
    return _IMPLS[_active].analysis_stack(x)


def synthesis_stack(x):
    return _IMPLS[_active].synthesis_stack(x)
