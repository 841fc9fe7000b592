import os
import subprocess
import sys

import numpy as np
import pytest

from wavedeblur import backend
from wavedeblur.packet import packet_decompose, packet_reconstruct

needs_cython = pytest.mark.skipif(
    "cython" not in backend.available_backends(), reason="compiled extension not built"
)


@pytest.fixture
def restore_backend():
    active = backend.get_backend()
    yield
    backend.set_backend(active)


def test_python_backend_always_available():
    assert "python" in backend.available_backends()


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError, match="unknown backend"):
        backend.set_backend("fortran")


@needs_cython
def test_backends_bit_identical_analysis(restore_backend):
    rng = np.random.default_rng(80)
    stack = rng.standard_normal((5, 16, 24))
    backend.set_backend("python")
    ref = backend.analysis_stack(stack)
    backend.set_backend("cython")
    fast = backend.analysis_stack(stack)
    assert np.array_equal(ref, fast)


@needs_cython
def test_backends_bit_identical_synthesis(restore_backend):
    rng = np.random.default_rng(81)
    stack = rng.standard_normal((8, 7, 9))
    backend.set_backend("python")
    ref = backend.synthesis_stack(stack)
    backend.set_backend("cython")
    fast = backend.synthesis_stack(stack)
    assert np.array_equal(ref, fast)


@needs_cython
def test_backends_bit_identical_full_pipeline(restore_backend):
    rng = np.random.default_rng(82)
    img = rng.random((128, 128))
    results = {}
    for name in ("python", "cython"):
        backend.set_backend(name)
        packet = packet_decompose(img, 3)
        results[name] = (packet.bands.copy(), packet_reconstruct(packet))
    assert np.array_equal(results["python"][0], results["cython"][0])
    assert np.array_equal(results["python"][1], results["cython"][1])


def test_env_var_forces_backend():
    code = "import wavedeblur.backend as b; print(b.get_backend())"
    env = dict(os.environ, WAVEDEBLUR_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "python"


def test_env_var_rejects_unknown_backend():
    code = "import wavedeblur.backend"
    env = dict(os.environ, WAVEDEBLUR_BACKEND="fortran")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode != 0
    assert "WAVEDEBLUR_BACKEND" in out.stderr
