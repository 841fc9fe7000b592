"""Pure-numpy Haar filter-bank kernels over stacked band arrays.

This is the fallback backend; ``wavedeblur._haar_cy`` is the compiled
twin. Both operate on a stack of shape ``(bands, rows, cols)`` and must
produce bit-identical output, so the floating-point evaluation order
below is the contract: every coefficient is formed as
``0.5 * (((a op b) op c) op d)`` on the four samples of a 2x2 block.

Convention (fixed once, shared by analysis and synthesis):

* per-axis orthonormal filters, low ``(s, s)`` and high ``(s, -s)``
  with ``s = sqrt(2)/2``, positive tap on the left/top sample;
* band letters name the (column-axis, row-axis) filter pair, so with
  block samples ``a=x[2i,2j] b=x[2i,2j+1] c=x[2i+1,2j] d=x[2i+1,2j+1]``:

      LL = (a + b + c + d) / 2
      LH = (a + b - c - d) / 2
      HL = (a - b + c - d) / 2
      HH = (a - b - c + d) / 2
"""

import numpy as np

__all__ = ["analysis_stack", "synthesis_stack"]


def analysis_stack(x: np.ndarray) -> np.ndarray:
    """One Haar analysis step over a stack of bands.

    Parameters
    ----------
    x : ndarray, shape (B, h, w), float64
        h and w must be even.

    Returns
    -------
    ndarray, shape (4*B, h//2, w//2)
        Children of band ``i`` land at ``4*i + (0..3)`` in LL, LH, HL,
        HH order.
    """
    a = x[:, 0::2, 0::2]
    b = x[:, 0::2, 1::2]
    c = x[:, 1::2, 0::2]
    d = x[:, 1::2, 1::2]
    ll = (a + b + c + d) * 0.5
    lh = (a + b - c - d) * 0.5
    hl = (a - b + c - d) * 0.5
    hh = (a - b - c + d) * 0.5
    nb, h2, w2 = ll.shape
    return np.stack((ll, lh, hl, hh), axis=1).reshape(4 * nb, h2, w2)


def synthesis_stack(x: np.ndarray) -> np.ndarray:
    """Inverse of :func:`analysis_stack`.

    Parameters
    ----------
    x : ndarray, shape (4*B, h, w), float64

    Returns
    -------
    ndarray, shape (B, 2*h, 2*w)
    """
    ll = x[0::4]
    lh = x[1::4]
    hl = x[2::4]
    hh = x[3::4]
    nb, h, w = ll.shape
    out = np.empty((nb, 2 * h, 2 * w), dtype=np.float64)
    out[:, 0::2, 0::2] = (ll + lh + hl + hh) * 0.5
    out[:, 0::2, 1::2] = (ll + lh - hl - hh) * 0.5
    out[:, 1::2, 0::2] = (ll - lh + hl - hh) * 0.5
    out[:, 1::2, 1::2] = (ll - lh - hl + hh) * 0.5
    return out
