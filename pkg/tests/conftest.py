import numpy as np


def ridge_pattern(shape=(256, 256), period=16.0, angle_deg=30.0, phase=0.0, amp=0.45):
    """Oriented sinusoidal ridges in [0.05, 0.95], a stand-in for the
    ridge/valley structure the pipeline targets."""
    h, w = shape
    yy, xx = np.mgrid[0:h, 0:w].astype(np.float64)
    theta = np.radians(angle_deg)
    t = xx * np.cos(theta) + yy * np.sin(theta)
    return 0.5 + amp * np.sin(2.0 * np.pi * t / period + phase)


def random_ridge(rng, shape=(256, 256)):
    return ridge_pattern(
        shape,
        period=rng.uniform(8.0, 24.0),
        angle_deg=rng.uniform(0.0, 180.0),
        phase=rng.uniform(0.0, 2.0 * np.pi),
    )
