import numpy as np
from numpy import ndarray


def to_polar_degrees(v: ndarray) -> tuple[ndarray, ndarray]:
    """
    Converts complex voltages to (magnitude, angle in degrees).

    Angles are radians internally and degrees in files.
    """
    v = np.asarray(v, dtype=complex)
    return np.abs(v), np.rad2deg(np.angle(v))
