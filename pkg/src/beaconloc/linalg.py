"""Small fixed-size linear algebra helpers.

Everything here works on plain numpy arrays: 3-vectors have shape ``(3,)``,
the photodiode normal matrix has shape ``(4, 3)``.
"""

import numpy as np

from .exceptions import RankDeficient, SingularMatrix

SINGULARITY_THRESHOLD = 1e-12
UNIT_NORM_TOL = 1e-12


def vec3(values, unit=False):
    """Return ``values`` as a finite float array of shape (3,).

    With ``unit=True`` the vector must already have Euclidean norm 1
    (within ``UNIT_NORM_TOL``); it is not silently normalised.
    """
    v = np.array(values, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected 3 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"non-finite component in {v}")
    if unit and abs(np.linalg.norm(v) - 1.0) > UNIT_NORM_TOL:
        raise ValueError(f"direction {v} is not unit norm")
    return v


def unit(values):
    """Normalise a 3-vector to unit length."""
    v = np.asarray(values, dtype=float)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("cannot normalise the zero vector")
    return v / n


def mat2_inverse(m, threshold=SINGULARITY_THRESHOLD):
    """Invert a 2x2 matrix with the adjugate formula.

    Raises:
        SingularMatrix: if ``|det(m)| <= threshold``.
    """
    m = np.asarray(m, dtype=float)
    (a, b), (c, d) = m
    det = a * d - b * c
    if not abs(det) > threshold:
        raise SingularMatrix(f"|det| = {abs(det):.3e} <= {threshold:.1e}")
    return np.array([[d, -b], [-c, a]]) / det


def pseudo_left_inverse(v, threshold=SINGULARITY_THRESHOLD):
    """Least-squares left inverse ``(V^T V)^-1 V^T`` of a tall matrix.

    Evaluated through a thin QR factorisation (``R^-1 Q^T``) rather than the
    normal equations, which would square the condition number.

    Args:
        v: array of shape (n, 3), n >= 3, with rank 3.
        threshold: smallest accepted reciprocal condition number of ``V^T V``.

    Returns:
        Array of shape (3, n) such that ``result @ v`` is the 3x3 identity.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] < 3:
        raise ValueError(f"expected an (n>=3, 3) matrix, got shape {v.shape}")
    if not 1.0 / np.linalg.cond(v) ** 2 > threshold:
        raise RankDeficient("V^T V is singular; normals do not span 3D")
    q, r = np.linalg.qr(v)
    return np.linalg.solve(r, q.T)
