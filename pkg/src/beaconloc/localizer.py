"""Two-ray least-squares triangulation of the LED position.

Each head k gives a ray ``a_k + d_k * r_k``. The ray parameters solve
``[r1, r2] @ (d1, -d2) = a2 - a1`` in the least-squares sense and the
estimate is the midpoint of the two resulting points.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateGeometry
from .linalg import vec3

DEGENERACY_THRESHOLD = 1e-9
MIN_SEPARATION = 1e-6


@dataclass(frozen=True)
class TriangulationInputs:
    a1: np.ndarray
    a2: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    min_separation: float = MIN_SEPARATION

    def __post_init__(self):
        for name in ("a1", "a2", "r1", "r2"):
            object.__setattr__(self, name, vec3(getattr(self, name)))
        if not np.linalg.norm(self.a2 - self.a1) > self.min_separation:
            raise DegenerateGeometry("estimator positions coincide")

    @property
    def baseline(self):
        return self.a2 - self.a1


@dataclass(frozen=True)
class TriangulationResult:
    t_hat: np.ndarray
    d1: float
    d2: float
    gram: tuple
    projections: tuple

    @property
    def discriminant(self):
        c1, c2, c3 = self.gram
        return c1 * c3 - c2 * c2

    @property
    def behind(self):
        """True when a ray parameter is negative (LED behind an estimator)."""
        return self.d1 < 0 or self.d2 < 0


def gram_and_projections(inp):
    """Dot products ``(c1, c2, c3, f1, f2)`` used by the closed-form solve."""
    b = inp.baseline
    return (float(inp.r1 @ inp.r1), float(inp.r1 @ inp.r2), float(inp.r2 @ inp.r2),
            float(inp.r1 @ b), float(inp.r2 @ b))


def solve_distances(c1, c2, c3, f1, f2, threshold=DEGENERACY_THRESHOLD):
    """Signed ray parameters ``(d1, d2)``.

    Raises:
        DegenerateGeometry: if ``c1*c3 - c2**2 <= threshold``.
    """
    det = c1 * c3 - c2 * c2
    if not det > threshold:
        raise DegenerateGeometry(f"c1*c3 - c2^2 = {det:.3e} <= {threshold:.1e}")
    return (c3 * f1 - c2 * f2) / det, (c2 * f1 - c1 * f2) / det


def triangulate(inp, threshold=DEGENERACY_THRESHOLD):
    c1, c2, c3, f1, f2 = gram_and_projections(inp)
    d1, d2 = solve_distances(c1, c2, c3, f1, f2, threshold)
    t_hat = (inp.a1 + d1 * inp.r1 + inp.a2 + d2 * inp.r2) / 2
    return TriangulationResult(t_hat, d1, d2, (c1, c2, c3), (f1, f2))


def triangulate_batch(a1, a2, r1, r2, threshold=DEGENERACY_THRESHOLD):
    """Vectorised :func:`triangulate` over stacked rays.

    Args:
        a1, a2: estimator positions, shape (3,).
        r1, r2: incidence vectors, shape (n, 3).

    Returns:
        (t_hat, valid): estimates of shape (n, 3) and a boolean mask; rows
        failing the discriminant test are NaN and ``valid`` is False there.
    """
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    r1 = np.atleast_2d(r1)
    r2 = np.atleast_2d(r2)
    b = a2 - a1
    c1 = np.einsum("ij,ij->i", r1, r1)
    c2 = np.einsum("ij,ij->i", r1, r2)
    c3 = np.einsum("ij,ij->i", r2, r2)
    f1 = r1 @ b
    f2 = r2 @ b
    det = c1 * c3 - c2 * c2
    valid = det > threshold
    with np.errstate(divide="ignore", invalid="ignore"):
        d1 = np.where(valid, (c3 * f1 - c2 * f2) / det, np.nan)
        d2 = np.where(valid, (c2 * f1 - c1 * f2) / det, np.nan)
    t_hat = (a1 + d1[:, None] * r1 + a2 + d2[:, None] * r2) / 2
    return t_hat, valid
