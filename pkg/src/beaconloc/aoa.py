"""Four-photodiode angle-of-arrival estimator head.

A head at position ``a`` holds four photodiodes with unit normals stacked in
a (4, 3) matrix ``V``. All four share a single line of sight to the LED, so
the current vector is ``mu_max * V @ r + noise`` and the incidence vector is
recovered by least squares: ``r_hat = pinv(V) @ currents / mu_max``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import channel
from .exceptions import CoincidentPoints
from .linalg import UNIT_NORM_TOL, pseudo_left_inverse, vec3

SQRT2 = np.sqrt(2.0)


def optimal_normals():
    """Photodiode normals minimising mean squared AOA error under thermal noise.

    Rows are ``sqrt(2/3) * (cos a, sin a, 1/sqrt 2)`` for azimuths
    a = pi/2, pi, 3pi/2, 2pi, i.e. four unit normals about 54.7 degrees off
    the zenith. ``V.T @ V == 4/3 * I``.
    """
    az = np.array([0.5, 1.0, 1.5, 2.0]) * np.pi
    rows = np.column_stack([np.cos(az), np.sin(az), np.full(4, 1 / SQRT2)])
    v = np.sqrt(2.0 / 3.0) * rows
    # cos/sin of multiples of pi/2 leave ~1e-16 residue; snap it to zero.
    v[np.abs(v) < 1e-15] = 0.0
    return v


def true_geometry(est, led, led_normal=(0.0, 0.0, -1.0)):
    """Exact line of sight from a head to the LED.

    Returns:
        (r, d, cos_theta): unit incidence vector from the head to the LED,
        distance in m, and cosine of the LED radiation angle clamped to [0, 1].
    """
    led = np.asarray(led, dtype=float)
    diff = led - est.position
    d = float(np.linalg.norm(diff))
    if d == 0.0:
        raise CoincidentPoints("LED coincides with the estimator position")
    r = diff / d
    cos_theta = float(np.clip(-r @ np.asarray(led_normal, dtype=float), 0.0, 1.0))
    return r, d, cos_theta


@dataclass(frozen=True)
class AoaEstimator:
    position: np.ndarray
    normals: np.ndarray = field(default_factory=optimal_normals)

    def __post_init__(self):
        object.__setattr__(self, "position", vec3(self.position))
        normals = np.array(self.normals, dtype=float)
        if normals.shape != (4, 3):
            raise ValueError(f"normals must be 4x3, got {normals.shape}")
        if np.any(np.abs(np.linalg.norm(normals, axis=1) - 1.0) > UNIT_NORM_TOL):
            raise ValueError("photodiode normals must be unit vectors")
        object.__setattr__(self, "normals", normals)
        # Raises RankDeficient for coplanar normals.
        object.__setattr__(self, "_pinv", pseudo_left_inverse(normals))

    @property
    def pinv(self):
        """Cached ``(V^T V)^-1 V^T``, shape (3, 4)."""
        return self._pinv

    def __eq__(self, other):
        if not isinstance(other, AoaEstimator):
            return NotImplemented
        return (np.array_equal(self.position, other.position)
                and np.array_equal(self.normals, other.normals))

    __hash__ = None


@dataclass(frozen=True)
class IncidenceEstimate:
    """Output of one head: the (not re-normalised) incidence estimate.

    ``covariance`` is the first-order covariance of ``r_hat - r``.
    """

    r_hat: np.ndarray
    mu_max: float
    covariance: np.ndarray


def mean_currents(est, params, led, led_normal=(0.0, 0.0, -1.0), clip=False):
    """Noise-free photodiode currents and the head's peak current ``mu_max``."""
    r, d, cos_theta = true_geometry(est, led, led_normal)
    mu_max = channel.peak_current(params, d, cos_theta)
    mu = mu_max * (est.normals @ r)
    if clip:
        mu = np.maximum(mu, 0.0)
    return mu, mu_max


def simulate_currents(est, params, model, led, led_normal=(0.0, 0.0, -1.0), rng=None,
                      size=None, clip=False):
    """Noisy current vector of one head.

    Args:
        size: number of independent snapshots; ``None`` returns shape (4,),
            otherwise (size, 4).
        clip: physical mode, photodiodes facing away see zero signal.
    """
    mu, _ = mean_currents(est, params, led, led_normal, clip)
    if size is not None:
        mu = np.broadcast_to(mu, (size, 4))
    return channel.sample_noisy_current(model, mu, rng)


def estimate_incidence(est, currents, mu_max):
    """Least-squares incidence vector from currents, shape (..., 4) -> (..., 3)."""
    if not mu_max > 0:
        raise ValueError("mu_max must be positive")
    return np.asarray(currents, dtype=float) @ est.pinv.T / mu_max


def incidence_noise_covariance(mu_max, per_pd_variances, normals=None):
    """Covariance of the incidence error ``r_hat - r``.

    With ``normals=None`` the optimal head is assumed and the closed form of
    its noise map is used; the (1, 2) entry is identically zero there. For
    any other head the general ``P diag(var) P^T / mu_max^2`` with
    ``P = pinv(normals)`` is returned.
    """
    if not mu_max > 0:
        raise ValueError("mu_max must be positive")
    s = np.asarray(per_pd_variances, dtype=float)
    if normals is not None:
        p = pseudo_left_inverse(normals)
        return (p * s) @ p.T / mu_max**2
    c = 6.0 / (16.0 * mu_max**2)
    s1, s2, s3, s4 = s
    c13 = c / SQRT2 * (s4 - s2)
    c23 = c / SQRT2 * (s1 - s3)
    return np.array([
        [c * (s4 + s2), 0.0, c13],
        [0.0, c * (s1 + s3), c23],
        [c13, c23, c / 2 * s.sum()],
    ])


def is_optimal(normals):
    return np.allclose(normals, optimal_normals(), rtol=0, atol=1e-12)


def head_covariance(est, params, model, led, led_normal=(0.0, 0.0, -1.0), clip=False):
    """Incidence-error covariance and ``mu_max`` of a head at the true geometry."""
    mu, mu_max = mean_currents(est, params, led, led_normal, clip)
    var = channel.noise_variance(model, mu)
    normals = None if is_optimal(est.normals) else est.normals
    return incidence_noise_covariance(mu_max, var, normals), mu_max


def observe(est, params, model, led, led_normal=(0.0, 0.0, -1.0), rng=None, clip=False):
    """Simulate one noisy snapshot and return its :class:`IncidenceEstimate`."""
    cov, mu_max = head_covariance(est, params, model, led, led_normal, clip)
    currents = simulate_currents(est, params, model, led, led_normal, rng, clip=clip)
    return IncidenceEstimate(estimate_incidence(est, currents, mu_max), mu_max, cov)
