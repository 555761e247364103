"""Line-of-sight Lambertian channel, photocurrent conversion and receiver noise.

Units: flux in lm, areas in m^2, responsivity in A/lux, currents in A and
current variances in A^2. ``(R_p / s) * P_r`` is taken to yield amperes
directly, since lux = lm / m^2.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidGeometry


@dataclass(frozen=True)
class OpticalParams:
    """LED and photodiode constants.

    Defaults are the room-simulation values: a 5000 lm LED of Lambertian
    order 1 and 15 mm^2 photodiodes with 22 nA/lux responsivity.
    """

    transmit_power: float = 5000.0
    lambertian_order: float = 1.0
    pd_area: float = 15e-6
    responsivity: float = 22e-9

    def __post_init__(self):
        if not self.transmit_power > 0:
            raise ValueError("transmit_power must be > 0")
        if not self.lambertian_order >= 0:
            raise ValueError("lambertian_order must be >= 0")
        if not self.pd_area > 0:
            raise ValueError("pd_area must be > 0")
        if not self.responsivity > 0:
            raise ValueError("responsivity must be > 0")


@dataclass(frozen=True)
class NoiseModel:
    """Affine current-noise variance ``const_coeff + linear_coeff * mu``.

    The default coefficients are an MMSE fit covering thermal (constant)
    and shot (signal proportional) noise.
    """

    const_coeff: float = 8.0185e-18
    linear_coeff: float = 1.869e-11

    def __post_init__(self):
        if not (self.const_coeff >= 0 and self.linear_coeff >= 0):
            raise ValueError("noise coefficients must be non-negative")

    @classmethod
    def silent(cls):
        return cls(0.0, 0.0)

    def scaled(self, factor):
        """Both coefficients multiplied by ``factor`` (variance scales linearly)."""
        return NoiseModel(self.const_coeff * factor, self.linear_coeff * factor)

    @property
    def is_silent(self):
        return self.const_coeff == 0.0 and self.linear_coeff == 0.0


def lambertian_power(params, d, cos_theta, cos_phi, clip=False):
    """Received flux at a photodiode.

    ``P_t (m+1) s / (2 pi d^2) cos^m(theta) cos(phi)``. The result is signed
    when ``cos_phi < 0`` unless ``clip`` is set, in which case a photodiode
    facing away from the LED receives nothing.
    """
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise InvalidGeometry("distance must be positive")
    m = params.lambertian_order
    p = (params.transmit_power * (m + 1) * params.pd_area / (2 * np.pi * d**2)
         * np.power(cos_theta, m) * np.asarray(cos_phi, dtype=float))
    if clip:
        p = np.maximum(p, 0.0)
    return p


def current_mean(params, received_flux):
    """Noise-free photocurrent ``(R_p / s) * P_r``."""
    return params.responsivity / params.pd_area * np.asarray(received_flux, dtype=float)


def peak_current(params, d, cos_theta):
    """Current of a photodiode facing the LED head-on.

    This is the common scale factor ``R_p P_t (m+1) / (2 pi d^2) cos^m(theta)``
    shared by all photodiodes of one estimator head; each photodiode's mean
    current is this value times ``v_q . r``.
    """
    if not d > 0:
        raise InvalidGeometry("distance must be positive")
    m = params.lambertian_order
    return (params.responsivity * params.transmit_power * (m + 1)
            / (2 * np.pi * d**2) * cos_theta**m)


def noise_variance(model, mu):
    """Current-noise variance at mean current ``mu``; negative means count as 0."""
    mu = np.maximum(np.asarray(mu, dtype=float), 0.0)
    return model.const_coeff + model.linear_coeff * mu


def sample_noisy_current(model, mu, rng):
    """Draw ``mu + n`` with ``n ~ N(0, noise_variance(model, mu))``.

    ``mu`` may be an array; one standard normal is consumed per element, in
    C order, so results depend only on the state of ``rng``.
    """
    mu = np.asarray(mu, dtype=float)
    g = rng.standard_normal(mu.shape)
    return mu + np.sqrt(noise_variance(model, mu)) * g
