"""Room, estimator placement and channel constants for one experiment."""

from dataclasses import dataclass, field, replace

import numpy as np

from .aoa import AoaEstimator
from .channel import NoiseModel, OpticalParams
from .linalg import vec3
from .localizer import DEGENERACY_THRESHOLD, MIN_SEPARATION

LINEAR = "linear"
PHYSICAL = "physical"


@dataclass(frozen=True)
class Scene:
    """Everything needed to simulate or analyse one LED position.

    ``mode`` is ``"linear"`` (signed photodiode response, the linear model the
    error analysis assumes) or ``"physical"`` (photodiodes facing away from
    the LED receive zero power).
    """

    est1: AoaEstimator
    est2: AoaEstimator
    optics: OpticalParams = field(default_factory=OpticalParams)
    noise: NoiseModel = field(default_factory=NoiseModel)
    room: tuple = (4.0, 4.0, 4.0)
    led_height: float = 4.0
    led_normal: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, -1.0]))
    degeneracy_threshold: float = DEGENERACY_THRESHOLD
    min_separation: float = MIN_SEPARATION
    mode: str = LINEAR

    def __post_init__(self):
        object.__setattr__(self, "led_normal", vec3(self.led_normal, unit=True))
        object.__setattr__(self, "room", tuple(float(v) for v in self.room))
        if self.mode not in (LINEAR, PHYSICAL):
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def from_positions(cls, a1, a2, **kwargs):
        """Scene with two optimal heads at ``a1`` and ``a2``."""
        return cls(AoaEstimator(a1), AoaEstimator(a2), **kwargs)

    @property
    def clip(self):
        return self.mode == PHYSICAL

    @property
    def estimators(self):
        return self.est1, self.est2

    def led_at(self, x, y):
        return np.array([x, y, self.led_height], dtype=float)

    def with_noise(self, noise):
        return replace(self, noise=noise)

    def __eq__(self, other):
        if not isinstance(other, Scene):
            return NotImplemented
        return (self.est1 == other.est1 and self.est2 == other.est2
                and self.optics == other.optics and self.noise == other.noise
                and self.room == other.room and self.led_height == other.led_height
                and np.array_equal(self.led_normal, other.led_normal)
                and self.degeneracy_threshold == other.degeneracy_threshold
                and self.min_separation == other.min_separation
                and self.mode == other.mode)

    __hash__ = None


def fig3_scene(**kwargs):
    """Widely spaced heads at (0, 2, 0) and (4, 2, 0) in a 4 m cube."""
    return Scene.from_positions((0.0, 2.0, 0.0), (4.0, 2.0, 0.0), **kwargs)


def fig4_scene(**kwargs):
    """Closely spaced heads at (1.5, 2, 0) and (2.5, 2, 0)."""
    return Scene.from_positions((1.5, 2.0, 0.0), (2.5, 2.0, 0.0), **kwargs)
