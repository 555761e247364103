"""Monte Carlo trials, per-point RMS error and seeded grid sweeps.

Randomness: every grid point gets its own generator derived from
``SeedSequence(seed, spawn_key=(point_index,))``, and trial ``i`` at that
point consumes normals ``8*i .. 8*i+7`` of the stream (head 1 photodiodes
then head 2). Results are therefore independent of how points are spread
over worker processes.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import aoa, channel
from .exceptions import AllTrialsDegenerate, BeaconLocError, DegenerateGeometry
from .localizer import TriangulationInputs, triangulate, triangulate_batch
from .propagation import theoretical_error_at

log = logging.getLogger(__name__)

DEFAULT_TRIALS = 20_000
DEFAULT_STEP = 0.25


def point_rng(seed, index):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _heads(scene, led):
    heads = []
    for est in scene.estimators:
        mu, mu_max = aoa.mean_currents(est, scene.optics, led, scene.led_normal, scene.clip)
        heads.append((est, mu, mu_max))
    return heads


def run_trial(scene, led, rng):
    """One end-to-end noisy estimate ``t_hat`` of the LED at ``led``.

    Raises:
        DegenerateGeometry: if the noisy rays are (near) parallel.
    """
    led = np.asarray(led, dtype=float)
    heads = _heads(scene, led)
    mu = np.stack([h[1] for h in heads])
    currents = channel.sample_noisy_current(scene.noise, mu, rng)
    r1, r2 = (aoa.estimate_incidence(est, cur, mu_max)
              for (est, _, mu_max), cur in zip(heads, currents))
    inp = TriangulationInputs(scene.est1.position, scene.est2.position, r1, r2,
                              scene.min_separation)
    return triangulate(inp, scene.degeneracy_threshold).t_hat


def simulate_errors(scene, led, n_trials, rng):
    """Vectorised trials; returns ``(t_hat - led, valid)``, shapes (n, 3) and (n,).

    Consumes the random stream exactly as ``n_trials`` calls to
    :func:`run_trial` would.
    """
    led = np.asarray(led, dtype=float)
    heads = _heads(scene, led)
    mu = np.stack([h[1] for h in heads])
    currents = channel.sample_noisy_current(scene.noise, np.broadcast_to(mu, (n_trials, 2, 4)), rng)
    r1, r2 = (aoa.estimate_incidence(est, currents[:, k], mu_max)
              for k, (est, _, mu_max) in enumerate(heads))
    t_hat, valid = triangulate_batch(scene.est1.position, scene.est2.position, r1, r2,
                                     scene.degeneracy_threshold)
    return t_hat - led, valid


def empirical_eps(scene, led, n_trials, rng):
    """Monte Carlo RMS position error at one LED position.

    Returns:
        (e_ps_mc, std_err, degenerate_count). ``std_err`` is the delta-method
        standard error of the RMS from the sample variance of squared errors.
        A silent noise model gives exactly ``(0.0, 0.0, n_degenerate)``.

    Raises:
        AllTrialsDegenerate: if no trial produced a valid estimate.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    err, valid = simulate_errors(scene, led, n_trials, rng)
    n_bad = int(n_trials - valid.sum())
    if n_bad == n_trials:
        raise AllTrialsDegenerate(f"all {n_trials} trials degenerate")
    sq = np.einsum("ij,ij->i", err[valid], err[valid])
    if scene.noise.is_silent:
        # every trial equals the noiseless estimate; what remains is round-off
        sq = np.zeros_like(sq)
    ms = float(sq.mean())
    rms = float(np.sqrt(ms))
    if len(sq) < 2 or rms == 0.0:
        return rms, 0.0, n_bad
    se_ms = float(sq.std(ddof=1)) / np.sqrt(len(sq))
    return rms, float(se_ms / (2 * rms)), n_bad


def empirical_covariance(scene, led, n_trials, rng):
    """Sample covariance of ``t_hat - led`` over valid trials (mean not removed)."""
    err, valid = simulate_errors(scene, led, n_trials, rng)
    e = err[valid]
    return e.T @ e / len(e)


@dataclass(frozen=True)
class ExperimentSpec:
    """A grid sweep over LED positions at the scene's LED height."""

    scene: object
    x_range: tuple = (0.0, 4.0)
    y_range: tuple = (0.0, 4.0)
    step: float = DEFAULT_STEP
    trials_per_point: int = DEFAULT_TRIALS
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be >= 1")
        if not self.step > 0:
            raise ValueError("step must be > 0")
        lx, ly, _ = self.scene.room
        x0, x1 = self.x_range
        y0, y1 = self.y_range
        if not (0 <= x0 <= x1 <= lx and 0 <= y0 <= y1 <= ly):
            raise ValueError("grid must lie inside the room")

    def axis(self, lo, hi):
        n = int(np.floor((hi - lo) / self.step + 1e-9)) + 1
        return lo + self.step * np.arange(n)

    @property
    def xs(self):
        return self.axis(*self.x_range)

    @property
    def ys(self):
        return self.axis(*self.y_range)

    def points(self):
        """Grid points ordered by y then x, ascending."""
        return [(float(x), float(y)) for y in self.ys for x in self.xs]


@dataclass
class PointRecord:
    x: float
    y: float
    e_ps_theory: float
    e_ps_mc: float
    mc_std_err: float
    degenerate_trials: int
    error: str = None


@dataclass
class GridSweepResult:
    spec: ExperimentSpec
    records: list = field(default_factory=list)

    @property
    def failed(self):
        return [r for r in self.records if r.error is not None]

    def column(self, name):
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    def as_grid(self, name):
        """Column reshaped to (len(ys), len(xs))."""
        return self.column(name).reshape(len(self.spec.ys), len(self.spec.xs))


def evaluate_point(scene, x, y, n_trials, seed, index):
    led = scene.led_at(x, y)
    errors = []
    try:
        theory = theoretical_error_at(scene, led).e_ps
    except BeaconLocError as exc:
        theory = float("nan")
        errors.append(f"theory: {exc}")
    try:
        mc, se, bad = empirical_eps(scene, led, n_trials, point_rng(seed, index))
    except AllTrialsDegenerate as exc:
        mc, se, bad = float("nan"), float("nan"), n_trials
        errors.append(f"mc: {exc}")
    except DegenerateGeometry as exc:
        mc, se, bad = float("nan"), float("nan"), n_trials
        errors.append(f"mc: {exc}")
    return PointRecord(x, y, theory, mc, se, bad, "; ".join(errors) or None)


def _evaluate_chunk(args):
    scene, chunk, n_trials, seed = args
    return [evaluate_point(scene, x, y, n_trials, seed, i) for i, (x, y) in chunk]


def sweep(spec, workers=None):
    """Theory and Monte Carlo ``e_ps`` at every grid point of ``spec``.

    Per-point failures are recorded on the record and never abort the sweep.
    """
    workers = spec.workers if workers is None else workers
    indexed = list(enumerate(spec.points()))
    if workers <= 1:
        records = _evaluate_chunk((spec.scene, indexed, spec.trials_per_point, spec.seed))
    else:
        chunks = [indexed[i::workers] for i in range(workers)]
        jobs = [(spec.scene, c, spec.trials_per_point, spec.seed) for c in chunks if c]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_evaluate_chunk, jobs))
        by_index = {}
        for chunk, part in zip((c for c in chunks if c), parts):
            for (i, _), rec in zip(chunk, part):
                by_index[i] = rec
        records = [by_index[i] for i, _ in indexed]
    for rec in records:
        if rec.error:
            log.warning("point (%g, %g): %s", rec.x, rec.y, rec.error)
    return GridSweepResult(spec, records)
