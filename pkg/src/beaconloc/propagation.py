"""First-order error propagation for the two-head LED estimator.

The estimate is linearised around the true incidence vectors:
``t_hat - t ~= J1 n1 + J2 n2`` with ``Jk = d t_hat / d r_k``, and with
independent head noise the position error covariance is
``J1 C1 J1^T + J2 C2 J2^T``. The scalar figure of merit ``e_ps`` is the
root of its trace.
"""

from dataclasses import dataclass

import numpy as np

from . import aoa
from .exceptions import NegativeTrace
from .localizer import (DEGENERACY_THRESHOLD, TriangulationInputs,
                        gram_and_projections, solve_distances)


@dataclass(frozen=True)
class JacobianPair:
    dt_dr1: np.ndarray
    dt_dr2: np.ndarray


@dataclass(frozen=True)
class ErrorReport:
    covariance: np.ndarray
    e_ps: float
    head_covariances: tuple = ()
    jacobians: JacobianPair = None


def distance_jacobians(inp, threshold=DEGENERACY_THRESHOLD):
    """Gradients of the ray parameters with respect to the incidence vectors.

    Returns:
        ``(dd1_dr1, dd2_dr1, dd1_dr2, dd2_dr2)``, each of shape (3,). The
        expressions keep general ``c1`` and ``c3``, so they stay valid for
        non-unit (noisy) directions.
    """
    c1, c2, c3, f1, f2 = gram_and_projections(inp)
    solve_distances(c1, c2, c3, f1, f2, threshold)  # degeneracy check
    r1, r2, b = inp.r1, inp.r2, inp.baseline
    det = c1 * c3 - c2 * c2
    num1 = c3 * f1 - c2 * f2
    num2 = c2 * f1 - c1 * f2

    ddet_dr1 = 2 * c3 * r1 - 2 * c2 * r2
    dd1_dr1 = -num1 / det**2 * ddet_dr1 + (c3 * b - f2 * r2) / det
    dd2_dr1 = -num2 / det**2 * ddet_dr1 + (c2 * b + f1 * r2 - 2 * f2 * r1) / det

    ddet_dr2 = 2 * c1 * r2 - 2 * c2 * r1
    dd1_dr2 = -num1 / det**2 * ddet_dr2 + (2 * f1 * r2 - c2 * b - f2 * r1) / det
    dd2_dr2 = -num2 / det**2 * ddet_dr2 + (f1 * r1 - c1 * b) / det
    return dd1_dr1, dd2_dr1, dd1_dr2, dd2_dr2


def estimate_jacobians(inp, threshold=DEGENERACY_THRESHOLD):
    """``d t_hat / d r_k`` for k = 1, 2 as 3x3 matrices (rows index t_hat)."""
    dd1_dr1, dd2_dr1, dd1_dr2, dd2_dr2 = distance_jacobians(inp, threshold)
    c1, c2, c3, f1, f2 = gram_and_projections(inp)
    d1, d2 = solve_distances(c1, c2, c3, f1, f2, threshold)
    eye = np.eye(3)
    j1 = 0.5 * (np.outer(inp.r1, dd1_dr1) + d1 * eye + np.outer(inp.r2, dd2_dr1))
    j2 = 0.5 * (np.outer(inp.r1, dd1_dr2) + d2 * eye + np.outer(inp.r2, dd2_dr2))
    return JacobianPair(j1, j2)


def error_covariance(jac, cov1, cov2):
    j1, j2 = jac.dt_dr1, jac.dt_dr2
    cov = j1 @ cov1 @ j1.T + j2 @ cov2 @ j2.T
    return 0.5 * (cov + cov.T)


def e_ps(cov):
    """Root of the trace of a position-error covariance, in m."""
    tr = float(np.trace(cov))
    if tr < -1e-18:
        raise NegativeTrace(f"trace {tr:.3e} < 0")
    return float(np.sqrt(max(tr, 0.0)))


def theoretical_error_at(scene, led):
    """Analytical error report for an LED at ``led`` (3-vector, m).

    Head covariances and Jacobians are both evaluated at the true incidence
    vectors.

    Raises:
        DegenerateGeometry: if the true rays are (near) parallel.
        CoincidentPoints: if the LED sits on an estimator.
    """
    led = np.asarray(led, dtype=float)
    rs, covs = [], []
    for est in scene.estimators:
        r, _, _ = aoa.true_geometry(est, led, scene.led_normal)
        cov, _ = aoa.head_covariance(est, scene.optics, scene.noise, led,
                                     scene.led_normal, scene.clip)
        rs.append(r)
        covs.append(cov)
    inp = TriangulationInputs(scene.est1.position, scene.est2.position, rs[0], rs[1],
                              scene.min_separation)
    jac = estimate_jacobians(inp, scene.degeneracy_threshold)
    cov = error_covariance(jac, covs[0], covs[1])
    return ErrorReport(cov, e_ps(cov), tuple(covs), jac)


def theoretical_grid(scene, xs, ys):
    """``e_ps`` over a horizontal grid at the LED height; shape (len(ys), len(xs))."""
    out = np.empty((len(ys), len(xs)))
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            out[i, j] = theoretical_error_at(scene, scene.led_at(x, y)).e_ps
    return out
