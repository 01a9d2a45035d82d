"""Numerical oracle for the 3-element search.

Scans the feasible region of the general 3-element rank-1 real POVM (offset
theta, relative angles phi_a and phi_b) on a lattice, refines the best lattice
point by coordinate descent and samples the i_theta curve, so the analytic
constructors can be checked against an independent search.
"""
from dataclasses import dataclass
from django.conf import settings
from django.core.exceptions import ValidationError
import logging
import math
import numpy as np
import pandas as pd

from accinfo.utils import convert_information

from . import matcore
from .ensembles import check_m
from .lookups import (
    FEASIBILITY_TOL,
    MIN_GRID,
    MIN_STEP,
    STEP_SHRINK,
    ERROR_INFEASIBLE,
    ERROR_INVALID,
)
from .measures import i_theta, i_theta_mixed
from .povm import Povm, assert_valid

LOGGER = logging.getLogger("accinfo")

DEFAULT_REFINE_ITERS = 5000


@dataclass(frozen=True)
class GeneralW:
    theta: float
    phi_a: float
    phi_b: float

    def weights(self):
        return general_w_weights(self.phi_a, self.phi_b)


@dataclass(frozen=True)
class SweepCurve:
    M: int
    thetas: np.ndarray
    values: np.ndarray
    eps: float = 0.0

    def __post_init__(self):
        for name in ("thetas", "values"):
            array = np.array(getattr(self, name), dtype=float)
            array.flags.writeable = False
            object.__setattr__(self, name, array)

    def __len__(self):
        return len(self.thetas)

    def argmax(self):
        """Angle of the largest sample, first one on ties."""
        return float(self.thetas[int(np.argmax(self.values))])


@dataclass(frozen=True)
class ScanResult:
    M: int
    grid_n: int
    best_theta: float
    best_phi_a: float
    best_phi_b: float
    best_value: float
    grid_points_evaluated: int
    grid_points_skipped: int
    refined: bool


def _weights(phi_a, phi_b, tol=FEASIBILITY_TOL):
    """Vectorised (a^2, b^2, c^2, feasible) for relative angles phi_a, phi_b."""
    phi_a = np.asarray(phi_a, dtype=float)
    phi_b = np.asarray(phi_b, dtype=float)
    sin_a = np.sin(phi_a)
    sin_b = np.sin(phi_b)
    sin_ab = np.sin(phi_a - phi_b)
    defined = (np.abs(sin_a) > tol) & (np.abs(sin_b) > tol) & (np.abs(sin_ab) > tol)
    with np.errstate(divide="ignore", invalid="ignore"):
        a2 = np.cos(phi_b) / (sin_a * sin_ab)
        b2 = -np.cos(phi_a) / (sin_b * sin_ab)
    feasible = defined & (a2 >= -tol) & (b2 >= -tol) & (a2 + b2 <= 2 + tol)
    a2 = np.where(feasible, np.clip(a2, 0.0, None), 0.0)
    b2 = np.where(feasible, np.clip(b2, 0.0, None), 0.0)
    c2 = np.where(feasible, np.clip(2 - a2 - b2, 0.0, None), 0.0)
    return a2, b2, c2, feasible


def general_w_weights(phi_a, phi_b, tol=FEASIBILITY_TOL):
    """(a^2, b^2, c^2) making c^2|0><0| plus the two weighted directions at
    phi_a and phi_b resolve the identity. Raises ValidationError when the
    angles leave the feasible region.
    """
    a2, b2, c2, feasible = _weights(phi_a, phi_b, tol)
    if not bool(feasible):
        raise ValidationError(
            f"Angles phi_a={phi_a!r}, phi_b={phi_b!r} are outside the feasible region",
            code=ERROR_INFEASIBLE,
        )
    return float(a2), float(b2), float(c2)


def build_general_w(theta, phi_a, phi_b):
    """The 3-element rank-1 real POVM with directions theta, theta + phi_a and
    theta + phi_b, weights solved from the completeness relation.
    """
    a2, b2, c2 = general_w_weights(phi_a, phi_b)
    elements = [
        weight * matcore.projector(matcore.real_direction(theta + offset))
        for weight, offset in ((c2, 0.0), (a2, phi_a), (b2, phi_b))
    ]
    povm = Povm.from_elements(elements)
    return assert_valid(povm, context=f"General W(theta={theta:.6g}, phi_a={phi_a:.6g}, phi_b={phi_b:.6g})")


def scan_objective(M, theta, phi_a, phi_b):
    """Mutual information of E_M with the general 3-element POVM, broadcast over
    the three angle arrays; -inf outside the feasible region.
    """
    theta = np.asarray(theta, dtype=float)
    a2, b2, c2, feasible = _weights(phi_a, phi_b)
    value = (
        c2 / 2 * i_theta(M, theta)
        + a2 / 2 * i_theta(M, theta + phi_a)
        + b2 / 2 * i_theta(M, theta + phi_b)
    )
    value = np.where(feasible, value, -np.inf)
    return float(value) if value.ndim == 0 else value


def _check_scan_args(M, grid_n, refine_iters):
    check_m(M)
    if not isinstance(grid_n, (int, np.integer)) or grid_n < MIN_GRID:
        raise ValidationError(f"grid must be an integer >= {MIN_GRID}, got {grid_n!r}", code=ERROR_INVALID)
    if refine_iters < 0:
        raise ValidationError(f"refine_iters must not be negative, got {refine_iters!r}", code=ERROR_INVALID)


def _refine(M, point, value, spacing, refine_iters):
    """Coordinate descent: try +/- step on each coordinate, keep improvements and
    halve every step after a round without one.
    """
    point = np.array(point, dtype=float)
    steps = np.array(spacing, dtype=float)
    rounds = 0
    while rounds < refine_iters and steps.max() >= MIN_STEP:
        improved = False
        for i in range(3):
            for direction in (1.0, -1.0):
                trial = point.copy()
                trial[i] += direction * steps[i]
                trial_value = scan_objective(M, *trial)
                if trial_value > value:
                    point, value = trial, trial_value
                    improved = True
                    break
        if not improved:
            steps = steps * STEP_SHRINK
        rounds += 1
    LOGGER.debug("Refinement for M=%d stopped after %d rounds at step %.3g", M, rounds, steps.max())
    return point, value


def scan3(M, grid_n, refine_iters=DEFAULT_REFINE_ITERS):
    """Lattice search over theta in [0, pi/M) and phi_a, phi_b in [0, pi), then
    coordinate-descent refinement from the best lattice point.

    Ties on the lattice go to the lexicographically smallest (theta, phi_a, phi_b).
    """
    _check_scan_args(M, grid_n, refine_iters)
    thetas = np.arange(grid_n) * (math.pi / M) / grid_n
    phis = np.arange(grid_n) * math.pi / grid_n
    chunk = max(int(settings.SCAN_CHUNK), 1)

    best_value = -np.inf
    best_point = None
    evaluated = skipped = 0
    for start in range(0, grid_n, chunk):
        block = thetas[start:start + chunk]
        values = scan_objective(
            M,
            block[:, np.newaxis, np.newaxis],
            phis[np.newaxis, :, np.newaxis],
            phis[np.newaxis, np.newaxis, :],
        )
        values = np.broadcast_to(values, (len(block), grid_n, grid_n))
        feasible = np.isfinite(values)
        evaluated += int(feasible.sum())
        skipped += int(feasible.size - feasible.sum())
        if not feasible.any():
            continue
        index = np.unravel_index(int(np.argmax(values)), values.shape)
        if values[index] > best_value:
            best_value = float(values[index])
            best_point = (float(block[index[0]]), float(phis[index[1]]), float(phis[index[2]]))
    if best_point is None:
        raise ValidationError(f"No feasible lattice point for M={M} at grid {grid_n}", code=ERROR_INFEASIBLE)
    LOGGER.info(
        "Scanned M=%d at grid %d: %d points evaluated, %d skipped, best %.12g",
        M, grid_n, evaluated, skipped, best_value,
    )

    refined = refine_iters > 0
    if refined:
        spacing = (math.pi / (M * grid_n), math.pi / grid_n, math.pi / grid_n)
        point, best_value = _refine(M, best_point, best_value, spacing, refine_iters)
        best_point = tuple(float(x) for x in point)
    return ScanResult(
        M=M,
        grid_n=grid_n,
        best_theta=best_point[0],
        best_phi_a=best_point[1],
        best_phi_b=best_point[2],
        best_value=float(best_value),
        grid_points_evaluated=evaluated,
        grid_points_skipped=skipped,
        refined=refined,
    )


def theta_sweep(M, n_points, eps=0.0):
    """i_theta sampled on a uniform grid of n_points angles over [0, pi)."""
    check_m(M)
    if not isinstance(n_points, (int, np.integer)) or n_points < 1:
        raise ValidationError(f"points must be a positive integer, got {n_points!r}", code=ERROR_INVALID)
    thetas = np.linspace(0.0, math.pi, n_points, endpoint=False)
    return SweepCurve(M=M, thetas=thetas, values=i_theta_mixed(M, thetas, eps), eps=eps)


def sweep_to_frame(curve, unit="nats"):
    """Two-column frame (theta_rad, info_<unit>) for CSV output."""
    return pd.DataFrame({
        "theta_rad": curve.thetas,
        f"info_{unit}": [convert_information(v, unit) for v in curve.values],
    })
