"""Finite-difference verification layer.

Every solution generator in this package is certified numerically: the
claimed solution is swept over a sample grid and the defining equations are
evaluated pointwise with central differences.  This module owns the grid
descriptions, the difference stencils, and the report type that the rest of
the package returns.

Stencils are second order:

    f_x   ~ (f(p + h e) - f(p - h e)) / (2 h)
    f_xx  ~ (f(p + h e) - 2 f(p) + f(p - h e)) / h**2
    f_xt  ~ (f(++) - f(+-) - f(-+) + f(--)) / (4 h**2)

The stencil step ``h`` is independent of the grid spacing and must stay an
order of magnitude below it, so the stencil never aliases the sampling
lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import EmptyDomainError, InvalidGridError, SingularPointError

DEFAULT_STEP = 1e-4

# Evaluation failures that mark a stencil point as singular rather than
# aborting a scan.  Overflow and domain errors both land here.
_EVAL_ERRORS = (ArithmeticError, ValueError, SingularPointError)


def _check_axis(name: str, lo: float, hi: float, n: int) -> float:
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise InvalidGridError(f"{name} bounds must satisfy min < max, got [{lo}, {hi}]")
    if n < 2:
        raise InvalidGridError(f"{name} needs at least 2 samples, got {n}")
    return (hi - lo) / (n - 1)


def _check_step(h: float, spacing: float, axis: str) -> None:
    if not (h > 0.0 and math.isfinite(h)):
        raise InvalidGridError(f"stencil step must be finite and positive, got {h}")
    if not h * 10.0 < spacing:
        raise InvalidGridError(
            f"stencil step {h} too coarse for {axis} spacing {spacing}: need h < spacing/10"
        )


@dataclass(frozen=True)
class Grid2D:
    """Rectangular sample grid for fields of two variables (x, t).

    ``h`` is the central-difference step used by residual evaluators on this
    grid; it must stay strictly below one tenth of the smallest grid spacing.
    """

    x_min: float = -1.0
    x_max: float = 1.0
    t_min: float = -1.0
    t_max: float = 1.0
    nx: int = 41
    nt: int = 41
    h: float = DEFAULT_STEP

    def __post_init__(self):
        dx = _check_axis("x", self.x_min, self.x_max, self.nx)
        dt = _check_axis("t", self.t_min, self.t_max, self.nt)
        _check_step(self.h, min(dx, dt), "smallest")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dt(self) -> float:
        return (self.t_max - self.t_min) / (self.nt - 1)

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ts(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.nt)

    def mesh(self):
        return np.meshgrid(self.xs, self.ts, indexing="ij")

    @property
    def diameter(self) -> float:
        return math.hypot(self.x_max - self.x_min, self.t_max - self.t_min)

    def to_dict(self) -> dict:
        return {
            "x_min": self.x_min, "x_max": self.x_max,
            "t_min": self.t_min, "t_max": self.t_max,
            "nx": self.nx, "nt": self.nt, "h": self.h,
        }


@dataclass(frozen=True)
class Grid4D:
    """Spacetime sample grid (x, y, z, t) for vector fields.

    ``h`` may be a single step or one step per axis.  Electromagnetic fields
    in SI units vary on metres in space but on fractions of a nanosecond in
    time, so a per-axis step keeps the stencil matched to each scale.
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    z_min: float
    z_max: float
    t_min: float
    t_max: float
    nx: int = 9
    ny: int = 9
    nz: int = 9
    nt: int = 9
    h: float | tuple = DEFAULT_STEP

    def __post_init__(self):
        for name, lo, hi, n, step in zip(
            "xyzt", *zip(*self._axis_specs()), self.steps
        ):
            spacing = _check_axis(name, lo, hi, n)
            _check_step(step, spacing, name)

    def _axis_specs(self):
        return (
            (self.x_min, self.x_max, self.nx),
            (self.y_min, self.y_max, self.ny),
            (self.z_min, self.z_max, self.nz),
            (self.t_min, self.t_max, self.nt),
        )

    @property
    def steps(self) -> tuple:
        if np.isscalar(self.h):
            return (float(self.h),) * 4
        h = tuple(float(v) for v in self.h)
        if len(h) != 4:
            raise InvalidGridError(f"per-axis step needs 4 entries, got {len(h)}")
        return h

    def axes(self):
        return [np.linspace(lo, hi, n) for lo, hi, n in self._axis_specs()]

    def mesh(self):
        return np.meshgrid(*self.axes(), indexing="ij")

    @classmethod
    def for_wave(cls, wavenumber: float, omega: float, samples: int = 9,
                 step_scale: float = 1e-4) -> "Grid4D":
        """Grid spanning one wavelength per spatial axis and one period.

        The stencil step is ``step_scale`` in the wave's own units: 1/k in
        space and 1/omega in time.
        """
        if not wavenumber > 0 or not omega > 0:
            raise InvalidGridError("for_wave needs positive wavenumber and omega")
        wavelength = 2.0 * math.pi / wavenumber
        period = 2.0 * math.pi / omega
        hs = step_scale / wavenumber
        return cls(
            0.0, wavelength, 0.0, wavelength, 0.0, wavelength, 0.0, period,
            samples, samples, samples, samples,
            h=(hs, hs, hs, step_scale / omega),
        )

    def to_dict(self) -> dict:
        h = self.h if np.isscalar(self.h) else list(self.steps)
        return {
            "x_min": self.x_min, "x_max": self.x_max,
            "y_min": self.y_min, "y_max": self.y_max,
            "z_min": self.z_min, "z_max": self.z_max,
            "t_min": self.t_min, "t_max": self.t_max,
            "nx": self.nx, "ny": self.ny, "nz": self.nz, "nt": self.nt,
            "h": h,
        }


@dataclass(frozen=True)
class ResidualReport:
    """Summary statistics of a pointwise residual over a grid.

    ``n_points`` counts the samples that evaluated cleanly; singular samples
    are excluded from the statistics and counted in ``n_singular``.
    """

    max_abs: float
    rms: float
    n_points: int
    worst_point: tuple
    n_singular: int = 0

    def __post_init__(self):
        if self.rms > self.max_abs * (1.0 + 1e-12):
            raise ValueError(f"rms {self.rms} exceeds max_abs {self.max_abs}")

    def passed(self, tolerance: float) -> bool:
        return self.max_abs < tolerance

    def to_dict(self) -> dict:
        return {
            "max_abs": self.max_abs,
            "rms": self.rms,
            "n_points": self.n_points,
            "worst_point": list(self.worst_point),
            "n_singular": self.n_singular,
        }


def _call(f: Callable, coords) -> complex:
    """Evaluate ``f`` at one point, mapping failures to SingularPointError."""
    try:
        with np.errstate(all="ignore"):
            value = f(*coords)
    except _EVAL_ERRORS as exc:
        raise SingularPointError(coords) from exc
    arr = np.asarray(value)
    if not np.all(np.isfinite(arr)):
        raise SingularPointError(coords)
    return value


def _shift(point, axis: int, delta: float):
    p = [float(c) for c in point]
    p[axis] += delta
    return p


def partial_derivative(f: Callable, point: Sequence[float], axis: int,
                       h: float = DEFAULT_STEP):
    """First partial of ``f`` along ``axis`` by the 2-point central stencil."""
    return (_call(f, _shift(point, axis, h)) - _call(f, _shift(point, axis, -h))) / (2.0 * h)


def second_derivative(f: Callable, point: Sequence[float], axis: int,
                      h: float = DEFAULT_STEP):
    """Second partial along one axis by the 3-point central stencil."""
    return (
        _call(f, _shift(point, axis, h))
        - 2.0 * _call(f, list(point))
        + _call(f, _shift(point, axis, -h))
    ) / (h * h)


def mixed_derivative(f: Callable, point: Sequence[float], axis_a: int,
                     axis_b: int, h: float = DEFAULT_STEP):
    """Mixed second partial by the 4-point cross stencil."""
    pp = _call(f, _shift(_shift(point, axis_a, h), axis_b, h))
    pm = _call(f, _shift(_shift(point, axis_a, h), axis_b, -h))
    mp = _call(f, _shift(_shift(point, axis_a, -h), axis_b, h))
    mm = _call(f, _shift(_shift(point, axis_a, -h), axis_b, -h))
    return (pp - pm - mp + mm) / (4.0 * h * h)


@dataclass(frozen=True)
class FieldDerivatives:
    """First-order vector calculus of a 3-vector field at one spacetime point."""

    divergence: complex
    curl: np.ndarray
    laplacian: np.ndarray
    dt: np.ndarray


def vector_ops(field: Callable, point: Sequence[float],
               h: float | Sequence[float] = DEFAULT_STEP) -> FieldDerivatives:
    """Divergence, curl, vector Laplacian and time derivative of ``field``.

    ``field`` maps (x, y, z, t) to a 3-vector; complex components are fine,
    the stencils act on real and imaginary parts alike.  ``h`` is a scalar
    step or one step per axis.
    """
    steps = (float(h),) * 4 if np.isscalar(h) else tuple(float(v) for v in h)
    center = np.asarray(_call(field, list(point)))
    plus = [np.asarray(_call(field, _shift(point, a, steps[a]))) for a in range(4)]
    minus = [np.asarray(_call(field, _shift(point, a, -steps[a]))) for a in range(4)]

    d1 = [(plus[a] - minus[a]) / (2.0 * steps[a]) for a in range(4)]
    d2 = [(plus[a] - 2.0 * center + minus[a]) / (steps[a] ** 2) for a in range(4)]

    divergence = d1[0][0] + d1[1][1] + d1[2][2]
    curl = np.array([
        d1[1][2] - d1[2][1],
        d1[2][0] - d1[0][2],
        d1[0][1] - d1[1][0],
    ])
    laplacian = d2[0] + d2[1] + d2[2]
    return FieldDerivatives(divergence, curl, laplacian, d1[3])


def magnitude(values: np.ndarray, point_ndim: int) -> np.ndarray:
    """Reduce a residual array to one non-negative number per grid point.

    Complex parts are compared separately (max of |Re| and |Im|), then the
    maximum is taken over any trailing component axes.
    """
    arr = np.asarray(values)
    if np.iscomplexobj(arr):
        arr = np.maximum(np.abs(arr.real), np.abs(arr.imag))
    else:
        arr = np.abs(arr)
    while arr.ndim > point_ndim:
        arr = arr.max(axis=-1)
    return arr


def report_from_values(values: np.ndarray, meshes) -> ResidualReport:
    """Build a ResidualReport from per-point residual magnitudes.

    Non-finite entries are treated as singular samples: excluded from the
    statistics, counted separately.
    """
    vals = magnitude(values, meshes[0].ndim)
    if vals.shape != meshes[0].shape:
        raise ValueError(f"residual shape {vals.shape} does not match grid {meshes[0].shape}")
    finite = np.isfinite(vals)
    n_singular = int(vals.size - np.count_nonzero(finite))
    if not finite.any():
        raise EmptyDomainError("all grid points were singular")
    flat = np.where(finite, vals, -np.inf).ravel()
    idx = int(np.argmax(flat))
    worst = tuple(float(m.ravel()[idx]) for m in meshes)
    kept = vals[finite]
    return ResidualReport(
        max_abs=float(flat[idx]),
        rms=float(np.sqrt(np.mean(kept * kept))),
        n_points=int(kept.size),
        worst_point=worst,
        n_singular=n_singular,
    )


def residual_scan(residual: Callable, grid) -> ResidualReport:
    """Sweep a pointwise residual over every sample of ``grid``.

    ``residual`` receives the grid coordinates (two arrays for Grid2D, four
    for Grid4D) and returns the residual magnitude per point.  Evaluators
    written for scalars are retried point by point; a point whose evaluation
    fails is recorded as singular.
    """
    meshes = grid.mesh()
    try:
        with np.errstate(all="ignore"):
            values = residual(*meshes)
        values = np.broadcast_to(np.asarray(values), meshes[0].shape)
    except _EVAL_ERRORS + (TypeError, IndexError):
        values = _pointwise_scan(residual, meshes)
    return report_from_values(values, meshes)


def _pointwise_scan(residual: Callable, meshes) -> np.ndarray:
    out = np.full(meshes[0].shape, np.nan)
    for idx in np.ndindex(meshes[0].shape):
        coords = [float(m[idx]) for m in meshes]
        try:
            out[idx] = abs(_call(residual, coords))
        except SingularPointError:
            pass
    return out
