"""Recursion operator for symmetries of the matrix chiral field equation.

A GL(n, C)-valued field g(x, t) solves

    (g^-1 g_x)_x + (g^-1 g_t)_t = 0.

A matrix function Phi(x, t) is a symmetry characteristic in potential form
when it satisfies the linearized condition

    Phi_xx + Phi_tt + [g^-1 g_x, Phi_x] + [g^-1 g_t, Phi_t] = 0,

and each such Phi yields the symmetry characteristic Q = g Phi.  The pair
of first-order relations

     Phi'_x = Phi_t + [g^-1 g_t, Phi]
    -Phi'_t = Phi_x + [g^-1 g_x, Phi]

maps symmetries to symmetries: its integrability condition on Phi' is the
symmetry condition for Phi, and vice versa, so iterating it from the
trivial characteristic Phi^0 = M (a constant matrix) builds an infinite
hierarchy.  The same right-hand sides with Phi absent define the potential
X of the connection: X_x = g^-1 g_t, -X_t = g^-1 g_x, and for the
separable seed g = exp(Ax + Bt) with commuting A, B one has X = Bx - At
and the first hierarchy step lands on Phi^1 = [X, M].

Numerics
--------
Hierarchy fields live on the grid lattice (recursion outputs are tabulated,
and a bilinear interpolant has no trustworthy small-step second
derivatives), so every lattice derivative here uses fourth-order stencils:
5-point interior, one-sided at edges.  Line integration is cumulative
trapezoid with the Euler-Maclaurin endpoint correction, exact for cubic
integrands; combined with the stencils this makes levels 0 through 3 of an
exponential-seed hierarchy exact to rounding on the default grids.  Both
axis orders of every line integral are always computed; their disagreement
is the integrability diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import (
    IntegrabilityError,
    InvalidGridError,
    InvalidParameterError,
    NonCommutingError,
    PathDependenceError,
    SingularMatrixError,
)
from .verify import Grid2D, ResidualReport, report_from_values

_MIN_NODES = 6          # one-sided second-derivative stencils need 6 nodes
_COMMUTE_TOL = 1e-12
_COND_LIMIT = 1e12
_PATH_TOL = 1e-6


# --- fourth-order lattice calculus ---------------------------------------

def _fd_weights(offsets, deriv: int) -> np.ndarray:
    """Stencil weights for d^deriv/dx^deriv on unit-spaced nodes at ``offsets``."""
    offsets = np.asarray(offsets, dtype=float)
    rhs = np.zeros(len(offsets))
    rhs[deriv] = math.factorial(deriv)
    vander = np.vander(offsets, increasing=True).T
    return np.linalg.solve(vander, rhs)


@lru_cache(maxsize=None)
def _diff_matrix_unit(n_nodes: int, deriv: int):
    """Dense differentiation matrix on n unit-spaced nodes, 4th order."""
    if n_nodes < _MIN_NODES:
        raise InvalidGridError(
            f"lattice derivatives need at least {_MIN_NODES} nodes per axis, got {n_nodes}"
        )
    width = 5 if deriv == 1 else 6
    central = np.arange(-2, 3)
    mat = np.zeros((n_nodes, n_nodes))
    for i in range(n_nodes):
        if i < 2:
            offsets = np.arange(width) - i
        elif i > n_nodes - 3:
            offsets = np.arange(width) - (width - 1) + (n_nodes - 1 - i)
        else:
            offsets = central
        mat[i, i + offsets] = _fd_weights(offsets, deriv)
    mat.setflags(write=False)
    return mat


def _lattice_derivative(values: np.ndarray, spacing: float, axis: int,
                        deriv: int = 1) -> np.ndarray:
    mat = _diff_matrix_unit(values.shape[axis], deriv) / spacing ** deriv
    moved = np.moveaxis(values, axis, 0)
    return np.moveaxis(np.tensordot(mat, moved, axes=(1, 0)), 0, axis)


def _cumulative_integral(values: np.ndarray, spacing: float, axis: int) -> np.ndarray:
    """Antiderivative from node 0 along ``axis``: corrected trapezoid.

    The Euler-Maclaurin endpoint term -(spacing^2/12)(f'_m - f'_0) removes
    the leading trapezoid error, making the rule exact for cubics.
    """
    v = np.moveaxis(values, axis, 0)
    out = np.zeros_like(v)
    np.cumsum(0.5 * (v[1:] + v[:-1]) * spacing, axis=0, out=out[1:])
    deriv = np.tensordot(_diff_matrix_unit(v.shape[0], 1) / spacing, v, axes=(1, 0))
    out -= spacing ** 2 / 12.0 * (deriv - deriv[0])
    return np.moveaxis(out, 0, axis)


def _entry_magnitude(values: np.ndarray) -> np.ndarray:
    """Max-absolute-entry norm per grid node, real and imaginary separately."""
    mags = np.maximum(np.abs(values.real), np.abs(values.imag))
    return mags.max(axis=(-2, -1))


def _commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


# --- matrix field families ------------------------------------------------

class MatrixField:
    """Square-matrix-valued field of (x, t); evaluators broadcast.

    Derivative samples default to small-step central differences of the
    evaluator; tabulated data overrides them with lattice stencils.
    """

    n: int

    def __call__(self, x, t) -> np.ndarray:
        raise NotImplementedError

    def sample(self, grid: Grid2D) -> np.ndarray:
        X, T = grid.mesh()
        return np.asarray(self(X, T), dtype=complex)

    def d1_samples(self, grid: Grid2D, axis: int) -> np.ndarray:
        X, T = grid.mesh()
        h = grid.h
        if axis == 0:
            return (np.asarray(self(X + h, T)) - np.asarray(self(X - h, T))) / (2.0 * h)
        return (np.asarray(self(X, T + h)) - np.asarray(self(X, T - h))) / (2.0 * h)

    def d2_samples(self, grid: Grid2D, axis: int) -> np.ndarray:
        X, T = grid.mesh()
        h = grid.h
        center = np.asarray(self(X, T))
        if axis == 0:
            outer = np.asarray(self(X + h, T)) + np.asarray(self(X - h, T))
        else:
            outer = np.asarray(self(X, T + h)) + np.asarray(self(X, T - h))
        return (outer - 2.0 * center) / (h * h)

    def to_dict(self) -> dict:
        raise NotImplementedError


def _as_square(value, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidParameterError(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidParameterError(f"{name} must be finite")
    return arr


def _matrix_pair(value) -> dict:
    arr = np.asarray(value)
    return {
        "re": [[float(v) for v in row] for row in arr.real],
        "im": [[float(v) for v in row] for row in arr.imag],
    }


class ConstantField(MatrixField):
    """Phi(x, t) = M."""

    def __init__(self, M):
        self.M = _as_square(M, "M")
        self.n = self.M.shape[0]

    def __call__(self, x, t):
        shape = np.broadcast(np.asarray(x), np.asarray(t)).shape
        return np.broadcast_to(self.M, shape + self.M.shape).copy()

    def d1_samples(self, grid, axis):
        return np.zeros((grid.nx, grid.nt, self.n, self.n), dtype=complex)

    d2_samples = d1_samples

    def to_dict(self):
        return {"n": self.n, "family": "constant", "params": {"M": _matrix_pair(self.M)}}


class ExpSeedField(MatrixField):
    """g(x, t) = exp(A x + B t) for commuting generators A, B.

    Commutation makes g a genuine solution of the chiral field equation:
    g^-1 g_x = A and g^-1 g_t = B are constant.  Non-commuting generators
    are rejected at construction.
    """

    def __init__(self, A, B):
        self.A = _as_square(A, "A")
        self.B = _as_square(B, "B")
        if self.A.shape != self.B.shape:
            raise InvalidParameterError("generators must have matching shapes")
        self.n = self.A.shape[0]
        comm = _commutator(self.A, self.B)
        scale = max(1.0, float(np.max(np.abs(self.A))) * float(np.max(np.abs(self.B))))
        defect = float(np.max(np.abs(comm)))
        if defect > _COMMUTE_TOL * scale:
            raise NonCommutingError(
                f"seed generators do not commute: max |[A, B]| = {defect!r}"
            )

    def __call__(self, x, t):
        X, T = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
        arg = X[..., None, None] * self.A + T[..., None, None] * self.B
        return expm(arg)

    def to_dict(self):
        return {
            "n": self.n,
            "family": "exp_seed",
            "params": {"A": _matrix_pair(self.A), "B": _matrix_pair(self.B)},
        }


class TabulatedField(MatrixField):
    """Matrix field known on a uniform lattice, bilinear between nodes.

    Lattice derivatives use the fourth-order stencils; off-node evaluation
    interpolates bilinearly (clamped-cell extrapolation outside the range).
    ``path_disagreement`` records the integration diagnostic when the field
    was produced by a recursion step.
    """

    def __init__(self, xs, ts, values, path_disagreement: float | None = None):
        self.xs = np.asarray(xs, dtype=float)
        self.ts = np.asarray(ts, dtype=float)
        self.values = np.asarray(values, dtype=complex)
        self.path_disagreement = path_disagreement
        if self.xs.ndim != 1 or self.ts.ndim != 1:
            raise InvalidParameterError("node arrays must be one-dimensional")
        expected = (self.xs.size, self.ts.size)
        if self.values.shape[:2] != expected or self.values.ndim != 4:
            raise InvalidParameterError(
                f"samples of shape {self.values.shape} do not match lattice {expected}"
            )
        if self.values.shape[2] != self.values.shape[3]:
            raise InvalidParameterError("samples must be square matrices")
        for nodes, name in ((self.xs, "x"), (self.ts, "t")):
            gaps = np.diff(nodes)
            if nodes.size < 2 or not np.all(gaps > 0):
                raise InvalidParameterError(f"{name} nodes must increase")
            if not np.allclose(gaps, gaps[0], rtol=1e-9):
                raise InvalidParameterError(f"{name} nodes must be uniformly spaced")
        self.n = self.values.shape[2]

    @classmethod
    def from_function(cls, fn, grid: Grid2D) -> "TabulatedField":
        X, T = grid.mesh()
        return cls(grid.xs, grid.ts, np.asarray(fn(X, T), dtype=complex))

    @property
    def dx(self) -> float:
        return float(self.xs[1] - self.xs[0])

    @property
    def dt(self) -> float:
        return float(self.ts[1] - self.ts[0])

    def __call__(self, x, t):
        xq, tq = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
        ix = np.clip(np.searchsorted(self.xs, xq, side="right") - 1, 0, self.xs.size - 2)
        it = np.clip(np.searchsorted(self.ts, tq, side="right") - 1, 0, self.ts.size - 2)
        fx = ((xq - self.xs[ix]) / self.dx)[..., None, None]
        ft = ((tq - self.ts[it]) / self.dt)[..., None, None]
        v = self.values
        return (
            v[ix, it] * (1 - fx) * (1 - ft)
            + v[ix + 1, it] * fx * (1 - ft)
            + v[ix, it + 1] * (1 - fx) * ft
            + v[ix + 1, it + 1] * fx * ft
        )

    def _on_lattice(self, grid: Grid2D) -> bool:
        return (
            grid.nx == self.xs.size
            and grid.nt == self.ts.size
            and np.allclose(grid.xs, self.xs, rtol=0, atol=1e-12 * max(1.0, self.dx))
            and np.allclose(grid.ts, self.ts, rtol=0, atol=1e-12 * max(1.0, self.dt))
        )

    def sample(self, grid: Grid2D) -> np.ndarray:
        if self._on_lattice(grid):
            return self.values
        return super().sample(grid)

    def d1_samples(self, grid: Grid2D, axis: int) -> np.ndarray:
        return self._lattice_d(grid, axis, 1)

    def d2_samples(self, grid: Grid2D, axis: int) -> np.ndarray:
        return self._lattice_d(grid, axis, 2)

    def _lattice_d(self, grid: Grid2D, axis: int, deriv: int) -> np.ndarray:
        values = self.sample(grid)
        spacing = (grid.dx, grid.dt)[axis]
        return _lattice_derivative(values, spacing, axis, deriv)

    def _combine(self, other, scale_self=1.0, scale_other=1.0) -> "TabulatedField":
        if not isinstance(other, TabulatedField):
            return NotImplemented
        if self.values.shape != other.values.shape or not (
            np.allclose(self.xs, other.xs) and np.allclose(self.ts, other.ts)
        ):
            raise InvalidParameterError("tabulated fields live on different lattices")
        return TabulatedField(
            self.xs, self.ts, scale_self * self.values + scale_other * other.values
        )

    def __add__(self, other):
        return self._combine(other)

    def __sub__(self, other):
        return self._combine(other, 1.0, -1.0)

    def __mul__(self, scalar):
        return TabulatedField(self.xs, self.ts, self.values * scalar)

    __rmul__ = __mul__

    def to_dict(self):
        return {
            "n": self.n,
            "family": "tabulated",
            "x": [float(v) for v in self.xs],
            "t": [float(v) for v in self.ts],
            "values": _matrix_pair(self.values.reshape(self.xs.size * self.ts.size, -1)),
        }


# --- operators -------------------------------------------------------------

def _require_lattice(grid: Grid2D) -> None:
    if grid.nx < _MIN_NODES or grid.nt < _MIN_NODES:
        raise InvalidGridError(
            f"lattice operators need at least {_MIN_NODES} nodes per axis, "
            f"got {grid.nx} x {grid.nt}"
        )


def _check_invertible(g_samples: np.ndarray, grid: Grid2D) -> None:
    cond = np.linalg.cond(g_samples)
    bad = ~np.isfinite(cond) | (cond > _COND_LIMIT)
    if bad.any():
        i, j = np.unravel_index(int(np.argmax(np.where(bad, np.inf, cond))), cond.shape)
        raise SingularMatrixError((grid.xs[i], grid.ts[j]))


def _connection_samples(g: MatrixField, grid: Grid2D):
    """U = g^-1 g_x and V = g^-1 g_t on the lattice."""
    gs = g.sample(grid)
    _check_invertible(gs, grid)
    U = np.linalg.solve(gs, g.d1_samples(grid, 0))
    V = np.linalg.solve(gs, g.d1_samples(grid, 1))
    return U, V


def chiral_defect_samples(g: MatrixField, grid: Grid2D) -> np.ndarray:
    """Per-node max-entry magnitude of (g^-1 g_x)_x + (g^-1 g_t)_t."""
    _require_lattice(grid)
    U, V = _connection_samples(g, grid)
    residual = (
        _lattice_derivative(U, grid.dx, 0) + _lattice_derivative(V, grid.dt, 1)
    )
    return _entry_magnitude(residual)


def chiral_residual(g: MatrixField, grid: Grid2D) -> ResidualReport:
    """Scan of (g^-1 g_x)_x + (g^-1 g_t)_t, max-entry magnitude per node."""
    return report_from_values(chiral_defect_samples(g, grid), grid.mesh())


def symmetry_residual(phi: MatrixField, g: MatrixField, grid: Grid2D) -> ResidualReport:
    """Scan of the linearized symmetry condition for Phi on the seed g."""
    _require_lattice(grid)
    U, V = _connection_samples(g, grid)
    px = phi.d1_samples(grid, 0)
    pt = phi.d1_samples(grid, 1)
    residual = (
        phi.d2_samples(grid, 0)
        + phi.d2_samples(grid, 1)
        + _commutator(U, px)
        + _commutator(V, pt)
    )
    return report_from_values(_entry_magnitude(residual), grid.mesh())


def _line_integrate(rx: np.ndarray, rt: np.ndarray, grid: Grid2D, base: np.ndarray):
    """Integrate dF = rx dx + rt dt from the node nearest the origin.

    Returns the average of the two axis orders and their max disagreement;
    the disagreement measures the curl of the integrand, i.e. how far the
    system is from integrable.
    """
    i0 = int(np.argmin(np.abs(grid.xs)))
    j0 = int(np.argmin(np.abs(grid.ts)))
    gx = _cumulative_integral(rx, grid.dx, 0)
    gt = _cumulative_integral(rt, grid.dt, 1)

    x_then_t = (gx[:, j0] - gx[i0, j0])[:, None] + (gt - gt[:, j0][:, None])
    t_then_x = (gt[i0, :] - gt[i0, j0])[None, :] + (gx - gx[i0, :][None, :])
    disagreement = float(np.max(np.abs(x_then_t - t_then_x)))
    result = base + 0.5 * (x_then_t + t_then_x)
    return result, disagreement


def _path_tolerance(grid: Grid2D, *integrands) -> float:
    scale = max([1.0] + [float(np.max(np.abs(r))) for r in integrands])
    return _PATH_TOL * grid.diameter * scale


@dataclass(frozen=True)
class Potential:
    """Potential X of the connection, with its integration diagnostic."""

    X: TabulatedField
    path_disagreement: float


def potential(g: MatrixField, grid: Grid2D, base=None) -> Potential:
    """Integrate X_x = g^-1 g_t, -X_t = g^-1 g_x from the origin node.

    The potential exists exactly when g solves the chiral field equation;
    a seed that does not makes the two integration orders disagree and
    raises PathDependenceError.
    """
    _require_lattice(grid)
    U, V = _connection_samples(g, grid)
    base_m = np.zeros((g.n, g.n), dtype=complex) if base is None else _as_square(base, "base")
    result, disagreement = _line_integrate(V, -U, grid, base_m)
    tol = _path_tolerance(grid, U, V)
    if disagreement > tol:
        raise PathDependenceError(
            f"axis-ordered integrals disagree by {disagreement!r} (tolerance {tol!r}): "
            "the seed does not solve the chiral field equation"
        )
    return Potential(
        X=TabulatedField(grid.xs, grid.ts, result, path_disagreement=disagreement),
        path_disagreement=disagreement,
    )


def recursion_step(phi: MatrixField, g: MatrixField, grid: Grid2D,
                   base=None) -> TabulatedField:
    """Apply the recursion once: integrate the transformed gradient of Phi.

    ``base`` fixes the additive constant (the value at the origin node).
    Raises IntegrabilityError when the two integration orders disagree,
    which signals that Phi fails the symmetry condition or g the field
    equation.
    """
    _require_lattice(grid)
    if phi.n != g.n:
        raise InvalidParameterError(f"Phi is {phi.n} x {phi.n} but g is {g.n} x {g.n}")
    U, V = _connection_samples(g, grid)
    p = phi.sample(grid)
    rx = phi.d1_samples(grid, 1) + _commutator(V, p)
    rt = -(phi.d1_samples(grid, 0) + _commutator(U, p))
    base_m = np.zeros((g.n, g.n), dtype=complex) if base is None else _as_square(base, "base")
    result, disagreement = _line_integrate(rx, rt, grid, base_m)
    tol = _path_tolerance(grid, rx, rt)
    if disagreement > tol:
        raise IntegrabilityError(
            f"axis-ordered integrals disagree by {disagreement!r} (tolerance {tol!r}): "
            "input violates the integrability condition of the recursion"
        )
    return TabulatedField(grid.xs, grid.ts, result, path_disagreement=disagreement)


@dataclass(frozen=True)
class SymmetryCharacteristic:
    """One level of the hierarchy: Phi and its characteristic Q = g Phi."""

    phi: MatrixField
    level: int
    seed: MatrixField

    def q(self, x, t) -> np.ndarray:
        return np.asarray(self.seed(x, t)) @ np.asarray(self.phi(x, t))

    def q_samples(self, grid: Grid2D) -> np.ndarray:
        return self.seed.sample(grid) @ self.phi.sample(grid)


def hierarchy(g: MatrixField, M, levels: int, grid: Grid2D) -> list:
    """Build [Phi^0 = M, Phi^1, ..., Phi^levels] by repeated recursion.

    Integrability failures are re-raised with the failing level attached.
    """
    if levels < 0:
        raise InvalidParameterError(f"levels must be non-negative, got {levels}")
    phi: MatrixField = ConstantField(M)
    if phi.n != g.n:
        raise InvalidParameterError(f"M is {phi.n} x {phi.n} but g is {g.n} x {g.n}")
    out = [SymmetryCharacteristic(phi=phi, level=0, seed=g)]
    for level in range(1, levels + 1):
        try:
            phi = recursion_step(phi, g, grid)
        except IntegrabilityError as exc:
            raise IntegrabilityError(f"hierarchy level {level}: {exc}") from exc
        out.append(SymmetryCharacteristic(phi=phi, level=level, seed=g))
    return out
