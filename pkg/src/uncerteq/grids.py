"""Discretized L2(R^n): uniform tensor grids, quadrature and operators.

The box is [-L, L)^n with N points per axis at x_j = -L + (j + offset) h,
h = 2L/N.  A nonzero offset keeps every sample away from the origin, which
the singular operators (1/|x|, x/|x|) require.  Derivatives come from the
periodic Fourier transform or from periodic central differences; test states
are smooth and rapidly decaying, so the periodic wrap carries no mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.ndimage import map_coordinates

from .report import EqualityReport, compare

SCHEMES = ("spectral_periodic", "central_diff_2", "central_diff_4")


@dataclass(frozen=True)
class GridSpec:
    """Uniform n-dimensional tensor grid on [-L, L)^n."""

    n: int
    N: int
    L: float
    offset: float = 0.0
    scheme: str = "spectral_periodic"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.N < 2:
            raise ValueError("need at least two points per axis")
        if self.L <= 0:
            raise ValueError("half-width must be positive")
        if not 0.0 <= self.offset < 1.0:
            raise ValueError("offset must lie in [0, 1)")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.scheme == "spectral_periodic" and self.N % 2:
            raise ValueError("spectral scheme requires an even point count")
        if self.N ** self.n > 2 ** 24:
            raise ValueError("grid exceeds the 2^24 point cap")

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def weight(self) -> float:
        return self.h ** self.n

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.n

    def axis_coords(self) -> np.ndarray:
        return -self.L + (np.arange(self.N) + self.offset) * self.h

    def coord(self, axis: int) -> np.ndarray:
        """Coordinate x_axis broadcastable over the full grid shape."""
        shape = [1] * self.n
        shape[axis] = self.N
        return self.axis_coords().reshape(shape)

    def wavenumbers(self) -> np.ndarray:
        return 2.0 * math.pi * np.fft.fftfreq(self.N, d=self.h)

    @property
    def excludes_origin(self) -> bool:
        return float(_radius(self).min()) > 0.0

    def to_dict(self) -> dict:
        return {"n": self.n, "N": self.N, "L": self.L,
                "offset": self.offset, "scheme": self.scheme}

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        return cls(n=int(d["n"]), N=int(d["N"]), L=float(d["L"]),
                   offset=float(d.get("offset", 0.0)),
                   scheme=str(d.get("scheme", "spectral_periodic")))


@lru_cache(maxsize=32)
def _radius_sq(grid: GridSpec) -> np.ndarray:
    r2 = np.zeros(grid.shape)
    for axis in range(grid.n):
        r2 = r2 + grid.coord(axis) ** 2
    r2.setflags(write=False)
    return r2


@lru_cache(maxsize=32)
def _radius(grid: GridSpec) -> np.ndarray:
    r = np.sqrt(_radius_sq(grid))
    r.setflags(write=False)
    return r


def _require_origin_free(grid: GridSpec):
    if not grid.excludes_origin:
        raise ValueError(
            "a grid sample sits at the origin; use a nonzero offset for "
            "operators singular at 0")


class _GridQuantity:
    """Shared arithmetic and quadrature for scalar and vector grid data."""

    __slots__ = ("grid", "data")

    def __init__(self, grid: GridSpec, data: np.ndarray):
        data = np.asarray(data, dtype=np.complex128)
        if data.shape != self._expected_shape(grid):
            raise ValueError(
                f"data shape {data.shape} does not match grid "
                f"{self._expected_shape(grid)}")
        if not np.all(np.isfinite(data.real)) or not np.all(np.isfinite(data.imag)):
            raise ValueError("field values must be finite")
        self.grid = grid
        self.data = data

    def _expected_shape(self, grid: GridSpec) -> tuple[int, ...]:
        raise NotImplementedError

    def inner(self, other) -> complex:
        if type(other) is not type(self) or other.grid != self.grid:
            raise ValueError("grid or kind mismatch in scalar product")
        return complex(np.sum(self.data * np.conj(other.data)) * self.grid.weight)

    def norm(self) -> float:
        return math.sqrt(max(0.0,
                             float(np.sum(np.abs(self.data) ** 2)) * self.grid.weight))

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.data) ** 2)) * self.grid.weight

    def __add__(self, other):
        if type(other) is not type(self) or other.grid != self.grid:
            raise ValueError("grid or kind mismatch")
        return type(self)(self.grid, self.data + other.data)

    def __sub__(self, other):
        if type(other) is not type(self) or other.grid != self.grid:
            raise ValueError("grid or kind mismatch")
        return type(self)(self.grid, self.data - other.data)

    def __mul__(self, scalar):
        return type(self)(self.grid, self.data * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return type(self)(self.grid, self.data / complex(scalar))


class StateField(_GridQuantity):
    """Complex scalar function sampled on a GridSpec."""

    def _expected_shape(self, grid: GridSpec) -> tuple[int, ...]:
        return grid.shape

    @property
    def values(self) -> np.ndarray:
        return self.data

    @classmethod
    def from_callable(cls, grid: GridSpec, fn) -> "StateField":
        coords = np.meshgrid(*[grid.axis_coords()] * grid.n, indexing="ij")
        return cls(grid, fn(*coords))


class VectorField(_GridQuantity):
    """C^n-valued function on a GridSpec; one component per axis."""

    def _expected_shape(self, grid: GridSpec) -> tuple[int, ...]:
        return (grid.n,) + grid.shape

    @property
    def components(self) -> np.ndarray:
        return self.data


def l2_inner(a, b) -> complex:
    """Quadrature scalar product; vector fields are summed over components."""
    return a.inner(b)


def _derivative_axis(grid: GridSpec, values: np.ndarray, axis: int) -> np.ndarray:
    h = grid.h
    if grid.scheme == "spectral_periodic":
        k = grid.wavenumbers()
        # The Nyquist mode has no well-defined sign for an odd derivative.
        k = k.copy()
        k[grid.N // 2] = 0.0
        shape = [1] * grid.n
        shape[axis] = grid.N
        fk = np.fft.fft(values, axis=axis)
        return np.fft.ifft(1j * k.reshape(shape) * fk, axis=axis)
    if grid.scheme == "central_diff_2":
        return (np.roll(values, -1, axis) - np.roll(values, 1, axis)) / (2 * h)
    # central_diff_4
    return (-np.roll(values, -2, axis) + 8 * np.roll(values, -1, axis)
            - 8 * np.roll(values, 1, axis) + np.roll(values, 2, axis)) / (12 * h)


def gradient(phi: StateField) -> VectorField:
    grid = phi.grid
    comps = np.empty((grid.n,) + grid.shape, dtype=np.complex128)
    for axis in range(grid.n):
        comps[axis] = _derivative_axis(grid, phi.data, axis)
    return VectorField(grid, comps)


def position(phi: StateField) -> VectorField:
    grid = phi.grid
    comps = np.empty((grid.n,) + grid.shape, dtype=np.complex128)
    for axis in range(grid.n):
        comps[axis] = grid.coord(axis) * phi.data
    return VectorField(grid, comps)


def momentum(phi: StateField) -> VectorField:
    return -1j * gradient(phi)


def x_dot_grad(phi: StateField) -> StateField:
    grid = phi.grid
    out = np.zeros(grid.shape, dtype=np.complex128)
    for axis in range(grid.n):
        out += grid.coord(axis) * _derivative_axis(grid, phi.data, axis)
    return StateField(grid, out)


def dilation_generator(phi: StateField) -> StateField:
    """-i x.grad phi - i (n/2) phi, the symmetrized scaling generator."""
    grid = phi.grid
    return StateField(grid, -1j * (x_dot_grad(phi).data + 0.5 * grid.n * phi.data))


def neg_laplacian(phi: StateField) -> StateField:
    grid = phi.grid
    if grid.scheme == "spectral_periodic":
        k = grid.wavenumbers()
        out = np.zeros(grid.shape, dtype=np.complex128)
        for axis in range(grid.n):
            shape = [1] * grid.n
            shape[axis] = grid.N
            fk = np.fft.fft(phi.data, axis=axis)
            out += np.fft.ifft((k.reshape(shape) ** 2) * fk, axis=axis)
        return StateField(grid, out)
    # Central schemes: apply the first-derivative stencil twice per axis so
    # that summation by parts ((-lap phi|phi) = ||grad phi||^2) holds exactly.
    out = np.zeros(grid.shape, dtype=np.complex128)
    for axis in range(grid.n):
        d = _derivative_axis(grid, phi.data, axis)
        out -= _derivative_axis(grid, d, axis)
    return StateField(grid, out)


def radial_derivative(phi: StateField) -> StateField:
    """(x/|x|).grad phi."""
    grid = phi.grid
    _require_origin_free(grid)
    r = _radius(grid)
    out = np.zeros(grid.shape, dtype=np.complex128)
    for axis in range(grid.n):
        out += (grid.coord(axis) / r) * _derivative_axis(grid, phi.data, axis)
    return StateField(grid, out)


def radial_derivative_sym(phi: StateField) -> StateField:
    """-i (x/|x|).grad phi - i (n-1)/(2|x|) phi."""
    grid = phi.grid
    _require_origin_free(grid)
    r = _radius(grid)
    dr = radial_derivative(phi)
    return StateField(grid, -1j * (dr.data + 0.5 * (grid.n - 1) / r * phi.data))


def coulomb(phi: StateField) -> StateField:
    grid = phi.grid
    _require_origin_free(grid)
    return StateField(grid, phi.data / _radius(grid))


def spherical_derivative(phi: StateField, axis: int) -> StateField:
    """L_axis phi = d_axis phi - (x_axis/|x|) (x/|x|).grad phi."""
    grid = phi.grid
    _require_origin_free(grid)
    if not 0 <= axis < grid.n:
        raise ValueError("axis out of range")
    r = _radius(grid)
    dr = radial_derivative(phi)
    dj = _derivative_axis(grid, phi.data, axis)
    return StateField(grid, dj - (grid.coord(axis) / r) * dr.data)


@dataclass(frozen=True)
class OperatorHandle:
    """Named linear map on fields over a fixed grid."""

    id: str
    grid: GridSpec
    axis: int = 0

    _IDS = ("position", "momentum", "dilation_gen", "neg_laplacian",
            "radial_deriv_sym", "coulomb", "radial_deriv_raw",
            "spherical_deriv_j", "x_dot_grad")

    def __post_init__(self):
        if self.id not in self._IDS:
            raise ValueError(f"unknown operator id {self.id!r}")


def apply(op: OperatorHandle, phi: StateField):
    """Apply a named operator; momentum and position return vector fields."""
    if phi.grid != op.grid:
        raise ValueError("state lives on a different grid")
    table = {
        "position": position,
        "momentum": momentum,
        "dilation_gen": dilation_generator,
        "neg_laplacian": neg_laplacian,
        "radial_deriv_sym": radial_derivative_sym,
        "coulomb": coulomb,
        "radial_deriv_raw": radial_derivative,
        "x_dot_grad": x_dot_grad,
    }
    if op.id == "spherical_deriv_j":
        return spherical_derivative(phi, op.axis)
    return table[op.id](phi)


def _resample(phi: StateField, new_coords: list[np.ndarray]) -> np.ndarray:
    """Interpolate field values at physical points (spline order 5)."""
    grid = phi.grid
    idx = [(c + grid.L) / grid.h - grid.offset for c in new_coords]
    re = map_coordinates(phi.data.real, idx, order=5, mode="constant", cval=0.0)
    im = map_coordinates(phi.data.imag, idx, order=5, mode="constant", cval=0.0)
    return re + 1j * im


def _flow_points(grid: GridSpec, name: str, theta: float, axis: int) -> tuple[list[np.ndarray], float]:
    coords = np.meshgrid(*[grid.axis_coords()] * grid.n, indexing="ij")
    if name == "dilation":
        scale = math.exp(0.5 * grid.n * theta)
        return [math.exp(theta) * c for c in coords], scale
    r = np.sqrt(sum(c ** 2 for c in coords))
    if name == "radial":
        return [c + theta * c / r for c in coords], 1.0
    if name == "spherical":
        xj = coords[axis]
        shifted = [c + theta * (-xj / r) * (c / r) for c in coords]
        shifted[axis] = shifted[axis] + theta
        return shifted, 1.0
    raise ValueError(f"unknown flow {name!r}")


def generator_consistency(name: str, phi: StateField, dtheta: float,
                          tol: float = 1e-4, axis: int = 0) -> EqualityReport:
    """Central-difference flow derivative against the generator action.

    ``name`` selects the flow: "dilation" (target i A phi = x.grad phi +
    (n/2) phi), "radial" (target the raw radial derivative) or "spherical"
    (target L_axis phi).  The flow map is evaluated by spline resampling, so
    the residual carries an O(dtheta^2) truncation term plus interpolation
    error.
    """
    if dtheta <= 0:
        raise ValueError("dtheta must be positive")
    grid = phi.grid
    if name in ("radial", "spherical"):
        _require_origin_free(grid)

    plus_pts, plus_scale = _flow_points(grid, name, dtheta, axis)
    minus_pts, minus_scale = _flow_points(grid, name, -dtheta, axis)
    est = (plus_scale * _resample(phi, plus_pts)
           - minus_scale * _resample(phi, minus_pts)) / (2 * dtheta)

    if name == "dilation":
        target = x_dot_grad(phi).data + 0.5 * grid.n * phi.data
    elif name == "radial":
        target = radial_derivative(phi).data
    else:
        target = spherical_derivative(phi, axis).data

    diff = StateField(grid, est - target).norm()
    scale = max(StateField(grid, target).norm(), 1.0)
    return compare(f"flow.{name}", diff, 0.0, tol, scale=scale,
                   context={"grid": grid.to_dict(), "dtheta": dtheta})


def pointwise_gradient_decomposition(phi: StateField,
                                     tol: float = 1e-10) -> EqualityReport:
    """|grad phi|^2 = |radial part|^2 + sum_j |spherical part|^2, integrated."""
    grid = phi.grid
    _require_origin_free(grid)
    g = gradient(phi)
    dr = radial_derivative(phi)
    lhs_point = np.sum(np.abs(g.data) ** 2, axis=0)
    rhs_point = np.abs(dr.data) ** 2
    for axis in range(grid.n):
        rhs_point = rhs_point + np.abs(spherical_derivative(phi, axis).data) ** 2
    lhs = float(np.sum(lhs_point)) * grid.weight
    rhs = float(np.sum(rhs_point)) * grid.weight
    max_point = float(np.max(np.abs(lhs_point - rhs_point)))
    return compare("grad.pointwise_split", lhs, rhs, tol,
                   context={"grid": grid.to_dict(),
                            "max_pointwise_residual": max_point})
