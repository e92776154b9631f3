"""Closed-form Gaussian extremizer families and their exact moments.

Three kinds are supported:

* ``coherent``   -- the isotropic Gaussian exp(-|x|^2/2), which saturates
  both the sum and the product uncertainty forms;
* ``squeezed``   -- exp(-lambda |x|^2/2) with anisotropy ratio
  lambda = ||grad phi|| / ||x phi||, saturating the product form;
* ``squeezed_gen`` -- a complex-phase generalization whose quadratic
  exponent carries a unit-modulus factor with negative real part, saturating
  the modulus form |(x phi | grad phi)| = ||x phi|| ||grad phi||.

Moments are computed analytically so they can serve as independent oracles
for the grid discretization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .grids import GridSpec, StateField, _radius_sq

KINDS = ("coherent", "squeezed", "squeezed_gen")


@dataclass(frozen=True)
class GaussianSpec:
    kind: str
    n: int = 1
    norm: float = 1.0
    lam: float = 1.0
    theta: float = 0.0
    sgn_factor: complex = -1.0 + 0.0j

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.norm <= 0:
            raise ValueError("target norm must be positive")
        if self.lam <= 0:
            raise ValueError("anisotropy ratio must be positive")
        if self.kind == "coherent" and self.lam != 1.0:
            raise ValueError("the coherent family has ratio 1")
        s = complex(self.sgn_factor)
        if self.kind == "squeezed_gen":
            if abs(abs(s) - 1.0) > 1e-12:
                raise ValueError("sgn_factor must have unit modulus")
            if s.real >= 0.0:
                raise ValueError(
                    "sgn_factor needs a negative real part for a "
                    "normalizable state")
        elif s != -1.0 + 0.0j:
            raise ValueError("only squeezed_gen admits a free sign factor")

    @property
    def factor(self) -> complex:
        """Unit factor multiplying lambda |x|^2/2 in the exponent."""
        return complex(self.sgn_factor)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "norm": self.norm,
                "lam": self.lam, "theta": self.theta,
                "sgn_factor": [self.factor.real, self.factor.imag]}

    @classmethod
    def from_dict(cls, d: dict) -> "GaussianSpec":
        s = d.get("sgn_factor", [-1.0, 0.0])
        return cls(kind=d["kind"], n=int(d.get("n", 1)),
                   norm=float(d.get("norm", 1.0)),
                   lam=float(d.get("lam", 1.0)),
                   theta=float(d.get("theta", 0.0)),
                   sgn_factor=complex(s[0], s[1]))


@dataclass(frozen=True)
class GaussianMoments:
    norm_sq: float
    x_norm_sq: float
    grad_norm_sq: float
    inner_x_grad: complex


def exact_moments(spec: GaussianSpec) -> GaussianMoments:
    """Closed-form Gaussian integrals for the family.

    With decay rate a = -Re(factor) > 0 the second moment is
    ||x phi||^2 = n ||phi||^2 / (2 lambda a); the gradient satisfies
    grad phi = factor * lambda * x phi, giving ||grad phi|| = lambda ||x phi||
    and (x phi | grad phi) = conj(factor) lambda ||x phi||^2, whose real part
    is always -n ||phi||^2 / 2.
    """
    s = spec.factor
    a = -s.real
    norm_sq = spec.norm ** 2
    x_norm_sq = spec.n * norm_sq / (2.0 * spec.lam * a)
    grad_norm_sq = spec.lam ** 2 * x_norm_sq
    inner_x_grad = s.conjugate() * spec.lam * x_norm_sq
    return GaussianMoments(norm_sq=norm_sq, x_norm_sq=x_norm_sq,
                           grad_norm_sq=grad_norm_sq,
                           inner_x_grad=inner_x_grad)


def _check_grid_adequacy(spec: GaussianSpec, grid: GridSpec) -> None:
    a = -spec.factor.real
    decay = a * spec.lam  # |phi|^2 ~ exp(-decay * r^2)
    boundary_exponent = decay * grid.L ** 2
    if boundary_exponent < 38.0:
        raise ValueError(
            "grid too small: boundary mass fraction about "
            f"exp(-{boundary_exponent:.1f}); enlarge L")
    kmax = math.pi / grid.h
    resolution_exponent = kmax ** 2 / max(spec.lam, 1.0)
    if resolution_exponent < 38.0:
        raise ValueError(
            "grid too coarse: unresolved-spectrum fraction about "
            f"exp(-{resolution_exponent:.1f}); increase N")


def realize(spec: GaussianSpec, grid: GridSpec) -> StateField:
    """Sample the closed form on a grid; the grid must hold its mass."""
    if grid.n != spec.n:
        raise ValueError("grid dimension does not match the requested family")
    _check_grid_adequacy(spec, grid)
    s = spec.factor
    a = -s.real
    amp = (a * spec.lam / math.pi) ** (spec.n / 4.0) * spec.norm
    phase = cmath.exp(1j * spec.theta)
    r2 = _radius_sq(grid)
    values = phase * amp * np.exp(0.5 * s * spec.lam * r2)
    return StateField(grid, values)
