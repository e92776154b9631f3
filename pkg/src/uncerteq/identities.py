"""Executable verifiers for the analytic norm identities on L2(R^n).

Each verifier evaluates both sides of a family of identities on a supplied
state and returns one :class:`EqualityReport` per identity.  States may be
full tensor-grid fields or radial profiles with analytic derivatives; the
latter trade generality for quadrature accuracy, which the tight tolerances
of the Hardy-type checks need.
"""

from __future__ import annotations

import math

import numpy as np

from . import grids, radial
from .complexspace import ExtremizerFlags, sgn
from .forms import PairSample, extremizer_parts
from .grids import StateField
from .radial import RadialState
from .report import EqualityReport, bound, compare

GRID_TOL = 1e-8


def _dim(state) -> int:
    if isinstance(state, StateField):
        return state.grid.n
    if isinstance(state, RadialState):
        return state.quad.n
    raise TypeError(f"unsupported state type {type(state).__name__}")


def _context(state) -> dict:
    if isinstance(state, StateField):
        return {"grid": state.grid.to_dict()}
    return {"radial": {"n": state.quad.n, "r_max": state.quad.r_max,
                       "points": state.quad.points}}


def _x_dot_grad(state):
    if isinstance(state, StateField):
        return grids.x_dot_grad(state)
    return radial.x_dot_grad(state)


def _radial_derivative(state):
    if isinstance(state, StateField):
        return grids.radial_derivative(state)
    return state.radial_derivative()


def _coulomb(state):
    if isinstance(state, StateField):
        return grids.coulomb(state)
    return radial.coulomb(state)


def _radial_derivative_sym(state):
    if isinstance(state, StateField):
        return grids.radial_derivative_sym(state)
    return radial.radial_derivative_sym(state)


def _gradient_norm_sq(state) -> float:
    if isinstance(state, StateField):
        return grids.gradient(state).norm_sq()
    # Radial profiles have no angular part: |grad psi| = |psi'|.
    return state.radial_derivative().norm_sq()


def _spherical_norm_sq_sum(state) -> float:
    if isinstance(state, StateField):
        return sum(grids.spherical_derivative(state, j).norm_sq()
                   for j in range(state.grid.n))
    return 0.0


def position_momentum_sample(phi: StateField) -> PairSample:
    """PairSample for the momentum/position pair (A = -i grad, B = x)."""
    return PairSample.from_vectors(phi.norm_sq(), grids.momentum(phi),
                                   grids.position(phi))


def verify_position_momentum(phi: StateField,
                             tol: float = GRID_TOL) -> list[EqualityReport]:
    """Norm identities tying n ||phi||^2 to the position/momentum pair."""
    xphi = grids.position(phi)
    gphi = grids.gradient(phi)
    a = xphi.norm()
    b = gphi.norm()
    if a == 0.0 or b == 0.0:
        raise ValueError("state is degenerate for the position/momentum pair")
    ctx = _context(phi)
    lhs = phi.grid.n * phi.norm_sq()
    p = xphi.inner(gphi)
    ab = a * b

    sum_hat = (1.0 / a) * xphi + (1.0 / b) * gphi
    xsum = xphi + gphi
    aligned = (1.0 / a) * xphi - (sgn(p) / b) * gphi
    return [
        compare("pm.trace", lhs, -2.0 * p.real, tol, context=ctx),
        compare("pm.sum_norm", lhs, ab * (2.0 - sum_hat.norm_sq()), tol,
                context=ctx),
        compare("pm.expansion", lhs, a * a + b * b - xsum.norm_sq(), tol,
                context=ctx),
        compare("pm.schrodinger", abs(p),
                ab * (1.0 - 0.5 * aligned.norm_sq()), tol, scale=ab,
                context=ctx),
    ]


def saturation_flags(phi: StateField, tol: float = 1e-6) -> ExtremizerFlags:
    """Which uncertainty saturation classes the state belongs to."""
    return extremizer_parts(position_momentum_sample(phi), tol)


def dilation_gap(state) -> float:
    """||x.grad phi + (n/2) phi||^2, the nonattainment witness."""
    n = _dim(state)
    d = _x_dot_grad(state)
    return (d + (0.5 * n) * state).norm_sq()


def verify_dilation_pythagoras(state, tol: float = GRID_TOL) -> list[EqualityReport]:
    """||x.grad phi||^2 splits into the shifted part plus (n/2)^2 ||phi||^2."""
    n = _dim(state)
    d = _x_dot_grad(state)
    shifted = d + (0.5 * n) * state
    gap = shifted.norm_sq()
    ctx = _context(state)
    ctx["gap"] = gap
    return [
        compare("dil.pythagoras", d.norm_sq(),
                gap + (0.5 * n) ** 2 * state.norm_sq(), tol, context=ctx),
    ]


def verify_hardy(psi, tol: float = GRID_TOL) -> list[EqualityReport]:
    """Hardy-type equality with exact remainder, plus its transfer forms."""
    n = _dim(psi)
    if n < 3:
        raise ValueError("the Hardy identities require dimension >= 3")
    ctx = _context(psi)
    dpsi = _radial_derivative(psi)
    q = _coulomb(psi)                      # psi / |x|
    shifted = dpsi + (0.5 * (n - 2)) * q   # d_r psi + (n-2)/(2|x|) psi
    dr_sq = dpsi.norm_sq()
    q_sq = q.norm_sq()
    grad_sq = _gradient_norm_sq(psi)

    # Transfer through phi = psi/|x|: x.grad phi and its (n/2) shift.
    xg_phi = _x_dot_grad(q)
    xg_shifted = xg_phi + (0.5 * n) * q

    reports = [
        compare("hardy.pythagoras", dr_sq,
                shifted.norm_sq() + (0.5 * (n - 2)) ** 2 * q_sq, tol,
                context=ctx),
        compare("hardy.radial_shift", xg_phi.norm_sq(),
                dr_sq + (n - 1) * q_sq, tol, context=ctx),
        compare("hardy.scaling_shift", xg_shifted.norm_sq(),
                shifted.norm_sq(), tol, context=ctx),
        bound("hardy.chain.potential", math.sqrt(q_sq),
              2.0 / (n - 2) * math.sqrt(dr_sq), tol, context=ctx),
        bound("hardy.chain.gradient", math.sqrt(dr_sq), math.sqrt(grad_sq),
              tol, context=ctx),
    ]
    return reports


def verify_dilation_hamiltonian(phi: StateField,
                                tol: float = GRID_TOL) -> list[EqualityReport]:
    """Identities from the scaling-generator / free-Hamiltonian pair."""
    a_phi = grids.dilation_generator(phi)
    b_phi = grids.neg_laplacian(phi)
    a = a_phi.norm()
    b = b_phi.norm()
    if a == 0.0 or b == 0.0:
        raise ValueError("degenerate state for the scaling/Hamiltonian pair")
    ctx = _context(phi)
    grad_sq = grids.gradient(phi).norm_sq()
    lhs = 2.0 * grad_sq
    p = a_phi.inner(b_phi)
    combo = (1.0 / a) * a_phi + (1j / b) * b_phi
    return [
        compare("dilham.energy", lhs, 2.0 * b_phi.inner(phi), tol, context=ctx),
        compare("dilham.commutator", lhs, -2.0 * p.imag, tol, context=ctx),
        compare("dilham.sum_norm", lhs, a * b * (2.0 - combo.norm_sq()), tol,
                scale=a * b, context=ctx),
        bound("dilham.grad_bound", grad_sq, a * b, tol, context=ctx),
    ]


def verify_radial_coulomb(state, tol: float = GRID_TOL) -> list[EqualityReport]:
    """Identities from the symmetrized radial derivative / 1/|x| pair."""
    n = _dim(state)
    if n < 3:
        raise ValueError("the radial/Coulomb identities require dimension >= 3")
    ctx = _context(state)
    a_phi = _radial_derivative_sym(state)
    b_phi = _coulomb(state)
    a = a_phi.norm()
    b = b_phi.norm()
    if a == 0.0 or b == 0.0:
        raise ValueError("degenerate state for the radial/Coulomb pair")
    dpsi = _radial_derivative(state)
    dr_sq = dpsi.norm_sq()
    b_sq = b * b
    p = a_phi.inner(b_phi)
    combo = (1.0 / a) * a_phi + (1j / b) * b_phi
    pyth = (2j) * a_phi - b_phi
    shifted = dpsi + (0.5 * (n - 2)) * b_phi
    grad_sq = _gradient_norm_sq(state)
    sph_sq = _spherical_norm_sq_sum(state)
    ortho = (b_phi - 2j * a_phi).inner(b_phi).real
    return [
        compare("radcoul.potential_sq", b_sq, -2.0 * p.imag, tol,
                scale=a * b, context=ctx),
        compare("radcoul.sum_norm", b_sq, a * b * (2.0 - combo.norm_sq()),
                tol, scale=a * b, context=ctx),
        compare("radcoul.sym_norm", a * a,
                dr_sq - 0.25 * (n - 1) * (n - 3) * b_sq, tol, context=ctx),
        compare("radcoul.orthogonality", ortho, 0.0, tol,
                scale=b_sq + 2.0 * a * b, context=ctx),
        compare("radcoul.pythagoras", 4.0 * a * a,
                pyth.norm_sq() + b_sq, tol, context=ctx),
        compare("radcoul.hardy_quadrupled", 4.0 * dr_sq,
                4.0 * shifted.norm_sq() + (n - 2) ** 2 * b_sq, tol,
                context=ctx),
        compare("radcoul.gradient_split", grad_sq - sph_sq, dr_sq, tol,
                context=ctx),
        bound("radcoul.relative_bound", b, 2.0 * a, tol, context=ctx),
    ]


def _hermite_functions(x: np.ndarray, kmax: int) -> np.ndarray:
    """Normalized Hermite functions h_0..h_kmax on the given points."""
    out = np.empty((kmax + 1, x.size))
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * x ** 2)
    if kmax >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(2, kmax + 1):
        out[k] = (math.sqrt(2.0 / k) * x * out[k - 1]
                  - math.sqrt((k - 1) / k) * out[k - 2])
    return out


def random_smooth_state(grid: grids.GridSpec, rng: np.random.Generator,
                        max_level: int = 8, terms: int = 3,
                        normalize: bool = True) -> StateField:
    """Random finite Hermite-function mixture: smooth, rapidly decaying.

    Every such state lies in the (grid) domain of all the operators here and
    carries no boundary mass for L a few units beyond sqrt(2*max_level+1).
    """
    basis = _hermite_functions(grid.axis_coords(), max_level)
    decay = 0.7 ** np.arange(max_level + 1)
    values = np.zeros(grid.shape, dtype=np.complex128)
    for _ in range(terms):
        coeff = (rng.standard_normal() + 1j * rng.standard_normal())
        term = None
        for axis in range(grid.n):
            c = (rng.standard_normal(max_level + 1)
                 + 1j * rng.standard_normal(max_level + 1)) * decay
            profile = c @ basis
            shape = [1] * grid.n
            shape[axis] = grid.N
            factor = profile.reshape(shape)
            term = factor if term is None else term * factor
        values = values + coeff * term
    phi = StateField(grid, values)
    if normalize:
        nrm = phi.norm()
        if nrm == 0.0:
            raise ValueError("degenerate random state")
        phi = phi * (1.0 / nrm)
    return phi
