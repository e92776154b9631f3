"""Tests for the norm-identity verifiers on grid and radial states."""

import math

import numpy as np
import pytest

from uncerteq import identities
from uncerteq.gaussians import GaussianSpec, realize
from uncerteq.grids import GridSpec, l2_inner, StateField
from uncerteq.identities import (_hermite_functions, random_smooth_state,
                                 verify_dilation_hamiltonian,
                                 verify_dilation_pythagoras, verify_hardy,
                                 verify_position_momentum,
                                 verify_radial_coulomb)
from uncerteq.radial import RadialQuadrature, radial_gaussian, random_radial_state

GRID = GridSpec(n=1, N=256, L=12.0)
QUAD3 = RadialQuadrature(3, 40.0, 20000)
QUAD5 = RadialQuadrature(5, 40.0, 20000)

# ||d/dr e^{-r^2/2}||^2 over R^3, from the Gaussian moment integral
# 4 pi Int r^4 e^{-r^2} dr = (3/2) pi^{3/2}.
HARDY_LHS_ORACLE = 1.5 * math.pi ** 1.5
# The same quantity split into shifted part pi^{3/2} plus (1/4) ||psi/r||^2
# with ||psi/r||^2 = 4 pi Int r^2 e^{-r^2} / r^2 dr = 2 pi^{3/2}.
HARDY_SHIFT_ORACLE = math.pi ** 1.5
HARDY_POTENTIAL_ORACLE = 2.0 * math.pi ** 1.5


def test_hermite_functions_are_orthonormal():
    grid = GridSpec(n=1, N=512, L=14.0)
    x = grid.axis_coords()
    basis = _hermite_functions(x, 10)
    gram = basis @ basis.T * grid.h
    np.testing.assert_allclose(gram, np.eye(11), atol=1e-10)


def test_random_smooth_state_is_normalized_and_localized():
    rng = np.random.default_rng(2)
    phi = random_smooth_state(GRID, rng)
    assert phi.norm() == pytest.approx(1.0, rel=1e-12)
    edge = np.abs(phi.values[:4]).max() + np.abs(phi.values[-4:]).max()
    assert edge <= 1e-12


def test_position_momentum_identities_on_random_states():
    rng = np.random.default_rng(0)
    for _ in range(10):
        phi = random_smooth_state(GRID, rng)
        for rep in verify_position_momentum(phi, tol=1e-8):
            assert rep.passed, (rep.identity_id, rep.rel_residual)


def test_position_momentum_rejects_flat_state():
    grid = GridSpec(n=1, N=16, L=2.0)
    with pytest.raises(ValueError):
        verify_position_momentum(StateField(grid, np.zeros(16)))


def test_trace_identity_both_sides_match_dimension():
    phi = realize(GaussianSpec("coherent", n=1), GRID)
    rep = {r.identity_id: r for r in verify_position_momentum(phi)}["pm.trace"]
    assert rep.lhs.real == pytest.approx(1.0, rel=1e-10)
    assert rep.rhs.real == pytest.approx(1.0, rel=1e-10)


def test_dilation_split_on_grid_and_radial_states():
    rng = np.random.default_rng(8)
    for state in (random_smooth_state(GRID, rng),
                  random_radial_state(QUAD3, rng),
                  random_radial_state(QUAD5, rng)):
        reps = verify_dilation_pythagoras(state, tol=1e-8)
        assert all(r.passed for r in reps)
        assert reps[0].context["gap"] > 0.0


def test_hardy_identities_frozen_oracle():
    psi = radial_gaussian(QUAD3)
    reps = {r.identity_id: r for r in verify_hardy(psi, tol=1e-8)}
    rep = reps["hardy.pythagoras"]
    assert rep.passed
    assert rep.lhs.real == pytest.approx(HARDY_LHS_ORACLE, rel=1e-10)
    assert rep.rhs.real == pytest.approx(
        HARDY_SHIFT_ORACLE + 0.25 * HARDY_POTENTIAL_ORACLE, rel=1e-10)
    assert reps["hardy.chain.potential"].passed
    assert reps["hardy.chain.gradient"].passed


def test_hardy_transfer_forms_on_random_states():
    rng = np.random.default_rng(4)
    for quad in (QUAD3, QUAD5):
        for _ in range(10):
            psi = random_radial_state(quad, rng)
            for rep in verify_hardy(psi, tol=1e-8):
                assert rep.passed, (quad.n, rep.identity_id, rep.rel_residual)


def test_hardy_requires_three_dimensions():
    quad = RadialQuadrature(2, 40.0, 1000)
    with pytest.raises(ValueError):
        verify_hardy(radial_gaussian(quad))


def test_dilation_hamiltonian_identities():
    rng = np.random.default_rng(6)
    for _ in range(10):
        phi = random_smooth_state(GRID, rng)
        for rep in verify_dilation_hamiltonian(phi, tol=1e-7):
            assert rep.passed, (rep.identity_id, rep.rel_residual)


def test_dilation_hamiltonian_energy_is_gradient_norm():
    phi = realize(GaussianSpec("coherent", n=1), GRID)
    reps = {r.identity_id: r for r in verify_dilation_hamiltonian(phi)}
    assert reps["dilham.energy"].lhs.real == pytest.approx(1.0, rel=1e-10)


def test_radial_coulomb_identities():
    rng = np.random.default_rng(12)
    for quad in (QUAD3, QUAD5):
        for _ in range(10):
            phi = random_radial_state(quad, rng)
            for rep in verify_radial_coulomb(phi, tol=1e-8):
                assert rep.passed, (quad.n, rep.identity_id, rep.rel_residual)


def test_radial_coulomb_coefficient_is_trivial_only_in_three_dimensions():
    rng = np.random.default_rng(14)
    phi3 = random_radial_state(QUAD3, rng)
    reps3 = {r.identity_id: r for r in verify_radial_coulomb(phi3)}
    # (n-1)(n-3)/4 vanishes: the symmetrized norm equals the radial one.
    assert reps3["radcoul.sym_norm"].lhs.real == pytest.approx(
        phi3.radial_derivative().norm_sq(), rel=1e-10)
    phi5 = random_radial_state(QUAD5, rng)
    reps5 = {r.identity_id: r for r in verify_radial_coulomb(phi5)}
    dr_sq = phi5.radial_derivative().norm_sq()
    from uncerteq.radial import coulomb
    b_sq = coulomb(phi5).norm_sq()
    assert reps5["radcoul.sym_norm"].lhs.real == pytest.approx(
        dr_sq - 2.0 * b_sq, rel=1e-8)
    assert abs(reps5["radcoul.sym_norm"].lhs.real - dr_sq) > 1e-6


def test_quadrupled_identity_reduces_to_hardy():
    rng = np.random.default_rng(18)
    psi = random_radial_state(QUAD5, rng)
    hardy = {r.identity_id: r for r in verify_hardy(psi)}["hardy.pythagoras"]
    quad = {r.identity_id: r
            for r in verify_radial_coulomb(psi)}["radcoul.hardy_quadrupled"]
    assert quad.lhs.real == pytest.approx(4.0 * hardy.lhs.real, rel=1e-10)
    assert quad.rhs.real == pytest.approx(4.0 * hardy.rhs.real, rel=1e-10)


def test_singular_weight_quadrature_error_is_first_order():
    # Norms weighted by 1/|x|^2 on the tensor grid carry an O(h) midpoint
    # error, so halving h halves the defect and a two-grid extrapolation
    # removes it almost entirely.
    from uncerteq.grids import coulomb
    exact = 2.0  # ||psi/|x|||^2 for the unit-norm isotropic Gaussian in R^3
    err = {}
    for N in (48, 96):
        grid = GridSpec(n=3, N=N, L=12.0, offset=0.5)
        psi = realize(GaussianSpec("coherent", n=3), grid)
        err[N] = coulomb(psi).norm_sq() - exact
    assert 1.8 <= err[48] / err[96] <= 2.2
    extrapolated = err[96] * 2 - err[48]
    assert abs(extrapolated) <= 1e-6 * exact


def test_degenerate_states_rejected():
    with pytest.raises(ValueError):
        verify_dilation_hamiltonian(
            StateField(GRID, np.zeros(GRID.shape)))
    zeros = np.zeros(QUAD3.points)
    from uncerteq.radial import RadialState
    with pytest.raises(ValueError):
        verify_radial_coulomb(RadialState(QUAD3, zeros, zeros))
