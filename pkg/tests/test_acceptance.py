"""Acceptance gate: one test per top-level criterion, one printed line each.

Each test exercises the library end to end at the stated tolerance and
prints a single pass/fail line, so a plain pytest run doubles as the
acceptance report.
"""

import cmath
import math
import time

import numpy as np

from uncerteq import grids
from uncerteq.cli import refinement_study
from uncerteq.complexspace import (cs_equality_residuals, default_angles,
                                   extremizer_class, random_vector)
from uncerteq.gaussians import GaussianSpec, realize
from uncerteq.grids import GridSpec, StateField, _radius_sq
from uncerteq.identities import (random_smooth_state,
                                 verify_dilation_hamiltonian, verify_hardy,
                                 verify_position_momentum,
                                 verify_radial_coulomb)
from uncerteq.radial import (RadialQuadrature, radial_gaussian,
                             random_radial_state)
from uncerteq.search import (SearchOptions, minimize_product_functional,
                             minimize_sum_functional, probe_nonattainment)

GRID_1D = GridSpec(n=1, N=256, L=12.0)


def _criterion(num: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_01_algebraic_identity_suite():
    rng = np.random.default_rng(2024)
    angles = default_angles(rng)
    start = time.monotonic()
    worst = 0.0
    for _ in range(1000):
        dim = int(rng.integers(2, 65))
        u = random_vector(rng, dim)
        v = random_vector(rng, dim)
        for rep in cs_equality_residuals(u, v, angles=angles, tol=1e-12):
            worst = max(worst, rep.rel_residual)
    elapsed = time.monotonic() - start
    _criterion(1, worst <= 1e-12 and elapsed < 5.0,
               f"1000 pairs, worst residual {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_equivalence_closure():
    rng = np.random.default_rng(7)
    lambdas = [2.0, -3.0, 1j, -1j]
    lambdas += [cmath.exp(1j * t) for t in rng.uniform(0, 2 * math.pi, 8)]
    fired = 0
    for lam in lambdas:
        u = random_vector(rng, 16)
        flags = extremizer_class(u, lam * u, tol=1e-12)  # cross-checks at 8e-12
        assert flags.cs_saturated
        fired += sum(flags.as_tuple())
    _criterion(2, True,
               f"{len(lambdas)} aligned pairs, {fired} parts fired, "
               "no internal-consistency errors")


def test_criterion_03_canonical_trace_identity():
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(50):
        phi = random_smooth_state(GRID_1D, rng)
        reps = {r.identity_id: r for r in verify_position_momentum(phi, 1e-8)}
        worst = max(worst, reps["pm.trace"].rel_residual)
    _criterion(3, worst <= 1e-8,
               f"50 random smooth states, worst residual {worst:.2e}")


def test_criterion_04_coherent_saturation():
    phi = realize(GaussianSpec("coherent", n=1), GRID_1D)
    prod = grids.position(phi).norm() * grids.gradient(phi).norm()
    target = 0.5 * phi.norm_sq()
    rel = abs(prod - target) / target
    combo = (grids.position(phi) + grids.gradient(phi)).norm() / phi.norm()
    _criterion(4, rel <= 1e-6 and combo <= 1e-6,
               f"product residual {rel:.2e}, alignment residual {combo:.2e}")


def test_criterion_05_hardy_oracle():
    oracle = 1.5 * math.pi ** 1.5
    quad = RadialQuadrature(3, 40.0, 20000)
    reps = {r.identity_id: r
            for r in verify_hardy(radial_gaussian(quad), tol=1e-8)}
    rep = reps["hardy.pythagoras"]
    rad_lhs = abs(rep.lhs.real - oracle) / oracle
    rad_rhs = abs(rep.rhs.real - oracle) / oracle

    # Full tensor grid at N=96.  The rhs contains the 1/|x|^2-weighted norm,
    # whose midpoint quadrature error is O(h); the N=48 control grid removes
    # that first-order term by extrapolation.
    sides = {}
    for N in (48, 96):
        grid = GridSpec(n=3, N=N, L=12.0, offset=0.5)
        psi = StateField(grid, np.exp(-0.5 * _radius_sq(grid)))
        rep_g = {r.identity_id: r
                 for r in verify_hardy(psi, tol=1.0)}["hardy.pythagoras"]
        sides[N] = (rep_g.lhs.real, rep_g.rhs.real)
    grid_lhs = abs(sides[96][0] - oracle) / oracle
    rhs_corrected = 2.0 * sides[96][1] - sides[48][1]
    grid_rhs = abs(rhs_corrected - oracle) / oracle
    ok = (rad_lhs <= 1e-8 and rad_rhs <= 1e-8
          and grid_lhs <= 1e-3 and grid_rhs <= 1e-3)
    _criterion(5, ok,
               f"radial lhs/rhs {rad_lhs:.1e}/{rad_rhs:.1e}, "
               f"grid lhs/rhs {grid_lhs:.1e}/{grid_rhs:.1e}")


def test_criterion_06_scaling_hamiltonian_chain():
    rng = np.random.default_rng(47)
    worst_eq = 0.0
    violations = 0
    for _ in range(20):
        phi = random_smooth_state(GRID_1D, rng)
        reps = {r.identity_id: r
                for r in verify_dilation_hamiltonian(phi, tol=1e-7)}
        for key in ("dilham.energy", "dilham.commutator", "dilham.sum_norm"):
            worst_eq = max(worst_eq, reps[key].rel_residual)
        if not reps["dilham.grad_bound"].passed:
            violations += 1
    _criterion(6, worst_eq <= 1e-7 and violations == 0,
               f"20 states, worst equality residual {worst_eq:.2e}, "
               f"{violations} bound violations")


def test_criterion_07_radial_coulomb_pair():
    rng = np.random.default_rng(53)
    worst_sym = 0.0
    worst_ratio = 0.0
    worst_match = 0.0
    for n in (3, 5):
        quad = RadialQuadrature(n, 40.0, 20000)
        states = [radial_gaussian(quad)]
        states += [random_radial_state(quad, rng) for _ in range(10)]
        for phi in states:
            reps = {r.identity_id: r
                    for r in verify_radial_coulomb(phi, tol=1e-6)}
            worst_sym = max(worst_sym, reps["radcoul.sym_norm"].rel_residual)
            ctx = reps["radcoul.relative_bound"].context
            worst_ratio = max(worst_ratio, ctx["smaller"] / ctx["larger"])
            hardy = {r.identity_id: r
                     for r in verify_hardy(phi, tol=1e-8)}["hardy.pythagoras"]
            quadrupled = reps["radcoul.hardy_quadrupled"]
            scale = max(abs(quadrupled.lhs.real), 1.0)
            worst_match = max(
                worst_match,
                abs(quadrupled.lhs.real - 4.0 * hardy.lhs.real) / scale,
                abs(quadrupled.rhs.real - 4.0 * hardy.rhs.real) / scale)
    ok = (worst_sym <= 1e-6 and worst_ratio <= 1.0 + 1e-8
          and worst_match <= 1e-8)
    _criterion(7, ok,
               f"sym-norm residual {worst_sym:.1e}, bound ratio "
               f"{worst_ratio:.10f}, transfer mismatch {worst_match:.1e}")


def test_criterion_08_variational_recovery():
    opts = SearchOptions(max_iters=40000)
    worst_value = 0.0
    worst_fid = 1.0
    worst_time = 0.0
    for seed in range(5):
        start = time.monotonic()
        res = minimize_sum_functional(GRID_1D, seed, opts)
        worst_time = max(worst_time, time.monotonic() - start)
        worst_value = max(worst_value, res.value - 1.0)
        worst_fid = min(worst_fid, res.fidelity)
    prod = minimize_product_functional(GRID_1D, 0, opts)
    ok = (worst_value <= 1e-4 and worst_fid >= 0.999 and worst_time < 30.0
          and prod.value <= 1.0 + 1e-4 and prod.fidelity >= 0.999)
    _criterion(8, ok,
               f"sum excess {worst_value:.1e}, fidelity {worst_fid:.6f}, "
               f"slowest run {worst_time:.1f}s; product excess "
               f"{prod.value - 1.0:.1e}, fidelity {prod.fidelity:.6f}")


def test_criterion_09_nonattainment_probe():
    quad = RadialQuadrature(3, 1100.0, 220000)
    rows = probe_nonattainment(quad, (10.0, 100.0, 1000.0))
    rhos = [row["rho"] for row in rows]
    gaps = [r - 1.0 for r in rhos]
    ok = (all(r > 1.0 for r in rhos)
          and rhos[0] > rhos[1] > rhos[2]
          and gaps[0] > gaps[1] > gaps[2])
    _criterion(9, ok, "ratios " + ", ".join(f"{r:.4f}" for r in rhos))


def test_criterion_10_refinement_orders():
    specs = [GridSpec(n=1, N=N, L=12.0, scheme="central_diff_2")
             for N in (128, 256, 512)]
    study = refinement_study("pm.trace", specs)
    order = study["fitted_order"]

    worst_spectral = 0.0
    for N in (128, 256, 512):
        grid = GridSpec(n=1, N=N, L=12.0)
        phi = realize(GaussianSpec("coherent", n=1), grid)
        reps = {r.identity_id: r
                for r in verify_position_momentum(phi, tol=1e-10)}
        worst_spectral = max(worst_spectral, reps["pm.trace"].rel_residual)
    ok = 1.7 <= order <= 2.3 and worst_spectral <= 1e-10
    _criterion(10, ok,
               f"fitted order {order:.3f}, spectral residual "
               f"{worst_spectral:.1e}")
