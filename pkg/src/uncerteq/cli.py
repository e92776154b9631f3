"""Command-line front door: suite execution, reports, refinement studies.

Configuration comes from an optional JSON file plus flag overrides; every
run writes a versioned JSON report (timestamp isolated in the header so the
body is byte-stable for a fixed config and seed) and optionally a CSV
residual table.  Exit code 0 means every selected check passed, 1 lists the
failing identities, 2 is a usage error.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import math
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np
import scipy

from . import __version__, complexspace, grids, identities, radial, search
from .complexspace import cs_equality_residuals, default_angles, random_vector
from .forms import PairSample, decomposition_check, sr_equalities, sr_inequality_chain
from .gaussians import GaussianSpec, exact_moments, realize
from .grids import GridSpec
from .radial import RadialQuadrature, radial_gaussian, random_radial_state
from .report import EqualityReport, bound, compare
from .search import SearchOptions, minimize_product_functional, minimize_sum_functional, probe_nonattainment

SUITES = ("appendix", "section2", "momentum-position", "dilation", "hardy",
          "coulomb", "search", "all")

ALGEBRAIC_TOL = 1e-12
GRID_TOL = 1e-8


@dataclass
class SuiteConfig:
    suite: str = "all"
    n: int | None = None
    N: int | None = None
    L: float = 12.0
    offset: float | None = None
    scheme: str = "spectral_periodic"
    tol: float | None = None
    trials: int | None = None
    dim: int = 32
    seed: int = 0
    radial: bool = False
    R: float = 40.0
    points: int = 20000
    out: str | None = None
    csv: str | None = None

    @classmethod
    def from_sources(cls, config_path: str | None, overrides: dict) -> "SuiteConfig":
        data = {}
        if config_path:
            with open(config_path) as fh:
                loaded = json.load(fh)
            known = {f.name for f in fields(cls)}
            unknown = set(loaded) - known
            if unknown:
                raise ValueError(f"unknown config keys: {sorted(unknown)}")
            data.update(loaded)
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)


def _aggregate(reports: list[EqualityReport]) -> list[EqualityReport]:
    """Keep the worst report per identity so suites stay compact."""
    worst: dict[str, EqualityReport] = {}
    for rep in reports:
        cur = worst.get(rep.identity_id)
        if cur is None or rep.rel_residual > cur.rel_residual:
            worst[rep.identity_id] = rep
    return [worst[key] for key in sorted(worst)]


def _grid(cfg: SuiteConfig, n: int, default_N: int, default_offset: float = 0.0) -> GridSpec:
    return GridSpec(n=n, N=cfg.N or default_N, L=cfg.L,
                    offset=cfg.offset if cfg.offset is not None else default_offset,
                    scheme=cfg.scheme)


def run_appendix(cfg: SuiteConfig) -> list[EqualityReport]:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tol or ALGEBRAIC_TOL
    trials = cfg.trials or 1000
    angles = default_angles(rng)
    reports = []
    for _ in range(trials):
        dim = int(rng.integers(2, cfg.dim + 1))
        u = random_vector(rng, dim)
        v = random_vector(rng, dim)
        reports.extend(cs_equality_residuals(u, v, angles=angles, tol=tol))
        complexspace.extremizer_class(u, v, tol)
    return _aggregate(reports)


def run_section2(cfg: SuiteConfig) -> list[EqualityReport]:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tol or ALGEBRAIC_TOL
    trials = cfg.trials or 200
    angles = default_angles(rng)
    reports = []
    for _ in range(trials):
        dim = int(rng.integers(2, cfg.dim + 1))
        u = random_vector(rng, dim)
        v = random_vector(rng, dim)
        s = PairSample.from_vectors(1.0, u, v)
        reports.extend(sr_equalities(s, thetas=angles, tol=tol))
        reports.extend(decomposition_check(s, tol))
        chain = sr_inequality_chain(s)
        reports.append(bound("sr.chain.schrodinger", chain.schrodinger_bound,
                             chain.product, tol, scale=chain.product))
        reports.append(bound("sr.chain.robertson", chain.robertson_bound,
                             chain.schrodinger_bound, tol, scale=chain.product))
    return _aggregate(reports)


def run_momentum_position(cfg: SuiteConfig) -> list[EqualityReport]:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tol or GRID_TOL
    trials = cfg.trials or 50
    grid = _grid(cfg, cfg.n or 1, 256)
    reports = []
    for _ in range(trials):
        phi = identities.random_smooth_state(grid, rng)
        reports.extend(identities.verify_position_momentum(phi, tol))
    coherent = realize(GaussianSpec("coherent", n=grid.n), grid)
    mom = exact_moments(GaussianSpec("coherent", n=grid.n))
    xnorm = grids.position(coherent).norm()
    gnorm = grids.gradient(coherent).norm()
    reports.append(compare("pm.kennard_saturation", xnorm * gnorm,
                           math.sqrt(mom.x_norm_sq * mom.grad_norm_sq),
                           max(tol, 1e-6)))
    sum_field = grids.position(coherent) + grids.gradient(coherent)
    reports.append(compare("pm.coherent_alignment",
                           sum_field.norm() / coherent.norm(), 0.0, 1e-6))
    return _aggregate(reports)


def run_dilation(cfg: SuiteConfig) -> list[EqualityReport]:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tol or GRID_TOL
    trials = cfg.trials or 20
    grid = _grid(cfg, cfg.n or 1, 256)
    reports = []
    for _ in range(trials):
        phi = identities.random_smooth_state(grid, rng)
        reports.extend(identities.verify_dilation_pythagoras(phi, tol))
        reports.extend(identities.verify_dilation_hamiltonian(phi, max(tol, 1e-7)))
    return _aggregate(reports)


def run_hardy(cfg: SuiteConfig) -> list[EqualityReport]:
    rng = np.random.default_rng(cfg.seed)
    n = cfg.n or 3
    reports = []
    if cfg.radial:
        tol = cfg.tol or GRID_TOL
        quad = RadialQuadrature(n=n, r_max=cfg.R, points=cfg.points)
        states = [radial_gaussian(quad)]
        for _ in range(cfg.trials or 20):
            states.append(random_radial_state(quad, rng))
        for psi in states:
            reports.extend(identities.verify_hardy(psi, tol))
    else:
        tol = cfg.tol or 1e-3
        fine = _grid(cfg, n, 96 if n == 3 else 32, default_offset=0.5)
        # The 1/|x|^2-weighted norm on the tensor grid has an O(h) midpoint
        # quadrature error, so the right side of the Pythagorean identity is
        # checked after removing that first-order term with a half-resolution
        # control grid.  For the unit-norm isotropic Gaussian both sides
        # equal n/2 exactly.
        coarse = GridSpec(n=fine.n, N=fine.N // 2, L=fine.L,
                          offset=fine.offset, scheme=fine.scheme)
        sides = {}
        for grid in (coarse, fine):
            psi = realize(GaussianSpec("coherent", n=n), grid)
            rep = {r.identity_id: r for r in
                   identities.verify_hardy(psi, tol=1.0)}["hardy.pythagoras"]
            sides[grid.N] = (rep.lhs.real, rep.rhs.real)
            for chain in identities.verify_hardy(psi, tol):
                if chain.identity_id.startswith("hardy.chain."):
                    reports.append(chain)
        target = 0.5 * n
        ctx = {"grid": fine.to_dict(), "control_N": coarse.N}
        reports.append(compare("hardy.grid.value_lhs", sides[fine.N][0],
                               target, tol, context=ctx))
        rhs_corrected = 2.0 * sides[fine.N][1] - sides[coarse.N][1]
        reports.append(compare("hardy.grid.value_rhs", rhs_corrected,
                               target, tol, context=ctx))
        psi = realize(GaussianSpec("coherent", n=n), fine)
        reports.append(grids.pointwise_gradient_decomposition(psi, tol))
    return _aggregate(reports)


def run_coulomb(cfg: SuiteConfig) -> list[EqualityReport]:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tol or 1e-6
    reports = []
    for n in ((cfg.n,) if cfg.n else (3, 5)):
        quad = RadialQuadrature(n=n, r_max=cfg.R, points=cfg.points)
        states = [radial_gaussian(quad)]
        for _ in range(cfg.trials or 20):
            states.append(random_radial_state(quad, rng))
        for phi in states:
            reports.extend(identities.verify_radial_coulomb(phi, tol))
    return _aggregate(reports)


def run_search_suite(cfg: SuiteConfig) -> list[EqualityReport]:
    tol = cfg.tol or 1e-4
    grid = _grid(cfg, cfg.n or 1, 256)
    opts = SearchOptions(max_iters=40000)
    reports = []
    res = minimize_sum_functional(grid, cfg.seed, opts)
    reports.append(compare("search.sum.value", res.value, float(grid.n), tol,
                           context={"iterations": res.iterations,
                                    "converged": res.converged}))
    reports.append(bound("search.sum.fidelity", 0.999, res.fidelity, 0.0))
    res = minimize_product_functional(grid, cfg.seed, opts)
    reports.append(compare("search.product.value", res.value, float(grid.n),
                           tol, context={"iterations": res.iterations,
                                         "lambda_est": res.lambda_est}))
    reports.append(bound("search.product.fidelity", 0.999, res.fidelity, 0.0))

    quad = RadialQuadrature(n=3, r_max=1000.0, points=200000)
    rows = probe_nonattainment(quad, (10.0, 100.0, 1000.0))
    rhos = [row["rho"] for row in rows]
    reports.append(bound("search.nonattainment.above_one", 1.0, min(rhos), 0.0,
                         context={"rows": rows}))
    reports.append(bound("search.nonattainment.decreasing", 0.0,
                         min(rhos[i] - rhos[i + 1] for i in range(len(rhos) - 1)),
                         0.0, context={"rows": rows}))
    return reports


RUNNERS = {
    "appendix": run_appendix,
    "section2": run_section2,
    "momentum-position": run_momentum_position,
    "dilation": run_dilation,
    "hardy": run_hardy,
    "coulomb": run_coulomb,
    "search": run_search_suite,
}


def run_suite(cfg: SuiteConfig) -> tuple[int, dict]:
    """Execute the selected suites and assemble the versioned report."""
    if cfg.suite not in SUITES:
        raise ValueError(f"unknown suite {cfg.suite!r}")
    names = [s for s in SUITES if s not in ("all",)] if cfg.suite == "all" \
        else [cfg.suite]
    reports: list[EqualityReport] = []
    for name in names:
        reports.extend(RUNNERS[name](cfg))
    reports.sort(key=lambda rep: rep.identity_id)
    failing = sorted({rep.identity_id for rep in reports if not rep.passed})
    payload = {
        "schema": 1,
        "header": {
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "config": asdict(cfg),
            "versions": {
                "uncerteq": __version__,
                "numpy": np.__version__,
                "scipy": scipy.__version__,
            },
        },
        "reports": [rep.to_dict() for rep in reports],
        "failing": failing,
    }
    return (0 if not failing else 1), payload


def write_outputs(payload: dict, cfg: SuiteConfig) -> None:
    text = json.dumps(payload, indent=2)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if cfg.csv:
        with open(cfg.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["identity_id", "lhs_re", "lhs_im", "rhs_re",
                             "rhs_im", "abs_residual", "rel_residual", "tol",
                             "passed"])
            for rep in payload["reports"]:
                writer.writerow([rep["identity_id"], *rep["lhs"], *rep["rhs"],
                                 rep["abs_residual"], rep["rel_residual"],
                                 rep["tol"], rep["passed"]])


def refinement_study(identity_id: str, grid_specs: list[GridSpec],
                     state_builder=None) -> dict:
    """Residual-versus-spacing table with a fitted convergence order.

    The default probe state is the isotropic Gaussian.  All grids must share
    one derivative scheme and come in at least three resolutions.
    """
    if len(grid_specs) < 3:
        raise ValueError("need at least three grids")
    schemes = {g.scheme for g in grid_specs}
    if len(schemes) > 1:
        raise ValueError("refinement study cannot mix derivative schemes")
    if not identity_id.startswith("pm."):
        raise ValueError(f"unsupported identity {identity_id!r} for refinement")
    rows = []
    for grid in sorted(grid_specs, key=lambda g: g.h, reverse=True):
        if state_builder is None:
            phi = realize(GaussianSpec("coherent", n=grid.n), grid)
        else:
            phi = state_builder(grid)
        reps = {r.identity_id: r for r in
                identities.verify_position_momentum(phi, tol=1.0)}
        rep = reps[identity_id]
        rows.append({"N": grid.N, "h": grid.h,
                     "abs_residual": rep.abs_residual,
                     "rel_residual": rep.rel_residual})
    hs = np.array([row["h"] for row in rows])
    res = np.array([max(row["rel_residual"], 1e-300) for row in rows])
    order = float(np.polyfit(np.log(hs), np.log(res), 1)[0])
    return {"identity_id": identity_id, "scheme": grid_specs[0].scheme,
            "rows": rows, "fitted_order": order}


def write_refinement_csv(study: dict, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["N", "h", "abs_residual", "rel_residual"])
        for row in study["rows"]:
            writer.writerow([row["N"], row["h"], row["abs_residual"],
                             row["rel_residual"]])
        writer.writerow(["fitted_order", study["fitted_order"], "", ""])


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override it")
    parser.add_argument("--n", type=int, help="space dimension")
    parser.add_argument("--N", type=int, help="grid points per axis")
    parser.add_argument("--L", type=float, help="box half-width (default 12)")
    parser.add_argument("--offset", type=float,
                        help="grid offset as a fraction of the spacing")
    parser.add_argument("--scheme", choices=grids.SCHEMES,
                        help="derivative scheme (default spectral_periodic)")
    parser.add_argument("--tol", type=float, help="override the suite tolerance")
    parser.add_argument("--trials", type=int, help="number of random trials")
    parser.add_argument("--dim", type=int, help="max vector dimension (default 32)")
    parser.add_argument("--seed", type=int, help="RNG seed (default 0)")
    parser.add_argument("--radial", action="store_true", default=None,
                        help="use the 1-D radial quadrature fast path")
    parser.add_argument("--R", type=float, help="radial quadrature range (default 40)")
    parser.add_argument("--points", type=int,
                        help="radial quadrature points (default 20000)")
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument("--csv", help="also write a CSV residual table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uncerteq",
        description="Verify equality-form uncertainty relations numerically.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    _add_common_flags(p_verify)

    p_search = sub.add_parser("search", help="run a variational search")
    p_search.add_argument("target", choices=("sum", "product", "nonattainment"))
    _add_common_flags(p_search)
    p_search.add_argument("--max-iters", type=int, default=40000)

    p_refine = sub.add_parser("refine", help="grid-refinement study")
    p_refine.add_argument("identity", help="identity id, e.g. pm.trace")
    p_refine.add_argument("--N", type=int, action="append", required=True,
                          help="repeat for each resolution (at least three)")
    p_refine.add_argument("--n", type=int, default=1)
    p_refine.add_argument("--L", type=float, default=12.0)
    p_refine.add_argument("--offset", type=float, default=0.0)
    p_refine.add_argument("--scheme", choices=grids.SCHEMES,
                          default="central_diff_2")
    p_refine.add_argument("--csv", help="write the residual table here")
    return parser


def _cmd_verify(args) -> int:
    overrides = {k: getattr(args, k) for k in
                 ("n", "N", "L", "offset", "scheme", "tol", "trials", "dim",
                  "seed", "radial", "R", "points", "out", "csv")}
    overrides["suite"] = args.suite
    cfg = SuiteConfig.from_sources(args.config, overrides)
    code, payload = run_suite(cfg)
    write_outputs(payload, cfg)
    if payload["failing"]:
        print("FAILING: " + ", ".join(payload["failing"]), file=sys.stderr)
    return code


def _cmd_search(args) -> int:
    n = args.n or 1
    seed = args.seed or 0
    opts = SearchOptions(max_iters=args.max_iters)
    if args.target == "nonattainment":
        quad = RadialQuadrature(n=max(n, 3), r_max=args.R or 1000.0,
                                points=args.points or 200000)
        r_values = (10.0, 100.0, min(1000.0, quad.r_max))
        rows = probe_nonattainment(quad, r_values)
        print(json.dumps({"rows": rows}, indent=2))
        ok = all(row["rho"] > 1.0 for row in rows) and all(
            rows[i]["rho"] > rows[i + 1]["rho"] for i in range(len(rows) - 1))
        return 0 if ok else 1
    grid = GridSpec(n=n, N=args.N or 256, L=args.L or 12.0,
                    offset=args.offset or 0.0,
                    scheme=args.scheme or "spectral_periodic")
    runner = (minimize_sum_functional if args.target == "sum"
              else minimize_product_functional)
    res = runner(grid, seed, opts)
    out = {"value": res.value, "target": float(grid.n),
           "iterations": res.iterations, "converged": res.converged,
           "fidelity": res.fidelity}
    if args.target == "product":
        out["lambda_est"] = res.lambda_est
    print(json.dumps(out, indent=2))
    tol = args.tol or 1e-4
    return 0 if res.value <= grid.n + tol and res.fidelity >= 0.999 else 1


def _cmd_refine(args) -> int:
    specs = [GridSpec(n=args.n, N=N, L=args.L, offset=args.offset,
                      scheme=args.scheme) for N in args.N]
    study = refinement_study(args.identity, specs)
    print(json.dumps(study, indent=2))
    if args.csv:
        write_refinement_csv(study, args.csv)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "search":
            return _cmd_search(args)
        return _cmd_refine(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
