"""Commutator and anticommutator sesquilinear forms for an operator pair.

The forms are evaluated through the images A@phi and B@phi only, so the
module is agnostic to where the vectors live: plain complex vectors and
gridded states both work, as long as they expose ``inner``, ``norm`` and
linear arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

from .complexspace import (DEFAULT_TOL, ExtremizerFlags, FIXED_ANGLES,
                           classify_saturation, sgn)
from .report import EqualityReport, compare


@dataclass(frozen=True)
class PairSample:
    """A state seen through a symmetric operator pair: (||phi||^2, A phi, B phi).

    ``inner_ab`` is the scalar product (A phi | B phi); it is recomputed at
    construction from the vectors when not supplied.
    """

    phi_norm_sq: float
    a_phi: Any
    b_phi: Any
    inner_ab: complex

    @classmethod
    def from_vectors(cls, phi_norm_sq: float, a_phi, b_phi) -> "PairSample":
        return cls(phi_norm_sq=float(phi_norm_sq), a_phi=a_phi, b_phi=b_phi,
                   inner_ab=complex(a_phi.inner(b_phi)))

    @property
    def norm_a(self) -> float:
        return self.a_phi.norm()

    @property
    def norm_b(self) -> float:
        return self.b_phi.norm()


def commutator_form(s: PairSample) -> complex:
    """Diagonal of the commutator form: purely imaginary, -2i Im (Aphi|Bphi)."""
    return -2j * s.inner_ab.imag


def anticommutator_form(s: PairSample) -> float:
    """Diagonal of the anticommutator form: real, 2 Re (Aphi|Bphi)."""
    return 2.0 * s.inner_ab.real


def decomposition_check(s: PairSample,
                        tol: float = DEFAULT_TOL) -> tuple[EqualityReport, EqualityReport]:
    """Recover (Aphi|Bphi) and (Bphi|Aphi) from the two forms."""
    comm = commutator_form(s)
    anti = anticommutator_form(s)
    p = complex(s.a_phi.inner(s.b_phi))
    scale = s.norm_a * s.norm_b
    r1 = compare("form.product_split", p, 0.5 * anti - 0.5 * comm, tol,
                 scale=scale)
    r2 = compare("form.product_split_conj", p.conjugate(),
                 0.5 * anti + 0.5 * comm, tol, scale=scale)
    return r1, r2


def _combo_norm(s: PairSample):
    def combo(alpha: complex, beta: complex) -> float:
        w = alpha * s.a_phi + beta * s.b_phi
        return w.norm()
    return combo


def sr_equalities(s: PairSample, thetas: Sequence[float] = FIXED_ANGLES,
                  tol: float = DEFAULT_TOL) -> list[EqualityReport]:
    """Evaluate the uncertainty equalities for the pair sample.

    Covers the signed commutator and anticommutator norm forms, the
    quadrature identity |(Aphi|Bphi)| = (|comm|^2 + |anti|^2)^{1/2} / 2, the
    theta-rotated quadrature family, and the sign-aligned form.  Norms of
    vector combinations are computed from the actual vectors, independently
    of the scalar product value on the left sides.
    """
    a = s.norm_a
    b = s.norm_b
    if a == 0.0 or b == 0.0:
        raise ValueError("A phi and B phi must both be nonzero")
    p = s.inner_ab
    comm = commutator_form(s)
    anti = anticommutator_form(s)
    ab = a * b
    combo = _combo_norm(s)

    def rhs_linear(phase: complex) -> float:
        # ab * (2 - ||Ahat + phase * Bhat||^2)
        w = combo(1.0 / a, phase / b)
        return ab * (2.0 - w * w)

    reports = [
        compare("sr.comm+", (1j * comm).real, rhs_linear(-1j), tol, scale=ab),
        compare("sr.comm-", (-1j * comm).real, rhs_linear(1j), tol, scale=ab),
        compare("sr.anti+", anti, rhs_linear(-1.0), tol, scale=ab),
        compare("sr.anti-", -anti, rhs_linear(1.0), tol, scale=ab),
        compare("sr.abs_quadrature", abs(p),
                0.5 * math.hypot(abs(comm), abs(anti)), tol, scale=ab),
    ]

    def rhs_quadrature(phase_re: complex, phase_im: complex) -> float:
        w1 = combo(1.0 / a, phase_re / b)
        w2 = combo(1.0 / a, phase_im / b)
        t1 = 1.0 - 0.5 * w1 * w1
        t2 = 1.0 - 0.5 * w2 * w2
        return ab * math.hypot(t1, t2)

    for theta in thetas:
        phase = complex(math.cos(theta), math.sin(theta))
        for sig, rot in (("+", 1j * phase), ("-", -1j * phase)):
            reports.append(compare(f"sr.abs_rot{sig}@{theta:.6f}", abs(p),
                                   rhs_quadrature(phase, rot), tol, scale=ab))

    w = combo(1.0 / a, -sgn(p) / b)
    reports.append(compare("sr.abs_aligned", abs(p),
                           ab * (1.0 - 0.5 * w * w), tol, scale=ab))
    return reports


@dataclass(frozen=True)
class InequalityChain:
    """Product of norms and its two classical lower bounds."""

    product: float
    schrodinger_bound: float
    robertson_bound: float

    def ordered(self, slack: float = 1e-12) -> bool:
        scale = max(self.product, 1.0)
        return (self.product >= self.schrodinger_bound - slack * scale
                and self.schrodinger_bound >= self.robertson_bound - slack * scale)


def sr_inequality_chain(s: PairSample) -> InequalityChain:
    """||Aphi|| ||Bphi|| >= quadrature bound >= commutator bound."""
    comm = commutator_form(s)
    anti = anticommutator_form(s)
    return InequalityChain(
        product=s.norm_a * s.norm_b,
        schrodinger_bound=0.5 * math.hypot(abs(comm), abs(anti)),
        robertson_bound=0.5 * abs(comm),
    )


def extremizer_parts(s: PairSample, tol: float = DEFAULT_TOL) -> ExtremizerFlags:
    """Five-part saturation classification for the pair (A phi, B phi).

    The part conditions expressed through the commutator and anticommutator
    forms reduce exactly to the vector-pair conditions on (A phi, B phi), so
    the shared classifier applies verbatim.
    """
    return classify_saturation(s.norm_a, s.norm_b, s.inner_ab,
                               _combo_norm(s), tol)
